#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>

#include "elemconj/errors.hpp"
#include "elemconj/prng.hpp"
#include "elemconj/ring.hpp"

#include "common.hpp"

using namespace elemconj;
using testutil::gaussian;
using testutil::zm;
using testutil::zm_symplectic;

namespace {

template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error to be thrown");
  return ErrorKind::ParseError;  // unreachable
}

// Z/5[t]/(t^2 - t + 1) with conj(t) = 1 - t.
RingPtr eisenstein_like() {
  RingSpec spec;
  spec.m = 5;
  spec.f = {1, -1, 1};
  spec.involution = InvolutionKind::CMinus;
  spec.c = 1;
  return make_ring(spec);
}

}  // namespace

TEST_CASE("modular arithmetic and normalization") {
  RingPtr R = zm(6);
  CHECK(R->size() == 6);
  CHECK(R->degree() == 1);
  CHECK(R->from_int(-1) == R->from_int(5));
  CHECK(R->from_int(13) == R->from_int(1));
  CHECK(R->add(R->from_int(4), R->from_int(5)) == R->from_int(3));
  CHECK(R->sub(R->zero(), R->one()) == R->from_int(5));
  CHECK(R->mul(R->from_int(2), R->from_int(3)) == R->zero());
  CHECK(R->neg(R->from_int(2)) == R->from_int(4));
  CHECK(R->is_zero(R->mul(R->from_int(3), R->from_int(4))));
  // Trivial involution is the identity map.
  for (int v = 0; v < 6; ++v) CHECK(R->conj(R->from_int(v)) == R->from_int(v));
  // No adjoined generator on a degree-1 ring.
  CHECK(kind_of([&] { (void)R->t(); }) == ErrorKind::BadIndex);
}

TEST_CASE("quadratic extension arithmetic") {
  RingPtr R = gaussian(3);
  CHECK(R->size() == 9);
  CHECK(R->degree() == 2);
  const RingElem t = R->t();
  // t^2 = -1 by the defining polynomial.
  CHECK(R->mul(t, t) == R->from_int(-1));
  CHECK(R->from_coeffs({1, 2}) == R->add(R->one(), R->mul(R->from_int(2), t)));
  // conj is the ring involution sending t to -t.
  const RingElem x = R->from_coeffs({1, 2});
  CHECK(R->conj(x) == R->from_coeffs({1, -2}));
  CHECK(R->conj(R->conj(x)) == x);
  const RingElem y = R->from_coeffs({2, 1});
  CHECK(R->conj(R->mul(x, y)) == R->mul(R->conj(x), R->conj(y)));
  CHECK(R->conj(R->add(x, y)) == R->add(R->conj(x), R->conj(y)));
}

TEST_CASE("c-minus involution") {
  RingPtr R = eisenstein_like();
  const RingElem t = R->t();
  const RingElem ct = R->conj(t);
  CHECK(ct == R->sub(R->one(), t));
  // conj(t) must satisfy the same defining polynomial.
  RingElem val = R->add(R->sub(R->mul(ct, ct), ct), R->one());
  CHECK(R->is_zero(val));
  for (std::uint64_t i = 0; i < R->size(); ++i) {
    const RingElem a = R->decode(i);
    CHECK(R->conj(R->conj(a)) == a);
  }
}

TEST_CASE("invalid involutions and lambdas are rejected") {
  // t |-> -t is not an automorphism of Z/9[t]/(t^2 + t + 1).
  RingSpec bad_inv;
  bad_inv.m = 9;
  bad_inv.f = {1, 1, 1};
  bad_inv.involution = InvolutionKind::Neg;
  CHECK(kind_of([&] { make_ring(bad_inv); }) == ErrorKind::InvalidInvolution);

  // t |-> 1 - t is not an automorphism of Z/5[t]/(t^2 + 1).
  RingSpec bad_c;
  bad_c.m = 5;
  bad_c.f = {1, 0, 1};
  bad_c.involution = InvolutionKind::CMinus;
  bad_c.c = 1;
  CHECK(kind_of([&] { make_ring(bad_c); }) == ErrorKind::InvalidInvolution);

  // lambda = 2 has lambda * conj(lambda) = 4 != 1 in Z/4.
  RingSpec bad_lambda;
  bad_lambda.m = 4;
  bad_lambda.lambda = {2};
  CHECK(kind_of([&] { make_ring(bad_lambda); }) == ErrorKind::InvalidLambda);
}

TEST_CASE("lambda powers") {
  RingPtr R = zm_symplectic(5);
  CHECK(R->lambda() == R->from_int(-1));
  CHECK(R->mul(R->lambda(), R->lambda_bar()) == R->one());
  CHECK(R->lambda_int_pow(0) == R->one());
  CHECK(R->lambda_int_pow(1) == R->lambda());
  CHECK(R->lambda_int_pow(-1) == R->lambda_bar());
  CHECK(R->lambda_int_pow(2) == R->one());
  // lambda^{(eps(j) - eps(i))/2} on signed index pairs.
  CHECK(R->lambda_power(1, 2) == R->one());
  CHECK(R->lambda_power(1, -2) == R->lambda_bar());
  CHECK(R->lambda_power(-1, 2) == R->lambda());
  CHECK(R->lambda_power(-1, -2) == R->one());
}

TEST_CASE("units and inverses") {
  RingPtr R = zm(6);
  CHECK(R->is_unit(R->one()));
  CHECK(R->is_unit(R->from_int(5)));
  CHECK_FALSE(R->is_unit(R->from_int(2)));
  CHECK_FALSE(R->is_unit(R->from_int(3)));
  CHECK(R->inv(R->from_int(5)) == R->from_int(5));
  CHECK(kind_of([&] { R->inv(R->from_int(2)); }) == ErrorKind::NotInvertible);

  // x^2 + 1 is irreducible mod 3, so the extension is a field.
  RingPtr F = gaussian(3);
  int units = 0;
  for (std::uint64_t i = 0; i < F->size(); ++i) {
    const RingElem a = F->decode(i);
    if (!F->is_unit(a)) continue;
    ++units;
    CHECK(F->mul(a, F->inv(a)) == F->one());
  }
  CHECK(units == 8);
}

TEST_CASE("encode/decode roundtrip and enumeration") {
  RingPtr R = gaussian(3);
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < R->size(); ++i) {
    const RingElem a = R->decode(i);
    CHECK(R->encode(a) == i);
    seen.insert(i);
  }
  CHECK(seen.size() == R->size());

  auto all = enumerate_ring(*R);
  CHECK(all.size() == R->size());
  CHECK(kind_of([&] { enumerate_ring(*zm(6), 4); }) == ErrorKind::BudgetExceeded);
}

TEST_CASE("absolute form parameters") {
  // Trivial involution, lambda = 1: Min = {0}, Max = annihilator of 2.
  RingPtr R4 = zm(4);
  auto min4 = realize_form_param(*R4, FormParam{FormParamKind::Min, {}});
  auto max4 = realize_form_param(*R4, FormParam{FormParamKind::Max, {}});
  CHECK(min4.size() == 1);
  CHECK(min4.contains(*R4, R4->zero()));
  CHECK(max4.size() == 2);
  CHECK(max4.contains(*R4, R4->from_int(2)));

  // Symplectic: Min = 2R, Max = everything.
  RingPtr S4 = zm_symplectic(4);
  auto smin = realize_form_param(*S4, FormParam{FormParamKind::Min, {}});
  auto smax = realize_form_param(*S4, FormParam{FormParamKind::Max, {}});
  CHECK(smin.size() == 2);
  CHECK(smax.size() == 4);

  // Gaussian with conj(t) = -t: Min = Max = the imaginary line.
  RingPtr G = gaussian(3);
  auto gmin = realize_form_param(*G, FormParam{FormParamKind::Min, {}});
  auto gmax = realize_form_param(*G, FormParam{FormParamKind::Max, {}});
  CHECK(gmin.size() == 3);
  CHECK(gmax.size() == 3);
  CHECK(gmin.contains(*G, G->t()));

  // Spans are validated against Max and realize the additive closure.
  auto span2 = realize_form_param(*R4, FormParam{FormParamKind::Span, {R4->from_int(2)}});
  CHECK(span2.size() == 2);
  CHECK(kind_of([&] {
          realize_form_param(*R4, FormParam{FormParamKind::Span, {R4->one()}});
        }) == ErrorKind::FormParamViolation);
  auto gspan = realize_form_param(*G, FormParam{FormParamKind::Span, {G->t()}});
  CHECK(gspan.size() == 3);

  // The membership shortcut agrees with the realization.
  for (std::uint64_t i = 0; i < R4->size(); ++i) {
    const RingElem a = R4->decode(i);
    CHECK(form_param_membership(*R4, FormParam{FormParamKind::Max, {}}, a) ==
          max4.contains(*R4, a));
  }
}

TEST_CASE("relative form parameters over an ideal") {
  RingPtr R = zm_symplectic(4);
  RealizedSet ideal(*R, {R->zero(), R->from_int(2)});  // the ideal (2)
  auto lambda_max = realize_form_param(*R, FormParam{FormParamKind::Max, {}});

  auto gmin = realize_rel_form_param(*R, ideal, lambda_max,
                                     RelFormParam{FormParamKind::Min, {}});
  auto gmax = realize_rel_form_param(*R, ideal, lambda_max,
                                     RelFormParam{FormParamKind::Max, {}});
  CHECK(gmin.size() == 1);  // {x + x : x in (2)} + <x y x : ...> = {0} in Z/4
  CHECK(gmax.size() == 2);  // (2) meet Lambda = (2)

  auto gspan = realize_rel_form_param(
      *R, ideal, lambda_max, RelFormParam{FormParamKind::Span, {R->from_int(2)}});
  CHECK(gspan.size() == 2);
  // A span generator outside I meet Lambda is rejected.
  CHECK(kind_of([&] {
          realize_rel_form_param(*R, ideal, lambda_max,
                                 RelFormParam{FormParamKind::Span, {R->one()}});
        }) == ErrorKind::FormParamViolation);
}

TEST_CASE("realized sets sort and answer membership") {
  RingPtr R = zm(6);
  RealizedSet s(*R, {R->from_int(4), R->zero(), R->from_int(2), R->from_int(4)});
  CHECK(s.size() == 3);  // duplicates dropped
  for (std::size_t k = 1; k < s.elems().size(); ++k)
    CHECK(R->encode(s.elems()[k - 1]) < R->encode(s.elems()[k]));
  CHECK(s.contains(*R, R->from_int(2)));
  CHECK_FALSE(s.contains(*R, R->from_int(3)));
}

TEST_CASE("ring spec json roundtrip") {
  for (const RingSpec& spec :
       {zm(6)->spec(), zm_symplectic(4)->spec(), gaussian(3)->spec(),
        eisenstein_like()->spec()}) {
    const std::string text = ring_spec_to_json(spec);
    const RingSpec back = ring_spec_from_json(text);
    CHECK(ring_spec_to_json(back) == text);
    // The parsed spec constructs the same ring.
    RingPtr a = make_ring(spec);
    RingPtr b = make_ring(back);
    CHECK(a->size() == b->size());
    CHECK(a->lambda() == b->lambda());
  }
  CHECK(kind_of([] { ring_spec_from_json("{not json"); }) == ErrorKind::ParseError);
}

TEST_CASE("prng is deterministic") {
  Prng a(42), b(42);
  for (int k = 0; k < 100; ++k) CHECK(a.next() == b.next());
  Prng c(7);
  for (int k = 0; k < 100; ++k) {
    const std::uint64_t v = c.below(10);
    CHECK(v < 10);
  }
  RingPtr R = zm(5);
  Prng d(9), e(9);
  for (int k = 0; k < 20; ++k) CHECK(R->random_elem(d) == R->random_elem(e));
}
