#include <catch2/catch_amalgamated.hpp>

#include "elemconj/errors.hpp"
#include "elemconj/hyperbolic.hpp"

#include "common.hpp"

using namespace elemconj;
using testutil::gaussian;
using testutil::ortho_ctx;
using testutil::signed_indices;
using testutil::unitary_ctx;
using testutil::zm;
using testutil::zm_symplectic;

namespace {

const GuardPolicy kGuards{true};

Vec random_vec(const FormRingContext& ctx, Prng& rng) {
  Vec v(ctx.dim());
  for (auto& x : v) x = ctx.ring()->random_elem(rng);
  return v;
}

// Random vector admissible for an Eichler transvection: v_{-1} = 0 and
// |v| in Lambda (rejection-sampled).
Vec random_isotropic(const FormRingContext& ctx, Prng& rng) {
  for (;;) {
    Vec v = random_vec(ctx, rng);
    v[ctx.pos(-1)] = ctx.ring()->zero();
    if (ctx.lambda_set().contains(*ctx.ring(), ctx.value(v))) return v;
  }
}

}  // namespace

TEST_CASE("signed index coordinates") {
  FormRingContext ctx = unitary_ctx(zm_symplectic(3), 3);
  CHECK(ctx.dim() == 6);
  for (int p = 0; p < ctx.dim(); ++p) CHECK(ctx.pos(ctx.signed_index(p)) == p);
  for (int i : signed_indices(3)) CHECK(ctx.signed_index(ctx.pos(i)) == i);
  CHECK_THROWS_AS(ctx.pos(0), Error);
  CHECK_THROWS_AS(ctx.pos(4), Error);
}

TEST_CASE("short and long transvection shapes") {
  RingPtr R = zm_symplectic(5);
  FormRingContext ctx = unitary_ctx(R, 3);
  const RingElem x = R->from_int(2);

  const Mat t12 = ctx.t_mat(1, 2, x);
  CHECK(t12.at(ctx.pos(1), ctx.pos(2)) == x);
  // Mirror entry at (-j,-i) with the lambda-power twist.
  CHECK(t12.at(ctx.pos(-2), ctx.pos(-1)) ==
        R->neg(R->mul(R->lambda_power(1, 2), R->conj(x))));
  CHECK(mul(t12, ctx.t_mat(1, 2, R->from_int(3))) ==
        ctx.t_mat(1, 2, R->zero()));
  CHECK(ctx.t_mat(1, 2, R->zero()) == Mat::identity(R, 6));

  const Mat t1m = ctx.t_mat(1, -1, x);
  Mat expect = Mat::identity(R, 6);
  expect.at(ctx.pos(1), ctx.pos(-1)) = x;
  CHECK(t1m == expect);
  CHECK(ctx.is_member(t12));
  CHECK(ctx.is_member(t1m));
}

TEST_CASE("long-root parameter domains") {
  FormRingContext ortho = ortho_ctx(zm(5), 3);
  CHECK(ortho.orthogonal_form());
  CHECK(ortho.long_params(1).size() == 1);
  CHECK(ortho.long_param_ok(1, ortho.ring()->zero()));
  CHECK_FALSE(ortho.long_param_ok(1, ortho.ring()->one()));
  CHECK_THROWS_AS(ortho.t_mat(1, -1, ortho.ring()->one()), Error);

  FormRingContext sympl = unitary_ctx(zm_symplectic(4), 3);
  CHECK(sympl.long_params(1).size() == 4);
  CHECK(sympl.long_params(-1).size() == 4);

  // Gaussian ring: Lambda = the imaginary line, same on both signs since
  // lambda = 1.
  FormRingContext gauss = unitary_ctx(gaussian(3), 3);
  CHECK(gauss.long_params(2).size() == 3);
  CHECK(gauss.long_param_ok(2, gauss.ring()->t()));
  CHECK_FALSE(gauss.long_param_ok(2, gauss.ring()->one()));
}

TEST_CASE("permutation words") {
  FormRingContext ctx = unitary_ctx(zm_symplectic(5), 3);
  for (auto [i, j] : {std::pair{1, 2}, {2, -3}, {-1, 3}, {-2, -3}}) {
    CHECK(mul(ctx.p_mat(i, j), ctx.p_mat(j, i)) ==
          Mat::identity(ctx.ring(), ctx.dim()));
    CHECK(ctx.is_member(ctx.p_mat(i, j)));
    CHECK(evaluate_elem(ctx, ctx.p_word(i, j)) == ctx.p_mat(i, j));
  }
  CHECK_THROWS_AS(ctx.p_mat(1, -1), Error);
}

TEST_CASE("form identities") {
  for (FormRingContext ctx : {unitary_ctx(zm_symplectic(4), 3),
                              unitary_ctx(gaussian(3), 3),
                              ortho_ctx(zm(5), 3)}) {
    const Ring& R = *ctx.ring();
    Prng rng(41);
    for (int trial = 0; trial < 15; ++trial) {
      const Vec u = random_vec(ctx, rng);
      const Vec v = random_vec(ctx, rng);
      // h = f + lambda * conj(f-transpose)
      CHECK(ctx.form_h(u, v) ==
            R.add(ctx.form_f(u, v),
                  R.mul(R.lambda(), R.conj(ctx.form_f(v, u)))));
      // h(u,v) = polarity(u) . v
      const Vec pol = ctx.polarity(u);
      RingElem dot = R.zero();
      for (int p = 0; p < ctx.dim(); ++p) dot = R.add(dot, R.mul(pol[p], v[p]));
      CHECK(ctx.form_h(u, v) == dot);
      // Sesquilinearity of f in the first slot.
      const RingElem a = R.random_elem(rng);
      Vec au = u;
      for (auto& e : au) e = R.mul(a, e);
      CHECK(ctx.form_f(au, v) == R.mul(R.conj(a), ctx.form_f(u, v)));
    }
  }
}

TEST_CASE("members preserve the form") {
  FormRingContext ctx = unitary_ctx(zm_symplectic(4), 3);
  const Ring& R = *ctx.ring();
  Prng rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const Mat sigma = ctx.random_member(12, rng);
    REQUIRE(ctx.is_member(sigma));
    const Vec u = random_vec(ctx, rng);
    const Vec v = random_vec(ctx, rng);
    CHECK(ctx.form_h(mat_vec(sigma, u), mat_vec(sigma, v)) == ctx.form_h(u, v));
    // Quadratic values are preserved mod Lambda; on columns that means
    // |sigma_{*j}| in Lambda.
    const RingElem drift =
        R.sub(ctx.value(mat_vec(sigma, u)), ctx.value(u));
    CHECK(ctx.lambda_set().contains(R, drift));
    for (int j : signed_indices(3))
      CHECK(ctx.lambda_set().contains(R, ctx.column_value(sigma, j)));
  }
  // Tampering with one entry breaks membership.
  Mat bad = ctx.random_member(12, rng);
  bad.at(0, 1) = R.add(bad.at(0, 1), R.one());
  CHECK_FALSE(ctx.is_member(bad));
  Mat broken_mirror = ctx.t_mat(1, 2, R.one());
  broken_mirror.at(ctx.pos(-2), ctx.pos(-1)) = R.zero();
  CHECK_FALSE(ctx.is_member(broken_mirror));
}

TEST_CASE("relation suites") {
  RelationReport sympl = check_unitary_relations(unitary_ctx(zm_symplectic(3), 3));
  CHECK(sympl.ok());
  CHECK(sympl.total_checked() > 0);
  RelationReport ortho = check_unitary_relations(ortho_ctx(zm(4), 3));
  CHECK(ortho.ok());
  for (const auto& line : ortho.lines) {
    INFO(line.name);
    CHECK(line.failed == 0);
  }
  // Deterministic tallies for a fixed context.
  RelationReport again = check_unitary_relations(unitary_ctx(zm_symplectic(3), 3));
  REQUIRE(again.lines.size() == sympl.lines.size());
  for (std::size_t k = 0; k < again.lines.size(); ++k)
    CHECK(again.lines[k].checked == sympl.lines[k].checked);
}

TEST_CASE("eichler transvections") {
  for (FormRingContext ctx : {unitary_ctx(zm_symplectic(4), 3),
                              ortho_ctx(zm(5), 3),
                              unitary_ctx(gaussian(3), 3)}) {
    const Ring& R = *ctx.ring();
    Prng rng(47);
    for (int trial = 0; trial < 10; ++trial) {
      const Vec v = random_isotropic(ctx, rng);
      EichlerTransvection et = eichler(ctx, v, kGuards);
      CHECK(ctx.is_member(et.mat));
      CHECK(evaluate_elem(ctx, et.word) == et.mat);
      CHECK(et.strict_isotropy == R.is_zero(ctx.value(v)));

      const Mat sigma = ctx.random_member(10, rng);
      CHECK(conjugated_eichler(ctx, sigma, v, kGuards) ==
            mul(mul(sigma, et.mat), inverse(sigma)));
    }
  }

  FormRingContext ortho = ortho_ctx(zm(5), 3);
  Vec bad(ortho.dim(), ortho.ring()->zero());
  bad[ortho.pos(-1)] = ortho.ring()->one();
  CHECK_THROWS_AS(eichler(ortho, bad, kGuards), Error);
  Vec aniso(ortho.dim(), ortho.ring()->zero());
  aniso[ortho.pos(2)] = ortho.ring()->one();
  aniso[ortho.pos(-2)] = ortho.ring()->one();  // |v| = 1, not in {0}
  CHECK_THROWS_AS(eichler(ortho, aniso, kGuards), Error);
}

TEST_CASE("hat value formula matches direct conjugation") {
  FormRingContext ctx = unitary_ctx(zm_symplectic(4), 3);
  Prng rng(53);
  for (int trial = 0; trial < 5; ++trial) {
    const Mat sigma = ctx.random_member(12, rng);
    for (int i : signed_indices(3))
      for (int j : signed_indices(3)) {
        if (i == j || i == -j) continue;
        const Mat hat = mul(mul(ctx.p_mat(i, j), sigma), ctx.p_mat(j, i));
        CHECK(hat_value_formula(ctx, sigma, i, j, kGuards) ==
              ctx.column_value(hat, i));
      }
  }
}

TEST_CASE("row-column duality for unit-scaled columns") {
  FormRingContext ctx = unitary_ctx(zm_symplectic(4), 3);
  const Ring& R = *ctx.ring();
  const RingElem x = R.from_int(3);

  Mat h = Mat::identity(ctx.ring(), ctx.dim());
  h.at(ctx.pos(2), ctx.pos(2)) = x;
  h.at(ctx.pos(-2), ctx.pos(-2)) = R.conj(R.inv(x));
  REQUIRE(ctx.is_member(h));
  CHECK(dual_row_column_check(ctx, h, 2, x));
  CHECK(dual_row_column_check(ctx, h, -2, R.conj(R.inv(x))));

  // Vacuous when the premise fails.
  Prng rng(59);
  const Mat sigma = ctx.random_member(12, rng);
  CHECK(dual_row_column_check(ctx, sigma, 1, R.one()));

  // A matrix violating the duality is caught.
  Mat bad = h;
  bad.at(ctx.pos(-2), ctx.pos(1)) = R.one();
  CHECK_FALSE(dual_row_column_check(ctx, bad, 2, x));
}
