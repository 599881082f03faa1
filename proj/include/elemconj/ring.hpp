#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "elemconj/errors.hpp"
#include "elemconj/prng.hpp"

namespace elemconj {

// Elements live in (Z/m)[t]/(f) with f monic (or plain Z/m when f is absent).
// Coefficients are stored low-to-high, canonically reduced into [0, m) and to
// degree < deg(f).  The inline array keeps matrix kernels allocation-free;
// degree is bounded by kMaxDeg and validated at ring construction.
inline constexpr int kMaxDeg = 8;

struct RingElem {
  std::array<std::uint32_t, kMaxDeg> c{};
  friend bool operator==(const RingElem&, const RingElem&) = default;
};

enum class InvolutionKind { Trivial, Neg, CMinus };

struct RingSpec {
  std::uint64_t m = 0;
  // Monic polynomial, coefficients low..high including the leading 1.
  // Empty means no extension: the ring is Z/m itself.
  std::vector<std::int64_t> f;
  InvolutionKind involution = InvolutionKind::Trivial;
  // Only read when involution == CMinus: the involution sends t to c - t.
  std::int64_t c = 0;
  // Coefficients of lambda, low..high (a bare integer is a 1-element list).
  std::vector<std::int64_t> lambda = {1};
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

class Ring {
 public:
  // Use make_ring(); the constructor validates everything and throws
  // InvalidInvolution / InvalidLambda / ParseError on bad specs.
  explicit Ring(const RingSpec& spec);

  const RingSpec& spec() const { return spec_; }
  std::uint64_t modulus() const { return m_; }
  int degree() const { return deg_; }
  // m^deg, i.e. |R|; 0 if it does not fit in 64 bits.
  std::uint64_t size() const { return size_; }

  RingElem zero() const { return RingElem{}; }
  RingElem one() const { return from_int(1); }
  RingElem from_int(std::int64_t v) const;
  RingElem from_coeffs(const std::vector<std::int64_t>& coeffs) const;
  RingElem t() const;  // the adjoined generator (fails BadIndex if deg == 1)

  RingElem add(const RingElem& a, const RingElem& b) const;
  RingElem sub(const RingElem& a, const RingElem& b) const;
  RingElem neg(const RingElem& a) const;
  RingElem mul(const RingElem& a, const RingElem& b) const;
  RingElem conj(const RingElem& a) const;

  bool is_zero(const RingElem& a) const;
  bool trivial_involution() const { return trivial_conj_; }

  // Mixed-radix encoding; total order used for deterministic iteration.
  std::uint64_t encode(const RingElem& a) const;
  RingElem decode(std::uint64_t idx) const;

  bool is_unit(const RingElem& a) const;
  // Throws NotInvertible when a is not a unit.
  RingElem inv(const RingElem& a) const;

  RingElem lambda() const { return lambda_; }
  RingElem lambda_bar() const { return lambda_bar_; }  // == lambda^{-1}
  // lambda^k for small k of either sign.
  RingElem lambda_int_pow(int k) const;
  // lambda^{(eps(j)-eps(i))/2} for hyperbolic indices i, j (only their signs
  // matter); the exponent is always -1, 0 or +1.
  RingElem lambda_power(int i, int j) const;

  RingElem random_elem(Prng& rng) const;

  std::string to_string(const RingElem& a) const;

 private:
  void validate_involution() const;
  void validate_lambda() const;

  RingSpec spec_;
  std::uint64_t m_ = 0;
  int deg_ = 1;
  std::uint64_t size_ = 0;
  std::array<RingElem, kMaxDeg> t_red_pow_;   // t^(deg+k) reduced, k = 0..deg-2
  std::array<RingElem, kMaxDeg> conj_t_pow_;  // conj(t)^k, k = 0..deg-1
  bool trivial_conj_ = true;
  RingElem lambda_, lambda_bar_;
  mutable std::vector<std::uint64_t> inverse_cache_;  // encode(x) -> encode(x^-1)+1, 0 = unknown/none
  mutable bool inverse_cache_built_ = false;
};

RingPtr make_ring(const RingSpec& spec);

// Form parameters: additive subgroups Lambda with
// Lambda_min = { x - lambda*conj(x) }  <=  Lambda  <=  Lambda_max = { x : x = -lambda*conj(x) },
// closed under x |-> a x conj(a).  Span means: additive closure of the given
// generators together with Lambda_min (then validated against the axioms).
enum class FormParamKind { Min, Max, Span };

struct FormParam {
  FormParamKind kind = FormParamKind::Min;
  std::vector<RingElem> span_gens;
};

// A realized form parameter (or any additive subgroup realized the same way):
// explicit element list plus O(1) membership, with the enumeration budget
// enforced at construction.
class RealizedSet {
 public:
  RealizedSet() = default;
  RealizedSet(const Ring& ring, std::vector<RingElem> elems);

  bool contains(const Ring& ring, const RingElem& x) const;
  const std::vector<RingElem>& elems() const { return elems_; }
  std::size_t size() const { return elems_.size(); }

 private:
  std::vector<RingElem> elems_;       // sorted by encode()
  std::vector<bool> member_;          // indexed by encode()
};

inline constexpr std::uint64_t kEnumerationBudget = 1ull << 16;

// Enumerates the whole ring (BudgetExceeded when |R| > the budget).
std::vector<RingElem> enumerate_ring(const Ring& ring,
                                     std::uint64_t budget = kEnumerationBudget);

// Realize a form parameter as an explicit set; validates
// Lambda_min <= Lambda <= Lambda_max and a-stability for Span.
RealizedSet realize_form_param(const Ring& ring, const FormParam& fp,
                               std::uint64_t budget = kEnumerationBudget);

// Membership x in Lambda without keeping the realization around.
bool form_param_membership(const Ring& ring, const FormParam& fp,
                           const RingElem& x,
                           std::uint64_t budget = kEnumerationBudget);

// Relative form parameter (I, Gamma) for a form ideal: given the realized
// ideal I and the ambient Lambda,
//   Gamma_min = { x - lambda*conj(x) : x in I } + < x y conj(x) : x in I, y in Lambda >,
//   Gamma_max = I intersect Lambda.
struct RelFormParam {
  FormParamKind kind = FormParamKind::Min;
  std::vector<RingElem> span_gens;
};

RealizedSet realize_rel_form_param(const Ring& ring, const RealizedSet& ideal,
                                   const RealizedSet& lambda_set,
                                   const RelFormParam& gp,
                                   std::uint64_t budget = kEnumerationBudget);

// JSON round-trip for ring specs; schema
//   {"m": int, "f": [c0, ...] | null, "involution": "trivial"|"neg"|"c_minus",
//    "c": int (c_minus only), "lambda": [c0, ...]}
std::string ring_spec_to_json(const RingSpec& spec);
RingSpec ring_spec_from_json(const std::string& text);

}  // namespace elemconj
