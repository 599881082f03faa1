#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "elemconj/linalg.hpp"

namespace elemconj {

// Transvection families.  GlShort lives in GL_n (indices 1..n, i != j);
// UShort/ULong live in the hyperbolic groups (indices +-1..+-n); the
// orthogonal group is the unitary machinery with trivial involution,
// lambda = 1 and Lambda = {0}, so it needs no family of its own.
enum class TransvFamily { GlShort, UShort, ULong };

struct Transvection {
  TransvFamily family = TransvFamily::GlShort;
  int i = 0;
  int j = 0;
  RingElem x;
};

// What a module must provide for the word calculus to evaluate transvections.
// Implemented by GlContext and FormRingContext.
class GroupCtx {
 public:
  virtual ~GroupCtx() = default;
  virtual const RingPtr& ring() const = 0;
  virtual int dim() const = 0;
  // Throws BadIndex / FormParamViolation when the transvection is malformed.
  virtual void validate(const Transvection& t) const = 0;
  virtual void apply_left(Mat& m, const Transvection& t) const = 0;   // m := T m
  virtual void apply_right(Mat& m, const Transvection& t) const = 0;  // m := m T
  Mat transvection_matrix(const Transvection& t) const;
};

// A word in elementary transvections, evaluated left to right:
// eval = ts[0] * ts[1] * ... * ts.back().
struct ElemWord {
  std::vector<Transvection> ts;
};

ElemWord concat(ElemWord a, const ElemWord& b);
// Reverse order, negate parameters (valid for long roots too: the parameter
// sets are additive subgroups).
ElemWord inverse_word(const GroupCtx& ctx, const ElemWord& w);
Mat evaluate_elem(const GroupCtx& ctx, const ElemWord& w);
void mul_left_elem(const GroupCtx& ctx, Mat& m, const ElemWord& w);   // m := E m
void mul_right_elem(const GroupCtx& ctx, Mat& m, const ElemWord& w);  // m := m E

// One factor ^eps sigma^{sign} of a sigma-conjugate product.
struct ConjFactor {
  ElemWord conjugator;
  int sign = 1;  // +1 or -1
};

// Extra trace payload for the constructions that carry it.
struct TraceExtras {
  // Generator-bucket decomposition (unitary entry words).
  std::vector<std::pair<std::string, RingElem>> buckets;
  std::optional<int> bound;         // published factor-count bound, if any
  bool corrected_factor = false;    // antidiagonal correction factor position
  std::optional<bool> strict_isotropy;  // Eichler vector had f(v,v) == 0 exactly
};

// A product of elementary sigma-conjugates.  `value`/`value_inv` are exact
// running evaluations maintained by every operation, so the finalize check is
// O(dim^2) while full re-evaluation from the factors stays available for
// independent verification.  Words are never auto-simplified.
struct ConjWord {
  Mat sigma, sigma_inv;
  std::vector<ConjFactor> factors;
  Mat value, value_inv;
  Mat claimed_target;
  bool finalized = false;
  TraceExtras extras;

  std::size_t count() const { return factors.size(); }
};

// Empty word (value = identity) over the given base.
ConjWord make_conj_word(const GroupCtx& ctx, Mat sigma);
// Same, but reusing an already-computed inverse of sigma.
ConjWord make_conj_word(const GroupCtx& ctx, Mat sigma, Mat sigma_inv);

// Low-level: append the single factor ^eps sigma^{sign}.
void append_factor(const GroupCtx& ctx, ConjWord& w, ElemWord conjugator, int sign);

// ^(e) w : prepend e to every conjugator.  Count preserved.
ConjWord conj_by(const GroupCtx& ctx, const ElemWord& e, ConjWord w);
// Reverse factors, flip signs.  Count preserved.
ConjWord invert(const GroupCtx& ctx, ConjWord w);
// Words over the same base multiply by concatenation.
ConjWord concat(const GroupCtx& ctx, ConjWord a, const ConjWord& b);
// [E, eval(w)] = (^E w) * w^{-1}.  Count doubles.
ConjWord commutator_with(const GroupCtx& ctx, const ElemWord& e, const ConjWord& w);

// ^(b^{-1})[a, eval(w)] with the shuffle identity ^(b^{-1})[a,bc] = [b^{-1},a][a,c]
// guard-asserted for c := b^{-1} eval(w).  Count doubles.
ConjWord shuffle_lemma(const GroupCtx& ctx, const ElemWord& a, const ElemWord& b,
                       const ConjWord& w, const GuardPolicy& gp);

// Input word lives over sigma_hat = mu sigma mu^{-1}; reinterpret it over
// sigma by appending mu to every conjugator.  Value and count preserved.
ConjWord rebase_conjugated(const GroupCtx& ctx, ConjWord w, const ElemWord& mu,
                           Mat sigma, const GuardPolicy& gp);

// Input word lives over zeta = W [sigma^{-1}, E] W^{-1} (W, E elementary).
// Each zeta-factor expands into two sigma-factors, so the count doubles while
// the value is unchanged.
ConjWord rebase_commutator(const GroupCtx& ctx, const ConjWord& w,
                           const ElemWord& big_w, const ElemWord& e_word,
                           Mat sigma, const GuardPolicy& gp);

// Asserts value == claimed (always; this is the cheap invariant) and marks
// the word finalized.
void finalize(ConjWord& w, Mat claimed);

// Full independent re-evaluation from the factor list.
Mat evaluate_conj(const GroupCtx& ctx, const ConjWord& w);
bool verify_word(const GroupCtx& ctx, const ConjWord& w);

// Optional reporting pass: drops parameter-0 transvections from conjugators
// and cancels adjacent mutually-inverse factors.  Construction counts are
// never based on this.
ConjWord prune(const GroupCtx& ctx, ConjWord w);

// Trace serialization:
//   {"sigma": Mat, "factors": [{"conjugator": [{family,i,j,x}], "sign": +-1}],
//    "claimed_target": Mat, "count": int, "verified": bool, ...extras}
std::string conj_word_to_json(const GroupCtx& ctx, const ConjWord& w,
                              bool verified,
                              const std::vector<std::pair<std::string, std::int64_t>>&
                                  extra_ints = {});

// Outcome of an exhaustive/sampled relation suite.
struct RelationLine {
  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t failed = 0;
};

struct RelationReport {
  std::vector<RelationLine> lines;
  bool ok() const {
    for (const auto& l : lines)
      if (l.failed != 0) return false;
    return true;
  }
  std::uint64_t total_checked() const {
    std::uint64_t s = 0;
    for (const auto& l : lines) s += l.checked;
    return s;
  }
};

}  // namespace elemconj
