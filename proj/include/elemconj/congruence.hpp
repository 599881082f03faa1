#pragma once

#include <string>
#include <vector>

#include "elemconj/gln.hpp"
#include "elemconj/hyperbolic.hpp"

namespace elemconj {

// Ideal and form-ideal arithmetic over finite rings, level extraction, and
// the congruence-subgroup membership predicates, plus the sandwich desk check
// that verifies both inclusions E(level) <= <sigma>-normalized <= C(level)
// constructively on concrete instances.

// An ideal realized as an explicit element set.  Alongside every element we
// keep one representation
//     x = sum_g  coeff[g] * gens[g]
// discovered during the closure walk, so a constructive witness for x can be
// assembled from witnesses for the generators.
struct Ideal {
  std::vector<RingElem> gens;
  std::vector<RingElem> elems;              // discovery order; elems[0] = 0
  std::vector<std::vector<RingElem>> reps;  // reps[k][g]: coeff of gens[g] in elems[k]

  bool contains(const Ring& ring, const RingElem& x) const;
  // Representation of x over gens; fails NotMember when x is not in the ideal.
  const std::vector<RingElem>& rep_of(const Ring& ring, const RingElem& x) const;
  RealizedSet as_set(const Ring& ring) const;
};

// The ideal generated by gens: breadth-first closure under x -> x + a*g over
// all ring elements a and generators g (enough for two-sided ideals of a
// commutative ring), recording one representation per element and re-checking
// every representation against the element before returning.
Ideal realize_ideal(const Ring& ring, std::vector<RingElem> gens,
                    std::uint64_t budget = kEnumerationBudget);

// conj(I) == I as sets; required of form-ideal bases.
bool involution_stable(const Ring& ring, const Ideal& ideal);

// Provenance of one level generator: which matrix statistic produced it.
struct LevelGenerator {
  enum class Kind { Entry, Antidiag, DiagDiff };
  Kind kind = Kind::Entry;
  // Entry: the (i,j) entry (i != j, and i != -j in the hyperbolic case).
  // Antidiag: the (i,-i) entry.  DiagDiff: sigma_ii - sigma_jj.
  int i = 0;
  int j = 0;
  RingElem value;
};

// Canonical generator list for the level of sigma: every off-diagonal entry
// and every diagonal difference, in a fixed enumeration order.
std::vector<LevelGenerator> level_generators(const GlContext& ctx, const Mat& sigma);
std::vector<LevelGenerator> level_generators(const FormRingContext& ctx, const Mat& sigma);

// Level of a member sigma: the ideal generated by all its off-diagonal
// entries and diagonal differences.  Fails NotMember for non-members.
Ideal level_of(const GlContext& ctx, const Mat& sigma,
               std::uint64_t budget = kEnumerationBudget);
Ideal level_of(const FormRingContext& ctx, const Mat& sigma,
               std::uint64_t budget = kEnumerationBudget);

// Principal congruence subgroup membership: sigma == e entrywise mod I.
bool is_in_principal(const GlContext& ctx, const Mat& sigma, const Ideal& ideal);
bool is_in_principal(const FormRingContext& ctx, const Mat& sigma, const Ideal& ideal);

// Full congruence subgroup membership: all off-diagonal entries and all
// diagonal differences of sigma lie in I (diagonal entries themselves are
// unconstrained).
bool is_in_full_congruence(const GlContext& ctx, const Mat& sigma, const Ideal& ideal);
bool is_in_full_congruence(const FormRingContext& ctx, const Mat& sigma, const Ideal& ideal);

// A form ideal (I, Gamma): an involution-stable ideal together with a
// relative form parameter realized inside I intersect Lambda.
struct FormIdeal {
  Ideal ideal;
  RelFormParam gamma_param;
  RealizedSet gamma;
};

// Level form ideal of a unitary member: I is the level ideal of sigma, and
// Gamma is the relative span of the conjugation-closed column values
// { a |sigma_{*j}| conj(a) : j in Omega, a in R } on top of Gamma_min(I).
// Closing the span generators under a |-> a y conj(a) up front is what makes
// the additive span itself conjugation-stable, which realize_rel_form_param
// validates.
FormIdeal extract_form_ideal(const FormRingContext& ctx, const Mat& sigma,
                             std::uint64_t budget = kEnumerationBudget);

// Unitary principal congruence membership: sigma == e entrywise mod I and
// |sigma_{*j}| in Gamma for every column j.
bool is_in_unitary_principal(const FormRingContext& ctx, const Mat& sigma,
                             const FormIdeal& fi);

// Unitary full congruence membership: [sigma, T] lies in the principal
// congruence subgroup for every elementary generator T (all short-root
// (i,j,x) with x over the whole ring, all long-root (i,y) with y over the
// valid parameter set).  Quantifying over generators instead of the whole
// elementary subgroup is an optimization that relies on the principal
// subgroup being normalized by the elementary group; the check itself stays
// exact.  Fails BudgetExceeded when the generator count exceeds the budget.
bool is_in_unitary_full(const FormRingContext& ctx, const Mat& sigma,
                        const FormIdeal& fi,
                        std::uint64_t budget = kEnumerationBudget);

// Sandwich desk check.  Extracts the level (form) ideal from sigma's
// decomposition targets, verifies the upper inclusion by full-congruence
// membership of sigma, and verifies the lower inclusion constructively: for
// every x in the realized level ideal it assembles a ConjWord for t_12(x)
// (resp. T_12(x)) from scaled decomposition words over sigma driven by the
// ideal representation of x, and re-verifies the word independently.  In the
// unitary case it additionally exhibits a verified T_{-1,1}(y) word over
// sigma for every distinct Gamma generator value y.  Returns a JSON report:
//   {"group": ..., "level_generators": [...], "upper_inclusion": bool,
//    "lower_inclusion_verified_elements": int,
//    "gamma_generators_verified": int (unitary only),
//    "failures": [...]}
std::string sct_desk_check(const GlContext& ctx, const Mat& sigma,
                           const GuardPolicy& gp);
std::string sct_desk_check(const FormRingContext& ctx, const Mat& sigma,
                           const GuardPolicy& gp);

}  // namespace elemconj
