#pragma once

#include "elemconj/hyperbolic.hpp"

namespace elemconj {

// Constructive decompositions for the even-dimensional orthogonal group
// (the orthogonal specialization of FormRingContext): express T_kl applied to
// entries of a member sigma as short products of elementary sigma-conjugates,
// with exact counts 8 / 16 / 24 / 48.

// T_32(sigma_23) as 8 elementary sigma-conjugates (the reference chain).
ConjWord o_entry_word_23(const FormRingContext& ctx, const Mat& sigma,
                         const GuardPolicy& gp);

// T_kl(sigma_ij) as 8 elementary sigma-conjugates (i != +-j, k != +-l):
// route (i,j) to (2,3) by signed monomial conjugations, run the reference
// chain, then move the target cleanly to (k,l).
ConjWord o_entry_word(const FormRingContext& ctx, const Mat& sigma, int i,
                      int j, int k, int l, const GuardPolicy& gp);

// T_kl(sigma_{i,-i}) as 16 elementary sigma-conjugates, via the shifted
// matrix ^{T_ji(1)}sigma whose (j,-i) entry is sigma_{i,-i} + sigma_{j,-i}.
// The correction factor is T_kl(-sigma_{j,-i}); the trace carries a
// corrected_factor marker for it.
ConjWord o_antidiag_word(const FormRingContext& ctx, const Mat& sigma, int i,
                         int k, int l, const GuardPolicy& gp);

// T_kl(sigma_ii - sigma_jj) as 24 elementary sigma-conjugates (i != +-j).
ConjWord o_diag_diff_word(const FormRingContext& ctx, const Mat& sigma, int i,
                          int j, int k, int l, const GuardPolicy& gp);

// T_kl(sigma_ii - sigma_{-i,-i}) as 48 elementary sigma-conjugates.
ConjWord o_opposite_diag_word(const FormRingContext& ctx, const Mat& sigma,
                              int i, int k, int l, const GuardPolicy& gp);

// Scaled variants: T_kl(x * stat) for an arbitrary coefficient x, obtained by
// one extra commutator with T_ka(x) over an auxiliary index a outside
// {+-k, +-l}.  Counts double to 16 / 32 / 48.
ConjWord o_multiple_entry_word(const FormRingContext& ctx, const Mat& sigma,
                               const RingElem& x, int i, int j, int k, int l,
                               const GuardPolicy& gp);

ConjWord o_multiple_antidiag_word(const FormRingContext& ctx, const Mat& sigma,
                                  const RingElem& x, int i, int k, int l,
                                  const GuardPolicy& gp);

ConjWord o_multiple_diag_diff_word(const FormRingContext& ctx, const Mat& sigma,
                                   const RingElem& x, int i, int j, int k,
                                   int l, const GuardPolicy& gp);

}  // namespace elemconj
