#pragma once

#include "elemconj/hyperbolic.hpp"

namespace elemconj {

// Constructive decompositions for the hyperbolic unitary group over a form
// ring: express transvections in entries of a member sigma as products of
// elementary sigma-conjugates with exact counts 16 / 32 / 160 / 320 / 480 /
// 960, plus the column-value long transvections with published bounds.
// Multiplier variants cost the same as the plain ones (the coefficient rides
// along in the chain parameters), and conj variants reuse the index-mirroring
// identity T_ij(x) = T_{-j,-i}(-lambda^{(eps(j)-eps(i))/2} conj(x)).

// T_kl(x * conj(sigma_23) sigma_{2,-1}) as 16 elementary sigma-conjugates.
ConjWord u_step1_word(const FormRingContext& ctx, const Mat& sigma,
                      const RingElem& x, int k, int l, const GuardPolicy& gp);

// T_kl(x * conj(sigma_23) sigma_21) as 16 elementary sigma-conjugates.
ConjWord u_step2_word(const FormRingContext& ctx, const Mat& sigma,
                      const RingElem& x, int k, int l, const GuardPolicy& gp);

// T_kl(x * conj(sigma_23) sigma_22) as 32 elementary sigma-conjugates.
ConjWord u_step3_word(const FormRingContext& ctx, const Mat& sigma,
                      const RingElem& x, int k, int l, const GuardPolicy& gp);

// T_32(sigma_23) as 160 elementary sigma-conjugates (the reference
// assembly); trace carries the generator buckets.
ConjWord u_entry_word_32(const FormRingContext& ctx, const Mat& sigma,
                         const GuardPolicy& gp);

// T_kl(x * sigma_ij) as 160 elementary sigma-conjugates (i != +-j,
// k != +-l): route (i,j) onto the reference entry, absorbing the signed
// monomial units into the multiplier, run the bucket assembly, then move the
// target cleanly to (k,l).
ConjWord u_entry_multiple_word(const FormRingContext& ctx, const Mat& sigma,
                               const RingElem& x, int i, int j, int k, int l,
                               const GuardPolicy& gp);

// T_kl(x * conj(sigma_ij)) as 160 elementary sigma-conjugates.
ConjWord u_conj_entry_multiple_word(const FormRingContext& ctx,
                                    const Mat& sigma, const RingElem& x,
                                    int i, int j, int k, int l,
                                    const GuardPolicy& gp);

// T_kl(sigma_ij) as 160 elementary sigma-conjugates.
ConjWord u_entry_word(const FormRingContext& ctx, const Mat& sigma, int i,
                      int j, int k, int l, const GuardPolicy& gp);

// T_kl(x * sigma_{i,-i}) as 320 elementary sigma-conjugates, via the shifted
// matrix ^{T_ji(1)}sigma whose (j,-i) entry is sigma_{i,-i} + sigma_{j,-i}.
ConjWord u_antidiag_multiple_word(const FormRingContext& ctx, const Mat& sigma,
                                  const RingElem& x, int i, int k, int l,
                                  const GuardPolicy& gp);

// T_kl(x * conj(sigma_{i,-i})) as 320 elementary sigma-conjugates.
ConjWord u_conj_antidiag_multiple_word(const FormRingContext& ctx,
                                       const Mat& sigma, const RingElem& x,
                                       int i, int k, int l,
                                       const GuardPolicy& gp);

// T_kl(sigma_{i,-i}) as 320 elementary sigma-conjugates.
ConjWord u_antidiag_word(const FormRingContext& ctx, const Mat& sigma, int i,
                         int k, int l, const GuardPolicy& gp);

// T_kl(x * (sigma_ii - sigma_jj)) as 480 elementary sigma-conjugates
// (i != +-j).
ConjWord u_diag_diff_multiple_word(const FormRingContext& ctx,
                                   const Mat& sigma, const RingElem& x, int i,
                                   int j, int k, int l, const GuardPolicy& gp);

// T_kl(sigma_ii - sigma_jj) as 480 elementary sigma-conjugates.
ConjWord u_diag_diff_word(const FormRingContext& ctx, const Mat& sigma, int i,
                          int j, int k, int l, const GuardPolicy& gp);

// T_kl(sigma_ii - sigma_{-i,-i}) as 960 elementary sigma-conjugates.
ConjWord u_opposite_diag_word(const FormRingContext& ctx, const Mat& sigma,
                              int i, int k, int l, const GuardPolicy& gp);

// T_{k,-k}(lambda^{-(eps(k)+1)/2} conj(x) conj(sigma_11) |sigma_{*1}|
// sigma_11 x) as at most (2n+17)*160+4 elementary sigma-conjugates
// (empirically (2n+16)*160+4): Eichler conjugate of an isotropic vector
// built from the first column, a two-word corrector, one commutator, and
// explicit peeling of every displayed factor.
ConjWord u_value_square_word(const FormRingContext& ctx, const Mat& sigma,
                             const RingElem& x, int k, const GuardPolicy& gp);

// T_{k,-k}(lambda^{-(eps(k)+1)/2} |sigma_{*j}|) as at most 1600n+4004
// elementary sigma-conjugates (1600n+2884 for j = 1, observed; the published
// j = 1 bound is 1600n+3044).
ConjWord u_value_word(const FormRingContext& ctx, const Mat& sigma, int j,
                      int k, const GuardPolicy& gp);

}  // namespace elemconj
