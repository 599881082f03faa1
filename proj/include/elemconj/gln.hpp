#pragma once

#include "elemconj/words.hpp"

namespace elemconj {

// GL_n(R) with its elementary transvections t_ij(x) = e + x e^ij (1-based
// indices, i != j, n >= 3).
class GlContext : public GroupCtx {
 public:
  GlContext(RingPtr ring, int n);

  const RingPtr& ring() const override { return ring_; }
  int dim() const override { return n_; }
  int n() const { return n_; }

  void validate(const Transvection& t) const override;
  void apply_left(Mat& m, const Transvection& t) const override;
  void apply_right(Mat& m, const Transvection& t) const override;

  Transvection t(int i, int j, RingElem x) const;
  ElemWord t_word(int i, int j, RingElem x) const;
  Mat t_mat(int i, int j, const RingElem& x) const;
  // p_ij = t_ij(1) t_ji(-1) t_ij(1); p_ij^{-1} = p_ji.
  ElemWord p_word(int i, int j) const;
  Mat p_mat(int i, int j) const;

  std::pair<Mat, ElemWord> random_member(int len, Prng& rng) const;

 private:
  RingPtr ring_;
  int n_;
};

// Exhaustive (or sampled, beyond `pair_budget` parameter pairs) check of the
// transvection relations: additivity, disjoint commutation, the product
// relation [t_ij, t_jk] = t_ik(xy), and the four p-conjugation moves.
RelationReport check_gl_relations(const GlContext& ctx,
                                  std::uint64_t pair_budget = 1 << 14);

// t_32(sigma_23) as a product of 8 elementary sigma-conjugates, following the
// commutator chain with all intermediate shapes guard-asserted.
ConjWord gl_entry_word_23(const GlContext& ctx, const Mat& sigma,
                          const GuardPolicy& gp);

// t_kl(sigma_ij) as 8 sigma-conjugates for any i != j, k != l: route (i,j) to
// (2,3) by signed p-permutations (plus a sign-washing square when needed),
// run the (2,3) chain, then move the target to (k,l) by clean p-moves.
ConjWord gl_entry_word(const GlContext& ctx, const Mat& sigma, int i, int j,
                       int k, int l, const GuardPolicy& gp);

// t_kl(sigma_ii - sigma_jj) as 24 sigma-conjugates.
ConjWord gl_diag_diff_word(const GlContext& ctx, const Mat& sigma, int i, int j,
                           int k, int l, const GuardPolicy& gp);

// t_kl(x * sigma_ij) as 16 sigma-conjugates (entry word into a commutator).
ConjWord gl_multiple_entry_word(const GlContext& ctx, const Mat& sigma,
                                const RingElem& x, int i, int j, int k, int l,
                                const GuardPolicy& gp);

// t_kl(x * (sigma_ii - sigma_jj)) as 48 sigma-conjugates.
ConjWord gl_multiple_diag_diff_word(const GlContext& ctx, const Mat& sigma,
                                    const RingElem& x, int i, int j, int k,
                                    int l, const GuardPolicy& gp);

}  // namespace elemconj
