#pragma once

#include "elemconj/words.hpp"

namespace elemconj {

// Sign character on the hyperbolic index set Omega = {1..n} u {-n..-1}.
inline int eps_sign(int i) { return i > 0 ? 1 : -1; }

// Context for the hyperbolic groups on V = R^{2n} with basis ordered
// (e_1,...,e_n,e_{-n},...,e_{-1}).  The orthogonal group is the
// specialization (trivial involution, lambda = 1, Lambda = {0}); everything
// here is written once for the general form ring and reused for it.
class FormRingContext : public GroupCtx {
 public:
  // lambda_set must be a realized form parameter for ring (see realize_form_param).
  FormRingContext(RingPtr ring, int n, RealizedSet lambda_set,
                  bool orthogonal_form = false);

  const RingPtr& ring() const override { return ring_; }
  int dim() const override { return 2 * n_; }
  int n() const { return n_; }
  bool orthogonal_form() const { return orthogonal_; }
  const RealizedSet& lambda_set() const { return lambda_; }

  // 0-based matrix coordinate of a signed index and its inverse.
  int pos(int i) const;
  int signed_index(int p) const;

  void validate(const Transvection& t) const override;
  void apply_left(Mat& m, const Transvection& t) const override;
  void apply_right(Mat& m, const Transvection& t) const override;

  // Long-root parameter domain lambda^{-(eps(i)+1)/2} * Lambda.
  bool long_param_ok(int i, const RingElem& y) const;
  const std::vector<RingElem>& long_params(int i) const;

  // T_ij(x) = e + x e^ij - lambda^{(eps(j)-eps(i))/2} conj(x) e^{-j,-i} for
  // i != +-j, and T_{i,-i}(y) = e + y e^{i,-i} for valid long parameters y.
  Transvection t(int i, int j, RingElem x) const;
  ElemWord t_word(int i, int j, RingElem x) const;
  Mat t_mat(int i, int j, const RingElem& x) const;
  // P_ij = T_ij(1) T_ji(-1) T_ij(1); P_ij^{-1} = P_ji (i != +-j).
  ElemWord p_word(int i, int j) const;
  Mat p_mat(int i, int j) const;

  // f(u,v) = sum_{i>0} conj(u_i) v_{-i};  h(u,v) = f(u,v) + lambda * sum_{i>0}
  // conj(u_{-i}) v_i;  |v| = f(v,v).  The quadratic form q is represented by
  // |.| together with Lambda-membership of differences.
  RingElem form_f(const Vec& u, const Vec& v) const;
  RingElem form_h(const Vec& u, const Vec& v) const;
  RingElem value(const Vec& v) const { return form_f(v, v); }
  RingElem column_value(const Mat& m, int j) const;  // |m_{*j}|
  // Polarity row vector: polarity(v)_j = lambda^{(1+eps(j))/2} conj(v_{-j});
  // satisfies h(u,v) = polarity(u) . v.
  Vec polarity(const Vec& v) const;

  // Membership via the inverse-entry symmetry sigma^{-1}_ij =
  // lambda^{(eps(j)-eps(i))/2} conj(sigma_{-j,-i}) plus |sigma_{*j}| in Lambda.
  bool is_member(const Mat& sigma) const;

  // Random member: word of `len` random transvections, optionally times a
  // hyperbolic unit diagonal diag(u,1,...,1,conj(u)^{-1}).
  Mat random_member(int len, Prng& rng, bool with_unit = true) const;

 private:
  RingPtr ring_;
  int n_;
  RealizedSet lambda_;
  bool orthogonal_;
  std::vector<RingElem> long_plus_, long_minus_;  // domains for eps = +1 / -1
};

// Checks the transvection relations (R1)-(R6) and the three P-conjugation
// moves over all admissible index tuples, with ring parameters enumerated
// exhaustively when |R|^2 <= pair_budget and sampled otherwise.  Long-root
// parameters always range over the realized set (just {0} in the orthogonal
// case, which silently trivializes the long-root relations there).
RelationReport check_unitary_relations(const FormRingContext& ctx,
                                       std::uint64_t pair_budget = 1 << 14);

// Column transvection T_{*,-1}(v) for v with v_{-1} = 0 and |v| in Lambda:
// the matrix e + v e^t_{-1} - e_1 conj(lambda) polarity(v), its elementary
// factorization, and whether v was strictly isotropic (|v| = 0 exactly).
struct EichlerTransvection {
  Mat mat;
  ElemWord word;
  bool strict_isotropy;
};
EichlerTransvection eichler(const FormRingContext& ctx, const Vec& v,
                            const GuardPolicy& gp);

// Closed form of ^sigma T_{*,-1}(v):
//   e + (sigma v) polarity(sigma_{*1}) - sigma_{*1} conj(lambda) polarity(sigma v),
// guard-checked against direct conjugation.
Mat conjugated_eichler(const FormRingContext& ctx, const Mat& sigma,
                       const Vec& v, const GuardPolicy& gp);

// |(^{P_ij} sigma)_{*i}| computed from the entries of sigma by the three-case
// formula (split on the signs of i and j), guard-checked against the direct
// conjugation-and-column-value computation.
RingElem hat_value_formula(const FormRingContext& ctx, const Mat& sigma, int i,
                           int j, const GuardPolicy& gp);

// Row/column duality for a unit x: if column k of sigma equals e_k x then row
// -k must equal conj(x^{-1}) e^t_{-k}, and if row k equals x e^t_k then column
// -k must equal e_{-k} conj(x^{-1}).  Returns true when both implications
// hold (vacuously or not).
bool dual_row_column_check(const FormRingContext& ctx, const Mat& sigma, int k,
                           const RingElem& x);

}  // namespace elemconj
