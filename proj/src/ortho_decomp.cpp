#include "elemconj/ortho_decomp.hpp"

#include "elemconj/linalg.hpp"
#include "omega_route.hpp"

namespace elemconj {

namespace {

void require_orthogonal_member(const FormRingContext& ctx, const Mat& sigma) {
  if (!ctx.orthogonal_form())
    fail(ErrorKind::InvalidLambda,
         "orthogonal decomposition needs the orthogonal specialization");
  if (!ctx.is_member(sigma))
    fail(ErrorKind::NotMember, "matrix is not an orthogonal group member");
}

// Conjugate sigma by an elementary word: ^w sigma.
Mat conj_mat(const FormRingContext& ctx, const ElemWord& w, const Mat& sigma) {
  Mat m = sigma;
  mul_left_elem(ctx, m, w);
  mul_right_elem(ctx, m, inverse_word(ctx, w));
  return m;
}

int aux_positive_index(const FormRingContext& ctx, int i) {
  for (int j = 1; j <= ctx.n(); ++j)
    if (j != i && j != -i) return j;
  fail(ErrorKind::BadIndex, "no auxiliary index available");
}

// Positive index clear of both target indices, so that the scaling
// commutator [T_ka(x), T_al(y)] = T_kl(xy) picks up no mirror terms.
int aux_clear_index(const FormRingContext& ctx, int k, int l) {
  for (int p = 1; p <= ctx.n(); ++p)
    if (p != k && p != -k && p != l && p != -l) return p;
  fail(ErrorKind::BadIndex, "no auxiliary index clear of the target pair");
}

}  // namespace

ConjWord o_entry_word_23(const FormRingContext& ctx, const Mat& sigma,
                         const GuardPolicy& gp) {
  require_orthogonal_member(ctx, sigma);
  const Ring& R = *ctx.ring();
  auto at = [&](int a, int b) { return sigma.at(ctx.pos(a), ctx.pos(b)); };
  const RingElem s23 = at(2, 3);

  ElemWord tau_word{{ctx.t(2, 1, R.neg(s23)), ctx.t(3, 1, at(2, 2)),
                     ctx.t(2, -3, at(2, -1))}};
  ConjWord w = make_conj_word(ctx, sigma);

  if (gp.enabled) {
    Mat tau_inv = evaluate_elem(ctx, inverse_word(ctx, tau_word));
    Mat st = mul(sigma, tau_inv);
    bool row_ok = true;
    for (int c = 0; c < ctx.dim(); ++c)
      row_ok = row_ok && st.at(ctx.pos(2), c) == sigma.at(ctx.pos(2), c);
    guard(gp, row_ok, "entry chain: second row of sigma*tau^-1 changed");

    Mat xi = mul(st, w.sigma_inv);
    bool xi_ok = true;
    for (int c = 0; c < ctx.dim(); ++c) {
      const RingElem& v = xi.at(ctx.pos(2), c);
      xi_ok = xi_ok && (c == ctx.pos(2) ? v == R.one() : R.is_zero(v));
    }
    guard(gp, xi_ok, "entry chain: xi has a nontrivial second row");
    guard(gp, dual_row_column_check(ctx, xi, 2, R.one()),
          "entry chain: xi has a nontrivial second-last column");

    ElemWord c1w = concat(inverse_word(ctx, tau_word),
                          ElemWord{{ctx.t(3, 2, R.one())}});
    c1w = concat(c1w, tau_word);
    c1w.ts.push_back(ctx.t(3, 2, R.from_int(-1)));
    guard(gp, evaluate_elem(ctx, c1w) == ctx.t_mat(3, 1, R.neg(s23)),
          "entry chain: [tau^-1, T_32(1)] != T_31(-sigma_23)");

    Mat t32 = ctx.t_mat(3, 2, R.one());
    Mat c2 = mul(mul(t32, xi), mul(ctx.t_mat(3, 2, R.from_int(-1)),
                                   mul(sigma, mul(evaluate_elem(ctx, tau_word),
                                                  w.sigma_inv))));
    ElemWord col_prod;
    for (int idx = -ctx.n(); idx <= ctx.n(); ++idx) {
      if (idx == 0 || idx == 2 || idx == -2) continue;
      const RingElem& x = c2.at(ctx.pos(idx), ctx.pos(2));
      if (!R.is_zero(x)) col_prod.ts.push_back(ctx.t(idx, 2, x));
    }
    guard(gp, c2 == evaluate_elem(ctx, col_prod),
          "entry chain: [T_32(1), xi] is not a column-2 transvection product");
  }

  append_factor(ctx, w, tau_word, +1);
  append_factor(ctx, w, ElemWord{}, -1);  // now w = [tau, sigma]
  w = shuffle_lemma(ctx, ctx.t_word(3, 2, R.one()), tau_word, w, gp);
  w = commutator_with(ctx, ctx.t_word(1, 2, R.one()), w);
  finalize(w, ctx.t_mat(3, 2, s23));
  return w;
}

ConjWord o_entry_word(const FormRingContext& ctx, const Mat& sigma, int i,
                      int j, int k, int l, const GuardPolicy& gp) {
  if (i == j || i == -j || k == l || k == -l)
    fail(ErrorKind::BadIndex, "entry word needs i != +-j and k != +-l");
  (void)ctx.pos(i); (void)ctx.pos(j); (void)ctx.pos(k); (void)ctx.pos(l);
  require_orthogonal_member(ctx, sigma);
  const RingElem target_val = sigma.at(ctx.pos(i), ctx.pos(j));

  detail::SourceRoute route = detail::route_source_omega(ctx.n(), i, j, 2, 3);
  if (route.row_unit.sign * route.col_unit.sign < 0) {
    // P_21^2 fixes the position and flips the sign of the (2,3) entry.
    route.hops.push_back({2, 1});
    route.hops.push_back({2, 1});
    route.row_unit = route.col_unit = detail::TrackedUnit{};
    int a = i, b = j;
    for (const auto& h : route.hops) {
      detail::apply_hop(h, a, route.row_unit);
      detail::apply_hop(h, b, route.col_unit);
    }
  }
  guard(gp, route.row_unit.sign * route.col_unit.sign == 1,
        "entry routing: residual sign after washing");

  ElemWord mu;
  for (const auto& h : route.hops) mu = concat(ctx.p_word(h.u, h.v), mu);
  Mat sigma_hat = mu.ts.empty() ? sigma : conj_mat(ctx, mu, sigma);
  guard(gp, sigma_hat.at(ctx.pos(2), ctx.pos(3)) == target_val,
        "entry routing: routed entry differs from sigma_ij");

  ConjWord w = o_entry_word_23(ctx, sigma_hat, gp);
  if (!mu.ts.empty()) w = rebase_conjugated(ctx, w, mu, sigma, gp);

  int a = 3, b = 2;
  for (const auto& mv : detail::route_target_omega(ctx.n(), 3, 2, k, l)) {
    ElemWord hop = mv.row ? ctx.p_word(mv.dest, a) : ctx.p_word(mv.dest, b);
    w = conj_by(ctx, hop, w);
    (mv.row ? a : b) = mv.dest;
  }
  guard(gp, w.value == ctx.t_mat(k, l, target_val),
        "entry word: target move produced the wrong transvection");
  finalize(w, ctx.t_mat(k, l, target_val));
  return w;
}

ConjWord o_antidiag_word(const FormRingContext& ctx, const Mat& sigma, int i,
                         int k, int l, const GuardPolicy& gp) {
  if (k == l || k == -l) fail(ErrorKind::BadIndex, "antidiag word needs k != +-l");
  (void)ctx.pos(i); (void)ctx.pos(k); (void)ctx.pos(l);
  require_orthogonal_member(ctx, sigma);
  const Ring& R = *ctx.ring();
  const int j = aux_positive_index(ctx, i);

  ElemWord shift = ctx.t_word(j, i, R.one());
  Mat sigma_hat = conj_mat(ctx, shift, sigma);
  guard(gp,
        sigma_hat.at(ctx.pos(j), ctx.pos(-i)) ==
            R.add(sigma.at(ctx.pos(i), ctx.pos(-i)),
                  sigma.at(ctx.pos(j), ctx.pos(-i))),
        "antidiag: shifted (j,-i) entry mismatch");

  ConjWord w1 = rebase_conjugated(
      ctx, o_entry_word(ctx, sigma_hat, j, -i, k, l, gp), shift, sigma, gp);
  ConjWord w2 = invert(ctx, o_entry_word(ctx, sigma, j, -i, k, l, gp));
  ConjWord w = concat(ctx, std::move(w1), w2);
  w.extras.corrected_factor = true;
  finalize(w, ctx.t_mat(k, l, sigma.at(ctx.pos(i), ctx.pos(-i))));
  return w;
}

ConjWord o_diag_diff_word(const FormRingContext& ctx, const Mat& sigma, int i,
                          int j, int k, int l, const GuardPolicy& gp) {
  if (i == j || i == -j || k == l || k == -l)
    fail(ErrorKind::BadIndex, "diag diff needs i != +-j and k != +-l");
  (void)ctx.pos(i); (void)ctx.pos(j); (void)ctx.pos(k); (void)ctx.pos(l);
  require_orthogonal_member(ctx, sigma);
  const Ring& R = *ctx.ring();

  ElemWord shift = ctx.t_word(j, i, R.one());
  Mat sigma_hat = conj_mat(ctx, shift, sigma);
  auto at = [&](const Mat& m, int a, int b) { return m.at(ctx.pos(a), ctx.pos(b)); };
  RingElem expect = R.add(R.sub(at(sigma, i, i), at(sigma, j, j)),
                          R.sub(at(sigma, j, i), at(sigma, i, j)));
  guard(gp, at(sigma_hat, j, i) == expect, "diag diff: shifted (j,i) entry mismatch");

  ConjWord w1 = rebase_conjugated(
      ctx, o_entry_word(ctx, sigma_hat, j, i, k, l, gp), shift, sigma, gp);
  ConjWord w2 = o_entry_word(ctx, sigma, i, j, k, l, gp);
  ConjWord w3 = invert(ctx, o_entry_word(ctx, sigma, j, i, k, l, gp));
  ConjWord w = concat(ctx, concat(ctx, std::move(w1), w2), w3);
  finalize(w, ctx.t_mat(k, l, R.sub(at(sigma, i, i), at(sigma, j, j))));
  return w;
}

ConjWord o_opposite_diag_word(const FormRingContext& ctx, const Mat& sigma,
                              int i, int k, int l, const GuardPolicy& gp) {
  if (k == l || k == -l)
    fail(ErrorKind::BadIndex, "opposite diag needs k != +-l");
  (void)ctx.pos(i); (void)ctx.pos(k); (void)ctx.pos(l);
  require_orthogonal_member(ctx, sigma);
  const Ring& R = *ctx.ring();
  const int j = aux_positive_index(ctx, i);

  ConjWord w = concat(ctx, o_diag_diff_word(ctx, sigma, i, j, k, l, gp),
                      o_diag_diff_word(ctx, sigma, j, -i, k, l, gp));
  finalize(w, ctx.t_mat(k, l, R.sub(sigma.at(ctx.pos(i), ctx.pos(i)),
                                    sigma.at(ctx.pos(-i), ctx.pos(-i)))));
  return w;
}

ConjWord o_multiple_entry_word(const FormRingContext& ctx, const Mat& sigma,
                               const RingElem& x, int i, int j, int k, int l,
                               const GuardPolicy& gp) {
  if (k == l || k == -l)
    fail(ErrorKind::BadIndex, "multiple entry word needs k != +-l");
  (void)ctx.pos(k); (void)ctx.pos(l);
  const Ring& R = *ctx.ring();
  const int a = aux_clear_index(ctx, k, l);
  ConjWord w = commutator_with(ctx, ctx.t_word(k, a, x),
                               o_entry_word(ctx, sigma, i, j, a, l, gp));
  finalize(w, ctx.t_mat(k, l, R.mul(x, sigma.at(ctx.pos(i), ctx.pos(j)))));
  return w;
}

ConjWord o_multiple_antidiag_word(const FormRingContext& ctx, const Mat& sigma,
                                  const RingElem& x, int i, int k, int l,
                                  const GuardPolicy& gp) {
  if (k == l || k == -l)
    fail(ErrorKind::BadIndex, "multiple antidiag word needs k != +-l");
  (void)ctx.pos(k); (void)ctx.pos(l);
  const Ring& R = *ctx.ring();
  const int a = aux_clear_index(ctx, k, l);
  ConjWord w = commutator_with(ctx, ctx.t_word(k, a, x),
                               o_antidiag_word(ctx, sigma, i, a, l, gp));
  finalize(w, ctx.t_mat(k, l, R.mul(x, sigma.at(ctx.pos(i), ctx.pos(-i)))));
  return w;
}

ConjWord o_multiple_diag_diff_word(const FormRingContext& ctx, const Mat& sigma,
                                   const RingElem& x, int i, int j, int k,
                                   int l, const GuardPolicy& gp) {
  if (k == l || k == -l)
    fail(ErrorKind::BadIndex, "multiple diag diff word needs k != +-l");
  (void)ctx.pos(k); (void)ctx.pos(l);
  const Ring& R = *ctx.ring();
  const int a = aux_clear_index(ctx, k, l);
  ConjWord w = commutator_with(ctx, ctx.t_word(k, a, x),
                               o_diag_diff_word(ctx, sigma, i, j, a, l, gp));
  auto at = [&](int r, int c) { return sigma.at(ctx.pos(r), ctx.pos(c)); };
  finalize(w, ctx.t_mat(k, l, R.mul(x, R.sub(at(i, i), at(j, j)))));
  return w;
}

}  // namespace elemconj
