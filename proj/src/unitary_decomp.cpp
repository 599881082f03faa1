#include "elemconj/unitary_decomp.hpp"

#include <string>
#include <utility>
#include <vector>

#include "omega_route.hpp"

namespace elemconj {

namespace {

void require_member(const FormRingContext& ctx, const Mat& sigma) {
  if (sigma.dim() != ctx.dim())
    fail(ErrorKind::DimMismatch, "matrix dimension does not match the context");
  if (!ctx.is_member(sigma))
    fail(ErrorKind::NotMember, "matrix is not in the unitary group");
}

Mat conj_mat(const FormRingContext& ctx, const ElemWord& w, const Mat& m) {
  Mat out = m;
  mul_left_elem(ctx, out, w);
  mul_right_elem(ctx, out, inverse_word(ctx, w));
  return out;
}

int aux_positive_index(const FormRingContext& ctx, int i) {
  for (int j = 1; j <= ctx.n(); ++j)
    if (j != i && j != -i) return j;
  fail(ErrorKind::BadIndex, "no auxiliary index available (need n >= 2)");
}

RingElem unit_elem(const Ring& R, const detail::TrackedUnit& u) {
  RingElem x = R.lambda_int_pow(u.lambda_exp);
  return u.sign < 0 ? R.neg(x) : x;
}

detail::TrackedUnit unit_inverse(const detail::TrackedUnit& u) {
  return {u.sign, -u.lambda_exp};
}

// T_{-l,-k}(x') is the same matrix as T_kl(-lambda^{(eps(l)-eps(k))/2}
// conj(x')).  So a word built for the mirrored position with parameter
// x' = -lambda^{(eps(l)-eps(k))/2} conj(y) already evaluates to
// T_kl(y * conj(p)) whenever the mirrored word evaluates to T_{-l,-k}(x' p);
// re-finalizing at the mirrored label is the whole conversion.
RingElem mirror_param(const Ring& R, const RingElem& y, int k, int l) {
  return R.neg(R.mul(R.lambda_power(k, l), R.conj(y)));
}

// Move a finished transvection word from position (a, b) to (k, l) by clean
// permutation conjugations (every hop index distinct from +-a, +-b).
ConjWord move_target(const FormRingContext& ctx, ConjWord w, int a, int b,
                     int k, int l) {
  for (const auto& mv : detail::route_target_omega(ctx.n(), a, b, k, l)) {
    ElemWord hop = mv.row ? ctx.p_word(mv.dest, a) : ctx.p_word(mv.dest, b);
    w = conj_by(ctx, hop, std::move(w));
    (mv.row ? a : b) = mv.dest;
  }
  return w;
}

// m equals the identity outside the listed (row, col) positions (0-based).
bool identity_except(const FormRingContext& ctx, const Mat& m,
                     const std::vector<std::pair<int, int>>& allowed) {
  const Ring& R = *ctx.ring();
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) {
      bool open = false;
      for (const auto& [ar, ac] : allowed)
        if (ar == r && ac == c) {
          open = true;
          break;
        }
      if (open) continue;
      if (r == c ? !(m.at(r, c) == R.one()) : !R.is_zero(m.at(r, c)))
        return false;
    }
  return true;
}

// Off-diagonal support contained in column pos(2) union row pos(-2): the
// shape of any product of transvections T_{i,2}, i != 2 (long one included).
bool column2_support(const FormRingContext& ctx, const Mat& m) {
  const Ring& R = *ctx.ring();
  const int c2 = ctx.pos(2), rm2 = ctx.pos(-2);
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) {
      if (c == c2 || r == rm2) continue;
      if (r == c ? !(m.at(r, c) == R.one()) : !R.is_zero(m.at(r, c)))
        return false;
    }
  return true;
}

// The correctors of the three reference chains fix the second row of sigma,
// so xi := sigma tau^{-1} sigma^{-1} has trivial row 2 and (by row/column
// duality) trivial column -2.  Shared guard + xi computation.
Mat chain_xi(const FormRingContext& ctx, const Mat& sigma, const Mat& sigma_inv,
             const ElemWord& tau_word, const GuardPolicy& gp,
             const std::string& who) {
  const Ring& R = *ctx.ring();
  Mat st = sigma;
  mul_right_elem(ctx, st, inverse_word(ctx, tau_word));
  if (gp.enabled) {
    const int r2 = ctx.pos(2);
    for (int c = 0; c < ctx.dim(); ++c)
      guard(gp, st.at(r2, c) == sigma.at(r2, c),
            who + ": corrector must fix the second row of sigma");
  }
  Mat xi = mul(st, sigma_inv);
  if (gp.enabled) {
    const int r2 = ctx.pos(2), cm2 = ctx.pos(-2);
    for (int c = 0; c < ctx.dim(); ++c)
      guard(gp, c == r2 ? xi.at(r2, c) == R.one() : R.is_zero(xi.at(r2, c)),
            who + ": xi must have trivial row 2");
    for (int r = 0; r < ctx.dim(); ++r)
      guard(gp, r == cm2 ? xi.at(r, cm2) == R.one() : R.is_zero(xi.at(r, cm2)),
            who + ": xi must have trivial column -2");
    guard(gp, dual_row_column_check(ctx, xi, 2, R.one()),
          who + ": xi fails row/column duality at index 2");
  }
  return xi;
}

void require_target(int k, int l) {
  if (k == l || k == -l)
    fail(ErrorKind::BadIndex, "target position needs k != +-l");
}

}  // namespace

ConjWord u_step1_word(const FormRingContext& ctx, const Mat& sigma,
                      const RingElem& x, int k, int l, const GuardPolicy& gp) {
  const Ring& R = *ctx.ring();
  require_target(k, l);
  (void)ctx.pos(k);
  (void)ctx.pos(l);
  require_member(ctx, sigma);
  auto at = [&](int a, int b) -> const RingElem& {
    return sigma.at(ctx.pos(a), ctx.pos(b));
  };

  const RingElem s23c = R.conj(at(2, 3));
  const RingElem base = R.mul(s23c, at(2, -1));

  // Corrector fixing row 2; its long parameter lies in Lambda_min.
  ElemWord tau_word;
  tau_word.ts = {
      ctx.t(2, 1, R.mul(s23c, at(2, 3))),
      ctx.t(3, 1, R.neg(R.mul(s23c, at(2, 2)))),
      ctx.t(3, -2, R.mul(s23c, at(2, -1))),
      ctx.t(3, -3,
            R.sub(R.mul(R.lambda_bar(), R.mul(R.conj(at(2, -1)), at(2, 2))),
                  R.mul(R.conj(at(2, 2)), at(2, -1))))};

  ConjWord w = make_conj_word(ctx, sigma);
  Mat xi = chain_xi(ctx, sigma, w.sigma_inv, tau_word, gp, "step 1");

  if (gp.enabled) {
    // [tau^{-1}, T_{-1,2}(1)] is T_31(lambda * base) times a (-1,1) leak.
    Mat tau_mat = evaluate_elem(ctx, tau_word);
    Mat psi = commutator(inverse(tau_mat), ctx.t_mat(-1, 2, R.one()));
    Mat rho = mul(ctx.t_mat(3, 1, R.neg(R.mul(R.lambda(), base))), psi);
    guard(gp, identity_except(ctx, rho, {{ctx.pos(-1), ctx.pos(1)}}),
          "step 1: shuffle residue has support beyond (-1,1)");
    // [T_{-1,2}(1), xi] only touches column 2 / row -2.
    Mat theta = commutator(ctx.t_mat(-1, 2, R.one()), xi);
    guard(gp, column2_support(ctx, theta),
          "step 1: commutator with xi leaves column 2");
  }

  append_factor(ctx, w, tau_word, +1);
  append_factor(ctx, w, ElemWord{}, -1);  // value: tau * xi
  w = shuffle_lemma(ctx, ctx.t_word(-1, 2, R.one()), tau_word, w, gp);
  w = commutator_with(ctx, ctx.t_word(1, 2, R.one()), w);
  w = commutator_with(ctx, ctx.t_word(-1, 3, R.neg(R.mul(x, R.lambda_bar()))),
                      w);

  const RingElem target = R.mul(x, base);
  guard(gp, w.value == ctx.t_mat(-1, 2, target),
        "step 1: chain value is not T_{-1,2}(x conj(s23) s_{2,-1})");
  w = move_target(ctx, std::move(w), -1, 2, k, l);
  finalize(w, ctx.t_mat(k, l, target));
  return w;
}

ConjWord u_step2_word(const FormRingContext& ctx, const Mat& sigma,
                      const RingElem& x, int k, int l, const GuardPolicy& gp) {
  const Ring& R = *ctx.ring();
  require_target(k, l);
  (void)ctx.pos(k);
  (void)ctx.pos(l);
  require_member(ctx, sigma);
  auto at = [&](int a, int b) -> const RingElem& {
    return sigma.at(ctx.pos(a), ctx.pos(b));
  };

  const RingElem s23c = R.conj(at(2, 3));
  const RingElem base = R.mul(s23c, at(2, 1));

  ElemWord tau_word;
  tau_word.ts = {
      ctx.t(1, -2, R.mul(s23c, at(2, 3))),
      ctx.t(3, -2, R.neg(R.mul(s23c, at(2, 1)))),
      ctx.t(3, -1, R.mul(R.lambda_bar(), R.mul(s23c, at(2, 2)))),
      ctx.t(3, -3,
            R.sub(R.mul(R.conj(at(2, 2)), at(2, 1)),
                  R.mul(R.lambda_bar(), R.mul(R.conj(at(2, 1)), at(2, 2)))))};

  ConjWord w = make_conj_word(ctx, sigma);
  Mat xi = chain_xi(ctx, sigma, w.sigma_inv, tau_word, gp, "step 2");

  if (gp.enabled) {
    // [tau^{-1}, T_{-2,-1}(1)] is T_{3,-1}(base) times a (1,-1) leak.
    Mat tau_mat = evaluate_elem(ctx, tau_word);
    Mat psi = commutator(inverse(tau_mat), ctx.t_mat(-2, -1, R.one()));
    Mat rho = mul(ctx.t_mat(3, -1, R.neg(base)), psi);
    guard(gp, identity_except(ctx, rho, {{ctx.pos(1), ctx.pos(-1)}}),
          "step 2: shuffle residue has support beyond (1,-1)");
    Mat theta = commutator(ctx.t_mat(-2, -1, R.one()), xi);
    guard(gp, column2_support(ctx, theta),
          "step 2: commutator with xi leaves column 2");
  }

  append_factor(ctx, w, tau_word, +1);
  append_factor(ctx, w, ElemWord{}, -1);
  w = shuffle_lemma(ctx, ctx.t_word(-2, -1, R.one()), tau_word, w, gp);
  w = commutator_with(ctx, ctx.t_word(-2, 3, R.one()), w);
  w = commutator_with(ctx, ctx.t_word(-1, 3, R.neg(x)), w);

  const RingElem target = R.mul(x, base);
  guard(gp, w.value == ctx.t_mat(-2, 3, target),
        "step 2: chain value is not T_{-2,3}(x conj(s23) s21)");
  w = move_target(ctx, std::move(w), -2, 3, k, l);
  finalize(w, ctx.t_mat(k, l, target));
  return w;
}

ConjWord u_step3_word(const FormRingContext& ctx, const Mat& sigma,
                      const RingElem& x, int k, int l, const GuardPolicy& gp) {
  const Ring& R = *ctx.ring();
  require_target(k, l);
  (void)ctx.pos(k);
  (void)ctx.pos(l);
  require_member(ctx, sigma);
  auto at = [&](int a, int b) -> const RingElem& {
    return sigma.at(ctx.pos(a), ctx.pos(b));
  };

  const RingElem s22c = R.conj(at(2, 2));
  const RingElem s23c = R.conj(at(2, 3));
  const RingElem base = R.mul(s23c, at(2, 2));

  ElemWord tau_word;
  tau_word.ts = {
      ctx.t(2, 1, R.neg(R.mul(s22c, at(2, 3)))),
      ctx.t(3, 1, R.mul(s22c, at(2, 2))),
      ctx.t(2, -3, R.mul(s22c, at(2, -1))),
      ctx.t(2, -2,
            R.sub(R.mul(R.lambda_bar(), R.mul(R.conj(at(2, -1)), at(2, 3))),
                  R.mul(s23c, at(2, -1))))};

  ConjWord w = make_conj_word(ctx, sigma);
  Mat xi = chain_xi(ctx, sigma, w.sigma_inv, tau_word, gp, "step 3");
  (void)xi;

  // psi = [tau^{-1}, T_32(1)], needed both as a matrix (guards) and as the
  // elementary conjugator of the second shuffle.
  ElemWord psi_word = concat(inverse_word(ctx, tau_word),
                             ctx.t_word(3, 2, R.one()));
  psi_word = concat(std::move(psi_word), tau_word);
  psi_word = concat(std::move(psi_word), ctx.t_word(3, 2, R.neg(R.one())));
  Mat psi_mat = evaluate_elem(ctx, psi_word);
  const RingElem q32 = R.mul(s22c, at(2, 3));

  if (gp.enabled) {
    // psi = T_31(-conj(s22) s23) * (e + z e^{3,-2} + y e^{3,-3} -
    // conj(lambda) conj(z) e^{2,-3}); only the shape is pinned, the leak
    // parameters are read off.
    Mat rho = mul(ctx.t_mat(3, 1, q32), psi_mat);
    const RingElem z = rho.at(ctx.pos(3), ctx.pos(-2));
    const RingElem yl = rho.at(ctx.pos(3), ctx.pos(-3));
    Mat expect = Mat::identity(ctx.ring(), ctx.dim());
    expect.at(ctx.pos(3), ctx.pos(-2)) = z;
    expect.at(ctx.pos(3), ctx.pos(-3)) = yl;
    expect.at(ctx.pos(2), ctx.pos(-3)) =
        R.neg(R.mul(R.lambda_bar(), R.conj(z)));
    guard(gp, rho == expect, "step 3: psi shape mismatch");
  }

  append_factor(ctx, w, tau_word, +1);
  append_factor(ctx, w, ElemWord{}, -1);
  w = shuffle_lemma(ctx, ctx.t_word(3, 2, R.one()), tau_word, w, gp);

  if (gp.enabled) {
    // theta := psi^{-1} * value so far is a column-2 product, and
    // [T_12(1), theta] collapses to a single long leak at (-2,2).
    Mat theta = mul(inverse(psi_mat), w.value);
    guard(gp, column2_support(ctx, theta), "step 3: theta leaves column 2");
    Mat d_mat = commutator(ctx.t_mat(1, 2, R.one()), theta);
    guard(gp, identity_except(ctx, d_mat, {{ctx.pos(-2), ctx.pos(2)}}),
          "step 3: [T_12(1), theta] has support beyond (-2,2)");
    // [psi^{-1}, T_12(1)] = T_32(conj(s22) s23) * (e + a e^{3,-3} +
    // b e^{3,-1} - conj(lambda) conj(b) e^{1,-3}).
    Mat chi = commutator(inverse(psi_mat), ctx.t_mat(1, 2, R.one()));
    Mat rho2 = mul(ctx.t_mat(3, 2, R.neg(q32)), chi);
    const RingElem a2 = rho2.at(ctx.pos(3), ctx.pos(-3));
    const RingElem b2 = rho2.at(ctx.pos(3), ctx.pos(-1));
    Mat expect2 = Mat::identity(ctx.ring(), ctx.dim());
    expect2.at(ctx.pos(3), ctx.pos(-3)) = a2;
    expect2.at(ctx.pos(3), ctx.pos(-1)) = b2;
    expect2.at(ctx.pos(1), ctx.pos(-3)) =
        R.neg(R.mul(R.lambda_bar(), R.conj(b2)));
    guard(gp, rho2 == expect2, "step 3: [psi^{-1}, T_12(1)] shape mismatch");
  }

  w = shuffle_lemma(ctx, ctx.t_word(1, 2, R.one()), psi_word, w, gp);
  w = commutator_with(ctx, ctx.t_word(2, -1, R.one()), w);
  w = commutator_with(ctx, ctx.t_word(-2, 3, R.conj(x)), w);

  // The chain lands on T_{-2,-1}(-conj(x) conj(s22) s23), which is the same
  // matrix as T_12(x conj(s23) s22).
  const RingElem target = R.mul(x, base);
  guard(gp, w.value == ctx.t_mat(1, 2, target),
        "step 3: chain value is not T_12(x conj(s23) s22)");
  w = move_target(ctx, std::move(w), 1, 2, k, l);
  finalize(w, ctx.t_mat(k, l, target));
  return w;
}

namespace {

// Mirrored step words: same factor count, target parameter conjugated.
ConjWord step1_conj(const FormRingContext& ctx, const Mat& sigma,
                    const RingElem& y, int k, int l, const GuardPolicy& gp) {
  const Ring& R = *ctx.ring();
  ConjWord w = u_step1_word(ctx, sigma, mirror_param(R, y, k, l), -l, -k, gp);
  const RingElem base = R.mul(sigma.at(ctx.pos(2), ctx.pos(3)),
                              R.conj(sigma.at(ctx.pos(2), ctx.pos(-1))));
  finalize(w, ctx.t_mat(k, l, R.mul(y, base)));
  return w;
}

ConjWord step2_conj(const FormRingContext& ctx, const Mat& sigma,
                    const RingElem& y, int k, int l, const GuardPolicy& gp) {
  const Ring& R = *ctx.ring();
  ConjWord w = u_step2_word(ctx, sigma, mirror_param(R, y, k, l), -l, -k, gp);
  const RingElem base = R.mul(sigma.at(ctx.pos(2), ctx.pos(3)),
                              R.conj(sigma.at(ctx.pos(2), ctx.pos(1))));
  finalize(w, ctx.t_mat(k, l, R.mul(y, base)));
  return w;
}

ConjWord step3_conj(const FormRingContext& ctx, const Mat& sigma,
                    const RingElem& y, int k, int l, const GuardPolicy& gp) {
  const Ring& R = *ctx.ring();
  ConjWord w = u_step3_word(ctx, sigma, mirror_param(R, y, k, l), -l, -k, gp);
  const RingElem base = R.mul(sigma.at(ctx.pos(2), ctx.pos(3)),
                              R.conj(sigma.at(ctx.pos(2), ctx.pos(2))));
  finalize(w, ctx.t_mat(k, l, R.mul(y, base)));
  return w;
}

// T_kl(c * sigma_23) in 160 factors: main term through the reference matrix
// zeta = ^(P_13 P_21)[sigma^{-1}, T_12(-conj(s23))] (a 2-for-1 expansion back
// to sigma-conjugates), then one bucket word per generator coefficient.
ConjWord entry_multiple_23(const FormRingContext& ctx, const Mat& sigma,
                           const RingElem& c, int k, int l,
                           const GuardPolicy& gp) {
  const Ring& R = *ctx.ring();
  auto at = [&](int a, int b) -> const RingElem& {
    return sigma.at(ctx.pos(a), ctx.pos(b));
  };
  const Mat sigma_inv = inverse(sigma);

  const RingElem s23 = at(2, 3);
  const RingElem s23c = R.conj(s23);

  ElemWord e_word = ctx.t_word(1, 2, R.neg(s23c));
  Mat tau = mul(mul(sigma_inv, evaluate_elem(ctx, e_word)),
                mul(sigma, ctx.t_mat(1, 2, s23c)));

  // Ideal generators produced by row 2 against conj(s23), plus the exact
  // closed forms of the two corrector entries the expansion needs.
  const RingElem g1 = R.mul(s23c, at(2, -1));
  const RingElem g2 = R.mul(s23c, at(2, 1));
  const RingElem g3 = R.mul(s23c, at(2, 2));
  const RingElem g1c = R.conj(g1);
  const RingElem g2c = R.conj(g2);
  const RingElem g3c = R.conj(g3);

  const RingElem ca = R.neg(R.conj(at(-1, -1)));
  const RingElem cb = R.mul(R.lambda_bar(), at(-1, 1));
  const RingElem da = ca;
  const RingElem db = R.mul(ca, s23c);
  const RingElem dc =
      R.mul(R.lambda_bar(), R.add(at(-1, 2), R.mul(at(-1, 1), s23c)));

  const RingElem tau11 = R.add(R.one(), R.add(R.mul(ca, g2), R.mul(cb, g1c)));
  const RingElem tau12 =
      R.add(s23c,
            R.add(R.mul(da, g3), R.add(R.mul(db, g2), R.mul(dc, g1c))));
  if (!(tau.at(ctx.pos(1), ctx.pos(1)) == tau11) ||
      !(tau.at(ctx.pos(1), ctx.pos(2)) == tau12))
    fail(ErrorKind::ExpansionMismatch,
         "entry word: closed form of the corrector entries is off");

  if (gp.enabled) {
    // Full closed form tau = (e - sigma^{-1}_{*1} conj(s23) sigma_{2,*}
    //   + sigma^{-1}_{*,-2} s23 sigma_{-1,*}) T_12(conj(s23)).
    Vec c1 = sigma_inv.col(ctx.pos(1));
    Vec r2 = sigma.row(ctx.pos(2));
    for (auto& e : r2) e = R.mul(s23c, e);
    Vec cm2 = sigma_inv.col(ctx.pos(-2));
    Vec rm1 = sigma.row(ctx.pos(-1));
    for (auto& e : rm1) e = R.mul(s23, e);
    Mat m0 = sub(add(Mat::identity(ctx.ring(), ctx.dim()),
                     outer(ctx.ring(), cm2, rm1)),
                 outer(ctx.ring(), c1, r2));
    guard(gp, tau == mul(m0, ctx.t_mat(1, 2, s23c)),
          "entry word: corrector closed form mismatch");
  }

  ElemWord big_w = concat(ctx.p_word(1, 3), ctx.p_word(2, 1));
  Mat zeta = conj_mat(ctx, big_w, tau);
  guard(gp,
        zeta.at(ctx.pos(2), ctx.pos(2)) == tau11 &&
            zeta.at(ctx.pos(2), ctx.pos(3)) == tau12,
        "entry word: reference-position entries of zeta are off");

  // Bucket coefficients from
  //   c s23 = c conj(tau12) tau11 - c s23 (ca G2 + cb G1c)
  //           - c (conj(da) G3c + conj(db) G2c + conj(dc) G1) tau11.
  const RingElem y_g2 = R.neg(R.mul(c, R.mul(s23, ca)));
  const RingElem y_g1c = R.neg(R.mul(c, R.mul(s23, cb)));
  const RingElem y_g3c = R.neg(R.mul(c, R.mul(R.conj(da), tau11)));
  const RingElem y_g2c = R.neg(R.mul(c, R.mul(R.conj(db), tau11)));
  const RingElem y_g1 = R.neg(R.mul(c, R.mul(R.conj(dc), tau11)));

  RingElem total = R.mul(c, R.mul(R.conj(tau12), tau11));
  total = R.add(total, R.mul(y_g2, g2));
  total = R.add(total, R.mul(y_g1c, g1c));
  total = R.add(total, R.mul(y_g3c, g3c));
  total = R.add(total, R.mul(y_g2c, g2c));
  total = R.add(total, R.mul(y_g1, g1));
  if (!(total == R.mul(c, s23)))
    fail(ErrorKind::ExpansionMismatch,
         "entry word: bucket expansion does not recover c * sigma_23");

  ConjWord w0 = u_step3_word(ctx, zeta, c, k, l, gp);
  ConjWord w = rebase_commutator(ctx, w0, big_w, e_word, sigma, gp);
  w = concat(ctx, std::move(w), u_step2_word(ctx, sigma, y_g2, k, l, gp));
  w = concat(ctx, std::move(w), step1_conj(ctx, sigma, y_g1c, k, l, gp));
  w = concat(ctx, std::move(w), step3_conj(ctx, sigma, y_g3c, k, l, gp));
  w = concat(ctx, std::move(w), step2_conj(ctx, sigma, y_g2c, k, l, gp));
  w = concat(ctx, std::move(w), u_step1_word(ctx, sigma, y_g1, k, l, gp));

  w.extras = TraceExtras{};
  w.extras.buckets = {{"G2", y_g2},
                      {"G1conj", y_g1c},
                      {"G3conj", y_g3c},
                      {"G2conj", y_g2c},
                      {"G1", y_g1}};
  w.extras.bound = 160;
  finalize(w, ctx.t_mat(k, l, R.mul(c, s23)));
  return w;
}

}  // namespace

ConjWord u_entry_multiple_word(const FormRingContext& ctx, const Mat& sigma,
                               const RingElem& x, int i, int j, int k, int l,
                               const GuardPolicy& gp) {
  const Ring& R = *ctx.ring();
  if (i == j || i == -j)
    fail(ErrorKind::BadIndex, "entry position needs i != +-j");
  require_target(k, l);
  (void)ctx.pos(i);
  (void)ctx.pos(j);
  (void)ctx.pos(k);
  (void)ctx.pos(l);
  require_member(ctx, sigma);

  const RingElem target_param =
      R.mul(x, sigma.at(ctx.pos(i), ctx.pos(j)));

  detail::SourceRoute route = detail::route_source_omega(ctx.n(), i, j, 2, 3);
  if (route.hops.empty()) return entry_multiple_23(ctx, sigma, x, k, l, gp);

  ElemWord mu;
  for (const auto& h : route.hops) mu = concat(ctx.p_word(h.u, h.v), mu);
  Mat sigma_hat = conj_mat(ctx, mu, sigma);
  guard(gp,
        sigma_hat.at(ctx.pos(2), ctx.pos(3)) ==
            R.mul(unit_elem(R, route.row_unit),
                  R.mul(sigma.at(ctx.pos(i), ctx.pos(j)),
                        unit_elem(R, unit_inverse(route.col_unit)))),
        "entry routing: tracked units disagree with the moved entry");

  // Absorb the signed lambda-power units into the multiplier so that
  // c * sigma_hat_23 = x * sigma_ij exactly.
  const RingElem c = R.mul(x, R.mul(unit_elem(R, unit_inverse(route.row_unit)),
                                    unit_elem(R, route.col_unit)));
  ConjWord w = entry_multiple_23(ctx, sigma_hat, c, k, l, gp);
  w = rebase_conjugated(ctx, std::move(w), mu, sigma, gp);
  finalize(w, ctx.t_mat(k, l, target_param));
  return w;
}

ConjWord u_conj_entry_multiple_word(const FormRingContext& ctx,
                                    const Mat& sigma, const RingElem& x,
                                    int i, int j, int k, int l,
                                    const GuardPolicy& gp) {
  const Ring& R = *ctx.ring();
  require_target(k, l);
  ConjWord w = u_entry_multiple_word(ctx, sigma, mirror_param(R, x, k, l), i,
                                     j, -l, -k, gp);
  finalize(w, ctx.t_mat(
                  k, l,
                  R.mul(x, R.conj(sigma.at(ctx.pos(i), ctx.pos(j))))));
  return w;
}

ConjWord u_entry_word(const FormRingContext& ctx, const Mat& sigma, int i,
                      int j, int k, int l, const GuardPolicy& gp) {
  return u_entry_multiple_word(ctx, sigma, ctx.ring()->one(), i, j, k, l, gp);
}

ConjWord u_entry_word_32(const FormRingContext& ctx, const Mat& sigma,
                         const GuardPolicy& gp) {
  return u_entry_multiple_word(ctx, sigma, ctx.ring()->one(), 2, 3, 3, 2, gp);
}

ConjWord u_antidiag_multiple_word(const FormRingContext& ctx, const Mat& sigma,
                                  const RingElem& x, int i, int k, int l,
                                  const GuardPolicy& gp) {
  const Ring& R = *ctx.ring();
  (void)ctx.pos(i);
  require_target(k, l);
  require_member(ctx, sigma);
  const int j = aux_positive_index(ctx, i);

  // ^{T_ji(1)} sigma picks up the antidiagonal entry additively at (j,-i);
  // the plain (j,-i) word over sigma is the correction factor.
  ElemWord shift = ctx.t_word(j, i, R.one());
  Mat sigma_hat = conj_mat(ctx, shift, sigma);
  guard(gp,
        sigma_hat.at(ctx.pos(j), ctx.pos(-i)) ==
            R.add(sigma.at(ctx.pos(i), ctx.pos(-i)),
                  sigma.at(ctx.pos(j), ctx.pos(-i))),
        "antidiagonal shift: moved entry is not the expected sum");

  ConjWord w = u_entry_multiple_word(ctx, sigma_hat, x, j, -i, k, l, gp);
  w = rebase_conjugated(ctx, std::move(w), shift, sigma, gp);
  w = concat(ctx, std::move(w),
             invert(ctx, u_entry_multiple_word(ctx, sigma, x, j, -i, k, l, gp)));

  w.extras = TraceExtras{};
  w.extras.corrected_factor = true;
  w.extras.bound = 320;
  finalize(w,
           ctx.t_mat(k, l, R.mul(x, sigma.at(ctx.pos(i), ctx.pos(-i)))));
  return w;
}

ConjWord u_conj_antidiag_multiple_word(const FormRingContext& ctx,
                                       const Mat& sigma, const RingElem& x,
                                       int i, int k, int l,
                                       const GuardPolicy& gp) {
  const Ring& R = *ctx.ring();
  require_target(k, l);
  ConjWord w = u_antidiag_multiple_word(ctx, sigma, mirror_param(R, x, k, l),
                                        i, -l, -k, gp);
  finalize(w, ctx.t_mat(
                  k, l,
                  R.mul(x, R.conj(sigma.at(ctx.pos(i), ctx.pos(-i))))));
  return w;
}

ConjWord u_antidiag_word(const FormRingContext& ctx, const Mat& sigma, int i,
                         int k, int l, const GuardPolicy& gp) {
  return u_antidiag_multiple_word(ctx, sigma, ctx.ring()->one(), i, k, l, gp);
}

ConjWord u_diag_diff_multiple_word(const FormRingContext& ctx,
                                   const Mat& sigma, const RingElem& x, int i,
                                   int j, int k, int l, const GuardPolicy& gp) {
  const Ring& R = *ctx.ring();
  if (i == j || i == -j)
    fail(ErrorKind::BadIndex, "diagonal difference needs i != +-j");
  require_target(k, l);
  (void)ctx.pos(i);
  (void)ctx.pos(j);
  require_member(ctx, sigma);
  auto at = [&](int a, int b) -> const RingElem& {
    return sigma.at(ctx.pos(a), ctx.pos(b));
  };

  // (^{T_ji(1)} sigma)_{ji} = s_ii - s_jj + s_ji - s_ij; the two plain entry
  // words strip the off-diagonal disturbance.
  ElemWord shift = ctx.t_word(j, i, R.one());
  Mat sigma_hat = conj_mat(ctx, shift, sigma);
  guard(gp,
        sigma_hat.at(ctx.pos(j), ctx.pos(i)) ==
            R.add(R.sub(at(i, i), at(j, j)), R.sub(at(j, i), at(i, j))),
        "diagonal shift: moved entry is not the expected combination");

  ConjWord w = u_entry_multiple_word(ctx, sigma_hat, x, j, i, k, l, gp);
  w = rebase_conjugated(ctx, std::move(w), shift, sigma, gp);
  w = concat(ctx, std::move(w),
             u_entry_multiple_word(ctx, sigma, x, i, j, k, l, gp));
  w = concat(ctx, std::move(w),
             invert(ctx, u_entry_multiple_word(ctx, sigma, x, j, i, k, l, gp)));

  w.extras = TraceExtras{};
  w.extras.corrected_factor = true;
  w.extras.bound = 480;
  finalize(w, ctx.t_mat(k, l, R.mul(x, R.sub(at(i, i), at(j, j)))));
  return w;
}

ConjWord u_diag_diff_word(const FormRingContext& ctx, const Mat& sigma, int i,
                          int j, int k, int l, const GuardPolicy& gp) {
  return u_diag_diff_multiple_word(ctx, sigma, ctx.ring()->one(), i, j, k, l,
                                   gp);
}

ConjWord u_opposite_diag_word(const FormRingContext& ctx, const Mat& sigma,
                              int i, int k, int l, const GuardPolicy& gp) {
  const Ring& R = *ctx.ring();
  (void)ctx.pos(i);
  require_target(k, l);
  require_member(ctx, sigma);
  const int j = aux_positive_index(ctx, i);

  ConjWord w = u_diag_diff_word(ctx, sigma, i, j, k, l, gp);
  w = concat(ctx, std::move(w), u_diag_diff_word(ctx, sigma, j, -i, k, l, gp));

  w.extras = TraceExtras{};
  w.extras.corrected_factor = true;
  w.extras.bound = 960;
  finalize(w, ctx.t_mat(k, l,
                        R.sub(sigma.at(ctx.pos(i), ctx.pos(i)),
                              sigma.at(ctx.pos(-i), ctx.pos(-i)))));
  return w;
}

ConjWord u_value_square_word(const FormRingContext& ctx, const Mat& sigma,
                             const RingElem& x, int k, const GuardPolicy& gp) {
  const Ring& R = *ctx.ring();
  (void)ctx.pos(k);
  if (ctx.n() < 3) fail(ErrorKind::BadIndex, "value words need n >= 3");
  require_member(ctx, sigma);
  const int dim = ctx.dim();
  auto at = [&](int a, int b) -> const RingElem& {
    return sigma.at(ctx.pos(a), ctx.pos(b));
  };

  ConjWord w = make_conj_word(ctx, sigma);

  // Isotropic vector v = sigma^{-1}(conj(s11) e_{-2} - conj(s21) e_{-1}):
  // v_{-1} vanishes and |v| = |v'| = 0 exactly.
  Vec vp(dim, R.zero());
  vp[ctx.pos(-2)] = R.conj(at(1, 1));
  vp[ctx.pos(-1)] = R.neg(R.conj(at(2, 1)));
  Vec v = mat_vec(w.sigma_inv, vp);
  if (!R.is_zero(v[ctx.pos(-1)]))
    fail(ErrorKind::BadVector, "value square: v_{-1} must vanish");
  const RingElem v2 = v[ctx.pos(-2)];
  const RingElem v3 = v[ctx.pos(-3)];
  guard(gp,
        v2 == R.sub(R.mul(R.conj(at(2, 2)), R.conj(at(1, 1))),
                    R.mul(R.conj(at(1, 2)), R.conj(at(2, 1)))),
        "value square: closed form of v_{-2} is off");
  guard(gp,
        v3 == R.sub(R.mul(R.conj(at(2, 3)), R.conj(at(1, 1))),
                    R.mul(R.conj(at(1, 3)), R.conj(at(2, 1)))),
        "value square: closed form of v_{-3} is off");

  EichlerTransvection E = eichler(ctx, v, gp);
  Vec vneg(dim);
  for (int p = 0; p < dim; ++p) vneg[p] = R.neg(v[p]);
  Mat xi = conjugated_eichler(ctx, sigma, vneg, gp);

  const RingElem alpha =
      R.sub(R.mul(at(-2, 1), at(1, 1)),
            R.mul(R.lambda(), R.mul(R.conj(at(1, 1)), R.conj(at(-2, 1)))));
  const RingElem beta =
      R.add(R.mul(at(-1, 1), at(1, 1)),
            R.mul(R.lambda(), R.mul(R.conj(at(2, 1)), R.conj(at(-2, 1)))));
  if (gp.enabled) {
    for (int pi = 0; pi < dim; ++pi) {
      const int p = ctx.signed_index(pi);
      if (p == -2 || p == -1) continue;
      for (int qi = 0; qi < dim; ++qi) {
        const int q = ctx.signed_index(qi);
        if (q == 1 || q == 2) continue;
        guard(gp,
              pi == qi ? xi.at(pi, qi) == R.one() : R.is_zero(xi.at(pi, qi)),
              "value square: xi zero pattern violated");
      }
      RingElem col1 = R.neg(R.mul(at(p, 1), at(2, 1)));
      if (p == 1) col1 = R.add(col1, R.one());
      guard(gp, xi.at(pi, ctx.pos(1)) == col1,
            "value square: xi column-1 pattern violated");
      RingElem col2 = R.mul(at(p, 1), at(1, 1));
      if (p == 2) col2 = R.add(col2, R.one());
      guard(gp, xi.at(pi, ctx.pos(2)) == col2,
            "value square: xi column-2 pattern violated");
    }
    guard(gp, xi.at(ctx.pos(-2), ctx.pos(2)) == alpha,
          "value square: xi alpha entry is off");
    guard(gp, xi.at(ctx.pos(-1), ctx.pos(2)) == beta,
          "value square: xi beta entry is off");
    guard(gp,
          xi.at(ctx.pos(-2), ctx.pos(-3)) ==
              R.neg(R.mul(R.conj(at(1, 1)), R.conj(at(3, 1)))),
          "value square: xi (-2,-3) entry is off");
    guard(gp,
          xi.at(ctx.pos(-1), ctx.pos(-3)) ==
              R.mul(R.conj(at(2, 1)), R.conj(at(3, 1))),
          "value square: xi (-1,-3) entry is off");
  }

  // Two-entry corrector restoring row -3; its factors commute.
  ConjWord wtau = u_entry_multiple_word(ctx, sigma, at(2, 1), -3, 1, -3, 1, gp);
  wtau = concat(
      ctx, std::move(wtau),
      u_entry_multiple_word(ctx, sigma, R.neg(at(1, 1)), -3, 1, -3, 2, gp));
  Mat tau_v = mul(ctx.t_mat(-3, 1, R.mul(at(-3, 1), at(2, 1))),
                  ctx.t_mat(-3, 2, R.neg(R.mul(at(-3, 1), at(1, 1)))));
  guard(gp, wtau.value == tau_v, "value square: corrector word value mismatch");
  Mat xitau = mul(xi, tau_v);

  const RingElem s31c_m31 = R.mul(R.conj(at(3, 1)), at(-3, 1));
  const RingElem gamma =
      R.add(alpha, R.mul(R.conj(at(1, 1)), R.mul(s31c_m31, at(1, 1))));
  const RingElem delta_v =
      R.sub(beta, R.mul(R.conj(at(2, 1)), R.mul(s31c_m31, at(1, 1))));
  if (gp.enabled) {
    for (int c = 0; c < dim; ++c)
      guard(gp,
            c == ctx.pos(-3) ? xitau.at(ctx.pos(-3), c) == R.one()
                             : R.is_zero(xitau.at(ctx.pos(-3), c)),
            "value square: xi tau must have trivial row -3");
    guard(gp, xitau.at(ctx.pos(-2), ctx.pos(2)) == gamma,
          "value square: gamma entry is off");
    guard(gp, xitau.at(ctx.pos(-1), ctx.pos(2)) == delta_v,
          "value square: delta entry is off");
    guard(gp, R.is_zero(xitau.at(ctx.pos(-2), ctx.pos(3))),
          "value square: (-2,3) of xi tau must vanish");
    guard(gp, R.is_zero(xitau.at(ctx.pos(-1), ctx.pos(3))),
          "value square: (-1,3) of xi tau must vanish");
  }

  // Main chain: [E, sigma] = E xi, correct the row, shuffle against
  // T_{2,-3}(-x).
  append_factor(ctx, w, E.word, +1);
  append_factor(ctx, w, ElemWord{}, -1);
  guard(gp, w.value == mul(E.mat, xi),
        "value square: [E, sigma] disagrees with E xi");
  w = concat(ctx, std::move(w), wtau);
  w = shuffle_lemma(ctx, ctx.t_word(2, -3, R.neg(x)), E.word, w, gp);

  // Left commutator factor [E^{-1}, T_{2,-3}(-x)]: exactly three leaks at
  // (1,-1), (1,-2), (1,-3) with mirrored echoes.
  Mat fa = mul(mul(evaluate_elem(ctx, inverse_word(ctx, E.word)),
                   ctx.t_mat(2, -3, R.neg(x))),
               mul(E.mat, ctx.t_mat(2, -3, x)));
  const RingElem y1 = fa.at(ctx.pos(1), ctx.pos(-1));
  const RingElem p2 = fa.at(ctx.pos(1), ctx.pos(-2));
  const RingElem p3 = fa.at(ctx.pos(1), ctx.pos(-3));
  if (gp.enabled) {
    guard(gp, p2 == R.mul(R.lambda_bar(), R.mul(R.conj(x), R.conj(v3))),
          "value square: (1,-2) leak closed form is off");
    guard(gp, p3 == R.neg(R.mul(x, R.conj(v2))),
          "value square: (1,-3) leak closed form is off");
    guard(gp,
          y1 == R.sub(R.mul(R.lambda_bar(),
                            R.mul(R.conj(x), R.mul(v2, R.conj(v3)))),
                      R.mul(x, R.mul(R.conj(v2), v3))),
          "value square: (1,-1) leak closed form is off");
    guard(gp,
          fa == mul(mul(ctx.t_mat(1, -1, y1), ctx.t_mat(1, -2, p2)),
                    ctx.t_mat(1, -3, p3)),
          "value square: Eichler commutator has extra support");
  }

  // Peel words for every displayed factor of the shuffled value.
  // (1,-1)(1,-2) merged pair: ^{T_12(conj(v2))} T_{2,-1}(-x v3).
  ConjWord pair = u_conj_entry_multiple_word(
      ctx, sigma, R.neg(R.mul(x, R.conj(at(1, 1)))), 2, 3, 2, -1, gp);
  pair = concat(ctx, std::move(pair),
                u_conj_entry_multiple_word(ctx, sigma,
                                           R.mul(x, R.conj(at(2, 1))), 1, 3,
                                           2, -1, gp));
  ConjWord w_f12 = conj_by(ctx, ctx.t_word(1, 2, R.conj(v2)), std::move(pair));
  guard(gp, w_f12.value == mul(ctx.t_mat(1, -1, y1), ctx.t_mat(1, -2, p2)),
        "value square: merged (1,-1)(1,-2) pair is off");

  // (1,-3) merged with the p = 1 column factor.
  ConjWord w_f3 = u_diag_diff_multiple_word(
      ctx, sigma, R.neg(R.mul(x, at(1, 1))), 2, 1, 1, -3, gp);
  w_f3 = concat(ctx, std::move(w_f3),
                u_entry_multiple_word(ctx, sigma, R.mul(x, at(1, 2)), 2, 1, 1,
                                      -3, gp));
  guard(gp,
        w_f3.value ==
            ctx.t_mat(1, -3, R.add(p3, R.mul(x, R.mul(at(1, 1), at(1, 1))))),
        "value square: merged (1,-3) factor is off");

  // Remaining column factors T_{p,-3}(x s_p1 s11), p != +-1, +-3.
  ConjWord w_q = make_conj_word(ctx, sigma);
  Mat q_expect = Mat::identity(ctx.ring(), dim);
  {
    std::vector<int> rows;
    rows.push_back(2);
    for (int p = 4; p <= ctx.n(); ++p) rows.push_back(p);
    for (int p = -ctx.n(); p <= -4; ++p) rows.push_back(p);
    for (int p : rows) {
      w_q = concat(ctx, std::move(w_q),
                   u_entry_multiple_word(ctx, sigma, R.mul(x, at(1, 1)), p, 1,
                                         p, -3, gp));
      if (gp.enabled)
        q_expect = mul(q_expect,
                       ctx.t_mat(p, -3, R.mul(x, R.mul(at(p, 1), at(1, 1)))));
    }
  }
  guard(gp, w_q.value == q_expect,
        "value square: column factor product is off");

  // T_{-2,-3}(x gamma) and T_{-1,-3}(x delta).
  ConjWord w_f4 = u_entry_multiple_word(ctx, sigma, R.mul(x, at(1, 1)), -2, 1,
                                        -2, -3, gp);
  w_f4 = concat(ctx, std::move(w_f4),
                u_conj_entry_multiple_word(
                    ctx, sigma,
                    R.neg(R.mul(x, R.mul(R.lambda(), R.conj(at(1, 1))))), -2,
                    1, -2, -3, gp));
  w_f4 = concat(ctx, std::move(w_f4),
                u_entry_multiple_word(
                    ctx, sigma,
                    R.mul(x, R.mul(R.conj(at(1, 1)),
                                   R.mul(R.conj(at(3, 1)), at(1, 1)))),
                    -3, 1, -2, -3, gp));
  guard(gp, w_f4.value == ctx.t_mat(-2, -3, R.mul(x, gamma)),
        "value square: gamma factor is off");

  ConjWord w_f5 = u_antidiag_multiple_word(ctx, sigma, R.mul(x, at(1, 1)), -1,
                                           -1, -3, gp);
  w_f5 = concat(ctx, std::move(w_f5),
                u_conj_entry_multiple_word(
                    ctx, sigma, R.mul(x, R.mul(R.lambda(), R.conj(at(2, 1)))),
                    -2, 1, -1, -3, gp));
  w_f5 = concat(ctx, std::move(w_f5),
                u_entry_multiple_word(
                    ctx, sigma,
                    R.neg(R.mul(x, R.mul(R.conj(at(2, 1)),
                                         R.mul(R.conj(at(3, 1)), at(1, 1))))),
                    -3, 1, -1, -3, gp));
  guard(gp, w_f5.value == ctx.t_mat(-1, -3, R.mul(x, delta_v)),
        "value square: delta factor is off");

  ConjWord peeled = invert(ctx, w_f5);
  peeled = concat(ctx, std::move(peeled), invert(ctx, w_f4));
  peeled = concat(ctx, std::move(peeled), invert(ctx, w_q));
  peeled = concat(ctx, std::move(peeled), invert(ctx, w_f3));
  peeled = concat(ctx, std::move(peeled), invert(ctx, w_f12));
  peeled = concat(ctx, std::move(peeled), w);

  const RingElem s11x = R.mul(at(1, 1), x);
  const RingElem big_x =
      R.mul(R.conj(s11x), R.mul(ctx.column_value(sigma, 1), s11x));
  const RingElem d = R.mul(R.lambda(), R.mul(x, R.mul(at(3, 1), at(1, 1))));
  const RingElem ep =
      R.mul(R.conj(x), R.mul(x, R.mul(at(-2, 1), at(1, 1))));
  if (gp.enabled) {
    guard(gp,
          identity_except(ctx, peeled.value, {{ctx.pos(3), ctx.pos(-3)}}),
          "value square: residual is not a single long transvection");
    RingElem y_exp = R.add(big_x, R.sub(d, R.mul(R.lambda(), R.conj(d))));
    y_exp = R.add(y_exp, R.sub(ep, R.mul(R.lambda(), R.conj(ep))));
    y_exp = R.mul(R.lambda_bar(), y_exp);
    guard(gp, peeled.value.at(ctx.pos(3), ctx.pos(-3)) == y_exp,
          "value square: residual parameter is off");
  }

  // Strip the two extra symmetrized terms with plain commutators.
  ConjWord wd = commutator_with(
      ctx, ctx.t_word(3, 1, R.neg(R.mul(x, at(1, 1)))),
      u_entry_multiple_word(ctx, sigma, R.one(), 3, 1, 1, -3, gp));
  guard(gp,
        wd.value ==
            ctx.t_mat(3, -3,
                      R.neg(R.mul(R.lambda_bar(),
                                  R.sub(d, R.mul(R.lambda(), R.conj(d)))))),
        "value square: first strip commutator is off");
  ConjWord we = commutator_with(
      ctx,
      ctx.t_word(3, 1, R.neg(R.mul(R.lambda_bar(),
                                   R.mul(R.conj(x), R.mul(x, at(1, 1)))))),
      u_entry_multiple_word(ctx, sigma, R.one(), -2, 1, 1, -3, gp));
  guard(gp,
        we.value ==
            ctx.t_mat(3, -3,
                      R.neg(R.mul(R.lambda_bar(),
                                  R.sub(ep, R.mul(R.lambda(), R.conj(ep)))))),
        "value square: second strip commutator is off");

  ConjWord total = std::move(peeled);
  total = concat(ctx, std::move(total), wd);
  total = concat(ctx, std::move(total), we);

  // Route the long target from (3,-3) to (k,-k); the parameter picks up
  // lambda^{(eps(3)-eps(k))/2} on a clean hop.
  if (k == 3) {
  } else if (k != -3) {
    total = conj_by(ctx, ctx.p_word(-k, -3), std::move(total));
  } else {
    total = conj_by(ctx, ctx.p_word(-1, -3), std::move(total));
    total = conj_by(ctx, ctx.p_word(3, -1), std::move(total));
  }

  total.extras = TraceExtras{};
  total.extras.bound = (2 * ctx.n() + 17) * 160 + 4;
  total.extras.strict_isotropy = E.strict_isotropy;
  const RingElem lam_c = R.lambda_int_pow(-(eps_sign(k) + 1) / 2);
  finalize(total, ctx.t_mat(k, -k, R.mul(lam_c, big_x)));
  return total;
}

namespace {

// T_{k,-k}(lambda^{-(eps(k)+1)/2} |tau_{*1}|) over the base tau: square term
// via the value-square word, cross terms via long commutators against the
// column value, symmetrized remainder through one short carrier.
ConjWord first_column_value_word(const FormRingContext& ctx, const Mat& tau,
                                 int k, const GuardPolicy& gp) {
  const Ring& R = *ctx.ring();
  const Mat tau_inv = inverse(tau);
  const RingElem big_l = ctx.column_value(tau, 1);
  const RingElem lam_c = R.lambda_int_pow(-(eps_sign(k) + 1) / 2);
  const int s = aux_positive_index(ctx, k);
  // Long partner at (s,-s): lambda * g = -|tau_{*1}| lies in Lambda.
  const RingElem g = R.neg(R.mul(R.lambda_bar(), big_l));

  auto t_of = [&](int q) {
    return R.mul(tau.at(ctx.pos(q), ctx.pos(1)),
                 tau_inv.at(ctx.pos(1), ctx.pos(q)));
  };

  std::vector<int> omega;
  for (int p = 1; p <= ctx.n(); ++p) omega.push_back(p);
  for (int p = -ctx.n(); p <= -1; ++p) omega.push_back(p);

  ConjWord w = u_value_square_word(
      ctx, tau, tau_inv.at(ctx.pos(1), ctx.pos(1)), k, gp);

  for (int q : omega) {
    if (q == 1 || q == -1) continue;
    const RingElem h_coeff = tau_inv.at(ctx.pos(1), ctx.pos(q));
    ConjWord h_word =
        u_entry_multiple_word(ctx, tau, h_coeff, q, 1, -s, -k, gp);
    ConjWord cross = invert(
        ctx,
        u_entry_multiple_word(ctx, tau, R.mul(g, h_coeff), q, 1, s, -k, gp));
    cross = concat(ctx, std::move(cross),
                   commutator_with(ctx, ctx.t_word(s, -s, g), h_word));
    if (gp.enabled) {
      const RingElem tq = t_of(q);
      guard(gp,
            cross.value ==
                ctx.t_mat(k, -k,
                          R.mul(lam_c,
                                R.mul(R.conj(tq), R.mul(big_l, tq)))),
            "column value: cross term did not collapse");
    }
    w = concat(ctx, std::move(w), cross);
  }

  {
    const RingElem h_coeff = tau_inv.at(ctx.pos(1), ctx.pos(-1));
    ConjWord h_word =
        u_antidiag_multiple_word(ctx, tau, h_coeff, -1, -s, -k, gp);
    ConjWord cross = invert(ctx, u_antidiag_multiple_word(
                                     ctx, tau, R.mul(g, h_coeff), -1, s, -k,
                                     gp));
    cross = concat(ctx, std::move(cross),
                   commutator_with(ctx, ctx.t_word(s, -s, g), h_word));
    if (gp.enabled) {
      const RingElem tq = t_of(-1);
      guard(gp,
            cross.value ==
                ctx.t_mat(k, -k,
                          R.mul(lam_c,
                                R.mul(R.conj(tq), R.mul(big_l, tq)))),
            "column value: antidiagonal cross term did not collapse");
    }
    w = concat(ctx, std::move(w), cross);
  }

  // Remainder: with c0 = sum_{q<r} conj(t_q) t_r, the identity
  //   |tau_{*1}| = sum_q conj(t_q)|tau_{*1}|t_q + (X - lambda conj(X)),
  // X = |tau_{*1}| c0, closes the books.
  RingElem c0 = R.zero();
  for (std::size_t a = 0; a + 1 < omega.size(); ++a)
    for (std::size_t b = a + 1; b < omega.size(); ++b)
      c0 = R.add(c0, R.mul(R.conj(t_of(omega[a])), t_of(omega[b])));
  const RingElem big_x = R.mul(big_l, c0);

  RingElem acc = R.zero();
  for (int q : omega) {
    const RingElem tq = t_of(q);
    acc = R.add(acc, R.mul(R.conj(tq), R.mul(big_l, tq)));
  }
  acc = R.add(acc, R.sub(big_x, R.mul(R.lambda(), R.conj(big_x))));
  if (!(acc == big_l))
    fail(ErrorKind::ExpansionMismatch,
         "column value: quadratic expansion is off");

  ConjWord g_word = make_conj_word(ctx, tau);
  for (int p = 2; p <= ctx.n(); ++p)
    g_word = concat(
        ctx, std::move(g_word),
        u_entry_multiple_word(
            ctx, tau,
            R.mul(lam_c, R.mul(R.conj(tau.at(ctx.pos(p), ctx.pos(1))), c0)),
            -p, 1, k, s, gp));
  g_word = concat(
      ctx, std::move(g_word),
      u_antidiag_multiple_word(
          ctx, tau,
          R.mul(lam_c, R.mul(R.conj(tau.at(ctx.pos(1), ctx.pos(1))), c0)),
          -1, k, s, gp));
  guard(gp, g_word.value == ctx.t_mat(k, s, R.mul(lam_c, big_x)),
        "column value: remainder carrier mismatch");
  ConjWord wb =
      invert(ctx, commutator_with(ctx, ctx.t_word(s, -k, R.one()), g_word));
  if (gp.enabled) {
    const RingElem rem = R.mul(lam_c, R.sub(big_x, R.mul(R.lambda(), R.conj(big_x))));
    guard(gp, wb.value == ctx.t_mat(k, -k, rem),
          "column value: remainder commutator is off");
  }
  w = concat(ctx, std::move(w), wb);
  return w;
}

}  // namespace

ConjWord u_value_word(const FormRingContext& ctx, const Mat& sigma, int j,
                      int k, const GuardPolicy& gp) {
  const Ring& R = *ctx.ring();
  (void)ctx.pos(j);
  (void)ctx.pos(k);
  if (ctx.n() < 3) fail(ErrorKind::BadIndex, "value words need n >= 3");
  require_member(ctx, sigma);
  auto at = [&](int a, int b) -> const RingElem& {
    return sigma.at(ctx.pos(a), ctx.pos(b));
  };
  const RingElem lam_c = R.lambda_int_pow(-(eps_sign(k) + 1) / 2);

  ConjWord w = make_conj_word(ctx, sigma);
  if (j == 1) {
    w = first_column_value_word(ctx, sigma, k, gp);
  } else {
    // Route column j onto column 1.  Same-sign hops preserve the column
    // value; the sign-changing hop to j < 0 leaves two symmetrized cross
    // terms, produced below by plain commutators.
    ElemWord mu;
    Mat sigma_hat;
    if (j != -1) {
      mu = ctx.p_word(1, j);
      sigma_hat = conj_mat(ctx, mu, sigma);
      if (gp.enabled)
        guard(gp,
              hat_value_formula(ctx, sigma, 1, j, gp) ==
                  ctx.column_value(sigma_hat, 1),
              "column value routing: hat-value formula disagrees");
    } else {
      mu = concat(ctx.p_word(1, 2), ctx.p_word(2, -1));
      sigma_hat = conj_mat(ctx, mu, sigma);
      if (gp.enabled) {
        Mat mid = conj_mat(ctx, ctx.p_word(2, -1), sigma);
        guard(gp,
              hat_value_formula(ctx, sigma, 2, -1, gp) ==
                  ctx.column_value(mid, 2),
              "column value routing: hat-value formula disagrees");
        guard(gp,
              ctx.column_value(mid, 2) == ctx.column_value(sigma_hat, 1),
              "column value routing: same-sign hop changed the value");
      }
    }
    w = first_column_value_word(ctx, sigma_hat, k, gp);
    w = rebase_conjugated(ctx, std::move(w), mu, sigma, gp);

    if (j < 0) {
      const int s = aux_positive_index(ctx, k);
      RingElem u1, u2;
      ConjWord h1 = make_conj_word(ctx, sigma);
      ConjWord h2 = make_conj_word(ctx, sigma);
      if (j != -1) {
        u1 = R.mul(R.conj(at(1, j)), at(-1, j));
        h1 = u_entry_multiple_word(
            ctx, sigma, R.mul(lam_c, R.conj(at(1, j))), -1, j, k, s, gp);
        u2 = R.mul(R.conj(at(-j, j)), at(j, j));
        h2 = u_conj_antidiag_multiple_word(
            ctx, sigma, R.mul(lam_c, at(j, j)), -j, k, s, gp);
      } else {
        u1 = R.mul(R.conj(at(2, -1)), at(-2, -1));
        h1 = u_entry_multiple_word(
            ctx, sigma, R.mul(lam_c, R.conj(at(2, -1))), -2, -1, k, s, gp);
        u2 = R.mul(R.conj(at(1, -1)), at(-1, -1));
        h2 = u_conj_antidiag_multiple_word(
            ctx, sigma, R.mul(lam_c, at(-1, -1)), 1, k, s, gp);
      }

      RingElem split = ctx.column_value(sigma_hat, 1);
      split = R.add(split, R.sub(u1, R.mul(R.lambda(), R.conj(u1))));
      split = R.add(split, R.sub(u2, R.mul(R.lambda(), R.conj(u2))));
      if (!(split == ctx.column_value(sigma, j)))
        fail(ErrorKind::ExpansionMismatch,
             "column value routing: cross-term split is off");

      ConjWord cor1 =
          invert(ctx, commutator_with(ctx, ctx.t_word(s, -k, R.one()), h1));
      guard(gp,
            cor1.value ==
                ctx.t_mat(k, -k,
                          R.mul(lam_c,
                                R.sub(u1, R.mul(R.lambda(), R.conj(u1))))),
            "column value routing: first cross term is off");
      ConjWord cor2 =
          invert(ctx, commutator_with(ctx, ctx.t_word(s, -k, R.one()), h2));
      guard(gp,
            cor2.value ==
                ctx.t_mat(k, -k,
                          R.mul(lam_c,
                                R.sub(u2, R.mul(R.lambda(), R.conj(u2))))),
            "column value routing: second cross term is off");
      w = concat(ctx, std::move(w), cor1);
      w = concat(ctx, std::move(w), cor2);
    }
  }

  std::optional<bool> strict = w.extras.strict_isotropy;
  w.extras = TraceExtras{};
  w.extras.strict_isotropy = strict;
  w.extras.bound =
      (j == 1 ? 10 * ctx.n() + 19 : 10 * ctx.n() + 25) * 160 + 4;
  finalize(w, ctx.t_mat(k, -k, R.mul(lam_c, ctx.column_value(sigma, j))));
  return w;
}

}  // namespace elemconj
