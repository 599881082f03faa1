#include "elemconj/gln.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace elemconj {

GlContext::GlContext(RingPtr ring, int n) : ring_(std::move(ring)), n_(n) {
  if (n < 3) fail(ErrorKind::BadIndex, "GL context needs n >= 3");
}

void GlContext::validate(const Transvection& t) const {
  if (t.family != TransvFamily::GlShort)
    fail(ErrorKind::BadIndex, "non-GL transvection in GL context");
  if (t.i < 1 || t.i > n_ || t.j < 1 || t.j > n_ || t.i == t.j)
    fail(ErrorKind::BadIndex, "bad GL transvection indices");
}

void GlContext::apply_left(Mat& m, const Transvection& t) const {
  row_op(m, t.i - 1, t.j - 1, t.x);
}

void GlContext::apply_right(Mat& m, const Transvection& t) const {
  col_op(m, t.j - 1, t.i - 1, t.x);
}

Transvection GlContext::t(int i, int j, RingElem x) const {
  Transvection tv{TransvFamily::GlShort, i, j, std::move(x)};
  validate(tv);
  return tv;
}

ElemWord GlContext::t_word(int i, int j, RingElem x) const {
  return ElemWord{{t(i, j, std::move(x))}};
}

Mat GlContext::t_mat(int i, int j, const RingElem& x) const {
  return transvection_matrix(t(i, j, x));
}

ElemWord GlContext::p_word(int i, int j) const {
  const Ring& R = *ring_;
  return ElemWord{{t(i, j, R.one()), t(j, i, R.from_int(-1)), t(i, j, R.one())}};
}

Mat GlContext::p_mat(int i, int j) const { return evaluate_elem(*this, p_word(i, j)); }

std::pair<Mat, ElemWord> GlContext::random_member(int len, Prng& rng) const {
  const Ring& R = *ring_;
  ElemWord w;
  for (int s = 0; s < len; ++s) {
    int i = 1 + static_cast<int>(rng.below(n_));
    int j = 1 + static_cast<int>(rng.below(n_ - 1));
    if (j >= i) ++j;
    w.ts.push_back(t(i, j, R.random_elem(rng)));
  }
  return {evaluate_elem(*this, w), std::move(w)};
}

RelationReport check_gl_relations(const GlContext& ctx, std::uint64_t pair_budget) {
  const Ring& R = *ctx.ring();
  const int n = ctx.n();
  RelationReport rep;

  std::vector<std::pair<RingElem, RingElem>> pairs;
  if (R.size() != 0 && R.size() <= pair_budget &&
      R.size() * R.size() <= pair_budget) {
    for (std::uint64_t a = 0; a < R.size(); ++a)
      for (std::uint64_t b = 0; b < R.size(); ++b)
        pairs.emplace_back(R.decode(a), R.decode(b));
  } else {
    Prng rng(0x61E5u);
    for (int s = 0; s < 1024; ++s)
      pairs.emplace_back(R.random_elem(rng), R.random_elem(rng));
  }

  RelationLine additivity{"additivity t_ij(x)t_ij(y)=t_ij(x+y)"};
  RelationLine disjoint{"disjoint commutation"};
  RelationLine product{"[t_ij(x),t_jk(y)]=t_ik(xy)"};
  RelationLine p_moves{"p-conjugation moves"};

  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      for (const auto& [x, y] : pairs) {
        ++additivity.checked;
        if (!(mul(ctx.t_mat(i, j, x), ctx.t_mat(i, j, y)) ==
              ctx.t_mat(i, j, R.add(x, y))))
          ++additivity.failed;
      }
      for (int h = 1; h <= n; ++h)
        for (int k = 1; k <= n; ++k) {
          if (h == k) continue;
          if (h == j || k == i) continue;
          for (const auto& [x, y] : pairs) {
            ++disjoint.checked;
            if (!is_identity(commutator(ctx.t_mat(i, j, x), ctx.t_mat(h, k, y))))
              ++disjoint.failed;
          }
        }
      for (int k = 1; k <= n; ++k) {
        if (k == i || k == j) continue;
        for (const auto& [x, y] : pairs) {
          ++product.checked;
          if (!(commutator(ctx.t_mat(i, j, x), ctx.t_mat(j, k, y)) ==
                ctx.t_mat(i, k, R.mul(x, y))))
            ++product.failed;
        }
        // Lemma-style moves: ^{p_ki} t_ij(x) = t_kj(x), ^{p_kj} t_ij(x) = t_ik(x)
        for (const auto& [x, y] : pairs) {
          (void)y;
          ++p_moves.checked;
          if (!(group_conj(ctx.t_mat(i, j, x), ctx.p_mat(k, i)) == ctx.t_mat(k, j, x)) ||
              !(group_conj(ctx.t_mat(i, j, x), ctx.p_mat(k, j)) == ctx.t_mat(i, k, x)))
            ++p_moves.failed;
        }
      }
    }
  rep.lines = {additivity, disjoint, product, p_moves};
  return rep;
}

ConjWord gl_entry_word_23(const GlContext& ctx, const Mat& sigma,
                          const GuardPolicy& gp) {
  const Ring& R = *ctx.ring();
  const RingElem s23 = sigma.at(1, 2);
  const RingElem s22 = sigma.at(1, 1);

  ElemWord tau_word{{ctx.t(2, 1, R.neg(s23)), ctx.t(3, 1, s22)}};
  Mat tau = evaluate_elem(ctx, tau_word);
  Mat tau_inv = evaluate_elem(ctx, inverse_word(ctx, tau_word));

  ConjWord w = make_conj_word(ctx, sigma);

  if (gp.enabled) {
    // tau was built so that sigma tau^{-1} fixes the second row of sigma and
    // xi := sigma tau^{-1} sigma^{-1} has trivial second row.
    Mat st = mul(sigma, tau_inv);
    bool row_ok = true;
    for (int c = 0; c < ctx.dim(); ++c)
      row_ok = row_ok && st.at(1, c) == sigma.at(1, c);
    guard(gp, row_ok, "entry chain: second row of sigma*tau^-1 changed");
    Mat xi = mul(st, w.sigma_inv);
    bool xi_ok = true;
    for (int c = 0; c < ctx.dim(); ++c) {
      const RingElem& v = xi.at(1, c);
      xi_ok = xi_ok && (c == 1 ? v == R.one() : R.is_zero(v));
    }
    guard(gp, xi_ok, "entry chain: xi has nontrivial second row");

    Mat c1 = commutator(tau_inv, ctx.t_mat(3, 2, R.one()));
    guard(gp, c1 == ctx.t_mat(3, 1, R.neg(s23)),
          "entry chain: [tau^-1, t_32(1)] != t_31(-sigma_23)");
    Mat c2 = commutator(ctx.t_mat(3, 2, R.one()), xi);
    bool col_shape = true;
    for (int r = 0; r < ctx.dim(); ++r)
      for (int c = 0; c < ctx.dim(); ++c) {
        const RingElem& v = c2.at(r, c);
        if (r == c)
          col_shape = col_shape && v == R.one();
        else if (c == 1 && r != 1)
          continue;  // column-2 entries are the free parameters
        else
          col_shape = col_shape && R.is_zero(v);
      }
    guard(gp, col_shape, "entry chain: [t_32(1), xi] is not a column-2 product");
  }

  append_factor(ctx, w, tau_word, +1);
  append_factor(ctx, w, ElemWord{}, -1);  // [tau, sigma]
  w = shuffle_lemma(ctx, ctx.t_word(3, 2, R.one()), tau_word, w, gp);
  w = commutator_with(ctx, ctx.t_word(1, 2, R.one()), w);
  finalize(w, ctx.t_mat(3, 2, s23));
  return w;
}

namespace {

struct SwapHop { int u, v; };  // conjugation by p_uv (u < v)

// Route the source entry (i,j) to (2,3) by signed swaps; returns hops in
// application order.
std::vector<SwapHop> route_entry_gl(int n, int i, int j) {
  auto enc = [n](int a, int b) { return (a - 1) * n + (b - 1); };
  std::map<int, std::pair<int, SwapHop>> parent;  // state -> (prev, hop)
  std::queue<std::pair<int, int>> q;
  q.emplace(i, j);
  parent[enc(i, j)] = {-1, {0, 0}};
  while (!q.empty()) {
    auto [a, b] = q.front();
    q.pop();
    if (a == 2 && b == 3) break;
    for (int u = 1; u <= n; ++u)
      for (int v = u + 1; v <= n; ++v) {
        auto swp = [&](int s) { return s == u ? v : (s == v ? u : s); };
        int na = swp(a), nb = swp(b);
        if (!parent.count(enc(na, nb))) {
          parent[enc(na, nb)] = {enc(a, b), {u, v}};
          q.emplace(na, nb);
        }
      }
  }
  std::vector<SwapHop> hops;
  int cur = enc(2, 3);
  while (parent.at(cur).first != -1) {
    hops.push_back(parent.at(cur).second);
    cur = parent.at(cur).first;
  }
  std::reverse(hops.begin(), hops.end());
  return hops;
}

struct TargetMove { bool row; int dest; };

// Route the target position (3,2) to (k,l) by the clean p-moves
// ^{p_{k'a}} t_ab = t_{k'b} (k' outside {a,b}) and its column analogue.
std::vector<TargetMove> route_target_gl(int n, int k, int l) {
  auto enc = [n](int a, int b) { return (a - 1) * n + (b - 1); };
  std::map<int, std::pair<int, TargetMove>> parent;
  std::queue<std::pair<int, int>> q;
  q.emplace(3, 2);
  parent[enc(3, 2)] = {-1, {false, 0}};
  while (!q.empty()) {
    auto [a, b] = q.front();
    q.pop();
    if (a == k && b == l) break;
    for (int d = 1; d <= n; ++d) {
      if (d != a && d != b && !parent.count(enc(d, b))) {
        parent[enc(d, b)] = {enc(a, b), {true, d}};
        q.emplace(d, b);
      }
      if (d != a && d != b && !parent.count(enc(a, d))) {
        parent[enc(a, d)] = {enc(a, b), {false, d}};
        q.emplace(a, d);
      }
    }
  }
  std::vector<TargetMove> moves;
  int cur = enc(k, l);
  while (parent.at(cur).first != -1) {
    moves.push_back(parent.at(cur).second);
    cur = parent.at(cur).first;
  }
  std::reverse(moves.begin(), moves.end());
  return moves;
}

void check_gl_args(const GlContext& ctx, int i, int j, int k, int l) {
  auto in_range = [&](int v) { return v >= 1 && v <= ctx.n(); };
  if (!in_range(i) || !in_range(j) || !in_range(k) || !in_range(l) || i == j ||
      k == l)
    fail(ErrorKind::BadIndex, "GL word indices must be distinct and in range");
}

}  // namespace

ConjWord gl_entry_word(const GlContext& ctx, const Mat& sigma, int i, int j,
                       int k, int l, const GuardPolicy& gp) {
  check_gl_args(ctx, i, j, k, l);
  const RingElem target_val = sigma.at(i - 1, j - 1);

  // Bring the source entry to position (2,3), tracking the +-1 the signed
  // permutations introduce and washing it away with p_21^2 if needed.
  std::vector<SwapHop> hops = route_entry_gl(ctx.n(), i, j);
  ElemWord mu;  // accumulated so that sigma_hat = ^mu sigma
  int cr = i, cc = j, sign = 1;
  for (const SwapHop& h : hops) {
    mu = concat(ctx.p_word(h.u, h.v), mu);  // later hops multiply on the left
    if (cr == h.u) { cr = h.v; sign = -sign; }
    else if (cr == h.v) cr = h.u;
    if (cc == h.u) { cc = h.v; sign = -sign; }
    else if (cc == h.v) cc = h.u;
  }
  // p_21^2 = diag(-1,-1,1,...) flips the sign of the (2,3) entry only.
  if (sign < 0) mu = concat(concat(ctx.p_word(2, 1), ctx.p_word(2, 1)), mu);

  Mat sigma_hat = sigma;
  if (!mu.ts.empty()) {
    mul_left_elem(ctx, sigma_hat, mu);
    mul_right_elem(ctx, sigma_hat, inverse_word(ctx, mu));
  }
  guard(gp, sigma_hat.at(1, 2) == target_val,
        "entry routing: routed entry differs from sigma_ij");

  ConjWord w = gl_entry_word_23(ctx, sigma_hat, gp);
  if (!mu.ts.empty()) w = rebase_conjugated(ctx, w, mu, sigma, gp);

  int a = 3, b = 2;
  for (const TargetMove& mv : route_target_gl(ctx.n(), k, l)) {
    ElemWord hop = mv.row ? ctx.p_word(mv.dest, a) : ctx.p_word(mv.dest, b);
    w = conj_by(ctx, hop, w);
    (mv.row ? a : b) = mv.dest;
  }
  guard(gp, w.value == ctx.t_mat(k, l, target_val),
        "entry word: target move produced the wrong transvection");
  finalize(w, ctx.t_mat(k, l, target_val));
  return w;
}

ConjWord gl_diag_diff_word(const GlContext& ctx, const Mat& sigma, int i, int j,
                           int k, int l, const GuardPolicy& gp) {
  check_gl_args(ctx, i, j, k, l);
  const Ring& R = *ctx.ring();
  ElemWord shift = ctx.t_word(j, i, R.one());
  Mat sigma_hat = sigma;
  mul_left_elem(ctx, sigma_hat, shift);
  mul_right_elem(ctx, sigma_hat, inverse_word(ctx, shift));

  RingElem expect = R.add(R.sub(sigma.at(i - 1, i - 1), sigma.at(j - 1, j - 1)),
                          R.sub(sigma.at(j - 1, i - 1), sigma.at(i - 1, j - 1)));
  guard(gp, sigma_hat.at(j - 1, i - 1) == expect,
        "diag diff: shifted (j,i) entry mismatch");

  ConjWord w1 = rebase_conjugated(
      ctx, gl_entry_word(ctx, sigma_hat, j, i, k, l, gp), shift, sigma, gp);
  ConjWord w2 = gl_entry_word(ctx, sigma, i, j, k, l, gp);
  ConjWord w3 = invert(ctx, gl_entry_word(ctx, sigma, j, i, k, l, gp));
  ConjWord w = concat(ctx, concat(ctx, std::move(w1), w2), w3);
  finalize(w, ctx.t_mat(k, l, R.sub(sigma.at(i - 1, i - 1), sigma.at(j - 1, j - 1))));
  return w;
}

ConjWord gl_multiple_entry_word(const GlContext& ctx, const Mat& sigma,
                                const RingElem& x, int i, int j, int k, int l,
                                const GuardPolicy& gp) {
  check_gl_args(ctx, i, j, k, l);
  const Ring& R = *ctx.ring();
  int a = 1;
  while (a == k || a == l) ++a;
  if (a > ctx.n()) fail(ErrorKind::BadIndex, "no auxiliary index available");
  ConjWord w = gl_entry_word(ctx, sigma, i, j, a, l, gp);
  w = commutator_with(ctx, ctx.t_word(k, a, x), w);
  finalize(w, ctx.t_mat(k, l, R.mul(x, sigma.at(i - 1, j - 1))));
  return w;
}

ConjWord gl_multiple_diag_diff_word(const GlContext& ctx, const Mat& sigma,
                                    const RingElem& x, int i, int j, int k,
                                    int l, const GuardPolicy& gp) {
  check_gl_args(ctx, i, j, k, l);
  const Ring& R = *ctx.ring();
  ElemWord shift = ctx.t_word(j, i, R.one());
  Mat sigma_hat = sigma;
  mul_left_elem(ctx, sigma_hat, shift);
  mul_right_elem(ctx, sigma_hat, inverse_word(ctx, shift));

  ConjWord w1 = rebase_conjugated(
      ctx, gl_multiple_entry_word(ctx, sigma_hat, x, j, i, k, l, gp), shift,
      sigma, gp);
  ConjWord w2 = gl_multiple_entry_word(ctx, sigma, x, i, j, k, l, gp);
  ConjWord w3 = invert(ctx, gl_multiple_entry_word(ctx, sigma, x, j, i, k, l, gp));
  ConjWord w = concat(ctx, concat(ctx, std::move(w1), w2), w3);
  finalize(w, ctx.t_mat(k, l, R.mul(x, R.sub(sigma.at(i - 1, i - 1),
                                             sigma.at(j - 1, j - 1)))));
  return w;
}

}  // namespace elemconj
