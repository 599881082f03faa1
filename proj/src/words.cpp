#include "elemconj/words.hpp"

#include <algorithm>

#include "json.hpp"

namespace elemconj {

Mat GroupCtx::transvection_matrix(const Transvection& t) const {
  Mat m = Mat::identity(ring(), dim());
  apply_left(m, t);
  return m;
}

ElemWord concat(ElemWord a, const ElemWord& b) {
  a.ts.insert(a.ts.end(), b.ts.begin(), b.ts.end());
  return a;
}

ElemWord inverse_word(const GroupCtx& ctx, const ElemWord& w) {
  const Ring& R = *ctx.ring();
  ElemWord out;
  out.ts.reserve(w.ts.size());
  for (auto it = w.ts.rbegin(); it != w.ts.rend(); ++it) {
    Transvection t = *it;
    t.x = R.neg(t.x);
    out.ts.push_back(t);
  }
  return out;
}

Mat evaluate_elem(const GroupCtx& ctx, const ElemWord& w) {
  Mat m = Mat::identity(ctx.ring(), ctx.dim());
  mul_right_elem(ctx, m, w);
  return m;
}

void mul_left_elem(const GroupCtx& ctx, Mat& m, const ElemWord& w) {
  // E m with E = t0 t1 ... tk means applying tk first.
  for (auto it = w.ts.rbegin(); it != w.ts.rend(); ++it) ctx.apply_left(m, *it);
}

void mul_right_elem(const GroupCtx& ctx, Mat& m, const ElemWord& w) {
  for (const Transvection& t : w.ts) ctx.apply_right(m, t);
}

ConjWord make_conj_word(const GroupCtx& ctx, Mat sigma) {
  Mat inv = inverse(sigma);
  return make_conj_word(ctx, std::move(sigma), std::move(inv));
}

ConjWord make_conj_word(const GroupCtx& ctx, Mat sigma, Mat sigma_inv) {
  ConjWord w;
  w.value = Mat::identity(ctx.ring(), ctx.dim());
  w.value_inv = w.value;
  w.sigma = std::move(sigma);
  w.sigma_inv = std::move(sigma_inv);
  return w;
}

namespace {

// eps * base^{sign} * eps^{-1}, evaluated sparsely.
Mat conjugate_base(const GroupCtx& ctx, const ConjWord& w, const ConjFactor& f) {
  Mat m = (f.sign > 0) ? w.sigma : w.sigma_inv;
  mul_left_elem(ctx, m, f.conjugator);
  mul_right_elem(ctx, m, inverse_word(ctx, f.conjugator));
  return m;
}

}  // namespace

void append_factor(const GroupCtx& ctx, ConjWord& w, ElemWord conjugator, int sign) {
  for (const Transvection& t : conjugator.ts) ctx.validate(t);
  ConjFactor f{std::move(conjugator), sign};
  Mat fm = conjugate_base(ctx, w, f);
  ConjFactor finv{f.conjugator, -sign};
  Mat fm_inv = conjugate_base(ctx, w, finv);
  w.value = mul(w.value, fm);
  w.value_inv = mul(fm_inv, w.value_inv);
  w.factors.push_back(std::move(f));
}

ConjWord conj_by(const GroupCtx& ctx, const ElemWord& e, ConjWord w) {
  for (ConjFactor& f : w.factors) {
    ElemWord combined = e;
    combined.ts.insert(combined.ts.end(), f.conjugator.ts.begin(),
                       f.conjugator.ts.end());
    f.conjugator = std::move(combined);
  }
  ElemWord e_inv = inverse_word(ctx, e);
  mul_left_elem(ctx, w.value, e);
  mul_right_elem(ctx, w.value, e_inv);
  mul_left_elem(ctx, w.value_inv, e);
  mul_right_elem(ctx, w.value_inv, e_inv);
  return w;
}

ConjWord invert(const GroupCtx& ctx, ConjWord w) {
  (void)ctx;
  std::reverse(w.factors.begin(), w.factors.end());
  for (ConjFactor& f : w.factors) f.sign = -f.sign;
  std::swap(w.value, w.value_inv);
  return w;
}

ConjWord concat(const GroupCtx& ctx, ConjWord a, const ConjWord& b) {
  (void)ctx;
  if (!(a.sigma == b.sigma))
    fail(ErrorKind::DimMismatch, "concat of words over different bases");
  a.factors.insert(a.factors.end(), b.factors.begin(), b.factors.end());
  a.value = mul(a.value, b.value);
  a.value_inv = mul(b.value_inv, a.value_inv);
  return a;
}

ConjWord commutator_with(const GroupCtx& ctx, const ElemWord& e, const ConjWord& w) {
  return concat(ctx, conj_by(ctx, e, w), invert(ctx, w));
}

ConjWord shuffle_lemma(const GroupCtx& ctx, const ElemWord& a, const ElemWord& b,
                       const ConjWord& w, const GuardPolicy& gp) {
  ElemWord b_inv = inverse_word(ctx, b);
  ConjWord out = conj_by(ctx, b_inv, commutator_with(ctx, a, w));
  if (gp.enabled) {
    Mat a_mat = evaluate_elem(ctx, a);
    Mat b_inv_mat = evaluate_elem(ctx, b_inv);
    Mat c = mul(b_inv_mat, w.value);  // the "c" of ^(b^{-1})[a, bc]
    Mat expect = mul(commutator(b_inv_mat, a_mat), commutator(a_mat, c));
    guard(gp, out.value == expect, "shuffle identity ^(b^-1)[a,bc] = [b^-1,a][a,c]");
  }
  return out;
}

ConjWord rebase_conjugated(const GroupCtx& ctx, ConjWord w, const ElemWord& mu,
                           Mat sigma, const GuardPolicy& gp) {
  if (gp.enabled) {
    Mat check = sigma;
    mul_left_elem(ctx, check, mu);
    mul_right_elem(ctx, check, inverse_word(ctx, mu));
    guard(gp, check == w.sigma, "rebase_conjugated: base mismatch");
  }
  for (ConjFactor& f : w.factors)
    f.conjugator.ts.insert(f.conjugator.ts.end(), mu.ts.begin(), mu.ts.end());
  w.sigma_inv = inverse(sigma);
  w.sigma = std::move(sigma);
  return w;
}

ConjWord rebase_commutator(const GroupCtx& ctx, const ConjWord& w,
                           const ElemWord& big_w, const ElemWord& e_word,
                           Mat sigma, const GuardPolicy& gp) {
  ConjWord out = make_conj_word(ctx, std::move(sigma));
  if (gp.enabled) {
    // zeta = W sigma^{-1} (E sigma E^{-1}) W^{-1}
    Mat zeta = out.sigma_inv;
    Mat conj_part = out.sigma;
    mul_left_elem(ctx, conj_part, e_word);
    mul_right_elem(ctx, conj_part, inverse_word(ctx, e_word));
    zeta = mul(zeta, conj_part);
    mul_left_elem(ctx, zeta, big_w);
    mul_right_elem(ctx, zeta, inverse_word(ctx, big_w));
    guard(gp, zeta == w.sigma, "rebase_commutator: base mismatch");
  }
  for (const ConjFactor& f : w.factors) {
    ElemWord eps_w = concat(f.conjugator, big_w);
    ElemWord eps_we = concat(eps_w, e_word);
    if (f.sign > 0) {
      append_factor(ctx, out, eps_w, -1);
      append_factor(ctx, out, std::move(eps_we), +1);
    } else {
      append_factor(ctx, out, std::move(eps_we), -1);
      append_factor(ctx, out, eps_w, +1);
    }
  }
  guard(gp, out.value == w.value, "rebase_commutator: value changed");
  out.extras = w.extras;
  return out;
}

void finalize(ConjWord& w, Mat claimed) {
  if (!(w.value == claimed))
    fail(ErrorKind::GuardFailed, "finalize: word value differs from claimed target");
  w.claimed_target = std::move(claimed);
  w.finalized = true;
}

Mat evaluate_conj(const GroupCtx& ctx, const ConjWord& w) {
  Mat m = Mat::identity(ctx.ring(), ctx.dim());
  for (const ConjFactor& f : w.factors) {
    mul_right_elem(ctx, m, f.conjugator);
    m = mul(m, (f.sign > 0) ? w.sigma : w.sigma_inv);
    mul_right_elem(ctx, m, inverse_word(ctx, f.conjugator));
  }
  return m;
}

bool verify_word(const GroupCtx& ctx, const ConjWord& w) {
  Mat full = evaluate_conj(ctx, w);
  if (!(full == w.value)) return false;
  return !w.finalized || full == w.claimed_target;
}

ConjWord prune(const GroupCtx& ctx, ConjWord w) {
  const Ring& R = *ctx.ring();
  for (ConjFactor& f : w.factors) {
    std::vector<Transvection> kept;
    for (const Transvection& t : f.conjugator.ts)
      if (!R.is_zero(t.x)) kept.push_back(t);
    f.conjugator.ts = std::move(kept);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.factors.size(); ++i) {
      const ConjFactor& a = w.factors[i];
      const ConjFactor& b = w.factors[i + 1];
      auto same_ts = [&](const ElemWord& x, const ElemWord& y) {
        if (x.ts.size() != y.ts.size()) return false;
        for (std::size_t k = 0; k < x.ts.size(); ++k) {
          const Transvection &p = x.ts[k], &q = y.ts[k];
          if (p.family != q.family || p.i != q.i || p.j != q.j || !(p.x == q.x))
            return false;
        }
        return true;
      };
      if (a.sign == -b.sign && same_ts(a.conjugator, b.conjugator)) {
        w.factors.erase(w.factors.begin() + static_cast<std::ptrdiff_t>(i),
                        w.factors.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return w;
}

std::string conj_word_to_json(
    const GroupCtx& ctx, const ConjWord& w, bool verified,
    const std::vector<std::pair<std::string, std::int64_t>>& extra_ints) {
  const Ring& R = *ctx.ring();
  auto elem_json = [&](const RingElem& x) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (int k = 0; k < R.degree(); ++k) coeffs.push_back(x.c[k]);
    return coeffs;
  };
  auto mat_json = [&](const Mat& m) {
    return nlohmann::json::parse(mat_to_json(m));
  };
  nlohmann::json j;
  j["sigma"] = mat_json(w.sigma);
  nlohmann::json factors = nlohmann::json::array();
  for (const ConjFactor& f : w.factors) {
    nlohmann::json conj = nlohmann::json::array();
    for (const Transvection& t : f.conjugator.ts) {
      nlohmann::json tj;
      switch (t.family) {
        case TransvFamily::GlShort: tj["family"] = "gl_short"; break;
        case TransvFamily::UShort: tj["family"] = "u_short"; break;
        case TransvFamily::ULong: tj["family"] = "u_long"; break;
      }
      tj["i"] = t.i;
      tj["j"] = t.j;
      tj["x"] = elem_json(t.x);
      conj.push_back(tj);
    }
    factors.push_back(nlohmann::json{{"conjugator", conj}, {"sign", f.sign}});
  }
  j["factors"] = factors;
  j["claimed_target"] = w.finalized ? mat_json(w.claimed_target) : nlohmann::json();
  j["count"] = w.count();
  j["verified"] = verified;
  if (!w.extras.buckets.empty()) {
    nlohmann::json buckets = nlohmann::json::array();
    for (const auto& [tag, coeff] : w.extras.buckets)
      buckets.push_back(nlohmann::json{{"tag", tag}, {"coefficient", elem_json(coeff)}});
    j["buckets"] = buckets;
    j["empirical_count"] = w.count();
  }
  if (w.extras.bound) {
    j["bound"] = *w.extras.bound;
    j["empirical_count"] = w.count();
  }
  if (w.extras.corrected_factor) j["corrected_factor"] = true;
  if (w.extras.strict_isotropy) j["strict_isotropy"] = *w.extras.strict_isotropy;
  for (const auto& [key, val] : extra_ints) j[key] = val;
  return j.dump();
}

}  // namespace elemconj
