#include "elemconj/ring.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"

namespace elemconj {

namespace {

std::uint32_t mod_reduce(std::int64_t v, std::uint64_t m) {
  std::int64_t r = v % static_cast<std::int64_t>(m);
  if (r < 0) r += static_cast<std::int64_t>(m);
  return static_cast<std::uint32_t>(r);
}

}  // namespace

Ring::Ring(const RingSpec& spec) : spec_(spec), m_(spec.m) {
  if (m_ < 2) fail(ErrorKind::ParseError, "ring modulus must be >= 2");
  if (m_ > 0x7fffffffULL) fail(ErrorKind::ParseError, "ring modulus too large");
  if (spec.f.size() == 1)
    fail(ErrorKind::ParseError, "modulus polynomial must have degree >= 1");
  deg_ = spec.f.empty() ? 1 : static_cast<int>(spec.f.size()) - 1;
  if (deg_ > kMaxDeg)
    fail(ErrorKind::ParseError, "modulus polynomial degree exceeds supported bound");
  if (!spec.f.empty() && mod_reduce(spec.f.back(), m_) != 1)
    fail(ErrorKind::ParseError, "modulus polynomial must be monic");

  size_ = 1;
  for (int k = 0; k < deg_; ++k) {
    if (size_ > UINT64_MAX / m_) { size_ = 0; break; }
    size_ *= m_;
  }

  // t^deg = -(f_0 + f_1 t + ... + f_{deg-1} t^{deg-1}); extend to t^(2deg-2).
  if (deg_ > 1) {
    RingElem base{};
    for (int k = 0; k < deg_; ++k)
      base.c[k] = mod_reduce(-spec.f[k], m_);
    t_red_pow_[0] = base;
    for (int k = 1; k <= deg_ - 2; ++k) {
      // multiply previous reduced power by t
      const RingElem& prev = t_red_pow_[k - 1];
      RingElem next{};
      std::uint64_t high = prev.c[deg_ - 1];
      for (int j = deg_ - 1; j > 0; --j) next.c[j] = prev.c[j - 1];
      next.c[0] = 0;
      for (int j = 0; j < deg_; ++j)
        next.c[j] = static_cast<std::uint32_t>(
            (next.c[j] + high * base.c[j]) % m_);
      t_red_pow_[k] = next;
    }
  }

  trivial_conj_ = (spec.involution == InvolutionKind::Trivial) || deg_ == 1;
  if (!trivial_conj_) {
    RingElem ct{};  // image of t under the involution
    switch (spec.involution) {
      case InvolutionKind::Neg:
        ct.c[1] = mod_reduce(-1, m_);
        break;
      case InvolutionKind::CMinus:
        ct.c[0] = mod_reduce(spec.c, m_);
        ct.c[1] = mod_reduce(-1, m_);
        break;
      case InvolutionKind::Trivial:
        break;
    }
    conj_t_pow_[0] = one();
    conj_t_pow_[1] = ct;
    for (int k = 2; k < deg_; ++k)
      conj_t_pow_[k] = mul(conj_t_pow_[k - 1], ct);
  }

  validate_involution();

  lambda_ = from_coeffs(spec.lambda);
  lambda_bar_ = conj(lambda_);
  validate_lambda();
}

RingElem Ring::from_int(std::int64_t v) const {
  RingElem r{};
  r.c[0] = mod_reduce(v, m_);
  return r;
}

RingElem Ring::from_coeffs(const std::vector<std::int64_t>& coeffs) const {
  // Horner so that over-long coefficient lists still reduce correctly.
  RingElem acc{};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    if (deg_ > 1) {
      RingElem shifted = mul(acc, t());
      acc = add(shifted, from_int(*it));
    } else {
      if (!is_zero(acc))
        fail(ErrorKind::ParseError, "coefficient list too long for Z/m");
      acc = from_int(*it);
    }
  }
  return acc;
}

RingElem Ring::t() const {
  if (deg_ == 1) {
    if (spec_.f.size() == 2) return from_int(-spec_.f[0]);
    fail(ErrorKind::BadIndex, "ring has no adjoined generator");
  }
  RingElem r{};
  r.c[1] = 1;
  return r;
}

RingElem Ring::add(const RingElem& a, const RingElem& b) const {
  RingElem r{};
  for (int k = 0; k < deg_; ++k) {
    std::uint64_t s = static_cast<std::uint64_t>(a.c[k]) + b.c[k];
    r.c[k] = static_cast<std::uint32_t>(s >= m_ ? s - m_ : s);
  }
  return r;
}

RingElem Ring::sub(const RingElem& a, const RingElem& b) const {
  RingElem r{};
  for (int k = 0; k < deg_; ++k) {
    std::uint64_t s = static_cast<std::uint64_t>(a.c[k]) + m_ - b.c[k];
    r.c[k] = static_cast<std::uint32_t>(s >= m_ ? s - m_ : s);
  }
  return r;
}

RingElem Ring::neg(const RingElem& a) const { return sub(zero(), a); }

RingElem Ring::mul(const RingElem& a, const RingElem& b) const {
  if (deg_ == 1) {
    RingElem r{};
    r.c[0] = static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(a.c[0]) * b.c[0]) % m_);
    return r;
  }
  std::array<std::uint64_t, 2 * kMaxDeg> acc{};
  for (int i = 0; i < deg_; ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; j < deg_; ++j)
      acc[i + j] = (acc[i + j] + static_cast<std::uint64_t>(a.c[i]) * b.c[j]) % m_;
  }
  for (int k = 2 * deg_ - 2; k >= deg_; --k) {
    std::uint64_t hi = acc[k];
    if (hi == 0) continue;
    acc[k] = 0;
    const RingElem& red = t_red_pow_[k - deg_];
    for (int j = 0; j < deg_; ++j)
      acc[k - deg_ + j] = (acc[k - deg_ + j] + hi * red.c[j]) % m_;
  }
  RingElem r{};
  for (int k = 0; k < deg_; ++k) r.c[k] = static_cast<std::uint32_t>(acc[k]);
  return r;
}

RingElem Ring::conj(const RingElem& a) const {
  if (trivial_conj_) return a;
  RingElem r = from_int(a.c[0]);
  for (int k = 1; k < deg_; ++k) {
    if (a.c[k] == 0) continue;
    RingElem term = conj_t_pow_[k];
    for (int j = 0; j < deg_; ++j)
      term.c[j] = static_cast<std::uint32_t>(
          (static_cast<std::uint64_t>(term.c[j]) * a.c[k]) % m_);
    r = add(r, term);
  }
  return r;
}

bool Ring::is_zero(const RingElem& a) const {
  for (int k = 0; k < deg_; ++k)
    if (a.c[k] != 0) return false;
  return true;
}

std::uint64_t Ring::encode(const RingElem& a) const {
  std::uint64_t idx = 0;
  for (int k = deg_ - 1; k >= 0; --k) idx = idx * m_ + a.c[k];
  return idx;
}

RingElem Ring::decode(std::uint64_t idx) const {
  RingElem r{};
  for (int k = 0; k < deg_; ++k) {
    r.c[k] = static_cast<std::uint32_t>(idx % m_);
    idx /= m_;
  }
  return r;
}

bool Ring::is_unit(const RingElem& a) const {
  if (deg_ == 1) return std::gcd(static_cast<std::uint64_t>(a.c[0]), m_) == 1;
  if (size_ == 0 || size_ > (1ull << 20))
    fail(ErrorKind::BudgetExceeded, "unit test needs enumeration beyond budget");
  if (!inverse_cache_built_) {
    inverse_cache_.assign(size_, 0);
    inverse_cache_built_ = true;
  }
  std::uint64_t e = encode(a);
  if (inverse_cache_[e] == 0) {
    inverse_cache_[e] = 1;  // assume non-unit until found
    for (std::uint64_t y = 0; y < size_; ++y) {
      RingElem cand = decode(y);
      if (mul(a, cand) == one()) {
        inverse_cache_[e] = y + 2;
        inverse_cache_[y] = e + 2;
        break;
      }
    }
  }
  return inverse_cache_[e] >= 2;
}

RingElem Ring::inv(const RingElem& a) const {
  if (deg_ == 1) {
    // extended gcd against m
    std::int64_t r0 = static_cast<std::int64_t>(m_), r1 = a.c[0];
    std::int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
      std::int64_t q = r0 / r1;
      std::int64_t tmp = r0 - q * r1; r0 = r1; r1 = tmp;
      tmp = s0 - q * s1; s0 = s1; s1 = tmp;
    }
    if (r0 != 1)
      fail(ErrorKind::NotInvertible, "element " + to_string(a) + " is not a unit");
    return from_int(s0);
  }
  if (!is_unit(a))
    fail(ErrorKind::NotInvertible, "element " + to_string(a) + " is not a unit");
  return decode(inverse_cache_[encode(a)] - 2);
}

RingElem Ring::lambda_int_pow(int k) const {
  RingElem r = one();
  const RingElem& base = k >= 0 ? lambda_ : lambda_bar_;
  for (int i = 0; i < (k >= 0 ? k : -k); ++i) r = mul(r, base);
  return r;
}

RingElem Ring::lambda_power(int i, int j) const {
  if (i == 0 || j == 0) fail(ErrorKind::BadIndex, "hyperbolic index 0");
  int eps_i = i > 0 ? 1 : -1, eps_j = j > 0 ? 1 : -1;
  return lambda_int_pow((eps_j - eps_i) / 2);
}

RingElem Ring::random_elem(Prng& rng) const {
  RingElem r{};
  for (int k = 0; k < deg_; ++k)
    r.c[k] = static_cast<std::uint32_t>(rng.below(m_));
  return r;
}

std::string Ring::to_string(const RingElem& a) const {
  if (deg_ == 1) return std::to_string(a.c[0]);
  std::string s = "[";
  for (int k = 0; k < deg_; ++k) {
    if (k) s += ",";
    s += std::to_string(a.c[k]);
  }
  return s + "]";
}

void Ring::validate_involution() const {
  if (trivial_conj_) return;
  // The involution is the linear extension of t |-> C.  It is a well-defined
  // ring endomorphism of the quotient iff f(C) = 0, and an involution iff it
  // additionally fixes t under double application; both are single identities
  // on the generator because ring homomorphisms agreeing on t agree everywhere.
  const RingElem& C = conj_t_pow_[1];
  RingElem f_at_C = zero();
  RingElem cpow = one();
  for (std::size_t k = 0; k < spec_.f.size(); ++k) {
    RingElem coeff = from_int(spec_.f[k]);
    f_at_C = add(f_at_C, mul(coeff, cpow));
    cpow = mul(cpow, C);
  }
  if (!is_zero(f_at_C))
    fail(ErrorKind::InvalidInvolution,
         "involution image of t does not satisfy the modulus polynomial");
  if (!(conj(C) == t()))
    fail(ErrorKind::InvalidInvolution, "involution is not of order <= 2");
  // Spot-check multiplicativity and order on concrete elements: exhaustive
  // for small rings, sampled otherwise.
  if (size_ != 0 && size_ <= 10000) {
    for (std::uint64_t xi = 0; xi < size_; ++xi) {
      RingElem x = decode(xi);
      if (!(conj(conj(x)) == x))
        fail(ErrorKind::InvalidInvolution, "involution order check failed");
      for (std::uint64_t yi = xi; yi < size_; ++yi) {
        RingElem y = decode(yi);
        if (!(conj(mul(x, y)) == mul(conj(x), conj(y))))
          fail(ErrorKind::InvalidInvolution, "involution is not multiplicative");
      }
    }
  } else {
    Prng rng(0xD1CEu);
    for (int trial = 0; trial < 4096; ++trial) {
      RingElem x = random_elem(rng), y = random_elem(rng);
      if (!(conj(conj(x)) == x) ||
          !(conj(mul(x, y)) == mul(conj(x), conj(y))))
        fail(ErrorKind::InvalidInvolution, "involution sampling check failed");
    }
  }
}

void Ring::validate_lambda() const {
  if (!(mul(lambda_, lambda_bar_) == one()))
    fail(ErrorKind::InvalidLambda,
         "lambda * conj(lambda) != 1 for lambda = " + to_string(lambda_));
}

RingPtr make_ring(const RingSpec& spec) { return std::make_shared<Ring>(spec); }

RealizedSet::RealizedSet(const Ring& ring, std::vector<RingElem> elems)
    : elems_(std::move(elems)) {
  std::sort(elems_.begin(), elems_.end(),
            [&](const RingElem& a, const RingElem& b) {
              return ring.encode(a) < ring.encode(b);
            });
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  member_.assign(ring.size(), false);
  for (const RingElem& e : elems_) member_[ring.encode(e)] = true;
}

bool RealizedSet::contains(const Ring& ring, const RingElem& x) const {
  std::uint64_t e = ring.encode(x);
  return e < member_.size() && member_[e];
}

std::vector<RingElem> enumerate_ring(const Ring& ring, std::uint64_t budget) {
  if (ring.size() == 0 || ring.size() > budget)
    fail(ErrorKind::BudgetExceeded, "ring too large to enumerate");
  std::vector<RingElem> out;
  out.reserve(ring.size());
  for (std::uint64_t i = 0; i < ring.size(); ++i) out.push_back(ring.decode(i));
  return out;
}

namespace {

// Additive closure of `gens` inside R, realized by orbit search.
std::vector<RingElem> additive_closure(const Ring& ring,
                                       const std::vector<RingElem>& gens,
                                       std::uint64_t budget) {
  if (ring.size() == 0 || ring.size() > budget)
    fail(ErrorKind::BudgetExceeded, "closure needs enumeration beyond budget");
  std::vector<bool> seen(ring.size(), false);
  std::vector<RingElem> out{ring.zero()};
  seen[ring.encode(ring.zero())] = true;
  for (std::size_t head = 0; head < out.size(); ++head) {
    RingElem cur = out[head];
    for (const RingElem& g : gens) {
      RingElem nxt = ring.add(cur, g);
      std::uint64_t e = ring.encode(nxt);
      if (!seen[e]) {
        seen[e] = true;
        out.push_back(nxt);
      }
    }
  }
  return out;
}

void check_a_stability(const Ring& ring, const RealizedSet& s,
                       const char* what) {
  // x * S * conj(x) must land back in S.  Exhaustive when cheap, else sampled.
  std::uint64_t work = ring.size() * static_cast<std::uint64_t>(s.size() ? s.size() : 1);
  if (ring.size() != 0 && work <= (1ull << 18)) {
    for (std::uint64_t xi = 0; xi < ring.size(); ++xi) {
      RingElem x = ring.decode(xi);
      RingElem xb = ring.conj(x);
      for (const RingElem& y : s.elems())
        if (!s.contains(ring, ring.mul(ring.mul(x, y), xb)))
          fail(ErrorKind::FormParamViolation,
               std::string(what) + " not closed under x.y.conj(x)");
    }
  } else {
    Prng rng(0xF0B1u);
    for (int trial = 0; trial < 256; ++trial) {
      RingElem x = ring.random_elem(rng);
      RingElem xb = ring.conj(x);
      for (const RingElem& y : s.elems())
        if (!s.contains(ring, ring.mul(ring.mul(x, y), xb)))
          fail(ErrorKind::FormParamViolation,
               std::string(what) + " not closed under x.y.conj(x) (sampled)");
    }
  }
}

}  // namespace

RealizedSet realize_form_param(const Ring& ring, const FormParam& fp,
                               std::uint64_t budget) {
  std::vector<RingElem> all = enumerate_ring(ring, budget);
  std::vector<RingElem> lam_min, lam_max;
  for (const RingElem& x : all) {
    RingElem anti = ring.sub(x, ring.mul(ring.lambda(), ring.conj(x)));
    lam_min.push_back(anti);
    if (ring.is_zero(ring.add(x, ring.mul(ring.lambda(), ring.conj(x)))))
      lam_max.push_back(x);
  }
  RealizedSet min_set(ring, lam_min), max_set(ring, std::move(lam_max));

  std::vector<RingElem> chosen;
  switch (fp.kind) {
    case FormParamKind::Min: chosen = min_set.elems(); break;
    case FormParamKind::Max: chosen = max_set.elems(); break;
    case FormParamKind::Span: {
      std::vector<RingElem> gens = fp.span_gens;
      gens.insert(gens.end(), min_set.elems().begin(), min_set.elems().end());
      chosen = additive_closure(ring, gens, budget);
      break;
    }
  }
  RealizedSet result(ring, std::move(chosen));
  for (const RingElem& x : min_set.elems())
    if (!result.contains(ring, x))
      fail(ErrorKind::FormParamViolation, "form parameter misses Lambda_min");
  for (const RingElem& x : result.elems())
    if (!max_set.contains(ring, x))
      fail(ErrorKind::FormParamViolation, "form parameter exceeds Lambda_max");
  check_a_stability(ring, result, "form parameter");
  return result;
}

bool form_param_membership(const Ring& ring, const FormParam& fp,
                           const RingElem& x, std::uint64_t budget) {
  return realize_form_param(ring, fp, budget).contains(ring, x);
}

RealizedSet realize_rel_form_param(const Ring& ring, const RealizedSet& ideal,
                                   const RealizedSet& lambda_set,
                                   const RelFormParam& gp,
                                   std::uint64_t budget) {
  std::uint64_t pair_work =
      static_cast<std::uint64_t>(ideal.size()) * (lambda_set.size() ? lambda_set.size() : 1);
  if (pair_work > (1ull << 20))
    fail(ErrorKind::BudgetExceeded, "relative form parameter realization too large");

  std::vector<RingElem> gmin_gens;
  for (const RingElem& x : ideal.elems()) {
    gmin_gens.push_back(ring.sub(x, ring.mul(ring.lambda(), ring.conj(x))));
    RingElem xb = ring.conj(x);
    for (const RingElem& y : lambda_set.elems())
      gmin_gens.push_back(ring.mul(ring.mul(x, y), xb));
  }

  std::vector<RingElem> chosen;
  switch (gp.kind) {
    case FormParamKind::Min:
      chosen = additive_closure(ring, gmin_gens, budget);
      break;
    case FormParamKind::Max: {
      for (const RingElem& x : ideal.elems())
        if (lambda_set.contains(ring, x)) chosen.push_back(x);
      break;
    }
    case FormParamKind::Span: {
      std::vector<RingElem> gens = gp.span_gens;
      gens.insert(gens.end(), gmin_gens.begin(), gmin_gens.end());
      chosen = additive_closure(ring, gens, budget);
      break;
    }
  }
  RealizedSet result(ring, std::move(chosen));
  for (const RingElem& x : result.elems())
    if (!(ideal.contains(ring, x) && lambda_set.contains(ring, x)))
      fail(ErrorKind::FormParamViolation,
           "relative form parameter exceeds I intersect Lambda");
  check_a_stability(ring, result, "relative form parameter");
  return result;
}

std::string ring_spec_to_json(const RingSpec& spec) {
  nlohmann::json j;
  j["m"] = spec.m;
  if (spec.f.empty())
    j["f"] = nullptr;
  else
    j["f"] = spec.f;
  switch (spec.involution) {
    case InvolutionKind::Trivial: j["involution"] = "trivial"; break;
    case InvolutionKind::Neg: j["involution"] = "neg"; break;
    case InvolutionKind::CMinus:
      j["involution"] = "c_minus";
      j["c"] = spec.c;
      break;
  }
  j["lambda"] = spec.lambda;
  return j.dump();
}

RingSpec ring_spec_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorKind::ParseError, std::string("bad ring spec JSON: ") + e.what());
  }
  RingSpec spec;
  try {
    spec.m = j.at("m").get<std::uint64_t>();
    if (j.contains("f") && !j["f"].is_null())
      spec.f = j["f"].get<std::vector<std::int64_t>>();
    std::string inv = j.value("involution", "trivial");
    if (inv == "trivial") spec.involution = InvolutionKind::Trivial;
    else if (inv == "neg") spec.involution = InvolutionKind::Neg;
    else if (inv == "c_minus") spec.involution = InvolutionKind::CMinus;
    else fail(ErrorKind::ParseError, "unknown involution kind: " + inv);
    if (spec.involution == InvolutionKind::CMinus)
      spec.c = j.at("c").get<std::int64_t>();
    if (j.contains("lambda")) {
      if (j["lambda"].is_number())
        spec.lambda = {j["lambda"].get<std::int64_t>()};
      else
        spec.lambda = j["lambda"].get<std::vector<std::int64_t>>();
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorKind::ParseError, std::string("bad ring spec fields: ") + e.what());
  }
  return spec;
}

}  // namespace elemconj
