#include "elemconj/linalg.hpp"

#include "json.hpp"

namespace elemconj {

namespace {

void require_same_shape(const Mat& a, const Mat& b, const char* op) {
  if (a.dim() != b.dim() || a.ring().get() != b.ring().get())
    fail(ErrorKind::DimMismatch, std::string(op) + ": incompatible matrices");
}

}  // namespace

Mat Mat::identity(RingPtr ring, int dim) {
  Mat m(ring, dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = ring->one();
  return m;
}

Vec Mat::row(int r) const {
  Vec v(dim_);
  for (int c = 0; c < dim_; ++c) v[c] = at(r, c);
  return v;
}

Vec Mat::col(int c) const {
  Vec v(dim_);
  for (int r = 0; r < dim_; ++r) v[r] = at(r, c);
  return v;
}

Mat mul(const Mat& a, const Mat& b) {
  require_same_shape(a, b, "mul");
  const Ring& R = *a.ring();
  int n = a.dim();
  Mat out(a.ring(), n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const RingElem& aik = a.at(i, k);
      if (R.is_zero(aik)) continue;
      for (int j = 0; j < n; ++j)
        out.at(i, j) = R.add(out.at(i, j), R.mul(aik, b.at(k, j)));
    }
  return out;
}

Mat add(const Mat& a, const Mat& b) {
  require_same_shape(a, b, "add");
  const Ring& R = *a.ring();
  Mat out(a.ring(), a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) out.at(i, j) = R.add(a.at(i, j), b.at(i, j));
  return out;
}

Mat sub(const Mat& a, const Mat& b) {
  require_same_shape(a, b, "sub");
  const Ring& R = *a.ring();
  Mat out(a.ring(), a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) out.at(i, j) = R.sub(a.at(i, j), b.at(i, j));
  return out;
}

Mat scalar_mul(const RingElem& c, const Mat& a) {
  const Ring& R = *a.ring();
  Mat out(a.ring(), a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) out.at(i, j) = R.mul(c, a.at(i, j));
  return out;
}

Mat transpose(const Mat& a) {
  Mat out(a.ring(), a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) out.at(j, i) = a.at(i, j);
  return out;
}

Mat entrywise_conj(const Mat& a) {
  const Ring& R = *a.ring();
  Mat out(a.ring(), a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) out.at(i, j) = R.conj(a.at(i, j));
  return out;
}

bool is_identity(const Mat& a) {
  const Ring& R = *a.ring();
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      bool want_one = (i == j);
      const RingElem& v = a.at(i, j);
      if (want_one ? !(v == R.one()) : !R.is_zero(v)) return false;
    }
  return true;
}

Vec mat_vec(const Mat& a, const Vec& v) {
  if (static_cast<int>(v.size()) != a.dim())
    fail(ErrorKind::DimMismatch, "mat_vec: vector length mismatch");
  const Ring& R = *a.ring();
  Vec out(v.size(), RingElem{});
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      out[i] = R.add(out[i], R.mul(a.at(i, j), v[j]));
  return out;
}

Vec vec_mat(const Vec& v, const Mat& a) {
  if (static_cast<int>(v.size()) != a.dim())
    fail(ErrorKind::DimMismatch, "vec_mat: vector length mismatch");
  const Ring& R = *a.ring();
  Vec out(v.size(), RingElem{});
  for (int j = 0; j < a.dim(); ++j)
    for (int i = 0; i < a.dim(); ++i)
      out[j] = R.add(out[j], R.mul(v[i], a.at(i, j)));
  return out;
}

Mat outer(const RingPtr& ring, const Vec& u, const Vec& v) {
  if (u.size() != v.size()) fail(ErrorKind::DimMismatch, "outer: length mismatch");
  const Ring& R = *ring;
  Mat out(ring, static_cast<int>(u.size()));
  for (int i = 0; i < out.dim(); ++i)
    for (int j = 0; j < out.dim(); ++j) out.at(i, j) = R.mul(u[i], v[j]);
  return out;
}

void row_op(Mat& m, int r_dst, int r_src, const RingElem& coeff) {
  const Ring& R = *m.ring();
  if (R.is_zero(coeff)) return;
  for (int j = 0; j < m.dim(); ++j)
    m.at(r_dst, j) = R.add(m.at(r_dst, j), R.mul(coeff, m.at(r_src, j)));
}

void col_op(Mat& m, int c_dst, int c_src, const RingElem& coeff) {
  const Ring& R = *m.ring();
  if (R.is_zero(coeff)) return;
  for (int i = 0; i < m.dim(); ++i)
    m.at(i, c_dst) = R.add(m.at(i, c_dst), R.mul(coeff, m.at(i, c_src)));
}

std::vector<RingElem> charpoly(const Mat& a) {
  const Ring& R = *a.ring();
  int n = a.dim();
  if (n == 0) return {R.one()};
  // Berkowitz: extend the characteristic polynomial of the leading principal
  // block one row/column at a time via a Toeplitz product.  Division-free.
  std::vector<RingElem> v{R.one(), R.neg(a.at(0, 0))};
  for (int k = 1; k < n; ++k) {
    // s[0] = a_kk, s[j] = Row_k M^{j-1} Col_k over the leading k x k block M.
    std::vector<RingElem> s(k + 1);
    s[0] = a.at(k, k);
    Vec cur(k);
    for (int i = 0; i < k; ++i) cur[i] = a.at(i, k);  // Col_k
    for (int j = 1; j <= k; ++j) {
      RingElem dot{};
      for (int i = 0; i < k; ++i) dot = R.add(dot, R.mul(a.at(k, i), cur[i]));
      s[j] = dot;
      if (j == k) break;
      Vec nxt(k, RingElem{});
      for (int r = 0; r < k; ++r)
        for (int c2 = 0; c2 < k; ++c2)
          nxt[r] = R.add(nxt[r], R.mul(a.at(r, c2), cur[c2]));
      cur = std::move(nxt);
    }
    std::vector<RingElem> nv(k + 2, RingElem{});
    for (int r = 0; r < k + 2; ++r)
      for (int c2 = 0; c2 <= k && c2 <= r; ++c2) {
        RingElem t = (r == c2) ? v[c2] : R.neg(R.mul(s[r - c2 - 1], v[c2]));
        nv[r] = R.add(nv[r], t);
      }
    v = std::move(nv);
  }
  return v;
}

DetAdj det_adjugate(const Mat& a) {
  const Ring& R = *a.ring();
  int n = a.dim();
  std::vector<RingElem> p = charpoly(a);
  // det(xI - A) at x = 0 gives (-1)^n det(A).
  RingElem det = (n % 2 == 0) ? p[n] : R.neg(p[n]);
  // Cayley-Hamilton: A(A^{n-1} + p1 A^{n-2} + ... + p_{n-1} I) = -p_n I,
  // so adj(A) = (-1)^{n+1} (A^{n-1} + ... + p_{n-1} I), built by Horner.
  Mat b = Mat::identity(a.ring(), n);
  for (int k = 1; k <= n - 1; ++k) {
    b = mul(b, a);
    for (int i = 0; i < n; ++i) b.at(i, i) = R.add(b.at(i, i), p[k]);
  }
  if (n % 2 == 0) {
    RingElem minus_one = R.from_int(-1);
    b = scalar_mul(minus_one, b);
  }
  return DetAdj{det, std::move(b)};
}

Mat inverse(const Mat& a) {
  const Ring& R = *a.ring();
  DetAdj da = det_adjugate(a);
  if (!R.is_unit(da.det))
    fail(ErrorKind::NotInvertible,
         "matrix determinant " + R.to_string(da.det) + " is not a unit");
  return scalar_mul(R.inv(da.det), da.adj);
}

Mat group_conj(const Mat& g, const Mat& h) { return mul(mul(h, g), inverse(h)); }

Mat commutator(const Mat& g, const Mat& h) {
  return mul(mul(g, h), mul(inverse(g), inverse(h)));
}

std::string mat_to_json(const Mat& a) {
  const Ring& R = *a.ring();
  nlohmann::json entries = nlohmann::json::array();
  for (int i = 0; i < a.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < a.dim(); ++j) {
      nlohmann::json coeffs = nlohmann::json::array();
      for (int k = 0; k < R.degree(); ++k) coeffs.push_back(a.at(i, j).c[k]);
      row.push_back(coeffs);
    }
    entries.push_back(row);
  }
  nlohmann::json j;
  j["dim"] = a.dim();
  j["entries"] = entries;
  return j.dump();
}

Mat mat_from_json(const RingPtr& ring, const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorKind::ParseError, std::string("bad matrix JSON: ") + e.what());
  }
  int dim = 0;
  try {
    dim = j.at("dim").get<int>();
    if (dim <= 0 || !j.at("entries").is_array() ||
        static_cast<int>(j["entries"].size()) != dim)
      fail(ErrorKind::ParseError, "matrix JSON shape mismatch");
    Mat m(ring, dim);
    for (int i = 0; i < dim; ++i) {
      const auto& row = j["entries"][i];
      if (static_cast<int>(row.size()) != dim)
        fail(ErrorKind::ParseError, "matrix JSON row length mismatch");
      for (int c = 0; c < dim; ++c)
        m.at(i, c) = ring->from_coeffs(row[c].get<std::vector<std::int64_t>>());
    }
    return m;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorKind::ParseError, std::string("bad matrix JSON fields: ") + e.what());
  }
}

}  // namespace elemconj
