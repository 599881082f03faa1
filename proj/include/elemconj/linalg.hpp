#pragma once

#include <string>
#include <utility>
#include <vector>

#include "elemconj/ring.hpp"

namespace elemconj {

using Vec = std::vector<RingElem>;

// Dense square matrix over a shared ring, row-major, 0-based.  Group-level
// index conventions (1-based, or hyperbolic +-i) are layered on top by the
// modules that need them.
class Mat {
 public:
  Mat() = default;
  Mat(RingPtr ring, int dim)
      : ring_(std::move(ring)), dim_(dim),
        a_(static_cast<std::size_t>(dim) * dim, RingElem{}) {}

  static Mat identity(RingPtr ring, int dim);

  int dim() const { return dim_; }
  const RingPtr& ring() const { return ring_; }

  RingElem& at(int r, int c) { return a_[static_cast<std::size_t>(r) * dim_ + c]; }
  const RingElem& at(int r, int c) const {
    return a_[static_cast<std::size_t>(r) * dim_ + c];
  }

  Vec row(int r) const;
  Vec col(int c) const;

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.dim_ == b.dim_ && a.a_ == b.a_;
  }

 private:
  RingPtr ring_;
  int dim_ = 0;
  std::vector<RingElem> a_;
};

Mat mul(const Mat& a, const Mat& b);
Mat add(const Mat& a, const Mat& b);
Mat sub(const Mat& a, const Mat& b);
Mat scalar_mul(const RingElem& c, const Mat& a);
Mat transpose(const Mat& a);
// Entrywise ring involution (no transpose).
Mat entrywise_conj(const Mat& a);
bool is_identity(const Mat& a);

Vec mat_vec(const Mat& a, const Vec& v);
Vec vec_mat(const Vec& v, const Mat& a);
// Column u times row v.
Mat outer(const RingPtr& ring, const Vec& u, const Vec& v);

// In-place elementary operations: row r_dst += coeff * row r_src, and the
// column analogue.  These keep word evaluation linear in the word length.
void row_op(Mat& m, int r_dst, int r_src, const RingElem& coeff);
void col_op(Mat& m, int c_dst, int c_src, const RingElem& coeff);

// Division-free determinant and adjugate (Berkowitz characteristic
// polynomial + Cayley-Hamilton); a * adj(a) = adj(a) * a = det(a) * e.
struct DetAdj {
  RingElem det;
  Mat adj;
};
DetAdj det_adjugate(const Mat& a);

// Characteristic polynomial coefficients of det(xI - A), highest degree
// first (so front() == 1).  Exposed for tests.
std::vector<RingElem> charpoly(const Mat& a);

// Throws NotInvertible when det is not a unit.
Mat inverse(const Mat& a);

// Group conjugation ^h g = h g h^{-1} and commutator [g, h] = g h g^{-1} h^{-1}.
Mat group_conj(const Mat& g, const Mat& h);
Mat commutator(const Mat& g, const Mat& h);

std::string mat_to_json(const Mat& a);
Mat mat_from_json(const RingPtr& ring, const std::string& text);

}  // namespace elemconj
