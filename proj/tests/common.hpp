#pragma once

// Shared builders for the test suite: the handful of small rings and group
// contexts most test files want, so each file doesn't repeat the spec
// plumbing.

#include <cstdint>
#include <memory>

#include "elemconj/gln.hpp"
#include "elemconj/hyperbolic.hpp"

namespace testutil {

using namespace elemconj;

// Plain Z/m with the trivial involution and lambda = 1.
inline RingPtr zm(std::uint64_t m) {
  RingSpec spec;
  spec.m = m;
  return make_ring(spec);
}

// Z/m with trivial involution and lambda = -1 (the symplectic form ring).
inline RingPtr zm_symplectic(std::uint64_t m) {
  RingSpec spec;
  spec.m = m;
  spec.lambda = {-1};
  return make_ring(spec);
}

// Z/m[t]/(t^2 + 1) with conj(t) = -t, lambda = 1 (Gaussian integers mod m).
inline RingPtr gaussian(std::uint64_t m) {
  RingSpec spec;
  spec.m = m;
  spec.f = {1, 0, 1};
  spec.involution = InvolutionKind::Neg;
  return make_ring(spec);
}

inline FormRingContext ortho_ctx(RingPtr ring, int n) {
  RealizedSet lam = realize_form_param(*ring, FormParam{FormParamKind::Min, {}});
  return FormRingContext(std::move(ring), n, std::move(lam), /*orthogonal_form=*/true);
}

inline FormRingContext unitary_ctx(RingPtr ring, int n,
                                   FormParamKind kind = FormParamKind::Max) {
  RealizedSet lam = realize_form_param(*ring, FormParam{kind, {}});
  return FormRingContext(std::move(ring), n, std::move(lam));
}

// Signed hyperbolic indices {1..n, -n..-1} as a flat list.
inline std::vector<int> signed_indices(int n) {
  std::vector<int> out;
  for (int i = 1; i <= n; ++i) out.push_back(i);
  for (int i = -n; i <= -1; ++i) out.push_back(i);
  return out;
}

}  // namespace testutil
