#pragma once

// Internal routing helpers over the hyperbolic index set: move a matrix entry
// to a reference position by P-conjugations (tracking the monomial units the
// signed permutations introduce), and move a finished transvection target to
// an arbitrary clean position.  Used by the orthogonal and unitary
// decomposition modules.

#include <algorithm>
#include <map>
#include <queue>
#include <utility>
#include <vector>

#include "elemconj/errors.hpp"

namespace elemconj::detail {

struct OmegaHop {
  int u, v;  // conjugation by P_uv (u != +-v)
};

// Unit of the form sign * lambda^exp attached to a routed row/column index.
struct TrackedUnit {
  int sign = 1;
  int lambda_exp = 0;
};

// Basis action of P_uv: e_v -> e_u, e_u -> -e_v, e_{-v} -> l^{(eps u - eps v)/2} e_{-u},
// e_{-u} -> -l^{(eps v - eps u)/2} e_{-v}.
inline void apply_hop(const OmegaHop& h, int& s, TrackedUnit& unit) {
  auto eps = [](int a) { return a > 0 ? 1 : -1; };
  if (s == h.v) {
    s = h.u;
  } else if (s == h.u) {
    s = h.v;
    unit.sign = -unit.sign;
  } else if (s == -h.v) {
    s = -h.u;
    unit.lambda_exp += (eps(h.u) - eps(h.v)) / 2;
  } else if (s == -h.u) {
    s = -h.v;
    unit.sign = -unit.sign;
    unit.lambda_exp += (eps(h.v) - eps(h.u)) / 2;
  }
}

struct SourceRoute {
  std::vector<OmegaHop> hops;  // in application order
  TrackedUnit row_unit, col_unit;
};

// BFS over entry positions (a,b), a != +-b: find hops taking (i,j) to (ti,tj)
// and replay them to learn the units, so that with sigma_hat = ^mu sigma,
//   sigma_hat_{ti,tj} = row_unit * sigma_{ij} * col_unit^{-1}.
inline SourceRoute route_source_omega(int n, int i, int j, int ti, int tj) {
  auto enc = [n](int a, int b) { return (a + n) * (2 * n + 1) + (b + n); };
  std::vector<OmegaHop> moves;
  for (int u = -n; u <= n; ++u) {
    if (u == 0) continue;
    for (int v = -n; v <= n; ++v) {
      if (v == 0 || v == u || v == -u) continue;
      moves.push_back({u, v});
    }
  }
  std::map<int, std::pair<int, OmegaHop>> parent;
  std::queue<std::pair<int, int>> q;
  q.emplace(i, j);
  parent[enc(i, j)] = {-1, {0, 0}};
  while (!q.empty()) {
    auto [a, b] = q.front();
    q.pop();
    if (a == ti && b == tj) break;
    for (const OmegaHop& h : moves) {
      int na = a, nb = b;
      TrackedUnit dummy;
      apply_hop(h, na, dummy);
      apply_hop(h, nb, dummy);
      if (!parent.count(enc(na, nb))) {
        parent[enc(na, nb)] = {enc(a, b), h};
        q.emplace(na, nb);
      }
    }
  }
  if (!parent.count(enc(ti, tj)))
    fail(ErrorKind::BadIndex, "entry position is not reachable");
  SourceRoute out;
  int cur = enc(ti, tj);
  while (parent.at(cur).first != -1) {
    out.hops.push_back(parent.at(cur).second);
    cur = parent.at(cur).first;
  }
  std::reverse(out.hops.begin(), out.hops.end());
  int a = i, b = j;
  for (const OmegaHop& h : out.hops) {
    apply_hop(h, a, out.row_unit);
    apply_hop(h, b, out.col_unit);
  }
  return out;
}

struct TargetMove {
  bool row;  // move the row index (else the column index)
  int dest;
};

// Clean conjugation moves for an already-built transvection word: the row of
// T_ab can be moved to d by P_{da} and the column to d by P_{db}, provided
// d is outside {+-a, +-b}.  BFS from (fi,fj) to (k,l).
inline std::vector<TargetMove> route_target_omega(int n, int fi, int fj, int k,
                                                  int l) {
  auto enc = [n](int a, int b) { return (a + n) * (2 * n + 1) + (b + n); };
  std::map<int, std::pair<int, TargetMove>> parent;
  std::queue<std::pair<int, int>> q;
  q.emplace(fi, fj);
  parent[enc(fi, fj)] = {-1, {false, 0}};
  while (!q.empty()) {
    auto [a, b] = q.front();
    q.pop();
    if (a == k && b == l) break;
    for (int d = -n; d <= n; ++d) {
      if (d == 0 || d == a || d == -a || d == b || d == -b) continue;
      if (!parent.count(enc(d, b))) {
        parent[enc(d, b)] = {enc(a, b), {true, d}};
        q.emplace(d, b);
      }
      if (!parent.count(enc(a, d))) {
        parent[enc(a, d)] = {enc(a, b), {false, d}};
        q.emplace(a, d);
      }
    }
  }
  if (!parent.count(enc(k, l)))
    fail(ErrorKind::BadIndex, "target position is not reachable");
  std::vector<TargetMove> out;
  int cur = enc(k, l);
  while (parent.at(cur).first != -1) {
    out.push_back(parent.at(cur).second);
    cur = parent.at(cur).first;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace elemconj::detail
