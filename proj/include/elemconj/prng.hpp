#pragma once

#include <cstdint>

namespace elemconj {

// splitmix64: tiny, well-studied, and byte-stable everywhere.  The standard
// library's distributions are not guaranteed to produce identical streams
// across implementations, and campaign output must be byte-identical for a
// given seed, so we roll the stream ourselves.
class Prng {
 public:
  explicit Prng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n).  Modulo bias is irrelevant here (n is tiny and we only
  // need determinism, not statistical perfection).
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

  bool coin() { return (next() & 1) != 0; }

 private:
  std::uint64_t state_;
};

}  // namespace elemconj
