// Shared test utilities: a small deterministic RNG and random exact
// matrices/subspaces for property-style checks.
#pragma once

#include "linv/rational.hpp"
#include "linv/subspace.hpp"

#include <cstdint>

namespace testutil {

// SplitMix64: tiny, fully specified, portable across toolchains.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [lo, hi]
  long range(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

inline linv::Rat small_rat(Rng& rng) {
  return linv::make_rat(rng.range(-10, 10), rng.range(1, 10));
}

inline linv::Mat random_mat(Rng& rng, linv::Index rows, linv::Index cols) {
  linv::Mat m(rows, cols);
  for (linv::Index i = 0; i < rows; ++i)
    for (linv::Index j = 0; j < cols; ++j) m(i, j) = small_rat(rng);
  return m;
}

inline linv::Mat random_invertible(Rng& rng, linv::Index n) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    linv::Mat g = random_mat(rng, n, n);
    if (linv::rank_of(g) == n) return g;
  }
  throw std::runtime_error("random_invertible: exhausted attempts");
}

inline linv::Subspace random_subspace(Rng& rng, linv::Index ambient, linv::Index dim) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    linv::Subspace s = linv::Subspace::from_rows(random_mat(rng, dim, ambient));
    if (s.dim() == dim) return s;
  }
  throw std::runtime_error("random_subspace: exhausted attempts");
}

}  // namespace testutil

#include "linv/generator.hpp"

namespace testutil {

/// Admissible generator spec with a seeded weight window around m and a
/// nonzero planted invariant.
inline linv::GenSpec random_spec(Rng& rng, linv::Index n, linv::Index e) {
  static const long primes[] = {2, 3, 5, 7, 11, 13};
  linv::GenSpec g;
  g.p = primes[rng.range(0, 5)];
  g.n = n;
  g.e = e;
  g.m = rng.range(-3, 5);
  for (linv::Index s = 0; s < e; ++s) {
    std::vector<long> w(n);
    w[n - 1] = g.m + rng.range(1, 3);
    w[n - 2] = g.m - rng.range(1, 3);
    for (linv::Index i = n - 2; i-- > 0;) w[i] = w[i + 1] - rng.range(0, 2);
    g.weights.push_back(std::move(w));
  }
  do {
    g.planted_l = small_rat(rng);
  } while (g.planted_l == 0);
  g.seed = rng.next();
  return g;
}

}  // namespace testutil
