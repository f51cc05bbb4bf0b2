// Deterministic generator of admissible instances with a planted
// invariant, plus the targeted mutation helpers used by negative tests.
//
// Randomness comes from SplitMix64 with draws mapped by plain modulo;
// the algorithm is pinned here so equal seeds give bit-identical output
// on every platform.  Entries of sampled rationals and base-change
// matrices are small (numerators and denominators bounded by 10) to keep
// exact arithmetic fast.
#pragma once

#include "linv/phin_module.hpp"
#include "linv/rational.hpp"
#include "linv/subspace.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace linv {

struct SplitMix64 {
  std::uint64_t state = 0;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  long range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  Rat small_rat() { return make_rat(range(-10, 10), range(1, 10)); }
};

struct GenSpec {
  long p = 5;
  Index n = 2;
  Index e = 1;
  long m = 1;
  std::vector<std::vector<long>> weights;  // per embedding, n nondecreasing labels
  Rat planted_l;
  bool degenerate = false;  // must be set to plant a zero invariant
  std::uint64_t seed = 0;
  bool identity_frame = false;  // skip the final base change
};

inline void check_spec(const GenSpec& g) {
  if (!is_prime(g.p)) throw InputError("generator: p not prime");
  if (g.n < 2) throw InputError("generator: need n >= 2");
  if (g.e < 1) throw InputError("generator: need e >= 1");
  if (static_cast<Index>(g.weights.size()) != g.e)
    throw InputError("generator: need one weight list per embedding");
  for (const auto& w : g.weights) {
    if (static_cast<Index>(w.size()) != g.n)
      throw InputError("generator: need n weights per embedding");
    if (!std::is_sorted(w.begin(), w.end()))
      throw InputError("generator: weights must be nondecreasing");
    if (!(w[g.n - 1] > g.m && g.m > w[g.n - 2]))
      throw InputError("generator: weight window must satisfy top > m > second");
  }
  if (g.planted_l == 0 && !g.degenerate)
    throw InputError("generator: zero invariant requires the degenerate flag");
}

/// Builds phi = diag(p^m, ..., p^{m-n+1}) and the full shift N in a seeded
/// frame, with per-embedding flags whose last step contains
/// v0 - L v1 + (seeded tail), extended upward through seeded generators
/// under transversality checks, then conjugates everything.
inline FilPhiNModule generate(const GenSpec& g) {
  check_spec(g);
  SplitMix64 rng(g.seed);

  FilPhiNModule m;
  m.p = g.p;
  m.n = g.n;
  m.e = g.e;
  m.phi = Mat::Zero(g.n, g.n);
  for (Index i = 0; i < g.n; ++i) m.phi(i, i) = rat_pow(g.p, g.m - i);
  m.mono = Mat::Zero(g.n, g.n);
  for (Index i = 0; i + 1 < g.n; ++i) m.mono(i + 1, i) = 1;

  // Frobenius filtration in the base frame: Fil_j spans the last j
  // coordinate lines.
  std::vector<Subspace> fil(g.n + 1, Subspace::zero(g.n));
  for (Index j = 1; j <= g.n; ++j) {
    Mat rows(j, g.n);
    rows.setZero();
    for (Index r = 0; r < j; ++r) rows(r, g.n - 1 - r) = 1;
    fil[j] = Subspace::from_rows(rows);
  }

  for (Index s = 0; s < g.e; ++s) {
    WeightedFlag f;
    f.weights = g.weights[s];
    f.steps.assign(g.n + 1, Subspace::zero(g.n));
    f.steps[g.n] = Subspace::zero(g.n);

    Vec anchor = Vec::Zero(g.n);
    anchor(0) = 1;
    anchor(1) = Rat(-g.planted_l);
    for (Index j = 2; j < g.n; ++j) anchor(j) = rng.small_rat();
    f.steps[g.n - 1] = Subspace::from_rows(Mat(anchor.transpose()));

    for (Index i = g.n - 2; i >= 1; --i) {
      bool placed = false;
      for (int attempt = 0; attempt < 64 && !placed; ++attempt) {
        Mat cand(1, g.n);
        for (Index j = 0; j < g.n; ++j) cand(0, j) = rng.small_rat();
        Subspace trial = sum(f.steps[i + 1], Subspace::from_rows(cand));
        if (trial.dim() != g.n - i) continue;
        if (intersect(trial, fil[i]).dim() != 0) continue;
        f.steps[i] = std::move(trial);
        placed = true;
      }
      if (!placed)
        throw InputError("generator: transversality retries exhausted at step " +
                         std::to_string(i) + " (seed " + std::to_string(g.seed) + ")");
    }
    f.steps[0] = Subspace::full(g.n);
    m.flags.push_back(std::move(f));
  }

  check_shape(m);
  if (g.identity_frame) return m;

  Mat frame(g.n, g.n);
  for (int attempt = 0; attempt < 256; ++attempt) {
    for (Index i = 0; i < g.n; ++i)
      for (Index j = 0; j < g.n; ++j) frame(i, j) = rng.small_rat();
    if (rank_of(frame) == g.n) return conjugate(m, frame);
  }
  throw InputError("generator: could not sample an invertible base change");
}

// ---------------------------------------------------------------------------
// Mutation helpers for negative tests.  Each edits one field of the
// module and, on the reference fixtures, makes exactly one admissibility
// axiom fail.
// ---------------------------------------------------------------------------

/// Breaks the commutation relation: a single off-pattern Frobenius entry.
inline FilPhiNModule mutate_break_relation(FilPhiNModule m) {
  m.phi(0, m.n - 1) += 1;
  return m;
}

/// Breaks the eigenvalue ladder without touching the relation: scaling
/// phi by p shifts every eigenvalue one rung up.
inline FilPhiNModule mutate_break_eigenvalues(FilPhiNModule m) {
  m.phi = Mat(Rat(m.p) * m.phi);
  return m;
}

/// Kills the monodromy chain.
inline FilPhiNModule mutate_kill_monodromy(FilPhiNModule m) {
  m.mono = Mat::Zero(m.n, m.n);
  return m;
}

/// Moves the last flag step of every embedding onto the lowest eigenline,
/// destroying transversality.  Shape-safe for n = 2 fixtures.
inline FilPhiNModule mutate_break_orthogonality(FilPhiNModule m, long mm) {
  const auto lines = eigenspace_decomposition(m, mm);
  for (WeightedFlag& f : m.flags) f.steps[m.n - 1] = lines[m.n - 1];
  check_shape(m);
  return m;
}

/// Collapses the weight window: the top weight drops to m itself.
inline FilPhiNModule mutate_shrink_window(FilPhiNModule m, long mm) {
  for (WeightedFlag& f : m.flags) f.weights[m.n - 1] = mm;
  check_shape(m);
  return m;
}

/// Plants a zero invariant: the last flag step of every embedding becomes
/// the top eigenline.  Shape-safe for n = 2 fixtures.
inline FilPhiNModule mutate_plant_zero(FilPhiNModule m, long mm) {
  const auto lines = eigenspace_decomposition(m, mm);
  for (WeightedFlag& f : m.flags) f.steps[m.n - 1] = lines[0];
  check_shape(m);
  return m;
}

}  // namespace linv
