// Filtered (phi, N)-modules over the rationals: an invertible Frobenius
// matrix, a nilpotent monodromy matrix satisfying N phi = p phi N, and one
// weighted complete flag per embedding of the base field.
//
// The flag steps F_0 > F_1 > ... > F_n carry nondecreasing integer weight
// labels w_1 <= ... <= w_n (w_i labels the quotient F_{i-1}/F_i).  The
// descending filtration at threshold j is recovered as the span of the
// steps whose label is >= j.
#pragma once

#include "linv/rational.hpp"
#include "linv/subspace.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace linv {

struct WeightedFlag {
  std::vector<Subspace> steps;  // n+1 subspaces, dim(steps[i]) = n - i
  std::vector<long> weights;    // n labels, nondecreasing

  Index ambient() const { return steps.empty() ? 0 : steps.front().ambient(); }

  /// Subspace spanned by the steps of weight >= j.
  const Subspace& fil_at(long j) const {
    std::size_t dropped = 0;
    while (dropped < weights.size() && weights[dropped] < j) ++dropped;
    return steps[dropped];
  }

  bool operator==(const WeightedFlag& o) const {
    return steps == o.steps && weights == o.weights;
  }
};

/// Exponent data (a_sigma; b) of a rank-1 coefficient character: one
/// integer exponent per embedding plus a norm exponent.
struct RankOneData {
  std::vector<long> exponents;
  long norm_exponent = 0;

  bool operator==(const RankOneData& o) const {
    return exponents == o.exponents && norm_exponent == o.norm_exponent;
  }
};

struct FilPhiNModule {
  long p = 0;    // residue characteristic, prime
  Index n = 0;   // dimension
  Index e = 0;   // number of embeddings
  Mat phi;       // n x n Frobenius
  Mat mono;      // n x n monodromy
  std::vector<WeightedFlag> flags;  // one per embedding
  long twist = 0;                   // Tate-twist bookkeeping, 0 = as given

  bool operator==(const FilPhiNModule& o) const {
    return p == o.p && n == o.n && e == o.e && twist == o.twist &&
           mats_equal(phi, o.phi) && mats_equal(mono, o.mono) && flags == o.flags;
  }
};

inline bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// Shape-level validation: dimensions, flag completeness, label order.
/// Content axioms (Frobenius eigenvalues, monodromy chain, orthogonality)
/// are the admissibility report's job, not the type's.
inline void check_shape(const FilPhiNModule& m) {
  if (!is_prime(m.p)) throw InputError("module: p = " + std::to_string(m.p) + " is not prime");
  if (m.n < 1) throw InputError("module: dimension must be positive");
  if (m.e < 1) throw InputError("module: need at least one embedding");
  if (m.phi.rows() != m.n || m.phi.cols() != m.n)
    throw InputError("module: phi is not n x n");
  if (m.mono.rows() != m.n || m.mono.cols() != m.n)
    throw InputError("module: mono is not n x n");
  if (static_cast<Index>(m.flags.size()) != m.e)
    throw InputError("module: expected one flag per embedding");
  for (std::size_t s = 0; s < m.flags.size(); ++s) {
    const WeightedFlag& f = m.flags[s];
    const std::string where = "flag " + std::to_string(s);
    if (static_cast<Index>(f.steps.size()) != m.n + 1)
      throw InputError(where + ": expected n+1 steps");
    if (static_cast<Index>(f.weights.size()) != m.n)
      throw InputError(where + ": expected n weight labels");
    for (Index i = 0; i <= m.n; ++i) {
      if (f.steps[i].ambient() != m.n)
        throw InputError(where + ": step ambient dimension mismatch");
      if (f.steps[i].dim() != m.n - i)
        throw InputError(where + ": step " + std::to_string(i) + " has wrong dimension");
      if (i > 0 && !contains(f.steps[i - 1], f.steps[i]))
        throw InputError(where + ": steps are not nested");
    }
    if (!std::is_sorted(f.weights.begin(), f.weights.end()))
      throw InputError(where + ": weights not nondecreasing");
  }
}

/// One-dimensional module attached to character data (a_sigma; b):
/// Frobenius scalar p^{-b}, zero monodromy, single flag step of weight
/// -a_sigma per embedding.
inline FilPhiNModule rank_one(const RankOneData& d, long p) {
  FilPhiNModule m;
  m.p = p;
  m.n = 1;
  m.e = static_cast<Index>(d.exponents.size());
  if (m.e < 1) throw InputError("rank_one: need at least one exponent");
  m.phi = Mat(1, 1);
  m.phi(0, 0) = rat_pow(p, -d.norm_exponent);
  m.mono = Mat::Zero(1, 1);
  for (long a : d.exponents) {
    WeightedFlag f;
    f.steps = {Subspace::full(1), Subspace::zero(1)};
    f.weights = {-a};
    m.flags.push_back(std::move(f));
  }
  check_shape(m);
  return m;
}

/// Tensor with the rank-1 module of (a_sigma; b): scales phi by p^{-b} and
/// shifts the weight labels of embedding sigma by -a_sigma.  Subspaces are
/// untouched.
inline FilPhiNModule twist_by_character(const FilPhiNModule& m, const RankOneData& d) {
  if (static_cast<Index>(d.exponents.size()) != m.e)
    throw InputError("twist_by_character: embedding count mismatch");
  FilPhiNModule out = m;
  out.phi = Mat(m.phi * rat_pow(m.p, -d.norm_exponent));
  for (Index s = 0; s < m.e; ++s)
    for (long& w : out.flags[s].weights) w -= d.exponents[s];
  return out;
}

/// Tate twist by t: phi -> p^{-t} phi, every weight w -> w - t, twist
/// bookkeeping incremented.
inline FilPhiNModule tate_twist(const FilPhiNModule& m, long t) {
  RankOneData d;
  d.exponents.assign(m.e, t);
  d.norm_exponent = t;
  FilPhiNModule out = twist_by_character(m, d);
  out.twist = m.twist + t;
  return out;
}

/// Twist by the cyclotomic character (phi scale p^{-1}, weight shift -1).
inline FilPhiNModule cyclotomic_twist(const FilPhiNModule& m) { return tate_twist(m, 1); }

/// Linear dual: phi -> transpose inverse, N -> -transpose, step i of each
/// flag becomes the annihilator of step n-i, weights negated and reversed.
inline FilPhiNModule dual(const FilPhiNModule& m) {
  FilPhiNModule out;
  out.p = m.p;
  out.n = m.n;
  out.e = m.e;
  out.twist = -m.twist;
  auto inv = inverse_of(m.phi);
  if (!inv) throw InputError("dual: phi not invertible");
  out.phi = inv->transpose();
  out.mono = Mat(-m.mono.transpose());
  for (const WeightedFlag& f : m.flags) {
    WeightedFlag g;
    g.steps.resize(m.n + 1);
    for (Index i = 0; i <= m.n; ++i) g.steps[i] = annihilator(f.steps[m.n - i]);
    g.weights.resize(m.n);
    for (Index i = 0; i < m.n; ++i) g.weights[i] = -f.weights[m.n - 1 - i];
    out.flags.push_back(std::move(g));
  }
  return out;
}

/// Base change by an invertible g: phi -> g phi g^{-1}, N -> g N g^{-1},
/// flag subspaces mapped by g.  Reports and invariants downstream must not
/// change under this.
inline FilPhiNModule conjugate(const FilPhiNModule& m, const Mat& g) {
  auto ginv = inverse_of(g);
  if (!ginv) throw InputError("conjugate: g not invertible");
  FilPhiNModule out = m;
  out.phi = Mat(g * m.phi * *ginv);
  out.mono = Mat(g * m.mono * *ginv);
  for (WeightedFlag& f : out.flags)
    for (Subspace& s : f.steps) s = map_subspace(g, s);
  return out;
}

/// Frobenius eigenlines D^(0),...,D^(n-1): D^(i) = ker(phi - p^{m-i}).
/// Fails unless every eigenspace is exactly one-dimensional.
inline std::vector<Subspace> eigenspace_decomposition(const FilPhiNModule& m, long mm) {
  std::vector<Subspace> lines;
  for (Index i = 0; i < m.n; ++i) {
    Subspace s = eigenspace(m.phi, rat_pow(m.p, mm - i));
    if (s.dim() != 1)
      throw InputError("eigenspace_decomposition: eigenspace for p^" +
                       std::to_string(mm - i) + " has dimension " +
                       std::to_string(s.dim()) + ", expected 1");
    lines.push_back(std::move(s));
  }
  return lines;
}

/// Ascending Frobenius filtration: Fil_j = sum of the eigenlines with the
/// j smallest eigenvalues; dim Fil_j = j.  Returned as Fil_0,...,Fil_n.
inline std::vector<Subspace> frobenius_filtration(const FilPhiNModule& m, long mm) {
  const std::vector<Subspace> lines = eigenspace_decomposition(m, mm);
  std::vector<Subspace> fil(m.n + 1, Subspace::zero(m.n));
  for (Index j = 1; j <= m.n; ++j) {
    Subspace s = fil[j - 1];
    // i > n-1-j picks up the eigenline of p^{m-i}; smallest eigenvalues first.
    s = sum(s, lines[m.n - j]);
    fil[j] = std::move(s);
  }
  return fil;
}

/// Vectors lying in the 0-th filtration step of every embedding.
inline Subspace fil0_intersection(const FilPhiNModule& m) {
  Subspace acc = Subspace::full(m.n);
  for (const WeightedFlag& f : m.flags) acc = intersect(acc, f.fil_at(0));
  return acc;
}

/// Reads (a_sigma; b) off a one-dimensional module, provided its Frobenius
/// scalar is an exact power of p.
inline std::optional<RankOneData> as_rank_one_data(const FilPhiNModule& m) {
  if (m.n != 1) return std::nullopt;
  Rat lambda = m.phi(0, 0);
  if (lambda == 0) return std::nullopt;
  long k = 0;
  Rat cur = lambda;
  const Rat p(m.p);
  while (cur != 1 && cur.get_den() == 1) {
    if (!mpz_divisible_p(cur.get_num().get_mpz_t(), mpz_class(m.p).get_mpz_t()))
      return std::nullopt;
    cur = Rat(cur / p);
    ++k;
  }
  while (cur != 1) {
    cur = Rat(cur * p);
    --k;
    if (k < -4096) return std::nullopt;
    if (cur.get_den() == 1 && cur != 1) {
      // fell back into the integers without reaching 1
      if (!mpz_divisible_p(cur.get_num().get_mpz_t(), mpz_class(m.p).get_mpz_t()))
        return std::nullopt;
    }
  }
  RankOneData d;
  d.norm_exponent = -k;
  for (const WeightedFlag& f : m.flags) d.exponents.push_back(-f.weights[0]);
  return d;
}

// ---------------------------------------------------------------------------
// Subquotients
// ---------------------------------------------------------------------------

/// A subquotient T/S presented on its own coordinate space: `reps` holds
/// one representative row vector per coordinate, `coords` maps any v in T
/// to its coordinates (kernel S on T).
struct SubquotientModule {
  FilPhiNModule mod;
  Mat reps;    // k x n, row r represents basis vector r
  Mat coords;  // k x n, coords * v = coordinates of v + S for v in T
};

namespace detail {

/// Complete weighted flag on a k-dimensional space from a descending
/// profile of subspaces sampled at the given thresholds.  Jumps of
/// multiplicity > 1 are refined greedily; the refinement is immaterial to
/// any threshold query.
inline WeightedFlag flag_from_profile(Index k, const std::vector<long>& thresholds,
                                      const std::vector<Subspace>& at) {
  WeightedFlag f;
  std::vector<Subspace> ascending{Subspace::zero(k)};
  std::vector<long> labels_desc;
  Subspace cur = Subspace::zero(k);
  for (std::size_t idx = thresholds.size(); idx-- > 0;) {
    const Subspace& g = at[idx];
    if (!contains(g, cur))
      throw InternalError("flag_from_profile: profile not descending");
    while (cur.dim() < g.dim()) {
      Mat add = extend_basis(cur, g.basis());
      Mat one(1, k);
      one = add.row(0);
      cur = sum(cur, Subspace::from_rows(one));
      ascending.push_back(cur);
      labels_desc.push_back(thresholds[idx]);
    }
  }
  if (cur.dim() != k) throw InternalError("flag_from_profile: profile does not fill");
  f.steps.assign(ascending.rbegin(), ascending.rend());
  f.weights.assign(labels_desc.rbegin(), labels_desc.rend());
  return f;
}

}  // namespace detail

/// Induced module structure on T/S for phi- and N-stable S inside T.  The
/// flag of each embedding is the image filtration (Fil^j cap T + S)/S with
/// labels inherited from the jumps.
inline SubquotientModule subquotient_module(const FilPhiNModule& m, const Subspace& t,
                                            const Subspace& s) {
  if (t.ambient() != m.n || s.ambient() != m.n)
    throw InputError("subquotient_module: ambient mismatch");
  if (!contains(t, s)) throw InputError("subquotient_module: S not inside T");
  for (const Subspace* u : {&t, &s}) {
    if (!contains(*u, map_subspace(m.phi, *u)))
      throw InputError("subquotient_module: space not phi-stable");
    if (!contains(*u, map_subspace(m.mono, *u)))
      throw InputError("subquotient_module: space not N-stable");
  }
  const Index k = t.dim() - s.dim();

  SubquotientModule out;
  out.reps = extend_basis(s, t.basis());

  // Invertible frame [S basis; reps; completion]; its inverse transpose
  // reads off coordinates, rows dim(S)..dim(S)+k-1 give the T/S part.
  Mat frame(m.n, m.n);
  frame.topRows(s.dim()) = s.basis();
  frame.middleRows(s.dim(), k) = out.reps;
  Mat partial(s.dim() + k, m.n);
  partial.topRows(s.dim()) = s.basis();
  partial.bottomRows(k) = out.reps;
  Mat completion = extend_basis(Subspace::from_rows(partial), Mat(Mat::Identity(m.n, m.n)));
  frame.bottomRows(m.n - s.dim() - k) = completion;
  auto frame_inv = inverse_of(Mat(frame.transpose()));
  if (!frame_inv) throw InternalError("subquotient_module: frame not invertible");
  out.coords = frame_inv->middleRows(s.dim(), k);

  FilPhiNModule& w = out.mod;
  w.p = m.p;
  w.n = k;
  w.e = m.e;
  w.twist = m.twist;
  w.phi = Mat(out.coords * m.phi * out.reps.transpose());
  w.mono = Mat(out.coords * m.mono * out.reps.transpose());
  for (const WeightedFlag& f : m.flags) {
    std::set<long> ws(f.weights.begin(), f.weights.end());
    std::vector<long> thresholds(ws.begin(), ws.end());
    std::vector<Subspace> profile;
    for (long j : thresholds)
      profile.push_back(map_subspace(out.coords, intersect(f.fil_at(j), t)));
    w.flags.push_back(detail::flag_from_profile(k, thresholds, profile));
  }
  check_shape(w);
  return out;
}

/// Short exact sequence of subquotients 0 -> MID/S -> T/S -> T/MID -> 0
/// with explicit inclusion and projection matrices.
struct SubquotientSes {
  SubquotientModule whole;  // T/S
  SubquotientModule sub;    // MID/S
  SubquotientModule quot;   // T/MID
  Mat incl;                 // sub coords -> whole coords
  Mat proj;                 // whole coords -> quot coords
};

inline SubquotientSes make_ses(const FilPhiNModule& m, const Subspace& s,
                               const Subspace& mid, const Subspace& t) {
  if (!contains(mid, s) || !contains(t, mid))
    throw InputError("make_ses: spaces not nested");
  SubquotientSes ses;
  ses.whole = subquotient_module(m, t, s);
  ses.sub = subquotient_module(m, mid, s);
  ses.quot = subquotient_module(m, t, mid);
  ses.incl = Mat(ses.whole.coords * ses.sub.reps.transpose());
  ses.proj = Mat(ses.quot.coords * ses.whole.reps.transpose());
  return ses;
}

}  // namespace linv
