// Exact linear algebra over the rationals: deterministic reduced row
// echelon form, canonical subspaces, and the subspace-lattice operations
// (kernel, image, sum, intersection, preimage, eigenspace).
//
// A Subspace is stored as the unique reduced-row-echelon basis of its
// row span, so subspace equality is plain entrywise comparison.  All
// elimination uses the leftmost nonzero pivot; with exact arithmetic no
// pivoting heuristics are needed and every result is canonical.
#pragma once

#include "linv/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace linv {

struct RrefResult {
  Mat mat;                    // reduced row echelon form (zero rows kept)
  std::vector<Index> pivots;  // pivot column of row r, strictly increasing
};

/// Reduced row echelon form by leftmost-pivot Gaussian elimination.
inline RrefResult rref(Mat a) {
  RrefResult res;
  const Index rows = a.rows(), cols = a.cols();
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index piv = -1;
    for (Index i = r; i < rows; ++i) {
      if (a(i, c) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != r) a.row(r).swap(a.row(piv));
    const Rat inv = 1 / Rat(a(r, c));
    for (Index j = c; j < cols; ++j) a(r, j) = Rat(a(r, j) * inv);
    for (Index i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Rat f = a(i, c);
      for (Index j = c; j < cols; ++j) a(i, j) = Rat(a(i, j) - f * a(r, j));
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.mat = std::move(a);
  return res;
}

inline Index rank_of(const Mat& a) { return static_cast<Index>(rref(a).pivots.size()); }

/// Particular solution of a x = b with free variables set to zero, or
/// nullopt when inconsistent.  Deterministic; unique when a has full
/// column rank.
inline std::optional<Vec> solve(const Mat& a, const Vec& b) {
  if (a.rows() != b.size()) throw InputError("solve: dimension mismatch");
  Mat aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  RrefResult r = rref(std::move(aug));
  Vec x = Vec::Zero(a.cols());
  for (std::size_t k = 0; k < r.pivots.size(); ++k) {
    if (r.pivots[k] == a.cols()) return std::nullopt;  // pivot in RHS column
    x(r.pivots[k]) = r.mat(static_cast<Index>(k), a.cols());
  }
  return x;
}

/// Exact inverse via elimination on [a | I]; nullopt when singular.
inline std::optional<Mat> inverse_of(const Mat& a) {
  if (a.rows() != a.cols()) throw InputError("inverse_of: not square");
  const Index n = a.rows();
  Mat aug(n, 2 * n);
  aug.leftCols(n) = a;
  aug.rightCols(n) = Mat::Identity(n, n);
  RrefResult r = rref(std::move(aug));
  if (static_cast<Index>(r.pivots.size()) < n || (n > 0 && r.pivots[n - 1] != n - 1))
    return std::nullopt;
  return Mat(r.mat.rightCols(n));
}

/// A linear subspace of Q^d in canonical form: basis rows in reduced row
/// echelon form with zero rows dropped.  Two subspaces are equal as sets
/// of vectors iff their stored bases are identical.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(Index ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = Mat(0, ambient);
    return s;
  }

  static Subspace full(Index ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = Mat::Identity(ambient, ambient);
    for (Index i = 0; i < ambient; ++i) s.pivots_.push_back(i);
    return s;
  }

  /// Span of the given row vectors, canonicalized.
  static Subspace from_rows(const Mat& rows) {
    Subspace s;
    s.ambient_ = rows.cols();
    RrefResult r = rref(rows);
    const Index k = static_cast<Index>(r.pivots.size());
    s.basis_ = r.mat.topRows(k);
    s.pivots_ = std::move(r.pivots);
    return s;
  }

  Index ambient() const { return ambient_; }
  Index dim() const { return basis_.rows(); }
  const Mat& basis() const { return basis_; }
  const std::vector<Index>& pivots() const { return pivots_; }

  bool operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && mats_equal(basis_, o.basis_);
  }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

 private:
  Index ambient_ = 0;
  Mat basis_{0, 0};
  std::vector<Index> pivots_;
};

/// {v : Mv = 0}; dim = cols - rank.
inline Subspace kernel(const Mat& m) {
  const Index cols = m.cols();
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (Index p : r.pivots) is_pivot[p] = true;
  const Index k = cols - static_cast<Index>(r.pivots.size());
  Mat basis(k, cols);
  basis.setZero();
  Index row = 0;
  for (Index free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    basis(row, free) = 1;
    for (std::size_t i = 0; i < r.pivots.size(); ++i)
      basis(row, r.pivots[i]) = -r.mat(static_cast<Index>(i), free);
    ++row;
  }
  return Subspace::from_rows(basis);
}

/// Column space of M, as a subspace of Q^rows.
inline Subspace image(const Mat& m) { return Subspace::from_rows(m.transpose()); }

inline Subspace sum(const Subspace& u, const Subspace& v) {
  if (u.ambient() != v.ambient()) throw InputError("sum: ambient mismatch");
  Mat stacked(u.dim() + v.dim(), u.ambient());
  stacked.topRows(u.dim()) = u.basis();
  stacked.bottomRows(v.dim()) = v.basis();
  return Subspace::from_rows(stacked);
}

/// {f : f . u = 0 for all u in U} under the standard pairing.
inline Subspace annihilator(const Subspace& u) { return kernel(u.basis()); }

/// Intersection via the kernel of the stacked complement equations.
inline Subspace intersect(const Subspace& u, const Subspace& v) {
  if (u.ambient() != v.ambient()) throw InputError("intersect: ambient mismatch");
  const Subspace au = annihilator(u), av = annihilator(v);
  Mat eqs(au.dim() + av.dim(), u.ambient());
  eqs.topRows(au.dim()) = au.basis();
  eqs.bottomRows(av.dim()) = av.basis();
  return kernel(eqs);
}

/// {v : Mv in U}.
inline Subspace preimage(const Mat& m, const Subspace& u) {
  if (m.rows() != u.ambient()) throw InputError("preimage: dimension mismatch");
  const Subspace au = annihilator(u);
  if (au.dim() == 0) return Subspace::full(m.cols());
  return kernel(Mat(au.basis() * m));
}

inline Subspace eigenspace(const Mat& m, const Rat& lambda) {
  if (m.rows() != m.cols()) throw InputError("eigenspace: not square");
  Mat shifted = m;
  for (Index i = 0; i < m.rows(); ++i) shifted(i, i) = Rat(shifted(i, i) - lambda);
  return kernel(shifted);
}

/// Coefficients expressing target in the span of the generator rows, or
/// nullopt when target is outside the span.  Unique when the generators
/// are independent.
inline std::optional<Vec> solve_in_span(const Vec& target, const Mat& generator_rows) {
  if (generator_rows.cols() != target.size())
    throw InputError("solve_in_span: dimension mismatch");
  return solve(generator_rows.transpose(), target);
}

inline bool contains(const Subspace& u, const Vec& v) {
  if (u.ambient() != v.size()) throw InputError("contains: dimension mismatch");
  return solve_in_span(v, u.basis()).has_value();
}

inline bool contains(const Subspace& u, const Subspace& v) {
  if (u.ambient() != v.ambient()) throw InputError("contains: ambient mismatch");
  for (Index i = 0; i < v.dim(); ++i)
    if (!contains(u, Vec(v.basis().row(i).transpose()))) return false;
  return true;
}

/// Image of U under the linear map g.
inline Subspace map_subspace(const Mat& g, const Subspace& u) {
  if (g.cols() != u.ambient()) throw InputError("map_subspace: dimension mismatch");
  return Subspace::from_rows(Mat(u.basis() * g.transpose()));
}

/// Canonical projection Q^d -> Q^(d-k) with kernel exactly U: coordinates
/// with respect to the unit vectors at U's non-pivot columns.  Composed
/// with quotient_section it is the identity.
inline Mat quotient_map(const Subspace& u) {
  const Index d = u.ambient(), k = u.dim();
  std::vector<bool> is_pivot(d, false);
  for (Index p : u.pivots()) is_pivot[p] = true;
  Mat q(d - k, d);
  q.setZero();
  Index row = 0;
  for (Index j = 0; j < d; ++j) {
    if (is_pivot[j]) continue;
    q(row, j) = 1;
    for (Index i = 0; i < k; ++i) q(row, u.pivots()[i]) = -u.basis()(i, j);
    ++row;
  }
  return q;
}

/// Canonical section of quotient_map: inserts coordinates at the
/// non-pivot columns of U.
inline Mat quotient_section(const Subspace& u) {
  const Index d = u.ambient(), k = u.dim();
  std::vector<bool> is_pivot(d, false);
  for (Index p : u.pivots()) is_pivot[p] = true;
  Mat s(d, d - k);
  s.setZero();
  Index col = 0;
  for (Index j = 0; j < d; ++j) {
    if (is_pivot[j]) continue;
    s(j, col) = 1;
    ++col;
  }
  return s;
}

/// Greedily selects rows from `candidates` (in order) that extend `inner`
/// to a larger independent family; returns the selected rows.  With
/// candidates spanning an enclosing space T this yields deterministic
/// coset representatives for T / inner.
inline Mat extend_basis(const Subspace& inner, const Mat& candidates) {
  Mat current = inner.basis();
  Mat chosen(0, inner.ambient());
  Index have = rank_of(current);
  for (Index i = 0; i < candidates.rows(); ++i) {
    Mat trial(current.rows() + 1, inner.ambient());
    trial.topRows(current.rows()) = current;
    trial.bottomRows(1) = candidates.row(i);
    if (rank_of(trial) > have) {
      ++have;
      current = std::move(trial);
      Mat grown(chosen.rows() + 1, inner.ambient());
      grown.topRows(chosen.rows()) = chosen;
      grown.bottomRows(1) = candidates.row(i);
      chosen = std::move(grown);
    }
  }
  return chosen;
}

}  // namespace linv
