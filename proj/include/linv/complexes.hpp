// Semistable and crystalline complexes of a filtered (phi, N)-module,
// cohomology with explicit coset representatives, the canonical class
// pair (alpha*, beta*) of a rank-1 module, and connecting homomorphisms
// of short exact sequences.
//
// The semistable complex is
//     D --a->(a mod Fil0, (phi-1)a, Na)--> D_dR/Fil0 + D + D
//       --(x,b,c)->Nb-(p phi-1)c--> D
// with D_dR the direct sum of one coordinate-space copy per embedding.
// The crystalline complex is the two-term analogue on ker N.
#pragma once

#include "linv/phin_module.hpp"
#include "linv/rational.hpp"
#include "linv/subspace.hpp"

#include <string>
#include <utility>
#include <vector>

namespace linv {

/// A cohomology class is a coset representative in the coordinates of the
/// relevant term of its defining complex.
struct CohClass {
  int degree = 0;
  Vec rep;
};

struct SemistableComplex {
  FilPhiNModule mod;
  std::vector<Mat> fil0_quot;  // per embedding: quotient by Fil^0
  Index dr_dim = 0;            // total dimension of D_dR / Fil^0
  Mat d1;                      // term0 -> term1
  Mat d2;                      // term1 -> term2

  Index term_dim(int degree) const {
    switch (degree) {
      case 0: return mod.n;
      case 1: return dr_dim + 2 * mod.n;
      case 2: return mod.n;
      default: throw InputError("semistable complex: degree out of range");
    }
  }
};

struct CrystallineComplex {
  SubquotientModule cris;      // ker N with induced Frobenius and filtration
  std::vector<Mat> fil0_quot;  // per embedding, on the crystalline part
  Index dr_dim = 0;
  Mat d1;  // term0 -> term1

  Index term_dim(int degree) const {
    switch (degree) {
      case 0: return cris.mod.n;
      case 1: return dr_dim + cris.mod.n;
      default: throw InputError("crystalline complex: degree out of range");
    }
  }
};

inline SemistableComplex build_st(const FilPhiNModule& m) {
  check_shape(m);
  SemistableComplex c;
  c.mod = m;
  for (const WeightedFlag& f : m.flags) {
    Mat q = quotient_map(f.fil_at(0));
    c.dr_dim += q.rows();
    c.fil0_quot.push_back(std::move(q));
  }
  const Index t1 = c.dr_dim + 2 * m.n;
  c.d1 = Mat::Zero(t1, m.n);
  Index row = 0;
  for (const Mat& q : c.fil0_quot) {
    c.d1.middleRows(row, q.rows()) = q;
    row += q.rows();
  }
  c.d1.middleRows(row, m.n) = Mat(m.phi - Mat::Identity(m.n, m.n));
  c.d1.middleRows(row + m.n, m.n) = m.mono;

  c.d2 = Mat::Zero(m.n, t1);
  c.d2.middleCols(c.dr_dim, m.n) = m.mono;
  c.d2.middleCols(c.dr_dim + m.n, m.n) =
      Mat(-(Rat(m.p) * m.phi - Mat::Identity(m.n, m.n)));

  if (!mat_is_zero(Mat(c.d2 * c.d1)))
    throw InputError("build_st: d2 . d1 != 0 (module violates N phi = p phi N)");
  return c;
}

inline CrystallineComplex build_cris(const FilPhiNModule& m) {
  check_shape(m);
  CrystallineComplex c;
  c.cris = subquotient_module(m, kernel(m.mono), Subspace::zero(m.n));
  const Index k = c.cris.mod.n;
  for (const WeightedFlag& f : c.cris.mod.flags) {
    Mat q = quotient_map(f.fil_at(0));
    c.dr_dim += q.rows();
    c.fil0_quot.push_back(std::move(q));
  }
  c.d1 = Mat::Zero(c.dr_dim + k, k);
  Index row = 0;
  for (const Mat& q : c.fil0_quot) {
    c.d1.middleRows(row, q.rows()) = q;
    row += q.rows();
  }
  c.d1.middleRows(row, k) = Mat(c.cris.mod.phi - Mat::Identity(k, k));
  return c;
}

namespace detail {

inline std::pair<Index, std::vector<CohClass>> cohomology_of(const Mat& boundary_in,
                                                             const Subspace& cocycles,
                                                             int degree) {
  const Subspace boundaries = image(boundary_in);
  Mat reps = extend_basis(boundaries, cocycles.basis());
  std::vector<CohClass> classes;
  for (Index i = 0; i < reps.rows(); ++i)
    classes.push_back(CohClass{degree, Vec(reps.row(i).transpose())});
  return {cocycles.dim() - boundaries.dim(), std::move(classes)};
}

}  // namespace detail

/// Dimension and an explicit representative basis of H^degree.
inline std::pair<Index, std::vector<CohClass>> h(const SemistableComplex& c, int degree) {
  switch (degree) {
    case 0: {
      const Subspace z = kernel(c.d1);
      std::vector<CohClass> classes;
      for (Index i = 0; i < z.dim(); ++i)
        classes.push_back(CohClass{0, Vec(z.basis().row(i).transpose())});
      return {z.dim(), std::move(classes)};
    }
    case 1:
      return detail::cohomology_of(c.d1, kernel(c.d2), 1);
    case 2:
      return detail::cohomology_of(c.d2, Subspace::full(c.mod.n), 2);
    default:
      throw InputError("h: semistable degree must be 0, 1 or 2");
  }
}

inline std::pair<Index, std::vector<CohClass>> h(const CrystallineComplex& c, int degree) {
  switch (degree) {
    case 0: {
      const Subspace z = kernel(c.d1);
      std::vector<CohClass> classes;
      for (Index i = 0; i < z.dim(); ++i)
        classes.push_back(CohClass{0, Vec(z.basis().row(i).transpose())});
      return {z.dim(), std::move(classes)};
    }
    case 1:
      return detail::cohomology_of(c.d1, Subspace::full(c.term_dim(1)), 1);
    default:
      throw InputError("h: crystalline degree must be 0 or 1");
  }
}

/// Class equality: the difference of representatives bounds.
inline bool classes_equal(const SemistableComplex& c, const CohClass& a, const CohClass& b) {
  if (a.degree != b.degree) return false;
  const Vec diff = Vec(a.rep - b.rep);
  switch (a.degree) {
    case 0: return mat_is_zero(diff);
    case 1: return solve(c.d1, diff).has_value();
    case 2: return solve(c.d2, diff).has_value();
    default: return false;
  }
}

/// The canonical pair alpha* = cl(v, 0, 0), beta* = -cl(0, 0, v) of a
/// rank-1 module, with v = scale times the coordinate basis vector.
/// Errors when either fails to be a cocycle or the two classes are
/// dependent in H^1; both happen exactly outside the family of
/// characters this construction is meant for.
inline std::pair<CohClass, CohClass> alpha_beta(const SemistableComplex& c,
                                                const Rat& scale = Rat(1)) {
  if (c.mod.n != 1) throw InputError("alpha_beta: module must be one-dimensional");
  if (scale == 0) throw InputError("alpha_beta: zero basis vector");
  const Index t1 = c.term_dim(1);
  Vec v(1);
  v(0) = scale;

  CohClass alpha{1, Vec(Vec::Zero(t1))};
  Index row = 0;
  for (const Mat& q : c.fil0_quot) {
    alpha.rep.segment(row, q.rows()) = Vec(q * v);
    row += q.rows();
  }
  CohClass beta{1, Vec(Vec::Zero(t1))};
  beta.rep(c.dr_dim + 1) = -scale;

  for (const CohClass* cls : {&alpha, &beta})
    if (!mat_is_zero(Mat(c.d2 * cls->rep)))
      throw InputError("alpha_beta: representative is not a cocycle "
                       "(Frobenius scalar is not 1/p)");

  const Subspace boundaries = image(c.d1);
  Mat stack(boundaries.dim() + 2, t1);
  stack.topRows(boundaries.dim()) = boundaries.basis();
  stack.row(boundaries.dim()) = alpha.rep.transpose();
  stack.row(boundaries.dim() + 1) = beta.rep.transpose();
  if (rank_of(stack) != boundaries.dim() + 2)
    throw InputError("alpha_beta: classes are dependent in H^1");
  return {std::move(alpha), std::move(beta)};
}

/// Explicit connecting map H^0(quot) -> H^1(sub) of a short exact
/// sequence of modules.  For each fixed vector of the quotient: choose a
/// Frobenius-fixed lift, push it through the middle differential, and
/// read the result in the sub's term-1 coordinates.
struct ConnectingMap {
  std::vector<CohClass> h0_basis;  // classes of C_st(quot), degree 0
  std::vector<CohClass> images;    // classes of C_st(sub), degree 1
  SemistableComplex sub_complex;
  SemistableComplex quot_complex;
  bool lift_unique = true;
};

namespace detail {

inline void check_ses(const FilPhiNModule& sub, const FilPhiNModule& mid,
                      const FilPhiNModule& quot, const Mat& incl, const Mat& proj) {
  if (sub.p != mid.p || mid.p != quot.p || sub.e != mid.e || mid.e != quot.e)
    throw InputError("connecting: mismatched base data");
  if (incl.rows() != mid.n || incl.cols() != sub.n || proj.rows() != quot.n ||
      proj.cols() != mid.n)
    throw InputError("connecting: map shapes do not match the modules");
  if (rank_of(incl) != sub.n) throw InputError("connecting: inclusion not injective");
  if (rank_of(proj) != quot.n) throw InputError("connecting: projection not surjective");
  if (image(incl) != kernel(proj))
    throw InputError("connecting: image of inclusion differs from kernel of projection");
  if (!mat_is_zero(Mat(mid.phi * incl - incl * sub.phi)) ||
      !mat_is_zero(Mat(proj * mid.phi - quot.phi * proj)))
    throw InputError("connecting: maps do not commute with phi");
  if (!mat_is_zero(Mat(mid.mono * incl - incl * sub.mono)) ||
      !mat_is_zero(Mat(proj * mid.mono - quot.mono * proj)))
    throw InputError("connecting: maps do not commute with N");
  for (Index s = 0; s < mid.e; ++s) {
    std::set<long> ws(mid.flags[s].weights.begin(), mid.flags[s].weights.end());
    ws.insert(sub.flags[s].weights.begin(), sub.flags[s].weights.end());
    ws.insert(quot.flags[s].weights.begin(), quot.flags[s].weights.end());
    for (long j : ws) {
      const Subspace fs = sub.flags[s].fil_at(j);
      const Subspace fm = mid.flags[s].fil_at(j);
      const Subspace fq = quot.flags[s].fil_at(j);
      if (!contains(fm, map_subspace(incl, fs)) || !contains(fq, map_subspace(proj, fm)))
        throw InputError("connecting: maps do not respect the filtrations");
      if (fm.dim() != fs.dim() + fq.dim())
        throw InputError("connecting: filtration sequence not strict");
    }
  }
}

}  // namespace detail

inline ConnectingMap connecting(const FilPhiNModule& sub, const FilPhiNModule& mid,
                                const FilPhiNModule& quot, const Mat& incl,
                                const Mat& proj) {
  detail::check_ses(sub, mid, quot, incl, proj);

  ConnectingMap out;
  out.sub_complex = build_st(sub);
  out.quot_complex = build_st(quot);
  const SemistableComplex mid_complex = build_st(mid);
  out.lift_unique = intersect(eigenspace(mid.phi, Rat(1)), image(incl)).dim() == 0;

  // term-1 inclusion: blockdiag(per-embedding induced quotient maps, incl, incl)
  const Index t1_sub = out.sub_complex.term_dim(1);
  const Index t1_mid = mid_complex.term_dim(1);
  Mat t1_incl = Mat::Zero(t1_mid, t1_sub);
  Index row = 0, col = 0;
  for (Index s = 0; s < mid.e; ++s) {
    const Mat sec = quotient_section(sub.flags[s].fil_at(0));
    Mat blk = Mat(mid_complex.fil0_quot[s] * incl * sec);
    t1_incl.block(row, col, blk.rows(), blk.cols()) = blk;
    row += blk.rows();
    col += blk.cols();
  }
  t1_incl.block(row, col, mid.n, sub.n) = incl;
  t1_incl.block(row + mid.n, col + sub.n, mid.n, sub.n) = incl;

  auto [h0_dim, h0_classes] = h(out.quot_complex, 0);
  (void)h0_dim;
  out.h0_basis = h0_classes;

  // phi-fixed lift: proj x = v and (phi - 1) x = 0 simultaneously.
  Mat lift_sys(quot.n + mid.n, mid.n);
  lift_sys.topRows(quot.n) = proj;
  lift_sys.bottomRows(mid.n) = Mat(mid.phi - Mat::Identity(mid.n, mid.n));
  for (const CohClass& cls : out.h0_basis) {
    Vec rhs = Vec::Zero(quot.n + mid.n);
    rhs.head(quot.n) = cls.rep;
    auto lift = solve(lift_sys, rhs);
    if (!lift) throw InputError("connecting: no phi-fixed lift exists");
    const Vec pushed = Vec(mid_complex.d1 * *lift);
    auto pre = solve(t1_incl, pushed);
    if (!pre)
      throw InternalError("connecting: middle image does not come from the sub term");
    out.images.push_back(CohClass{1, *pre});
  }
  return out;
}

}  // namespace linv
