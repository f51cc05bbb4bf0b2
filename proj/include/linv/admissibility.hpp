// Admissibility validation of a filtered (phi, N)-module against an
// integer m, the five-step filtration attached to a regular submodule,
// the exceptional subquotient, and its rank bookkeeping.
//
// Axioms, in evaluation order:
//   (a) N phi = p phi N
//   (b) phi diagonalizable with eigenvalues exactly p^{m-i}, i = 0..n-1,
//       every eigenspace one-dimensional
//   (c) N carries each eigenline isomorphically onto the next and kills
//       the last                                   [needs (a), (b)]
//   (d) every flag step is transversal to the Frobenius filtration step
//       of complementary dimension                 [needs (b)]
//   (e) top weight > m > second weight, per embedding
//   (f) the exceptional subquotient has no Frobenius-fixed dual line in
//       filtration degree >= 0; fails exactly on degenerate (planted
//       zero-invariant) data                       [needs (a)-(e)]
#pragma once

#include "linv/complexes.hpp"
#include "linv/phin_module.hpp"
#include "linv/rational.hpp"
#include "linv/subspace.hpp"

#include <array>
#include <optional>
#include <string>

namespace linv {

enum class AxiomState { Pass, Fail, Skipped };

struct AxiomResult {
  AxiomState state = AxiomState::Skipped;
  std::string witness;  // nonempty on failure

  bool passed() const { return state == AxiomState::Pass; }
  bool failed() const { return state == AxiomState::Fail; }
};

struct DeclaredHypotheses {
  bool declared = false;  // whether the input declared them at all
  bool gb1 = false, gb2 = false, gb3 = false;
};

struct AdmissibilityReport {
  long m = 0;
  std::array<AxiomResult, 6> axioms;  // (a) .. (f)
  DeclaredHypotheses declared;

  const AxiomResult& axiom(char label) const { return axioms[label - 'a']; }
  bool computable() const {
    for (int i = 0; i < 5; ++i)
      if (!axioms[i].passed()) return false;
    return true;
  }
  bool pass() const {
    return computable() && axioms[5].passed();
  }
  /// Valid for computation but carrying a planted zero invariant.
  bool degenerate() const { return computable() && axioms[5].failed(); }
};

/// Frobenius-fixed vectors lying in filtration degree >= 0 of every
/// embedding.  Nonzero exactly when the module contains a "crystalline
/// line": the detector behind axiom (f) and the exceptional rank counts.
inline Subspace crystalline_line(const FilPhiNModule& m) {
  return intersect(fil0_intersection(m), eigenspace(m.phi, Rat(1)));
}

struct FiveStep {
  Subspace dm2, dm1, d0, d1, d2;
};

/// Regularity of D inside a twisted module: phi- and N-stable and
/// transversal to the span of the positive-weight steps of every
/// embedding.
inline void require_regular(const FilPhiNModule& twisted, const Subspace& d) {
  if (d.ambient() != twisted.n) throw InputError("regular submodule: ambient mismatch");
  if (!contains(d, map_subspace(twisted.phi, d)))
    throw InputError("regular submodule: not phi-stable");
  if (!contains(d, map_subspace(twisted.mono, d)))
    throw InputError("regular submodule: not N-stable");
  for (Index s = 0; s < twisted.e; ++s) {
    const Subspace& pos = twisted.flags[s].fil_at(1);
    if (intersect(d, pos).dim() != 0 || d.dim() + pos.dim() != twisted.n)
      throw InputError("regular submodule: not complementary to the positive steps "
                       "of embedding " + std::to_string(s));
  }
}

/// The five-step filtration of a twisted module with respect to a regular
/// submodule D:
///   0  c  (1 - p^{-1} phi^{-1})D + N(D^{phi=1})  c  D
///      c  D + ker(phi-1) cap N^{-1}(D^{phi=1/p})  c  everything.
inline FiveStep five_step_filtration(const FilPhiNModule& twisted, const Subspace& d) {
  require_regular(twisted, d);
  auto phi_inv = inverse_of(twisted.phi);
  if (!phi_inv) throw InputError("five_step_filtration: phi not invertible");

  const Mat op = Mat(Mat::Identity(twisted.n, twisted.n) -
                     Rat(1, twisted.p) * *phi_inv);
  const Subspace d_phi_one = intersect(d, eigenspace(twisted.phi, Rat(1)));
  const Subspace dm1 = sum(map_subspace(op, d), map_subspace(twisted.mono, d_phi_one));

  const Subspace d_phi_invp = intersect(d, eigenspace(twisted.phi, Rat(1, twisted.p)));
  const Subspace d1 = sum(d, intersect(eigenspace(twisted.phi, Rat(1)),
                                       preimage(twisted.mono, d_phi_invp)));

  return FiveStep{Subspace::zero(twisted.n), dm1, d, d1, Subspace::full(twisted.n)};
}

/// Spec surface: twist by m, then run the five-step filtration.
inline FiveStep gb_filtration(const FilPhiNModule& m, long mm, const Subspace& d) {
  return five_step_filtration(tate_twist(m, mm), d);
}

/// Exceptional subquotient W = (step 1)/(step -1) of the five-step
/// filtration, presented as a short exact sequence of modules with
/// explicit inclusion and projection.  D defaults to the second-largest
/// Frobenius filtration step of the twisted module.
inline SubquotientSes exceptional_subquotient(const FilPhiNModule& m, long mm,
                                              std::optional<Subspace> d = std::nullopt) {
  const FilPhiNModule twisted = tate_twist(m, mm);
  const Subspace reg =
      d ? *d : frobenius_filtration(twisted, 0)[twisted.n - 1];
  const FiveStep fs = five_step_filtration(twisted, reg);
  return make_ses(twisted, fs.dm1, fs.d0, fs.d1);
}

struct ExceptionalRanks {
  Index w0 = 0, w1 = 0, m0 = 0, m1 = 0;
  bool degenerate = false;
};

/// Rank decomposition of the exceptional subquotient.  w0 counts
/// crystalline lines of the dual cyclotomic twist, w1 of W itself; the
/// remainder splits evenly between the middle ranks.  Nondegenerate data
/// gives (0, 0, 1, 1); planted zero invariants flip w0, w1 to 1.
inline ExceptionalRanks w_ranks(const FilPhiNModule& m, long mm,
                                std::optional<Subspace> d = std::nullopt) {
  const SubquotientSes ses = exceptional_subquotient(m, mm, std::move(d));
  const FilPhiNModule& w = ses.whole.mod;
  ExceptionalRanks r;
  r.w1 = crystalline_line(w).dim();
  r.w0 = crystalline_line(cyclotomic_twist(dual(w))).dim();
  const Index rest = w.n - r.w0 - r.w1;
  if (rest < 0 || rest % 2 != 0)
    throw InternalError("w_ranks: rank bookkeeping does not split evenly");
  r.m0 = r.m1 = rest / 2;
  r.degenerate = r.w1 > 0;
  return r;
}

/// Full admissibility check of (M, m).  Structural defects (dimension
/// mismatches) throw; axiom failures are reported with witnesses.
/// Dependent axioms are skipped once their prerequisites fail.
inline AdmissibilityReport validate(const FilPhiNModule& m, long mm,
                                    DeclaredHypotheses declared = {}) {
  check_shape(m);
  AdmissibilityReport rep;
  rep.m = mm;
  rep.declared = declared;
  auto set = [&](char label, bool ok, const std::string& witness) {
    rep.axioms[label - 'a'] =
        AxiomResult{ok ? AxiomState::Pass : AxiomState::Fail, ok ? "" : witness};
  };

  // (a) commutation relation
  const Mat rel = Mat(m.mono * m.phi - Rat(m.p) * m.phi * m.mono);
  set('a', mat_is_zero(rel), "N phi - p phi N = " + mat_to_string(rel));

  // (b) Frobenius eigenvalues p^{m-i}, each eigenspace a line
  std::vector<Subspace> lines;
  {
    bool ok = true;
    std::string witness;
    Index total = 0;
    for (Index i = 0; i < m.n; ++i) {
      Subspace s = eigenspace(m.phi, rat_pow(m.p, mm - i));
      total += s.dim();
      if (s.dim() != 1) {
        ok = false;
        witness += "eigenspace of p^" + std::to_string(mm - i) + " has dimension " +
                   std::to_string(s.dim()) + "; ";
      }
      lines.push_back(std::move(s));
    }
    if (ok && total != m.n) {
      ok = false;
      witness = "eigenspaces span a proper subspace";
    }
    set('b', ok, witness);
  }

  // (c) monodromy chain, needs (a) and (b)
  if (rep.axiom('a').passed() && rep.axiom('b').passed()) {
    bool ok = true;
    std::string witness;
    for (Index i = 0; i + 1 < m.n && ok; ++i) {
      const Vec img = Vec(m.mono * lines[i].basis().row(0).transpose());
      if (mat_is_zero(img)) {
        ok = false;
        witness = "N kills the eigenline of p^" + std::to_string(mm - i);
      } else if (!contains(lines[i + 1], img)) {
        ok = false;
        witness = "N image of eigenline " + std::to_string(i) +
                  " is not the next eigenline";
      }
    }
    if (ok && m.n >= 1) {
      const Vec img = Vec(m.mono * lines[m.n - 1].basis().row(0).transpose());
      if (!mat_is_zero(img)) {
        ok = false;
        witness = "N does not kill the last eigenline";
      }
    }
    set('c', ok, witness);
  }

  // (d) orthogonality of the two filtrations, needs (b)
  if (rep.axiom('b').passed()) {
    bool ok = true;
    std::string witness;
    const std::vector<Subspace> fil = frobenius_filtration(m, mm);
    for (Index s = 0; s < m.e && ok; ++s) {
      for (Index i = 0; i <= m.n && ok; ++i) {
        const Subspace meet = intersect(m.flags[s].steps[i], fil[i]);
        if (meet.dim() != 0) {
          ok = false;
          witness = "embedding " + std::to_string(s) + ", index " + std::to_string(i) +
                    ": flag step meets the Frobenius step in " +
                    mat_to_string(meet.basis());
        }
      }
    }
    set('d', ok, witness);
  }

  // (e) weight window
  {
    bool ok = true;
    std::string witness;
    for (Index s = 0; s < m.e && ok; ++s) {
      const std::vector<long>& w = m.flags[s].weights;
      const long top = w[m.n - 1];
      if (!(top > mm)) {
        ok = false;
        witness = "embedding " + std::to_string(s) + ": top weight " +
                  std::to_string(top) + " <= m";
      } else if (m.n >= 2 && !(mm > w[m.n - 2])) {
        ok = false;
        witness = "embedding " + std::to_string(s) + ": second weight " +
                  std::to_string(w[m.n - 2]) + " >= m";
      }
    }
    set('e', ok, witness);
  }

  // (f) no crystalline line in the dual cyclotomic twist of W
  if (rep.computable()) {
    const SubquotientSes ses = exceptional_subquotient(m, mm);
    const Subspace line = crystalline_line(cyclotomic_twist(dual(ses.whole.mod)));
    set('f', line.dim() == 0,
        "fixed dual line in nonnegative filtration degree: " +
            mat_to_string(line.basis()));
  }

  return rep;
}

}  // namespace linv
