// Hand-constructed reference instances.  Every expected value asserted
// against these in the tests is derived in fixtures/TRANSCRIPTS.md by
// direct computation from the raw data below.
#pragma once

#include "linv/phin_module.hpp"
#include "linv/rational.hpp"

namespace linv {

/// p = 5, n = 2, m = 1, weights (0, 2), planted invariant 7/3.
/// phi = diag(5, 1), N sends the first basis vector to the second, last
/// flag step spanned by v0 - (7/3) v1.
inline FilPhiNModule fix_a() {
  FilPhiNModule m;
  m.p = 5;
  m.n = 2;
  m.e = 1;
  m.phi = Mat::Zero(2, 2);
  m.phi(0, 0) = 5;
  m.phi(1, 1) = 1;
  m.mono = Mat::Zero(2, 2);
  m.mono(1, 0) = 1;
  WeightedFlag f;
  Mat last(1, 2);
  last << make_rat(1), make_rat(-7, 3);
  f.steps = {Subspace::full(2), Subspace::from_rows(last), Subspace::zero(2)};
  f.weights = {0, 2};
  m.flags = {f};
  check_shape(m);
  return m;
}
inline constexpr long fix_a_m = 1;

/// p = 3, n = 3, m = 2, weights (0, 1, 4), planted invariant -2.
/// phi = diag(9, 3, 1), N the full shift, F2 = span(v0 + 2 v1 + v2),
/// F1 = F2 + span(v1 + v2).
inline FilPhiNModule fix_b() {
  FilPhiNModule m;
  m.p = 3;
  m.n = 3;
  m.e = 1;
  m.phi = Mat::Zero(3, 3);
  m.phi(0, 0) = 9;
  m.phi(1, 1) = 3;
  m.phi(2, 2) = 1;
  m.mono = Mat::Zero(3, 3);
  m.mono(1, 0) = 1;
  m.mono(2, 1) = 1;
  WeightedFlag f;
  Mat f2(1, 3), f1(2, 3);
  f2 << make_rat(1), make_rat(2), make_rat(1);
  f1 << make_rat(1), make_rat(2), make_rat(1), make_rat(0), make_rat(1), make_rat(1);
  f.steps = {Subspace::full(3), Subspace::from_rows(f1), Subspace::from_rows(f2),
             Subspace::zero(3)};
  f.weights = {0, 1, 4};
  m.flags = {f};
  check_shape(m);
  return m;
}
inline constexpr long fix_b_m = 2;

/// fix_a with the last flag step moved onto the fixed eigenline: the
/// planted invariant is 0, which every downstream computation must flag
/// as degenerate rather than reject.
inline FilPhiNModule fix_degenerate() {
  FilPhiNModule m = fix_a();
  Mat last(1, 2);
  last << make_rat(1), make_rat(0);
  m.flags[0].steps[1] = Subspace::from_rows(last);
  check_shape(m);
  return m;
}
inline constexpr long fix_degenerate_m = 1;

}  // namespace linv
