#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "linv/admissibility.hpp"
#include "linv/fixtures.hpp"
#include "linv/phin_module.hpp"

using namespace linv;
using testutil::Rng;

namespace {

Subspace line2(const Rat& a, const Rat& b) {
  Mat m(1, 2);
  m << a, b;
  return Subspace::from_rows(m);
}

}  // namespace

TEST_CASE("fixtures validate") {
  CHECK(validate(fix_a(), fix_a_m).pass());
  CHECK(validate(fix_b(), fix_b_m).pass());
}

TEST_CASE("degenerate fixture: computable, flagged, fails only the last axiom") {
  const AdmissibilityReport rep = validate(fix_degenerate(), fix_degenerate_m);
  CHECK(rep.computable());
  CHECK_FALSE(rep.pass());
  CHECK(rep.degenerate());
  for (char c = 'a'; c <= 'e'; ++c) CHECK(rep.axiom(c).passed());
  CHECK(rep.axiom('f').failed());
}

TEST_CASE("validate reports structural defects distinctly") {
  FilPhiNModule bad = fix_a();
  bad.phi = Mat::Zero(3, 3);
  CHECK_THROWS_AS(validate(bad, 1), InputError);

  FilPhiNModule short_flag = fix_a();
  short_flag.flags[0].steps.pop_back();
  CHECK_THROWS_AS(validate(short_flag, 1), InputError);
}

TEST_CASE("validate: broken commutation relation fails exactly (a)") {
  FilPhiNModule m = fix_a();
  m.phi(0, 1) = 1;
  const AdmissibilityReport rep = validate(m, 1);
  CHECK(rep.axiom('a').failed());
  CHECK(rep.axiom('a').witness.find("N phi - p phi N") != std::string::npos);
  CHECK(rep.axiom('b').passed());
  CHECK(rep.axiom('c').state == AxiomState::Skipped);
  CHECK(rep.axiom('d').passed());
  CHECK(rep.axiom('e').passed());
  CHECK(rep.axiom('f').state == AxiomState::Skipped);
}

TEST_CASE("validate: flag step on the second eigenline fails exactly (d)") {
  FilPhiNModule m = fix_a();
  m.flags[0].steps[1] = line2(make_rat(0), make_rat(1));
  const AdmissibilityReport rep = validate(m, 1);
  CHECK(rep.axiom('a').passed());
  CHECK(rep.axiom('b').passed());
  CHECK(rep.axiom('c').passed());
  CHECK(rep.axiom('d').failed());
  CHECK(rep.axiom('e').passed());
  CHECK(rep.axiom('f').state == AxiomState::Skipped);
}

TEST_CASE("eigenspace decomposition") {
  const auto lines_a = eigenspace_decomposition(fix_a(), 1);
  REQUIRE(lines_a.size() == 2);
  CHECK(lines_a[0] == line2(make_rat(1), make_rat(0)));
  CHECK(lines_a[1] == line2(make_rat(0), make_rat(1)));

  const auto lines_b = eigenspace_decomposition(fix_b(), 2);
  REQUIRE(lines_b.size() == 3);
  for (Index i = 0; i < 3; ++i) {
    CHECK(lines_b[i].dim() == 1);
    CHECK(lines_b[i].basis()(0, i) == 1);
  }

  FilPhiNModule rep = fix_a();
  rep.phi(1, 1) = 5;  // repeated eigenvalue p^m
  CHECK_THROWS_AS(eigenspace_decomposition(rep, 1), InputError);
}

TEST_CASE("frobenius filtration") {
  const auto fil_a = frobenius_filtration(fix_a(), 1);
  REQUIRE(fil_a.size() == 3);
  CHECK(fil_a[0] == Subspace::zero(2));
  CHECK(fil_a[1] == line2(make_rat(0), make_rat(1)));
  CHECK(fil_a[2] == Subspace::full(2));

  const auto fil_b = frobenius_filtration(fix_b(), 2);
  REQUIRE(fil_b.size() == 4);
  CHECK(fil_b[0] == Subspace::zero(3));
  CHECK(fil_b[1].dim() == 1);
  CHECK(fil_b[1].basis()(0, 2) == 1);
  CHECK(fil_b[2].dim() == 2);
  CHECK(fil_b[2].basis()(0, 1) == 1);
  CHECK(fil_b[3] == Subspace::full(3));
}

TEST_CASE("tate twist") {
  const FilPhiNModule m = fix_a();
  CHECK(tate_twist(m, 0) == m);

  const FilPhiNModule t = tate_twist(m, 1);
  CHECK(t.phi(0, 0) == 1);
  CHECK(t.phi(1, 1) == make_rat(1, 5));
  CHECK(t.flags[0].weights == std::vector<long>{-1, 1});
  CHECK(t.flags[0].steps == m.flags[0].steps);
  CHECK(t.twist == 1);

  CHECK(tate_twist(tate_twist(m, 3), -3) == m);
}

TEST_CASE("dual is an involution and twists dualize with a sign") {
  Rng rng(11);
  for (int round = 0; round < 10; ++round) {
    const FilPhiNModule m = round % 2 ? fix_b() : fix_a();
    CHECK(dual(dual(m)) == m);
    const long t = rng.range(-3, 3);
    CHECK(dual(tate_twist(m, t)) == tate_twist(dual(m), -t));
  }
}

TEST_CASE("rank_one normalization checkpoints") {
  // cyclotomic data: phi scalar 1/p, weight -1
  const FilPhiNModule cyc = rank_one(RankOneData{{1}, 1}, 5);
  CHECK(cyc.phi(0, 0) == make_rat(1, 5));
  CHECK(cyc.flags[0].weights == std::vector<long>{-1});

  // trivial character: phi = 1, weight 0
  const FilPhiNModule triv = rank_one(RankOneData{{0}, 0}, 5);
  CHECK(triv.phi(0, 0) == 1);
  CHECK(triv.flags[0].weights == std::vector<long>{0});
  CHECK(mat_is_zero(triv.mono));

  // the sub character of the exceptional extension: a = m - k_{n-1} >= 1,
  // b = 1 gives phi scalar 1/p and weights k_{n-1} - m <= -1
  const FilPhiNModule sub = rank_one(RankOneData{{1, 2}, 1}, 5);
  CHECK(sub.phi(0, 0) == make_rat(1, 5));
  CHECK(sub.flags[0].weights == std::vector<long>{-1});
  CHECK(sub.flags[1].weights == std::vector<long>{-2});
  CHECK(sub.e == 2);
}

TEST_CASE("rank-1 dual cyclotomic twist scalar") {
  // phi scalar lambda turns into p^{-1}/lambda
  const FilPhiNModule m = rank_one(RankOneData{{2}, 3}, 5);  // lambda = 5^{-3}
  const FilPhiNModule d = cyclotomic_twist(dual(m));
  CHECK(d.phi(0, 0) == Rat(rat_pow(5, -1) / m.phi(0, 0)));
}

TEST_CASE("as_rank_one_data round trip") {
  const RankOneData d{{3, -1}, -2};
  const auto back = as_rank_one_data(rank_one(d, 7));
  REQUIRE(back.has_value());
  CHECK(*back == d);
}

TEST_CASE("five-step filtration closed form on the fixtures") {
  // n = 2: (0, 0, span v1, full, full)
  {
    const FilPhiNModule t = tate_twist(fix_a(), 1);
    const auto fil = frobenius_filtration(t, 0);
    const FiveStep fs = five_step_filtration(t, fil[1]);
    CHECK(fs.dm2 == Subspace::zero(2));
    CHECK(fs.dm1 == Subspace::zero(2));
    CHECK(fs.d0 == fil[1]);
    CHECK(fs.d1 == Subspace::full(2));
    CHECK(fs.d2 == Subspace::full(2));
  }
  // n = 3: (0, Fil_1, Fil_2, full, full)
  {
    const FilPhiNModule t = tate_twist(fix_b(), 2);
    const auto fil = frobenius_filtration(t, 0);
    const FiveStep fs = five_step_filtration(t, fil[2]);
    CHECK(fs.dm1 == fil[1]);
    CHECK(fs.d0 == fil[2]);
    CHECK(fs.d1 == Subspace::full(3));
  }
}

TEST_CASE("five-step filtration rejects non-regular submodules") {
  const FilPhiNModule t = tate_twist(fix_a(), 1);
  // zero is phi- and N-stable but not complementary to the positive steps
  CHECK_THROWS_AS(five_step_filtration(t, Subspace::zero(2)), InputError);
  // the fixed eigenline is phi-stable but not N-stable
  CHECK_THROWS_AS(five_step_filtration(t, eigenspace(t.phi, Rat(1))), InputError);
}

TEST_CASE("exceptional subquotient of fix_a is the twisted module itself") {
  const SubquotientSes ses = exceptional_subquotient(fix_a(), 1);
  const FilPhiNModule& w = ses.whole.mod;
  CHECK(w.n == 2);
  CHECK(w.phi(0, 0) == 1);
  CHECK(w.phi(1, 1) == make_rat(1, 5));
  CHECK(rank_of(w.mono) == 1);
  CHECK(w.flags[0].weights == std::vector<long>{-1, 1});
  // inherited commutation relation
  CHECK(mat_is_zero(Mat(w.mono * w.phi - Rat(w.p) * w.phi * w.mono)));

  // graded ends carry the expected character data
  const auto sub_data = as_rank_one_data(ses.sub.mod);
  const auto quot_data = as_rank_one_data(ses.quot.mod);
  REQUIRE(sub_data.has_value());
  REQUIRE(quot_data.has_value());
  CHECK(*sub_data == RankOneData{{1}, 1});    // a = m - k_1 = 1, b = 1
  CHECK(*quot_data == RankOneData{{-1}, 0});  // a = m - k_2 = -1, b = 0
}

TEST_CASE("exceptional subquotient of fix_b quotients out one eigenline") {
  const SubquotientSes ses = exceptional_subquotient(fix_b(), 2);
  const FilPhiNModule& w = ses.whole.mod;
  CHECK(w.n == 2);
  CHECK(w.flags[0].weights == std::vector<long>{-1, 2});
  CHECK(mat_is_zero(Mat(w.mono * w.phi - Rat(w.p) * w.phi * w.mono)));
  CHECK(as_rank_one_data(ses.sub.mod) == RankOneData{{1}, 1});
  CHECK(as_rank_one_data(ses.quot.mod) == RankOneData{{-2}, 0});
}

TEST_CASE("exceptional ranks") {
  const ExceptionalRanks a = w_ranks(fix_a(), 1);
  CHECK(a.w0 == 0);
  CHECK(a.w1 == 0);
  CHECK(a.m0 == 1);
  CHECK(a.m1 == 1);
  CHECK_FALSE(a.degenerate);

  const ExceptionalRanks b = w_ranks(fix_b(), 2);
  CHECK(b.w1 == 0);
  CHECK_FALSE(b.degenerate);

  const ExceptionalRanks d = w_ranks(fix_degenerate(), 1);
  CHECK(d.w1 == 1);
  CHECK(d.degenerate);
  // decomposition bookkeeping: w0 + w1 + 2 m0 = 2
  CHECK(d.w0 + d.w1 + 2 * d.m0 == 2);
  CHECK(a.w0 + a.w1 + 2 * a.m0 == 2);
}

TEST_CASE("maximal monodromy on validated fixtures") {
  for (const FilPhiNModule& m : {fix_a(), fix_b()}) {
    Mat pw = Mat::Identity(m.n, m.n);
    for (Index i = 0; i + 1 < m.n; ++i) pw = Mat(pw * m.mono);
    CHECK_FALSE(mat_is_zero(pw));      // N^{n-1} != 0
    CHECK(mat_is_zero(Mat(pw * m.mono)));  // N^n = 0
  }
}

TEST_CASE("basis invariance of the admissibility report") {
  Rng rng(23);
  for (int round = 0; round < 8; ++round) {
    const bool use_b = round % 2;
    const FilPhiNModule m = use_b ? fix_b() : fix_a();
    const long mm = use_b ? fix_b_m : fix_a_m;
    const Mat g = testutil::random_invertible(rng, m.n);
    const FilPhiNModule c = conjugate(m, g);
    const AdmissibilityReport r1 = validate(m, mm), r2 = validate(c, mm);
    for (char ax = 'a'; ax <= 'f'; ++ax)
      CHECK(r1.axiom(ax).state == r2.axiom(ax).state);
  }
}

TEST_CASE("subquotient machinery round trips the whole module") {
  const FilPhiNModule m = fix_a();
  const SubquotientModule q =
      subquotient_module(m, Subspace::full(2), Subspace::zero(2));
  CHECK(q.mod == m);
}
