#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "linv/rational.hpp"
#include "linv/subspace.hpp"

using namespace linv;
using testutil::Rng;

namespace {

Mat mat2(long a, long b, long c, long d) {
  Mat m(2, 2);
  m << make_rat(a), make_rat(b), make_rat(c), make_rat(d);
  return m;
}

Vec vec2(const Rat& a, const Rat& b) {
  Vec v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("rational parse/format round trip and canonical form") {
  CHECK(rat_to_string(rat_from_string("7/3")) == "7/3");
  CHECK(rat_to_string(rat_from_string("-2")) == "-2");
  CHECK(rat_to_string(rat_from_string("0")) == "0");
  CHECK(rat_to_string(rat_from_string("4/6")) == "2/3");
  CHECK(rat_to_string(rat_from_string("-4/6")) == "-2/3");
  CHECK(rat_from_string("14/6") == make_rat(7, 3));
  CHECK_THROWS_AS(rat_from_string("1/0"), InputError);
  CHECK_THROWS_AS(rat_from_string(""), InputError);
  CHECK_THROWS_AS(rat_from_string("1.5"), InputError);
  CHECK_THROWS_AS(rat_from_string("3/"), InputError);
  CHECK_THROWS_AS(rat_from_string(" 1"), InputError);
  CHECK(rat_pow(5, 0) == 1);
  CHECK(rat_pow(5, 3) == 125);
  CHECK(rat_pow(5, -2) == make_rat(1, 25));
}

TEST_CASE("kernel: identity, zero map, single relation") {
  CHECK(kernel(Mat(Mat::Identity(2, 2))).dim() == 0);

  Subspace k0 = kernel(Mat(Mat::Zero(2, 2)));
  CHECK(k0 == Subspace::full(2));

  // v1 + 2 v2 = 0 has solution line (1, -1/2) after pivot normalization;
  // confirmed by direct substitution below.
  Mat m(1, 2);
  m << make_rat(1), make_rat(2);
  Subspace k = kernel(m);
  REQUIRE(k.dim() == 1);
  CHECK(k.basis()(0, 0) == 1);
  CHECK(k.basis()(0, 1) == make_rat(-1, 2));
  CHECK(Rat(m(0, 0) * k.basis()(0, 0) + m(0, 1) * k.basis()(0, 1)) == 0);
}

TEST_CASE("sum and intersection of coordinate lines") {
  Mat e1(1, 2), e2(1, 2);
  e1 << make_rat(1), make_rat(0);
  e2 << make_rat(0), make_rat(1);
  Subspace u = Subspace::from_rows(e1), v = Subspace::from_rows(e2);
  CHECK(sum(u, v) == Subspace::full(2));
  CHECK(intersect(u, v) == Subspace::zero(2));
}

TEST_CASE("preimage of a line under a nilpotent shift is everything") {
  // N maps v0 -> v1, v1 -> 0: both basis vectors land in span{v1}.
  Mat n = mat2(0, 0, 1, 0);
  Mat e2(1, 2);
  e2 << make_rat(0), make_rat(1);
  CHECK(preimage(n, Subspace::from_rows(e2)) == Subspace::full(2));
}

TEST_CASE("eigenspace on diagonal matrices") {
  Mat d = mat2(5, 0, 0, 1);
  Subspace e5 = eigenspace(d, make_rat(5));
  REQUIRE(e5.dim() == 1);
  CHECK(e5.basis()(0, 0) == 1);
  CHECK(e5.basis()(0, 1) == 0);
  CHECK(eigenspace(d, make_rat(2)).dim() == 0);
  // Frobenius eigenvalue p^{1-1} = 1 picks out the second coordinate line.
  Subspace e1 = eigenspace(d, make_rat(1));
  REQUIRE(e1.dim() == 1);
  CHECK(e1.basis()(0, 0) == 0);
  CHECK(e1.basis()(0, 1) == 1);
}

TEST_CASE("solve_in_span") {
  Mat gens(2, 2);
  gens << make_rat(1), make_rat(0), make_rat(0), make_rat(1);

  auto zero = solve_in_span(Vec(Vec::Zero(2)), gens);
  REQUIRE(zero.has_value());
  CHECK((*zero)(0) == 0);
  CHECK((*zero)(1) == 0);

  auto both = solve_in_span(vec2(make_rat(1), make_rat(1)), gens);
  REQUIRE(both.has_value());
  CHECK((*both)(0) == 1);
  CHECK((*both)(1) == 1);

  // Construct target = (7/3) g1 - g2 from independent generators, then
  // recover the coefficients.
  Mat g(2, 3);
  g << make_rat(1), make_rat(2), make_rat(0), make_rat(0), make_rat(1), make_rat(4);
  Vec target = Vec(g.transpose() * vec2(make_rat(7, 3), make_rat(-1)));
  auto c = solve_in_span(target, g);
  REQUIRE(c.has_value());
  CHECK((*c)(0) == make_rat(7, 3));
  CHECK((*c)(1) == make_rat(-1));

  // Outside the span.
  Mat one(1, 2);
  one << make_rat(1), make_rat(0);
  CHECK_FALSE(solve_in_span(vec2(make_rat(0), make_rat(1)), one).has_value());
}

TEST_CASE("inverse_of") {
  Mat a = mat2(1, 2, 3, 4);
  auto inv = inverse_of(a);
  REQUIRE(inv.has_value());
  CHECK(mats_equal(Mat(a * *inv), Mat(Mat::Identity(2, 2))));
  CHECK_FALSE(inverse_of(mat2(1, 2, 2, 4)).has_value());
}

TEST_CASE("dimension identities on random subspaces") {
  Rng rng(42);
  for (int round = 0; round < 60; ++round) {
    const Index n = rng.range(1, 6);
    Subspace u = testutil::random_subspace(rng, n, rng.range(0, n));
    Subspace v = testutil::random_subspace(rng, n, rng.range(0, n));
    CHECK(u.dim() + v.dim() == sum(u, v).dim() + intersect(u, v).dim());
    CHECK(contains(sum(u, v), u));
    CHECK(contains(u, intersect(u, v)));
  }
}

TEST_CASE("rank-nullity and preimage of image on random matrices") {
  Rng rng(7);
  for (int round = 0; round < 60; ++round) {
    const Index rows = rng.range(1, 5), cols = rng.range(1, 5);
    Mat m = testutil::random_mat(rng, rows, cols);
    CHECK(kernel(m).dim() + image(m).dim() == cols);
    CHECK(preimage(m, image(m)) == Subspace::full(cols));
  }
}

TEST_CASE("canonical form is idempotent and quotient maps behave") {
  Rng rng(99);
  for (int round = 0; round < 40; ++round) {
    const Index n = rng.range(1, 6);
    Subspace u = testutil::random_subspace(rng, n, rng.range(0, n));
    CHECK(Subspace::from_rows(u.basis()) == u);

    Mat q = quotient_map(u);
    CHECK(kernel(q) == u);
    Mat s = quotient_section(u);
    CHECK(mats_equal(Mat(q * s), Mat(Mat::Identity(n - u.dim(), n - u.dim()))));
  }
}

TEST_CASE("extend_basis produces deterministic coset representatives") {
  Rng rng(5);
  for (int round = 0; round < 40; ++round) {
    const Index n = rng.range(1, 6);
    const Index inner_dim = rng.range(0, n);
    Subspace outer = Subspace::full(n);
    Subspace inner = testutil::random_subspace(rng, n, inner_dim);
    Mat reps = extend_basis(inner, outer.basis());
    CHECK(reps.rows() == n - inner_dim);
    Mat stacked(inner.dim() + reps.rows(), n);
    stacked.topRows(inner.dim()) = inner.basis();
    stacked.bottomRows(reps.rows()) = reps;
    CHECK(rank_of(stacked) == n);
  }
}
