#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "linv/fixtures.hpp"
#include "linv/generator.hpp"
#include "linv/instance_io.hpp"
#include "linv/l_invariants.hpp"

#include <fstream>
#include <sstream>

using namespace linv;
using testutil::Rng;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

InstanceFile one_module(FilPhiNModule mod, long m, std::optional<Rat> expected) {
  InstanceFile f;
  f.hypotheses.declared = true;
  f.hypotheses.gb1 = f.hypotheses.gb2 = f.hypotheses.gb3 = true;
  f.modules.push_back(InstanceModule{std::move(mod), m, std::move(expected)});
  return f;
}

GenSpec fix_a_spec() {
  GenSpec g;
  g.p = 5;
  g.n = 2;
  g.e = 1;
  g.m = 1;
  g.weights = {{0, 2}};
  g.planted_l = make_rat(7, 3);
  g.seed = 0;
  g.identity_frame = true;
  return g;
}

}  // namespace

TEST_CASE("generate reproduces the first fixture in the identity frame") {
  CHECK(generate(fix_a_spec()) == fix_a());
}

TEST_CASE("generation is deterministic in the seed") {
  GenSpec g = fix_a_spec();
  g.n = 4;
  g.weights = {{-2, -1, 0, 3}};
  g.identity_frame = false;
  g.seed = 12345;
  const FilPhiNModule a = generate(g), b = generate(g);
  CHECK(a == b);
  CHECK(write_instance(one_module(a, g.m, g.planted_l)) ==
        write_instance(one_module(b, g.m, g.planted_l)));
  g.seed = 54321;
  CHECK_FALSE(generate(g) == a);
}

TEST_CASE("generated instances validate and return the planted invariant") {
  Rng rng(2026);
  for (int round = 0; round < 40; ++round) {
    const Index n = rng.range(2, 5);
    const Index e = rng.range(1, 2);
    const GenSpec g = testutil::random_spec(rng, n, e);
    const FilPhiNModule m = generate(g);
    CHECK(validate(m, g.m).pass());
    CHECK(fm_invariant(m, g.m) == g.planted_l);
  }
}

TEST_CASE("spec checking") {
  GenSpec g = fix_a_spec();
  g.planted_l = 0;
  CHECK_THROWS_AS(generate(g), InputError);  // zero needs the degenerate flag
  g.degenerate = true;
  const FilPhiNModule m = generate(g);
  CHECK(fm_invariant(m, g.m) == 0);
  CHECK(validate(m, g.m).degenerate());

  GenSpec bad = fix_a_spec();
  bad.weights = {{0, 1}};  // top weight not above m
  CHECK_THROWS_AS(generate(bad), InputError);
  bad = fix_a_spec();
  bad.p = 6;
  CHECK_THROWS_AS(generate(bad), InputError);
}

TEST_CASE("instance files round trip exactly") {
  Rng rng(8);
  for (int round = 0; round < 12; ++round) {
    const GenSpec g = testutil::random_spec(rng, rng.range(2, 4), rng.range(1, 2));
    InstanceFile f = one_module(generate(g), g.m, g.planted_l);
    if (round % 3 == 0) f.hypotheses = DeclaredHypotheses{};
    if (round % 3 == 1) f.modules[0].expected_l_fm.reset();
    const std::string text = write_instance(f);
    CHECK(parse_instance(text) == f);
    CHECK(write_instance(parse_instance(text)) == text);
  }
}

TEST_CASE("fixture files on disk match their constructors byte for byte") {
  const std::string dir = LINV_FIXTURE_DIR;
  CHECK(slurp(dir + "/fix_a.inst") ==
        write_instance(one_module(fix_a(), fix_a_m, make_rat(7, 3))));
  CHECK(slurp(dir + "/fix_b.inst") ==
        write_instance(one_module(fix_b(), fix_b_m, make_rat(-2))));
  CHECK(slurp(dir + "/fix_degenerate.inst") ==
        write_instance(one_module(fix_degenerate(), fix_degenerate_m, Rat(0))));

  const InstanceFile a = read_instance(dir + "/fix_a.inst");
  CHECK(a.modules[0].mod == fix_a());
  CHECK(a.modules[0].m == 1);
  CHECK(a.modules[0].expected_l_fm == make_rat(7, 3));
}

TEST_CASE("parse errors name the offending field") {
  InstanceFile f = one_module(fix_a(), 1, std::nullopt);
  std::string text = write_instance(f);

  {
    std::string bad = text;
    const auto pos = bad.find("\"5\"");
    REQUIRE(pos != std::string::npos);
    bad.replace(pos, 3, "\"5/0\"");
    CHECK_THROWS_WITH_AS(parse_instance(bad), doctest::Contains("denominator"),
                         InputError);
    try {
      parse_instance(bad);
    } catch (const InputError& err) {
      CHECK(std::string(err.what()).find("phi") != std::string::npos);
    }
  }
  {
    std::string bad = text;
    const auto pos = bad.find(kInstanceFormat);
    bad.replace(pos, std::string(kInstanceFormat).size(), "linv-instance/9");
    CHECK_THROWS_WITH_AS(parse_instance(bad), doctest::Contains("format version"),
                         InputError);
  }
  CHECK_THROWS_AS(parse_instance("{not json"), InputError);
  CHECK_THROWS_AS(parse_instance("{\"format\": \"linv-instance/1\"}"), InputError);
}

TEST_CASE("absent hypotheses default to undeclared-false") {
  InstanceFile f = one_module(fix_a(), 1, std::nullopt);
  f.hypotheses = DeclaredHypotheses{};
  const InstanceFile back = parse_instance(write_instance(f));
  CHECK_FALSE(back.hypotheses.declared);
  CHECK_FALSE(back.hypotheses.gb1);
  const AdmissibilityReport rep =
      validate(back.modules[0].mod, back.modules[0].m, back.hypotheses);
  CHECK_FALSE(rep.declared.declared);
  CHECK(rep.pass());
}

TEST_CASE("targeted mutations fail exactly one axiom each") {
  const auto expect_exactly = [](const FilPhiNModule& m, long mm, char which) {
    const AdmissibilityReport rep = validate(m, mm);
    for (char c = 'a'; c <= 'f'; ++c) {
      INFO("axiom ", c, " against mutation targeting ", which);
      if (c == which)
        CHECK(rep.axiom(c).failed());
      else
        CHECK_FALSE(rep.axiom(c).failed());
    }
  };
  expect_exactly(mutate_break_relation(fix_a()), 1, 'a');
  expect_exactly(mutate_break_eigenvalues(fix_a()), 1, 'b');
  expect_exactly(mutate_kill_monodromy(fix_a()), 1, 'c');
  expect_exactly(mutate_break_orthogonality(fix_a(), 1), 1, 'd');
  expect_exactly(mutate_shrink_window(fix_a(), 1), 1, 'e');
  expect_exactly(mutate_plant_zero(fix_a(), 1), 1, 'f');
  // the n = 3 fixture supports the matrix-level mutations as well
  expect_exactly(mutate_break_relation(fix_b()), 2, 'a');
  expect_exactly(mutate_break_eigenvalues(fix_b()), 2, 'b');
  expect_exactly(mutate_kill_monodromy(fix_b()), 2, 'c');
  expect_exactly(mutate_shrink_window(fix_b(), 2), 2, 'e');
}
