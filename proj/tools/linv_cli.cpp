// Command-line front end: validate instances, compute each invariant,
// compare the two paths, generate instances, and inspect cohomology.
//
// Exit codes: 0 success (and verdict equal), 1 verdict unequal, 2 input
// error, 3 internal assertion failure.
#include "linv/admissibility.hpp"
#include "linv/complexes.hpp"
#include "linv/generator.hpp"
#include "linv/instance_io.hpp"
#include "linv/l_invariants.hpp"
#include "linv/reports.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace linv;

struct LoadedModule {
  InstanceModule im;
  DeclaredHypotheses hypotheses;
};

std::vector<LoadedModule> load_all(const std::vector<std::string>& paths,
                                   std::optional<long> twist_override) {
  std::vector<LoadedModule> out;
  for (const std::string& path : paths) {
    const InstanceFile f = read_instance(path);
    for (const InstanceModule& im : f.modules) {
      LoadedModule lm{im, f.hypotheses};
      if (twist_override) lm.im.m = *twist_override;
      out.push_back(std::move(lm));
    }
  }
  if (out.empty()) throw InputError("no modules in the given files");
  return out;
}

void require_computable(const LoadedModule& lm, std::size_t idx) {
  const AdmissibilityReport rep = validate(lm.im.mod, lm.im.m, lm.hypotheses);
  if (rep.computable()) return;
  std::string axioms;
  for (char c = 'a'; c <= 'f'; ++c)
    if (rep.axiom(c).failed()) axioms += c;
  throw InputError("module " + std::to_string(idx) + " fails axiom(s) " + axioms +
                   ": " + rep.axiom(axioms[0]).witness);
}

std::vector<std::vector<long>> parse_weights(const std::string& text) {
  std::vector<std::vector<long>> out;
  std::string chunk;
  std::vector<long> current;
  auto push_number = [&]() {
    if (chunk.empty()) throw InputError("weights: empty entry");
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(chunk, &used);
    } catch (const std::exception&) {
      throw InputError("weights: bad integer \"" + chunk + "\"");
    }
    if (used != chunk.size()) throw InputError("weights: bad integer \"" + chunk + "\"");
    current.push_back(v);
    chunk.clear();
  };
  for (char ch : text) {
    if (ch == ',') {
      push_number();
    } else if (ch == ';') {
      push_number();
      out.push_back(std::move(current));
      current.clear();
    } else {
      chunk += ch;
    }
  }
  push_number();
  out.push_back(std::move(current));
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Exact two-path computation of L-invariants of filtered (phi,N)-modules"};
  app.require_subcommand(1);
  int exit_code = 0;

  std::vector<std::string> paths;
  std::string format = "text";
  std::optional<long> twist;

  auto add_common = [&](CLI::App* cmd, bool with_files = true) {
    if (with_files)
      cmd->add_option("files", paths, "instance files")->required()->expected(-1);
    cmd->add_option("--format", format, "output format: text|structured")
        ->check(CLI::IsMember({"text", "structured"}));
    cmd->add_option("--twist", twist, "override the twist integer m of every module");
  };

  // validate ---------------------------------------------------------------
  CLI::App* cmd_validate = app.add_subcommand("validate", "check admissibility axioms");
  add_common(cmd_validate);
  cmd_validate->callback([&] {
    const auto mods = load_all(paths, twist);
    std::vector<ValidationView> views;
    bool all_pass = true;
    for (const LoadedModule& lm : mods) {
      ValidationView v;
      v.p = lm.im.mod.p;
      v.n = lm.im.mod.n;
      v.e = lm.im.mod.e;
      v.rep = validate(lm.im.mod, lm.im.m, lm.hypotheses);
      all_pass = all_pass && v.rep.pass();
      views.push_back(std::move(v));
    }
    std::cout << render_validation(views, report_format_from_string(format));
    exit_code = all_pass ? 0 : 2;
  });

  // fm ----------------------------------------------------------------------
  Index op_index = 0;
  CLI::App* cmd_fm = app.add_subcommand("fm", "flag-side invariant and operators");
  add_common(cmd_fm);
  cmd_fm->add_option("--operator", op_index, "report only the i-th operator");
  cmd_fm->callback([&] {
    const auto mods = load_all(paths, twist);
    std::vector<FmView> views;
    for (std::size_t i = 0; i < mods.size(); ++i) {
      require_computable(mods[i], i);
      const auto& [mod, mm, expected] = mods[i].im;
      FmView v;
      v.p = mod.p;
      v.m = mm;
      v.l_fm = fm_invariant(mod, mm);
      v.degenerate = (v.l_fm == 0);
      v.expected = expected;
      if (op_index > 0) {
        v.ops.emplace_back(op_index, fm_operator(mod, mm, op_index));
      } else {
        for (Index op = 1; op <= mod.n - 1; ++op)
          v.ops.emplace_back(op, fm_operator(mod, mm, op));
      }
      views.push_back(std::move(v));
    }
    std::cout << render_fm(views, report_format_from_string(format));
  });

  // gb ----------------------------------------------------------------------
  CLI::App* cmd_gb = app.add_subcommand("gb", "homological invariant and global product");
  add_common(cmd_gb);
  cmd_gb->callback([&] {
    const auto mods = load_all(paths, twist);
    std::vector<GbView> views;
    Rat global(1);
    for (std::size_t i = 0; i < mods.size(); ++i) {
      require_computable(mods[i], i);
      GbView v;
      v.p = mods[i].im.mod.p;
      v.m = mods[i].im.m;
      v.l_w = gb_local(mods[i].im.mod, mods[i].im.m);
      global *= v.l_w;
      views.push_back(std::move(v));
    }
    std::cout << render_gb(views, global, report_format_from_string(format));
  });

  // compare -----------------------------------------------------------------
  CLI::App* cmd_compare = app.add_subcommand("compare", "two-path comparison verdict");
  add_common(cmd_compare);
  cmd_compare->callback([&] {
    const auto mods = load_all(paths, twist);
    std::vector<std::pair<FilPhiNModule, long>> inputs;
    std::vector<std::optional<Rat>> expected;
    for (const LoadedModule& lm : mods) {
      inputs.emplace_back(lm.im.mod, lm.im.m);
      expected.push_back(lm.im.expected_l_fm);
    }
    const LReport rep = compare(inputs, expected);
    std::cout << render_compare(rep, report_format_from_string(format));
    exit_code = rep.equal ? 0 : 1;
  });

  // generate ------------------------------------------------------------------
  GenSpec spec;
  std::string weights_text, planted_text = "1", out_path;
  CLI::App* cmd_gen = app.add_subcommand("generate", "emit a seeded admissible instance");
  cmd_gen->add_option("--p", spec.p, "prime")->required();
  cmd_gen->add_option("--n", spec.n, "dimension")->required();
  cmd_gen->add_option("--e", spec.e, "number of embeddings")->required();
  cmd_gen->add_option("--m", spec.m, "twist integer")->required();
  cmd_gen->add_option("--weights", weights_text,
                      "weights, comma-separated, embeddings joined by ';'")
      ->required();
  cmd_gen->add_option("--L", planted_text, "planted invariant (fraction)")->required();
  cmd_gen->add_option("--seed", spec.seed, "64-bit seed");
  cmd_gen->add_flag("--degenerate", spec.degenerate, "allow a zero invariant");
  cmd_gen->add_flag("--identity-frame", spec.identity_frame, "skip the base change");
  cmd_gen->add_option("--out", out_path, "output instance file")->required();
  cmd_gen->callback([&] {
    spec.weights = parse_weights(weights_text);
    if (static_cast<Index>(spec.weights.size()) != spec.e)
      throw InputError("generate: --weights must list one group per embedding");
    spec.planted_l = rat_from_string(planted_text);
    InstanceFile f;
    f.hypotheses.declared = true;
    f.hypotheses.gb1 = f.hypotheses.gb2 = f.hypotheses.gb3 = true;
    f.modules.push_back(InstanceModule{generate(spec), spec.m, spec.planted_l});
    write_instance_file(out_path, f);
    std::cout << "wrote " << out_path << "\n";
  });

  // cohomology ----------------------------------------------------------------
  std::string complex_kind = "st";
  int degree = 1;
  CLI::App* cmd_coh = app.add_subcommand("cohomology", "dimensions and representatives");
  add_common(cmd_coh);
  cmd_coh->add_option("--complex", complex_kind, "st|cris")
      ->check(CLI::IsMember({"st", "cris"}));
  cmd_coh->add_option("--degree", degree, "cohomological degree");
  cmd_coh->callback([&] {
    const auto mods = load_all(paths, twist);
    std::vector<CohView> views;
    for (const LoadedModule& lm : mods) {
      CohView v;
      v.p = lm.im.mod.p;
      v.m = lm.im.m;
      v.complex = complex_kind;
      v.degree = degree;
      if (complex_kind == "st") {
        const auto [dim, classes] = h(build_st(lm.im.mod), degree);
        v.dim = dim;
        for (const CohClass& c : classes) v.reps.push_back(c.rep);
      } else {
        const auto [dim, classes] = h(build_cris(lm.im.mod), degree);
        v.dim = dim;
        for (const CohClass& c : classes) v.reps.push_back(c.rep);
      }
      views.push_back(std::move(v));
    }
    std::cout << render_cohomology(views, report_format_from_string(format));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const linv::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const linv::InternalError& e) {
    std::cerr << "internal assertion: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
