// Rendering of computation results in the two output formats.
//
// Structured output is JSON under the format tag "linv-report/1" and is a
// total function of the inputs: no timestamps, no environment, stable key
// order.  The text format reports exactly the same numeric values.
#pragma once

#include "linv/admissibility.hpp"
#include "linv/l_invariants.hpp"
#include "linv/rational.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace linv {

inline constexpr const char* kReportFormat = "linv-report/1";

enum class ReportFormat { Text, Structured };

inline ReportFormat report_format_from_string(const std::string& s) {
  if (s == "text") return ReportFormat::Text;
  if (s == "structured") return ReportFormat::Structured;
  throw InputError("unknown report format \"" + s + "\" (expected text|structured)");
}

namespace detail {

inline nlohmann::json rat_json(const Rat& r) { return rat_to_string(r); }

inline nlohmann::json vec_json(const Vec& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(rat_to_string(v(i)));
  return a;
}

inline std::string dump(nlohmann::json j) { return j.dump(2) + "\n"; }

inline const char* axiom_state_name(AxiomState s) {
  switch (s) {
    case AxiomState::Pass: return "pass";
    case AxiomState::Fail: return "fail";
    default: return "skipped";
  }
}

}  // namespace detail

// --------------------------------------------------------------------- compare

inline nlohmann::json compare_json(const LReport& rep) {
  nlohmann::json root;
  root["format"] = kReportFormat;
  root["command"] = "compare";
  nlohmann::json primes = nlohmann::json::array();
  for (const PrimeReport& pr : rep.primes) {
    nlohmann::json jp;
    jp["p"] = pr.p;
    jp["m"] = pr.m;
    jp["n"] = pr.n;
    jp["e"] = pr.e;
    jp["L_FM"] = detail::rat_json(pr.l_fm);
    jp["L_W"] = detail::rat_json(pr.l_w);
    nlohmann::json ops = nlohmann::json::array();
    for (const Rat& r : pr.l_ops) ops.push_back(detail::rat_json(r));
    jp["L_ops"] = std::move(ops);
    jp["degenerate"] = pr.degenerate;
    if (pr.expected_l_fm) jp["expected_L_FM"] = detail::rat_json(*pr.expected_l_fm);
    primes.push_back(std::move(jp));
  }
  root["primes"] = std::move(primes);
  root["L_GB"] = detail::rat_json(rep.l_gb);
  root["minus_L_FM_product"] = detail::rat_json(rep.minus_fm_product);
  root["verdict"] = rep.equal ? "equal" : "unequal";
  root["degenerate"] = rep.degenerate;
  root["notes"] = rep.notes;
  return root;
}

inline std::string render_compare(const LReport& rep, ReportFormat fmt) {
  if (fmt == ReportFormat::Structured) return detail::dump(compare_json(rep));
  std::string out;
  for (const PrimeReport& pr : rep.primes) {
    out += "prime p=" + std::to_string(pr.p) + " (n=" + std::to_string(pr.n) +
           ", e=" + std::to_string(pr.e) + ", m=" + std::to_string(pr.m) + ")\n";
    out += "  L_FM = " + rat_to_string(pr.l_fm) + "\n";
    for (std::size_t i = 0; i < pr.l_ops.size(); ++i)
      out += "  L^(" + std::to_string(i + 1) + ") = " + rat_to_string(pr.l_ops[i]) + "\n";
    out += "  L(W) = " + rat_to_string(pr.l_w) + "\n";
    if (pr.expected_l_fm)
      out += "  expected L_FM = " + rat_to_string(*pr.expected_l_fm) + "\n";
    if (pr.degenerate) out += "  degenerate: planted invariant is zero\n";
  }
  out += "L_GB          = " + rat_to_string(rep.l_gb) + "\n";
  out += "prod(-L_FM)   = " + rat_to_string(rep.minus_fm_product) + "\n";
  out += std::string("verdict: ") + (rep.equal ? "equal" : "unequal") + "\n";
  return out;
}

// -------------------------------------------------------------------- validate

struct ValidationView {
  long p = 0;
  Index n = 0, e = 0;
  AdmissibilityReport rep;
};

inline nlohmann::json validation_json(const std::vector<ValidationView>& views) {
  nlohmann::json root;
  root["format"] = kReportFormat;
  root["command"] = "validate";
  nlohmann::json mods = nlohmann::json::array();
  for (const ValidationView& v : views) {
    nlohmann::json jm;
    jm["p"] = v.p;
    jm["n"] = v.n;
    jm["e"] = v.e;
    jm["m"] = v.rep.m;
    nlohmann::json ax;
    for (char c = 'a'; c <= 'f'; ++c) {
      nlohmann::json ja;
      ja["state"] = detail::axiom_state_name(v.rep.axiom(c).state);
      if (v.rep.axiom(c).failed()) ja["witness"] = v.rep.axiom(c).witness;
      ax[std::string(1, c)] = std::move(ja);
    }
    jm["axioms"] = std::move(ax);
    jm["pass"] = v.rep.pass();
    jm["degenerate"] = v.rep.degenerate();
    jm["hypotheses_declared"] = v.rep.declared.declared;
    if (v.rep.declared.declared) {
      jm["hypotheses"] = {{"GB1", v.rep.declared.gb1},
                          {"GB2", v.rep.declared.gb2},
                          {"GB3", v.rep.declared.gb3}};
    }
    mods.push_back(std::move(jm));
  }
  root["modules"] = std::move(mods);
  return root;
}

inline std::string render_validation(const std::vector<ValidationView>& views,
                                     ReportFormat fmt) {
  if (fmt == ReportFormat::Structured) return detail::dump(validation_json(views));
  std::string out;
  for (const ValidationView& v : views) {
    out += "module p=" + std::to_string(v.p) + " (n=" + std::to_string(v.n) +
           ", e=" + std::to_string(v.e) + ", m=" + std::to_string(v.rep.m) + ")\n";
    for (char c = 'a'; c <= 'f'; ++c) {
      out += std::string("  (") + c + ") " +
             detail::axiom_state_name(v.rep.axiom(c).state);
      if (v.rep.axiom(c).failed()) out += ": " + v.rep.axiom(c).witness;
      out += "\n";
    }
    out += std::string("  hypotheses: ") +
           (v.rep.declared.declared ? "declared" : "undeclared") + "\n";
    if (v.rep.degenerate()) out += "  degenerate: planted invariant is zero\n";
    out += std::string("  result: ") + (v.rep.pass() ? "pass" : "fail") + "\n";
  }
  return out;
}

// ------------------------------------------------------------------------- fm

struct FmView {
  long p = 0;
  long m = 0;
  Rat l_fm;
  std::vector<std::pair<Index, Rat>> ops;  // (i, L^(i))
  bool degenerate = false;
  std::optional<Rat> expected;
};

inline nlohmann::json fm_json(const std::vector<FmView>& views) {
  nlohmann::json root;
  root["format"] = kReportFormat;
  root["command"] = "fm";
  nlohmann::json mods = nlohmann::json::array();
  for (const FmView& v : views) {
    nlohmann::json jm;
    jm["p"] = v.p;
    jm["m"] = v.m;
    jm["L_FM"] = detail::rat_json(v.l_fm);
    nlohmann::json ops;
    for (const auto& [i, r] : v.ops) ops[std::to_string(i)] = detail::rat_json(r);
    jm["L_ops"] = std::move(ops);
    jm["degenerate"] = v.degenerate;
    if (v.expected) {
      jm["expected_L_FM"] = detail::rat_json(*v.expected);
      jm["matches_expected"] = (*v.expected == v.l_fm);
    }
    mods.push_back(std::move(jm));
  }
  root["modules"] = std::move(mods);
  return root;
}

inline std::string render_fm(const std::vector<FmView>& views, ReportFormat fmt) {
  if (fmt == ReportFormat::Structured) return detail::dump(fm_json(views));
  std::string out;
  for (const FmView& v : views) {
    out += "prime p=" + std::to_string(v.p) + " (m=" + std::to_string(v.m) + ")\n";
    out += "  L_FM = " + rat_to_string(v.l_fm) + "\n";
    for (const auto& [i, r] : v.ops)
      out += "  L^(" + std::to_string(i) + ") = " + rat_to_string(r) + "\n";
    if (v.expected)
      out += "  expected L_FM = " + rat_to_string(*v.expected) +
             (*v.expected == v.l_fm ? " (match)" : " (MISMATCH)") + "\n";
    if (v.degenerate) out += "  degenerate: planted invariant is zero\n";
  }
  return out;
}

// ------------------------------------------------------------------------- gb

struct GbView {
  long p = 0;
  long m = 0;
  Rat l_w;
};

inline nlohmann::json gb_json(const std::vector<GbView>& views, const Rat& global) {
  nlohmann::json root;
  root["format"] = kReportFormat;
  root["command"] = "gb";
  nlohmann::json mods = nlohmann::json::array();
  for (const GbView& v : views) {
    nlohmann::json jm;
    jm["p"] = v.p;
    jm["m"] = v.m;
    jm["L_W"] = detail::rat_json(v.l_w);
    mods.push_back(std::move(jm));
  }
  root["primes"] = std::move(mods);
  root["L_GB"] = detail::rat_json(global);
  return root;
}

inline std::string render_gb(const std::vector<GbView>& views, const Rat& global,
                             ReportFormat fmt) {
  if (fmt == ReportFormat::Structured) return detail::dump(gb_json(views, global));
  std::string out;
  for (const GbView& v : views)
    out += "prime p=" + std::to_string(v.p) + " (m=" + std::to_string(v.m) +
           "): L(W) = " + rat_to_string(v.l_w) + "\n";
  out += "L_GB = " + rat_to_string(global) + "\n";
  return out;
}

// ------------------------------------------------------------------ cohomology

struct CohView {
  long p = 0;
  long m = 0;
  std::string complex;  // "st" or "cris"
  int degree = 0;
  Index dim = 0;
  std::vector<Vec> reps;
};

inline nlohmann::json cohomology_json(const std::vector<CohView>& views) {
  nlohmann::json root;
  root["format"] = kReportFormat;
  root["command"] = "cohomology";
  nlohmann::json mods = nlohmann::json::array();
  for (const CohView& v : views) {
    nlohmann::json jm;
    jm["p"] = v.p;
    jm["m"] = v.m;
    jm["complex"] = v.complex;
    jm["degree"] = v.degree;
    jm["dimension"] = v.dim;
    nlohmann::json reps = nlohmann::json::array();
    for (const Vec& r : v.reps) reps.push_back(detail::vec_json(r));
    jm["representatives"] = std::move(reps);
    mods.push_back(std::move(jm));
  }
  root["modules"] = std::move(mods);
  return root;
}

inline std::string render_cohomology(const std::vector<CohView>& views, ReportFormat fmt) {
  if (fmt == ReportFormat::Structured) return detail::dump(cohomology_json(views));
  std::string out;
  for (const CohView& v : views) {
    out += "module p=" + std::to_string(v.p) + " (m=" + std::to_string(v.m) +
           "): dim H^" + std::to_string(v.degree) + "(" + v.complex +
           ") = " + std::to_string(v.dim) + "\n";
    for (const Vec& r : v.reps) out += "  " + vec_to_string(r) + "\n";
  }
  return out;
}

}  // namespace linv
