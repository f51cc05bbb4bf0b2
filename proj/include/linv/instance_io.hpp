// Instance interchange files: JSON with exact fraction strings.
//
// Schema (format "linv-instance/1"):
//   {
//     "format": "linv-instance/1",
//     "hypotheses": {"GB1": bool, "GB2": bool, "GB3": bool},   // optional
//     "modules": [
//       {
//         "p": 5, "n": 2, "e": 1, "m": 1, "twist": 0,
//         "phi":  [["5","0"],["0","1"]],          // row-major fractions
//         "mono": [["0","0"],["1","0"]],
//         "flags": [
//           {"weights": [0, 2],
//            "steps": [[basis vectors of step 0], ..., []]}
//         ],
//         "expected_L_FM": "7/3"                  // optional
//       }
//     ]
//   }
// Step i of a flag lists n-i basis row vectors; they are canonicalized on
// read, so write(read(x)) is byte-stable and read(write(x)) = x exactly.
#pragma once

#include "linv/admissibility.hpp"
#include "linv/phin_module.hpp"
#include "linv/rational.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace linv {

inline constexpr const char* kInstanceFormat = "linv-instance/1";

struct InstanceModule {
  FilPhiNModule mod;
  long m = 0;
  std::optional<Rat> expected_l_fm;

  bool operator==(const InstanceModule& o) const {
    return mod == o.mod && m == o.m && expected_l_fm == o.expected_l_fm;
  }
};

struct InstanceFile {
  DeclaredHypotheses hypotheses;
  std::vector<InstanceModule> modules;

  bool operator==(const InstanceFile& o) const {
    return hypotheses.declared == o.hypotheses.declared &&
           hypotheses.gb1 == o.hypotheses.gb1 && hypotheses.gb2 == o.hypotheses.gb2 &&
           hypotheses.gb3 == o.hypotheses.gb3 && modules == o.modules;
  }
};

namespace detail {

using nlohmann::json;

inline const json& field(const json& j, const std::string& key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) throw InputError(path + ": missing field \"" + key + "\"");
  return *it;
}

inline long int_field(const json& j, const std::string& key, const std::string& path) {
  const json& v = field(j, key, path);
  if (!v.is_number_integer())
    throw InputError(path + "." + key + ": expected an integer");
  return v.get<long>();
}

inline Rat rat_field(const json& v, const std::string& path) {
  if (!v.is_string()) throw InputError(path + ": expected a fraction string");
  try {
    return rat_from_string(v.get<std::string>());
  } catch (const InputError& err) {
    throw InputError(path + ": " + err.what());
  }
}

inline Mat mat_field(const json& v, Index rows, Index cols, const std::string& path) {
  if (!v.is_array() || static_cast<Index>(v.size()) != rows)
    throw InputError(path + ": expected " + std::to_string(rows) + " rows");
  Mat m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = v[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      throw InputError(path + "[" + std::to_string(i) + "]: expected " +
                       std::to_string(cols) + " entries");
    for (Index jx = 0; jx < cols; ++jx)
      m(i, jx) = rat_field(row[static_cast<std::size_t>(jx)],
                           path + "[" + std::to_string(i) + "][" + std::to_string(jx) + "]");
  }
  return m;
}

inline json mat_to_json(const Mat& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(rat_to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

inline std::string write_instance(const InstanceFile& f) {
  using nlohmann::json;
  json root;
  root["format"] = kInstanceFormat;
  if (f.hypotheses.declared) {
    root["hypotheses"] = {{"GB1", f.hypotheses.gb1},
                          {"GB2", f.hypotheses.gb2},
                          {"GB3", f.hypotheses.gb3}};
  }
  json mods = json::array();
  for (const InstanceModule& im : f.modules) {
    json jm;
    jm["p"] = im.mod.p;
    jm["n"] = im.mod.n;
    jm["e"] = im.mod.e;
    jm["m"] = im.m;
    jm["twist"] = im.mod.twist;
    jm["phi"] = detail::mat_to_json(im.mod.phi);
    jm["mono"] = detail::mat_to_json(im.mod.mono);
    json flags = json::array();
    for (const WeightedFlag& fl : im.mod.flags) {
      json jf;
      jf["weights"] = fl.weights;
      json steps = json::array();
      for (const Subspace& s : fl.steps) steps.push_back(detail::mat_to_json(s.basis()));
      jf["steps"] = std::move(steps);
      flags.push_back(std::move(jf));
    }
    jm["flags"] = std::move(flags);
    if (im.expected_l_fm) jm["expected_L_FM"] = rat_to_string(*im.expected_l_fm);
    mods.push_back(std::move(jm));
  }
  root["modules"] = std::move(mods);
  return root.dump(2) + "\n";
}

inline InstanceFile parse_instance(const std::string& text) {
  using nlohmann::json;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& err) {
    throw InputError(std::string("instance file: ") + err.what());
  }
  if (!root.is_object()) throw InputError("instance file: top level must be an object");

  const json& fmt = detail::field(root, "format", "instance");
  if (!fmt.is_string() || fmt.get<std::string>() != kInstanceFormat)
    throw InputError("instance file: unsupported format version \"" +
                     (fmt.is_string() ? fmt.get<std::string>() : std::string("?")) +
                     "\" (expected " + std::string(kInstanceFormat) + ")");

  InstanceFile out;
  if (root.contains("hypotheses")) {
    const json& h = root["hypotheses"];
    if (!h.is_object()) throw InputError("hypotheses: expected an object");
    out.hypotheses.declared = true;
    out.hypotheses.gb1 = h.value("GB1", false);
    out.hypotheses.gb2 = h.value("GB2", false);
    out.hypotheses.gb3 = h.value("GB3", false);
  }

  const json& mods = detail::field(root, "modules", "instance");
  if (!mods.is_array() || mods.empty())
    throw InputError("modules: expected a nonempty array");
  for (std::size_t idx = 0; idx < mods.size(); ++idx) {
    const std::string path = "modules[" + std::to_string(idx) + "]";
    const json& jm = mods[idx];
    if (!jm.is_object()) throw InputError(path + ": expected an object");
    InstanceModule im;
    im.mod.p = detail::int_field(jm, "p", path);
    im.mod.n = detail::int_field(jm, "n", path);
    im.mod.e = detail::int_field(jm, "e", path);
    im.m = detail::int_field(jm, "m", path);
    im.mod.twist = jm.contains("twist") ? detail::int_field(jm, "twist", path) : 0;
    if (im.mod.n < 1 || im.mod.n > 64) throw InputError(path + ".n: out of range");
    if (im.mod.e < 1 || im.mod.e > 64) throw InputError(path + ".e: out of range");
    im.mod.phi = detail::mat_field(detail::field(jm, "phi", path), im.mod.n, im.mod.n,
                                   path + ".phi");
    im.mod.mono = detail::mat_field(detail::field(jm, "mono", path), im.mod.n, im.mod.n,
                                    path + ".mono");
    const json& flags = detail::field(jm, "flags", path);
    if (!flags.is_array() || static_cast<Index>(flags.size()) != im.mod.e)
      throw InputError(path + ".flags: expected e entries");
    for (std::size_t s = 0; s < flags.size(); ++s) {
      const std::string fpath = path + ".flags[" + std::to_string(s) + "]";
      const json& jf = flags[s];
      WeightedFlag fl;
      const json& jw = detail::field(jf, "weights", fpath);
      if (!jw.is_array() || static_cast<Index>(jw.size()) != im.mod.n)
        throw InputError(fpath + ".weights: expected n integers");
      for (const auto& w : jw) {
        if (!w.is_number_integer()) throw InputError(fpath + ".weights: expected integers");
        fl.weights.push_back(w.get<long>());
      }
      const json& js = detail::field(jf, "steps", fpath);
      if (!js.is_array() || static_cast<Index>(js.size()) != im.mod.n + 1)
        throw InputError(fpath + ".steps: expected n+1 step bases");
      for (Index i = 0; i <= im.mod.n; ++i) {
        const Mat rows = detail::mat_field(js[static_cast<std::size_t>(i)], im.mod.n - i,
                                           im.mod.n,
                                           fpath + ".steps[" + std::to_string(i) + "]");
        fl.steps.push_back(Subspace::from_rows(rows));
      }
      im.mod.flags.push_back(std::move(fl));
    }
    if (jm.contains("expected_L_FM"))
      im.expected_l_fm = detail::rat_field(jm["expected_L_FM"], path + ".expected_L_FM");
    try {
      check_shape(im.mod);
    } catch (const InputError& err) {
      throw InputError(path + ": " + err.what());
    }
    out.modules.push_back(std::move(im));
  }
  return out;
}

inline InstanceFile read_instance(const std::string& file_path) {
  std::ifstream in(file_path, std::ios::binary);
  if (!in) throw InputError("cannot open instance file: " + file_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_instance(buf.str());
  } catch (const InputError& err) {
    throw InputError(file_path + ": " + err.what());
  }
}

inline void write_instance_file(const std::string& file_path, const InstanceFile& f) {
  std::ofstream out(file_path, std::ios::binary);
  if (!out) throw InputError("cannot write instance file: " + file_path);
  out << write_instance(f);
}

}  // namespace linv
