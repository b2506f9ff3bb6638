// Built-in scenarios, addressable as builtin:NAME.
#ifndef NONADDITIVE_BUILTINS_HPP
#define NONADDITIVE_BUILTINS_HPP

#include <string>
#include <utility>
#include <vector>

#include "nonadditive/scenario.hpp"

namespace nonadditive::builtins {

using scenario::json;

struct Builtin {
  std::string name;
  std::string summary;
  const char* text;
};

inline const std::vector<Builtin>& catalog() {
  static const std::vector<Builtin> list{
      {"counterexample", "upper integral of a product exceeding the claimed bound, with the claimed condition holding", R"({
  "version": 1,
  "name": "counterexample",
  "tasks": [{"kind": "counterexample", "name": "two-point counterexample"}]
})"},
      {"dol10_11", "lower-integral subadditivity for bounded sums under a probabilistic-sum boxplus", R"({
  "version": 1,
  "name": "dol10_11",
  "measures": {
    "concave_distortion": {"type": "distortion", "power": 0.5, "probabilities": [0.3, 0.7]}
  },
  "functions": {
    "pqd_f": {"values": [0.2, 0.6], "scale": "unit"},
    "pqd_g": {"values": [0.1, 0.5], "scale": "unit"}
  },
  "operators": {
    "bounded": "bounded_sum",
    "probsum": "probabilistic_sum",
    "unit_max": "max"
  },
  "tasks": [
    {"kind": "measure_property", "name": "submodular", "property": "submodular", "measure": "concave_distortion"},
    {"kind": "relation", "name": "pqd pair", "relation": "pqd", "measure": "concave_distortion", "f": "pqd_f", "g": "pqd_g"},
    {"kind": "theorem", "name": "truncated sum", "theorem": "cdtw1", "measure": "concave_distortion", "f": "pqd_f", "g": "pqd_g",
     "star": "bounded", "combiner": "bounded", "boxplus": "probsum", "circ": "unit_max"}
  ]
})"},
      {"dol12", "lower Sugeno-type subadditivity with sums and max on a possibility measure", R"({
  "version": 1,
  "name": "dol12",
  "measures": {
    "poss12": {"type": "possibility", "density": [0.4, 1.0]}
  },
  "functions": {
    "ext_f": {"values": [1.0, 3.0], "scale": "extended_half_line"},
    "ext_g": {"values": [0.5, 2.0], "scale": "extended_half_line"}
  },
  "operators": {
    "ext_sum": {"name": "sum", "scale": "extended_half_line"},
    "ext_max": {"name": "max", "scale": "extended_half_line"}
  },
  "tasks": [
    {"kind": "theorem", "name": "sum-max subadditivity", "theorem": "cdtw1", "measure": "poss12", "f": "ext_f", "g": "ext_g",
     "star": "ext_sum", "combiner": "ext_sum", "boxplus": "ext_sum", "circ": "ext_max"}
  ]
})"},
      {"harmonic", "harmonic Minkowski inequality through the reciprocal duality", R"({
  "version": 1,
  "name": "harmonic",
  "measures": {
    "harmonic_mu": {"type": "table", "values": [0, 0.5, 0.75, "inf"]}
  },
  "functions": {
    "harm_f": {"values": [1.0, 3.0], "scale": "extended_half_line"},
    "harm_g": {"values": [0.5, 2.0], "scale": "extended_half_line"}
  },
  "operators": {
    "harm_sum": {"name": "sum", "scale": "extended_half_line"}
  },
  "maps": {
    "recip": {"h": "reciprocal"}
  },
  "tasks": [
    {"kind": "relation", "name": "comonotone pair", "relation": "comonotone", "f": "harm_f", "g": "harm_g"},
    {"kind": "theorem", "name": "harmonic Minkowski", "theorem": "dol_colh", "measure": "harmonic_mu", "f": "harm_f", "g": "harm_g",
     "star": "harm_sum", "op": "harm_sum", "h": "recip"}
  ]
})"},
      {"reciprocal_sugeno", "Sugeno-type subadditivity of the reciprocal dual", R"({
  "version": 1,
  "name": "reciprocal_sugeno",
  "measures": {
    "recip_dual": {"type": "table", "values": [0, 4, 2, "inf"]}
  },
  "functions": {
    "rs_f": {"values": [1.0, 0.5], "scale": "extended_half_line"},
    "rs_g": {"values": [2.0, 0.25], "scale": "extended_half_line"}
  },
  "operators": {
    "rs_sum": {"name": "sum", "scale": "extended_half_line"},
    "rs_min": {"name": "min", "scale": "extended_half_line"}
  },
  "maps": {
    "rs_h": {"h": "reciprocal"}
  },
  "tasks": [
    {"kind": "theorem", "name": "reciprocal Sugeno", "theorem": "dol_colh2", "measure": "recip_dual", "f": "rs_f", "g": "rs_g",
     "star": "rs_sum", "op": "rs_min", "boxplus": "rs_sum", "h": "rs_h"}
  ]
})"},
      {"smoke", "one small instance per theorem and check", R"({
  "version": 1,
  "name": "smoke",
  "measures": {
    "sm_poss": {"type": "possibility", "density": [0.5, 1.0]},
    "sm_table": {"type": "table", "values": [0, 0.4, 0.7, 1]},
    "sm_inf": {"type": "possibility", "density": [0.3, 0.5], "infinite_total": true}
  },
  "functions": {
    "sm_f": {"values": [0.25, 0.75], "scale": "unit"},
    "sm_g": {"values": [0.125, 0.5], "scale": "unit"},
    "sm_h": {"values": [0.125, 0.25], "scale": "unit"},
    "sm_x": [0.5, -1.0],
    "sm_y": [1.5, 0.25],
    "sm_up1": {"values": [0.25, 0.5], "scale": "extended_half_line"},
    "sm_up2": {"values": [0.5, 1.0], "scale": "extended_half_line"},
    "sm_up3": {"values": [1.0, 2.0], "scale": "extended_half_line"},
    "sm_m1": [1.0, 1.0],
    "sm_m2": [0.5, 0.5],
    "sm_m3": [0.25, 0.25],
    "sm_m0": [0.0, 0.0]
  },
  "operators": {
    "sm_min": "min",
    "sm_max": "max",
    "sm_prod": "product",
    "sm_ext_min": {"name": "min", "scale": "extended_half_line"},
    "sm_ext_prod": {"name": "product", "scale": "extended_half_line"},
    "sm_pmin": {"name": "power_min", "params": [1, 1]}
  },
  "maps": {
    "sm_one_minus": {"h": "one_minus"}
  },
  "tasks": [
    {"kind": "integral", "name": "sugeno value", "integral": "sugeno", "measure": "sm_poss", "f": "sm_f", "expect": 0.75},
    {"kind": "condition", "name": "daraby for min", "condition": "daraby", "star": "sm_min", "op": "sm_min",
     "domain": {"scale": "unit", "step": 0.125}},
    {"kind": "theorem", "name": "ctw7", "theorem": "ctw7", "measure": "sm_table", "f": "sm_f", "g": "sm_g",
     "star": "sm_min", "combiner": "sm_min", "circ": "sm_prod"},
    {"kind": "theorem", "name": "seminormed", "theorem": "seminormed", "measure": "sm_table", "f": "sm_f", "g": "sm_g",
     "semicopula": "sm_min", "star": "sm_max", "p": 1},
    {"kind": "theorem", "name": "comonotone subadditivity", "theorem": "comonotone_subadditivity", "measure": "sm_table",
     "f": "sm_f", "g": "sm_h", "op": "sm_min"},
    {"kind": "theorem", "name": "tw_subad", "theorem": "tw_subad", "measure": "sm_poss", "f": "sm_x", "g": "sm_y",
     "op": "sm_ext_min", "p": 1, "q": 1, "r": 1},
    {"kind": "theorem", "name": "subShi", "theorem": "subShi", "measure": "sm_poss", "seed": 3, "pairs": 16},
    {"kind": "theorem", "name": "dol_twsub", "theorem": "dol_twsub", "measure": "sm_poss", "seed": 3, "pairs": 16},
    {"kind": "theorem", "name": "boundary", "theorem": "dol_twsub_boundary", "measure": "sm_inf"},
    {"kind": "theorem", "name": "dol13", "theorem": "dol13", "measure": "sm_table", "f": "sm_f", "op": "sm_min", "h": "sm_one_minus"},
    {"kind": "theorem", "name": "cd16", "theorem": "cd16", "measure": "sm_table", "f": "sm_f"},
    {"kind": "metric", "name": "frechet axioms", "metric": "frechet", "measure": "sm_poss", "check": "axioms", "trials": 40, "seed": 5},
    {"kind": "metric", "name": "doltw3", "metric": "d_op_p", "op": "sm_pmin", "p": 1, "measure": "sm_poss", "check": "doltw3",
     "sequence": ["sm_m1", "sm_m2", "sm_m3"], "limit": "sm_m0"},
    {"kind": "metric", "name": "cauchy probe", "metric": "d_op_p", "op": "sm_pmin", "p": 1, "measure": "sm_poss",
     "check": "cauchy_probe", "seed": 5, "terms": 6},
    {"kind": "shilkret_norm", "name": "shilkret norm", "measure": "sm_poss", "trials": 40, "seed": 5},
    {"kind": "convergence", "name": "monotone convergence", "lemma": "monotone", "measure": "sm_poss", "op": "sm_ext_prod",
     "sequence": ["sm_up1", "sm_up2", "sm_up3"], "limit": "sm_up3"},
    {"kind": "fuzz", "name": "subset oracle", "theorem": "subset_oracle", "trials": 25, "seed": 11}
  ]
})"},
  };
  return list;
}

inline std::vector<std::string> names() {
  std::vector<std::string> out;
  for (const auto& b : catalog()) out.push_back(b.name);
  out.push_back("all");
  return out;
}

/// Document for a builtin; "all" merges every builtin into one scenario.
inline json document(const std::string& name) {
  if (name == "all") {
    json doc{{"version", scenario::kSchemaVersion}, {"name", "all"}};
    json tasks = json::array();
    for (const auto& b : catalog()) {
      const auto part = json::parse(b.text);
      for (const char* section : {"measures", "functions", "operators", "maps"}) {
        if (!part.contains(section)) continue;
        for (const auto& [k, v] : part[section].items()) doc[section][k] = v;
      }
      for (auto t : part["tasks"]) {
        t["name"] = b.name + ": " + t.value("name", t["kind"].get<std::string>());
        tasks.push_back(t);
      }
    }
    doc["tasks"] = tasks;
    return doc;
  }
  for (const auto& b : catalog())
    if (b.name == name) return json::parse(b.text);
  std::string known;
  for (const auto& n : names()) known += (known.empty() ? "" : ", ") + n;
  throw scenario::ScenarioError("builtin", "unknown builtin '" + name + "' (" + known + ")");
}

}  // namespace nonadditive::builtins

#endif
