// Scenario documents (schema v1) and run reports.
#ifndef NONADDITIVE_SCENARIO_HPP
#define NONADDITIVE_SCENARIO_HPP

#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "nonadditive/campaigns.hpp"

namespace nonadditive::scenario {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Malformed or inconsistent scenario input; `field` is a dotted path into the document.
class ScenarioError : public std::invalid_argument {
 public:
  ScenarioError(std::string field, const std::string& what) : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// ---------------------------------------------------------------------------
// JSON helpers
// ---------------------------------------------------------------------------

/// Numbers for reports; infinities and NaN become strings.
inline json num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}
inline json num(XReal x) { return num(x.value()); }

inline json nums(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

inline json witness_json(const Witness& w) {
  json sets = json::array();
  for (Mask m : w.sets) sets.push_back(mask_to_string(m));
  return json{{"sets", sets}, {"values", nums(w.values)}, {"detail", w.detail}};
}

namespace detail {

inline std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
inline std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

inline const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ScenarioError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ScenarioError(join(path, key), "missing required field");
  return *it;
}

inline const json* optional(const json& obj, const std::string& key) {
  if (!obj.is_object()) return nullptr;
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

/// A number, or the token "inf".
inline double number(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
  }
  throw ScenarioError(path, "expected a number or \"inf\", got " + j.dump());
}

inline std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) throw ScenarioError(path, "expected a string, got " + j.dump());
  return j.get<std::string>();
}

inline bool flag(const json& j, const std::string& path) {
  if (!j.is_boolean()) throw ScenarioError(path, "expected true or false, got " + j.dump());
  return j.get<bool>();
}

inline std::uint64_t count(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw ScenarioError(path, "expected a non-negative integer, got " + j.dump());
  return j.get<std::uint64_t>();
}

inline std::vector<double> numbers(const json& j, const std::string& path) {
  if (!j.is_array()) throw ScenarioError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], at(path, i)));
  return out;
}

/// Runs `make`, reporting any library exception against `path`.
template <typename F>
auto guarded(const std::string& path, F&& make) -> decltype(make()) {
  try {
    return make();
  } catch (const ScenarioError&) {
    throw;
  } catch (const std::exception& e) {
    throw ScenarioError(path, e.what());
  }
}

inline ValueScale scale_of(const json& j, const std::string& path) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "unit") return ValueScale::unit();
    if (s == "half_line") return ValueScale::half_line();
    if (s == "extended_half_line") return ValueScale::extended_half_line();
    throw ScenarioError(path, "unknown scale '" + s + "' (unit, half_line, extended_half_line)");
  }
  if (j.is_object()) {
    const double upper = number(require(j, "upper", path), join(path, "upper"));
    const bool closed = flag(require(j, "closed", path), join(path, "closed"));
    return guarded(path, [&] { return ValueScale(upper, closed); });
  }
  throw ScenarioError(path, "expected a scale name or {upper, closed}");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Definitions
// ---------------------------------------------------------------------------

struct FunctionDef {
  std::vector<double> values;
  std::optional<ValueScale> scale;
};

struct MapDef {
  std::optional<PhiMap> phi;
  std::optional<DualityMap> h;
};

/// Named objects shared by the tasks of one scenario.
struct Definitions {
  std::optional<std::size_t> n;
  std::map<std::string, MonotoneMeasure> measures;
  std::map<std::string, FunctionDef> functions;
  std::map<std::string, BinaryOp> operators;
  std::map<std::string, MapDef> maps;
  /// Source of each definition by section, for reproducers.
  std::map<std::string, std::map<std::string, json>> source;
};

namespace detail {

inline std::vector<XReal> bitmask_table(const json& values, const std::string& path, std::optional<std::size_t> n) {
  std::vector<XReal> table;
  if (values.is_array()) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double v = number(values[i], at(path, i));
      table.push_back(guarded(at(path, i), [&] { return XReal(v); }));
    }
    return table;
  }
  if (!values.is_object()) throw ScenarioError(path, "expected an array indexed by bitmask or a bitmask -> value map");
  if (!n) throw ScenarioError(path, "a bitmask map needs space.n");
  table.assign(std::size_t{1} << *n, XReal(0.0));
  std::vector<bool> seen(table.size(), false);
  for (const auto& [key, v] : values.items()) {
    std::size_t pos = 0;
    unsigned long long m = 0;
    const bool binary = key.rfind("0b", 0) == 0 && key.size() > 2;
    try {
      m = binary ? std::stoull(key.substr(2), &pos, 2) : std::stoull(key, &pos, 0);
      if (binary) pos += 2;
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != key.size() || m >= table.size()) throw ScenarioError(join(path, key), "not a bitmask below 2^n");
    const double x = number(v, join(path, key));
    table[m] = guarded(join(path, key), [&] { return XReal(x); });
    seen[m] = true;
  }
  for (std::size_t m = 1; m < table.size(); ++m)
    if (!seen[m]) throw ScenarioError(path, "bitmask " + std::to_string(m) + " has no value");
  return table;
}

inline MonotoneMeasure parse_measure(const json& j, const std::string& path, std::optional<std::size_t> n) {
  const auto type = text(require(j, "type", path), join(path, "type"));
  auto field = [&](const char* key) -> const json& { return require(j, key, path); };
  auto fpath = [&](const char* key) { return join(path, key); };
  MonotoneMeasure mu = [&]() -> MonotoneMeasure {
    if (type == "table") {
      auto table = bitmask_table(field("values"), fpath("values"), n);
      return guarded(fpath("values"), [&] { return MonotoneMeasure::explicit_table(std::move(table)); });
    }
    if (type == "possibility") {
      auto density = numbers(field("density"), fpath("density"));
      return guarded(fpath("density"), [&] { return MonotoneMeasure::possibility(std::move(density)); });
    }
    if (type == "distortion") {
      const double power = number(field("power"), fpath("power"));
      auto probs = numbers(field("probabilities"), fpath("probabilities"));
      return guarded(path, [&] { return MonotoneMeasure::distortion(DistortionMap::power(power), std::move(probs)); });
    }
    if (type == "lambda_sugeno") {
      const double lambda = number(field("lambda"), fpath("lambda"));
      auto density = numbers(field("density"), fpath("density"));
      return guarded(path, [&] { return MonotoneMeasure::lambda_sugeno(lambda, std::move(density)); });
    }
    if (type == "generated") {
      if (!n) throw ScenarioError(path, "generated measures need space.n");
      const auto family = guarded(fpath("family"), [&] { return parse_measure_family(text(field("family"), fpath("family"))); });
      const auto seed = count(field("seed"), fpath("seed"));
      return guarded(path, [&] { return generate_measure(seed, family, *n); });
    }
    throw ScenarioError(fpath("type"), "unknown measure type '" + type + "' (table, possibility, distortion, lambda_sugeno, generated)");
  }();
  if (const auto* norm = optional(j, "normalize"); norm && flag(*norm, fpath("normalize")))
    mu = guarded(fpath("normalize"), [&] { return normalized(mu); });
  if (const auto* inf = optional(j, "infinite_total"); inf && flag(*inf, fpath("infinite_total")))
    mu = guarded(fpath("infinite_total"), [&] { return with_infinite_total(mu); });
  if (n && mu.size() != *n)
    throw ScenarioError(path, "measure lives on " + std::to_string(mu.size()) + " points, space.n = " + std::to_string(*n));
  return mu;
}

inline FunctionDef parse_function(const json& j, const std::string& path, std::optional<std::size_t> n) {
  FunctionDef def;
  if (j.is_array()) {
    def.values = numbers(j, path);
  } else {
    def.values = numbers(require(j, "values", path), join(path, "values"));
    if (const auto* s = optional(j, "scale")) def.scale = scale_of(*s, join(path, "scale"));
  }
  if (def.values.empty()) throw ScenarioError(path, "a function needs at least one value");
  if (n && def.values.size() != *n)
    throw ScenarioError(path, "function has " + std::to_string(def.values.size()) + " values, space.n = " + std::to_string(*n));
  return def;
}

inline BinaryOp parse_operator(const json& j, const std::string& path) {
  if (j.is_string()) return guarded(path, [&] { return ops::by_name(j.get<std::string>(), {}); });
  const auto name = text(require(j, "name", path), join(path, "name"));
  std::vector<double> params;
  if (const auto* p = optional(j, "params")) params = numbers(*p, join(path, "params"));
  std::optional<ValueScale> scale;
  if (const auto* s = optional(j, "scale")) scale = scale_of(*s, join(path, "scale"));
  return guarded(path, [&] { return ops::by_name(name, params, scale); });
}

inline MapDef parse_map(const json& j, const std::string& path) {
  if (const auto* h = optional(j, "h")) {
    const auto name = text(*h, join(path, "h"));
    if (name == "one_minus") return {std::nullopt, DualityMap::one_minus()};
    if (name == "reciprocal") return {std::nullopt, DualityMap::reciprocal()};
    throw ScenarioError(join(path, "h"), "unknown duality map '" + name + "' (one_minus, reciprocal)");
  }
  const auto name = text(require(j, "phi", path), join(path, "phi"));
  const auto* s = optional(j, "scale");
  const ValueScale scale = s ? scale_of(*s, join(path, "scale")) : ValueScale::extended_half_line();
  if (name == "identity") return {PhiMap::identity(scale), std::nullopt};
  if (name == "power") {
    const double p = number(require(j, "p", path), join(path, "p"));
    return {guarded(path, [&] { return PhiMap::power(p, scale); }), std::nullopt};
  }
  throw ScenarioError(join(path, "phi"), "unknown phi map '" + name + "' (identity, power)");
}

}  // namespace detail

inline Definitions parse_definitions(const json& doc) {
  Definitions defs;
  if (const auto* space = detail::optional(doc, "space")) {
    if (!space->is_object()) throw ScenarioError("space", "expected an object");
    if (const auto* n = detail::optional(*space, "n")) {
      const auto v = detail::count(*n, "space.n");
      if (v < 1 || v > kMaxPairwisePoints) throw ScenarioError("space.n", "must be in [1, " + std::to_string(kMaxPairwisePoints) + "]");
      defs.n = v;
    }
  }
  auto section = [&](const char* key, auto&& parse) {
    const auto* sec = detail::optional(doc, key);
    if (!sec) return;
    if (!sec->is_object()) throw ScenarioError(key, "expected an object of named definitions");
    for (const auto& [name, body] : sec->items()) {
      parse(name, body, detail::join(key, name));
      defs.source[key][name] = body;
    }
  };
  section("measures", [&](const std::string& name, const json& body, const std::string& path) {
    defs.measures.emplace(name, detail::parse_measure(body, path, defs.n));
  });
  section("functions", [&](const std::string& name, const json& body, const std::string& path) {
    defs.functions.emplace(name, detail::parse_function(body, path, defs.n));
  });
  section("operators", [&](const std::string& name, const json& body, const std::string& path) {
    defs.operators.emplace(name, detail::parse_operator(body, path));
  });
  section("maps", [&](const std::string& name, const json& body, const std::string& path) {
    defs.maps.emplace(name, detail::parse_map(body, path));
  });
  return defs;
}

// ---------------------------------------------------------------------------
// Tasks
// ---------------------------------------------------------------------------

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<double> tolerance;
  std::size_t jobs = 1;

  std::uint64_t seed_or(std::optional<std::uint64_t> task) const { return task.value_or(seed.value_or(1)); }
};

struct TaskResult {
  std::size_t index = 0;
  std::string kind;
  std::string name;
  CheckResult check;
  /// "violated" for tasks that reproduce a known failure.
  std::string expected = "holds";
  bool passed = false;
  /// Input-side failure (bad binding at run time, exhausted resample cap): exit 2.
  bool input_error = false;
  json values = json::object();
  std::optional<json> reproducer;
  double seconds = 0.0;
};

/// What to feed back to reproduce a failed task: the task plus extra definitions.
struct Repro {
  json task;
  json definitions = json::object();
};

using Runner = std::function<TaskResult(const RunOptions&)>;
using ReproHook = std::function<std::optional<Repro>(const TaskResult&, std::uint64_t seed)>;

/// Resolves a task's references against the definitions and records which ones it used.
class Binder {
 public:
  Binder(const Definitions& defs, const json& task, std::string path) : defs_(defs), task_(task), path_(std::move(path)) {}

  const json& task() const { return task_; }
  std::string field(const std::string& key) const { return detail::join(path_, key); }
  bool has(const std::string& key) const {
    if (!task_.contains(key)) return false;
    read_.insert(key);
    return true;
  }
  const json& raw(const std::string& key) const {
    read_.insert(key);
    return detail::require(task_, key, path_);
  }

  /// Rejects fields the task kind never looked at.
  void reject_unread() const {
    for (const auto& [key, _] : task_.items())
      if (!read_.count(key) && key != "description") throw ScenarioError(field(key), "unknown field for this task kind");
  }

  std::string text(const std::string& key) const { return detail::text(raw(key), field(key)); }
  std::string text(const std::string& key, const std::string& fallback) const { return has(key) ? text(key) : fallback; }
  double number(const std::string& key) const { return detail::number(raw(key), field(key)); }
  double number(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }
  std::optional<std::uint64_t> maybe_count(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return detail::count(raw(key), field(key));
  }

  MonotoneMeasure measure(const std::string& key = "measure") { return measure_named(text(key), field(key)); }

  MonotoneMeasure measure_named(const std::string& name, const std::string& path) {
    auto it = defs_.measures.find(name);
    if (it == defs_.measures.end()) throw ScenarioError(path, "undefined measure '" + name + "'");
    use("measures", name);
    return it->second;
  }

  RealVector real(const std::string& key) { return function_named(text(key), field(key)).values; }

  /// Function on its declared scale, or on `fallback` when none is declared.
  Fn fn(const std::string& key, ValueScale fallback) { return fn_named(text(key), field(key), fallback); }

  std::vector<std::string> names(const std::string& key) const {
    const auto& arr = raw(key);
    if (!arr.is_array() || arr.empty()) throw ScenarioError(field(key), "expected a non-empty array of names");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(detail::text(arr[i], detail::at(field(key), i)));
    return out;
  }

  std::vector<Fn> fn_list(const std::string& key, ValueScale fallback) {
    std::vector<Fn> out;
    const auto ns = names(key);
    for (std::size_t i = 0; i < ns.size(); ++i) out.push_back(fn_named(ns[i], detail::at(field(key), i), fallback));
    return out;
  }

  std::vector<RealVector> real_list(const std::string& key) {
    std::vector<RealVector> out;
    const auto ns = names(key);
    for (std::size_t i = 0; i < ns.size(); ++i) out.push_back(function_named(ns[i], detail::at(field(key), i)).values);
    return out;
  }

  BinaryOp op(const std::string& key) { return op_named(text(key), field(key)); }

  std::optional<BinaryOp> maybe_op(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return op(key);
  }

  /// One operator name for all three slots, or an array of three.
  std::array<BinaryOp, 3> circ(const std::string& key = "circ") {
    if (raw(key).is_string()) {
      const auto o = op(key);
      return {o, o, o};
    }
    const auto ns = triple(key);
    return {op_named(ns[0], detail::at(field(key), 0)), op_named(ns[1], detail::at(field(key), 1)), op_named(ns[2], detail::at(field(key), 2))};
  }

  std::array<PhiMap, 3> phis(ValueScale fallback, const std::string& key = "phi") {
    if (!has(key)) return {PhiMap::identity(fallback), PhiMap::identity(fallback), PhiMap::identity(fallback)};
    if (raw(key).is_string()) {
      const auto m = phi_named(text(key), field(key));
      return {m, m, m};
    }
    const auto ns = triple(key);
    return {phi_named(ns[0], detail::at(field(key), 0)), phi_named(ns[1], detail::at(field(key), 1)), phi_named(ns[2], detail::at(field(key), 2))};
  }

  DualityMap h(const std::string& key = "h") {
    const auto name = text(key);
    auto it = defs_.maps.find(name);
    if (it == defs_.maps.end()) throw ScenarioError(field(key), "undefined map '" + name + "'");
    if (!it->second.h) throw ScenarioError(field(key), "map '" + name + "' is not a duality map");
    use("maps", name);
    return *it->second.h;
  }

  /// "domain": array of point indices; the whole space when absent.
  Mask domain(std::size_t n) const {
    const Mask full = FiniteSpace(n).full();
    if (!has("domain")) return full;
    const auto& arr = raw("domain");
    if (!arr.is_array()) throw ScenarioError(field("domain"), "expected an array of point indices");
    Mask m = 0;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto k = detail::count(arr[i], detail::at(field("domain"), i));
      if (k >= n) throw ScenarioError(detail::at(field("domain"), i), "point " + std::to_string(k) + " outside a space of " + std::to_string(n));
      m |= singleton(static_cast<std::size_t>(k));
    }
    return m;
  }

  /// Definitions this task referenced, as scenario sections.
  json used_definitions() const {
    json out = json::object();
    for (const char* section : {"measures", "functions", "operators", "maps"}) {
      auto it = used_.find(section);
      if (it == used_.end()) continue;
      json sec = json::object();
      for (const auto& name : it->second) sec[name] = defs_.source.at(section).at(name);
      out[section] = sec;
    }
    return out;
  }

 private:
  void use(const std::string& section, const std::string& name) { used_[section].insert(name); }

  std::vector<std::string> triple(const std::string& key) const {
    const auto ns = names(key);
    if (ns.size() != 3) throw ScenarioError(field(key), "expected one name or an array of three");
    return ns;
  }

  const FunctionDef& function_named(const std::string& name, const std::string& path) {
    auto it = defs_.functions.find(name);
    if (it == defs_.functions.end()) throw ScenarioError(path, "undefined function '" + name + "'");
    use("functions", name);
    return it->second;
  }

  Fn fn_named(const std::string& name, const std::string& path, ValueScale fallback) {
    const auto& def = function_named(name, path);
    return detail::guarded(path, [&] { return Fn(std::vector<XReal>(def.values.begin(), def.values.end()), def.scale.value_or(fallback)); });
  }

  BinaryOp op_named(const std::string& name, const std::string& path) {
    auto it = defs_.operators.find(name);
    if (it == defs_.operators.end()) throw ScenarioError(path, "undefined operator '" + name + "'");
    use("operators", name);
    return it->second;
  }

  PhiMap phi_named(const std::string& name, const std::string& path) {
    auto it = defs_.maps.find(name);
    if (it == defs_.maps.end()) throw ScenarioError(path, "undefined map '" + name + "'");
    if (!it->second.phi) throw ScenarioError(path, "map '" + name + "' is not a phi map");
    use("maps", name);
    return *it->second.phi;
  }

  const Definitions& defs_;
  const json& task_;
  std::string path_;
  std::map<std::string, std::set<std::string>> used_;
  mutable std::set<std::string> read_;
};

/// A validated task: references resolved, ready to run.
struct PreparedTask {
  std::size_t index = 0;
  std::string kind;
  std::string name;
  json source;
  json definitions;
  Runner run;
  ReproHook reproduce;
};

namespace detail {

inline TaskResult from_check(CheckResult r) {
  TaskResult t;
  t.check = std::move(r);
  t.passed = t.check.holds();
  return t;
}

inline CheckResult from_relation(const RelationVerdict& v) {
  CheckResult r;
  r.verdict = v.holds ? Verdict::holds : Verdict::violated;
  r.witness = v.witness;
  r.mode = v.mode;
  r.evaluated = v.evaluated;
  if (!v.holds) r.margin = 1.0;
  return r;
}

/// Optional "expect" with "tolerance" (default 1e-12): a computed value becomes a check.
struct Expect {
  std::optional<double> value;
  double tolerance = 1e-12;

  static Expect read(const Binder& b) {
    Expect e;
    if (b.has("expect")) e.value = b.number("expect");
    e.tolerance = b.number("tolerance", 1e-12);
    return e;
  }

  CheckResult check(double v) const {
    CheckResult r;
    r.evaluated = 1;
    r.note = "value=" + format_number(v);
    if (value && !(v == *value || std::fabs(v - *value) <= tolerance)) {
      r.verdict = Verdict::violated;
      r.margin = std::fabs(v - *value);
      r.witness = Witness{{}, {v, *value}, "computed value differs from expect"};
    }
    return r;
  }
};

inline Direction direction(const Binder& b) {
  return guarded(b.field("direction"), [&] { return parse_direction(b.text("direction", "sufficiency")); });
}

inline void equivalence_values(TaskResult& t, const EquivalenceReport& rep) {
  t.values["property"] = rep.property;
  t.values["forward_clean"] = rep.forward_clean;
  t.values["forward_checked"] = rep.forward_checked;
  t.values["backward_violated"] = rep.backward_violated;
  t.values["backward_margin"] = num(rep.backward_margin);
  t.values["consistent"] = rep.consistent;
  if (!t.check.exhibit && rep.backward_witness) t.check.exhibit = rep.backward_witness;
}

}  // namespace detail

namespace tasks {

inline Runner integral(Binder& b) {
  const auto kind = detail::guarded(b.field("integral"), [&] { return parse_integral_kind(b.text("integral")); });
  const auto mu = b.measure();
  const auto op = b.maybe_op("op");
  const Fn f = b.fn("f", op ? op->scale() : ValueScale::unit());
  const Mask d = b.domain(mu.size());
  const auto expect = detail::Expect::read(b);
  return [=](const RunOptions&) {
    const double v = nonadditive::integral(kind, f, mu, op, d).value();
    auto t = detail::from_check(expect.check(v));
    t.values["value"] = num(v);
    return t;
  };
}

inline Runner profile_integral(Binder& b) {
  const auto& p = b.raw("profile");
  const std::string path = b.field("profile");
  const auto& knots_json = detail::require(p, "knots", path);
  if (!knots_json.is_array()) throw ScenarioError(detail::join(path, "knots"), "expected an array of [t, value]");
  std::vector<SurvivalProfile::Knot> knots;
  for (std::size_t i = 0; i < knots_json.size(); ++i) {
    const auto kp = detail::at(detail::join(path, "knots"), i);
    const auto k = detail::numbers(knots_json[i], kp);
    if (k.size() != 2) throw ScenarioError(kp, "expected [t, value]");
    knots.push_back({k[0], k[1]});
  }
  const auto* s = detail::optional(p, "scale");
  const ValueScale scale = s ? detail::scale_of(*s, detail::join(path, "scale")) : ValueScale::unit();
  const auto* tot = detail::optional(p, "total");
  const double total = tot ? detail::number(*tot, detail::join(path, "total")) : 1.0;
  const auto profile = detail::guarded(path, [&] { return SurvivalProfile::tabulated("scenario profile", knots, scale, total); });
  const auto op = b.op("op");
  const double res = b.number("resolution", 1e-4);
  if (!(res > 0.0)) throw ScenarioError(b.field("resolution"), "must be > 0");
  const auto expect = detail::Expect::read(b);
  return [=](const RunOptions&) {
    const auto v = nonadditive::profile_integral(profile, op, res);
    auto e = expect;
    e.tolerance = std::max(e.tolerance, v.uncertainty);
    auto t = detail::from_check(e.check(v.value));
    t.values["value"] = num(v.value);
    t.values["argmax"] = num(v.argmax);
    t.values["uncertainty"] = num(v.uncertainty);
    return t;
  };
}

inline std::pair<Runner, ReproHook> condition(Binder& b) {
  const auto id = detail::guarded(b.field("condition"), [&] { return parse_condition(b.text("condition")); });
  ConditionBinding bind;
  bind.star = b.maybe_op("star");
  bind.combiner = b.maybe_op("combiner");
  bind.boxplus = b.maybe_op("boxplus");
  bind.op = b.maybe_op("op");
  if (b.has("circ")) {
    const auto c = b.circ();
    bind.circ = {c[0], c[1], c[2]};
  }
  ValueScale fallback = ValueScale::unit();
  for (const auto* o : {&bind.circ[0], &bind.star, &bind.op})
    if (*o) fallback = (*o)->scale();
  if (b.has("phi")) bind.phi = b.phis(fallback);
  if (b.has("h")) bind.h = b.h();
  if (b.has("exponents")) {
    const auto e = detail::numbers(b.raw("exponents"), b.field("exponents"));
    if (e.size() != 3) throw ScenarioError(b.field("exponents"), "expected three exponents");
    bind.exponents = {e[0], e[1], e[2]};
  }
  bind.p = b.number("p", bind.p);
  bind.q = b.number("q", bind.q);
  bind.r = b.number("r", bind.r);

  ConditionDomain dom = ConditionDomain::grid(fallback);
  if (b.has("domain")) {
    const auto& d = b.raw("domain");
    const std::string path = b.field("domain");
    if (const auto* tuples = detail::optional(d, "tuples")) {
      if (!tuples->is_array()) throw ScenarioError(detail::join(path, "tuples"), "expected an array of tuples");
      std::vector<std::vector<double>> out;
      for (std::size_t i = 0; i < tuples->size(); ++i) out.push_back(detail::numbers((*tuples)[i], detail::at(detail::join(path, "tuples"), i)));
      dom = ConditionDomain::explicit_tuples(std::move(out));
    } else {
      const auto* s = detail::optional(d, "scale");
      const ValueScale scale = s ? detail::scale_of(*s, detail::join(path, "scale")) : fallback;
      const auto* st = detail::optional(d, "step");
      const double step = st ? detail::number(*st, detail::join(path, "step")) : 1.0 / 64.0;
      if (!(step > 0.0 && step <= 1.0)) throw ScenarioError(detail::join(path, "step"), "must be in (0, 1]");
      if (const auto* m = detail::optional(d, "realized")) {
        const auto mu = b.measure_named(detail::text(*m, detail::join(path, "realized")), detail::join(path, "realized"));
        dom = ConditionDomain::realized(scale, measure_values(mu, mu.space().full()), step);
      } else {
        dom = ConditionDomain::grid(scale, step);
      }
    }
  }
  // Missing bindings surface now, not at run time.
  detail::guarded(b.field("condition"), [&] { return check_condition(id, bind, ConditionDomain::explicit_tuples({})); });
  Runner run = [=](const RunOptions&) { return detail::from_check(check_condition(id, bind, dom)); };
  ReproHook repro = [id, task = b.task()](const TaskResult& t, std::uint64_t) -> std::optional<Repro> {
    Repro r{task};
    const auto k = static_cast<std::size_t>(nonadditive::detail::arity(id));
    if (id != ConditionId::tw_subad_hyp && t.check.witness && t.check.witness->values.size() >= k) {
      const auto& v = t.check.witness->values;
      r.task["domain"] = json{{"tuples", json::array({nums({v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k)})})}};
    }
    return r;
  };
  return {run, repro};
}

inline Runner relation(Binder& b) {
  const auto rel = detail::guarded(b.field("relation"), [&] { return parse_relation(b.text("relation")); });
  switch (rel) {
    case Relation::comonotone: {
      const Fn f = b.fn("f", ValueScale::extended_half_line()), g = b.fn("g", ValueScale::extended_half_line());
      const Mask d = b.domain(f.size());
      return [=](const RunOptions&) { return detail::from_check(detail::from_relation(is_comonotone(f, g, d))); };
    }
    case Relation::star_associated: {
      const auto star = b.op("star");
      const Fn f = b.fn("f", star.scale()), g = b.fn("g", star.scale());
      const Mask d = b.domain(f.size());
      return [=](const RunOptions& o) {
        return detail::from_check(detail::from_relation(is_star_associated(f, g, star, d, kStarSamples, o.seed_or(std::nullopt))));
      };
    }
    case Relation::mu_subadditive: {
      const auto box = b.op("boxplus");
      const auto mu = b.measure();
      const Fn f = b.fn("f", box.scale()), g = b.fn("g", box.scale());
      const Mask d = b.domain(f.size());
      return [=](const RunOptions&) { return detail::from_check(detail::from_relation(is_mu_subadditive(f, g, box, mu, d))); };
    }
    case Relation::pqd: {
      const auto mu = b.measure();
      const Fn f = b.fn("f", ValueScale::extended_half_line()), g = b.fn("g", ValueScale::extended_half_line());
      return [=](const RunOptions&) { return detail::from_check(detail::from_relation(is_pqd(f, g, mu))); };
    }
  }
  throw ScenarioError(b.field("relation"), "unsupported relation");
}

inline Runner measure_property(Binder& b) {
  const auto prop = detail::guarded(b.field("property"), [&] { return parse_measure_property(b.text("property")); });
  const auto mu = b.measure();
  return [=](const RunOptions&) { return detail::from_check(check_measure_property(mu, prop)); };
}

inline Runner counterexample(Binder& b) {
  const double res = b.number("resolution", 1e-4);
  if (!(res > 0.0)) throw ScenarioError(b.field("resolution"), "must be > 0");
  return [=](const RunOptions&) {
    const auto c = reproduce_counterexample(res);
    TaskResult t;
    t.expected = "violated";
    t.check.verdict = c.violated ? Verdict::violated : Verdict::holds;
    t.check.margin = c.lhs - c.rhs_sum;
    t.check.evaluated = 1;
    t.check.witness = Witness{{}, {c.lhs, c.rhs_each, c.rhs_sum}, "upper integral of f * g exceeds the star-combination of the factors"};
    t.check.note = format_number(c.lhs) + " > " + format_number(c.rhs_sum) + "; claimed condition daraby " + to_string(c.claimed_condition.verdict) +
                   " on the unit grid";
    const bool grid_ok = std::fabs(c.grid_lhs.value - c.lhs) <= 1e-3 && std::fabs(c.grid_rhs_each.value - c.rhs_each) <= 1e-3 &&
                         std::fabs(c.grid_rhs_sum - c.rhs_sum) <= 1e-3;
    t.passed = c.violated && grid_ok && c.claimed_condition.holds();
    t.values["lhs"] = num(c.lhs);
    t.values["rhs_each"] = num(c.rhs_each);
    t.values["rhs_sum"] = num(c.rhs_sum);
    t.values["grid_lhs"] = num(c.grid_lhs.value);
    t.values["grid_rhs_each"] = num(c.grid_rhs_each.value);
    t.values["grid_rhs_sum"] = num(c.grid_rhs_sum);
    t.values["claimed_condition"] = to_string(c.claimed_condition.verdict);
    return t;
  };
}

inline Runner theorem(Binder& b) {
  const auto id = b.text("theorem");
  if (id == "ctw7") {
    const auto star = b.op("star");
    const auto comb = b.op("combiner");
    const auto circ = b.circ();
    const auto phi = b.phis(star.scale());
    const auto mu = b.measure();
    const Fn f = b.fn("f", star.scale()), g = b.fn("g", star.scale());
    const Ctw7Instance in{f, g, mu, b.domain(mu.size()), star, comb, circ, phi};
    const auto dir = detail::direction(b);
    return [=](const RunOptions&) { return detail::from_check(verify_ctw7(in, dir)); };
  }
  if (id == "seminormed") {
    const auto s = b.op("semicopula");
    const auto star = b.op("star");
    const auto mu = b.measure();
    const Fn f = b.fn("f", s.scale()), g = b.fn("g", s.scale());
    SeminormedInstance in{f, g, mu, b.domain(mu.size()), s, star, b.number("p", 1.0)};
    in.reading = detail::guarded(b.field("reading"), [&] { return parse_seminormed_reading(b.text("reading", "none")); });
    const auto dir = detail::direction(b);
    return [=](const RunOptions&) { return detail::from_check(verify_seminormed_minkowski(in, dir)); };
  }
  if (id == "comonotone_subadditivity") {
    const auto op = b.op("op");
    const auto mu = b.measure();
    const ComonotoneSubadditivityInstance in{b.fn("f", op.scale()), b.fn("g", op.scale()), mu, op};
    return [=](const RunOptions&) { return detail::from_check(verify_comonotone_subadditivity(in)); };
  }
  if (id == "tw_subad") {
    const TwSubadInstance in{b.real("f"), b.real("g"), b.measure(), b.op("op"), b.number("p", 1.0), b.number("q", 1.0), b.number("r", 1.0)};
    return [=](const RunOptions&) { return detail::from_check(verify_tw_subad(in)); };
  }
  if (id == "subShi" || id == "dol_twsub") {
    const auto mu = b.measure();
    const auto seed = b.maybe_count("seed");
    const auto pairs = b.maybe_count("pairs").value_or(32);
    const bool shi = id == "subShi";
    return [=](const RunOptions& o) {
      const auto rep = shi ? verify_subShi(mu, o.seed_or(seed), pairs) : verify_dol_twsub(mu, o.seed_or(seed), pairs);
      auto t = detail::from_check(rep.result);
      detail::equivalence_values(t, rep);
      return t;
    };
  }
  if (id == "dol_twsub_boundary") {
    const auto mu = b.measure();
    if (!mu.total().is_inf()) throw ScenarioError(b.field("measure"), "the boundary probe needs mu(X) = inf");
    return [=](const RunOptions&) {
      const auto p = dol_twsub_boundary(mu);
      TaskResult t;
      t.expected = "violated";
      t.check.verdict = p.violated ? Verdict::violated : Verdict::holds;
      t.check.margin = p.lhs - p.rhs;
      t.check.evaluated = 1;
      t.check.witness = Witness{{p.a, p.b}, {p.height, p.lhs, p.rhs}, "a 1_A, a 1_B with a > mu(A) + mu(B) break Sugeno subadditivity"};
      t.check.note = format_number(p.lhs) + " > " + format_number(p.rhs);
      t.passed = p.violated;
      t.values["mu_a"] = num(p.mu_a);
      t.values["mu_b"] = num(p.mu_b);
      t.values["height"] = num(p.height);
      return t;
    };
  }
  if (id == "cdtw1") {
    const auto star = b.op("star");
    const auto mu = b.measure();
    const Cdtw1Instance in{b.fn("f", star.scale()), b.fn("g", star.scale()), mu, b.domain(mu.size()), star, b.op("combiner"), b.op("boxplus"),
                           b.circ(), b.phis(star.scale())};
    return [=](const RunOptions&) { return detail::from_check(verify_cdtw1(in)); };
  }
  if (id == "dol_colh" || id == "dol_colh2") {
    const auto star = b.op("star");
    const DualityInstance in{b.fn("f", star.scale()), b.fn("g", star.scale()), b.measure(), star, b.op("op"), b.h(), b.maybe_op("boxplus")};
    const auto which = id == "dol_colh" ? DualityCorollary::colh : DualityCorollary::colh2;
    return [=](const RunOptions&) { return detail::from_check(verify_duality_corollaries(in, which)); };
  }
  if (id == "dol13") {
    const auto op = b.op("op");
    const auto h = b.h();
    const Fn f = b.fn("f", h.scale());
    const auto mu = b.measure();
    return [=](const RunOptions&) { return detail::from_check(check_duality_dol13(f, mu, op, h)); };
  }
  if (id == "cd16") {
    const auto mu = b.measure();
    const Fn f = b.fn("f", ValueScale::unit());
    const Mask d = b.domain(mu.size());
    return [=](const RunOptions&) { return detail::from_check(check_cd16(f, mu, d)); };
  }
  throw ScenarioError(b.field("theorem"),
                      "unknown theorem '" + id +
                          "' (ctw7, seminormed, comonotone_subadditivity, tw_subad, subShi, dol_twsub, dol_twsub_boundary, cdtw1, dol_colh, dol_colh2, "
                          "dol13, cd16)");
}

inline MetricSpec metric_spec(Binder& b) {
  const auto kind = detail::guarded(b.field("metric"), [&] { return parse_metric_kind(b.text("metric")); });
  if (kind == MetricKind::frechet) return MetricSpec::frechet();
  if (kind == MetricKind::kyfan) return MetricSpec::kyfan();
  return MetricSpec::d_op_p(b.op("op"), b.number("p", 1.0));
}

inline std::pair<Runner, ReproHook> metric(Binder& b) {
  const auto spec = metric_spec(b);
  const auto mu = b.measure();
  const auto check = b.text("check", "axioms");
  auto gated = [spec](auto&& body) {
    return [spec, body](const RunOptions& o) {
      if (auto fail = metric_gate(spec)) return detail::from_check(*fail);
      return body(o);
    };
  };
  if (check == "axioms") {
    const auto trials = b.maybe_count("trials");
    const auto seed = b.maybe_count("seed");
    Runner run = gated([=](const RunOptions& o) {
      return detail::from_check(check_metric_axioms(spec, mu, trials.value_or(o.trials.value_or(200)), o.seed_or(seed)));
    });
    // Witness values carry f, g, h followed by the three distances.
    ReproHook repro = [task = b.task(), n = mu.size()](const TaskResult& t, std::uint64_t) -> std::optional<Repro> {
      if (!t.check.witness || t.check.witness->values.size() < 3 * n) return Repro{task};
      const auto& v = t.check.witness->values;
      Repro r{task};
      r.task["check"] = "triangle";
      r.task.erase("trials");
      r.task.erase("seed");
      const char* names[] = {"witness_f", "witness_g", "witness_h"};
      r.definitions["functions"] = json::object();
      for (std::size_t k = 0; k < 3; ++k) {
        r.task[std::string(1, "fgh"[k])] = names[k];
        r.definitions["functions"][names[k]] = nums({v.begin() + static_cast<std::ptrdiff_t>(k * n), v.begin() + static_cast<std::ptrdiff_t>((k + 1) * n)});
      }
      return r;
    };
    return {run, repro};
  }
  if (check == "triangle") {
    const auto f = b.real("f"), g = b.real("g"), h = b.real("h");
    return {gated([=](const RunOptions&) {
              auto d = [&](const RealVector& x, const RealVector& y) { return metric_eval(spec, x, y, mu).value(); };
              const double fg = d(f, g), fh = d(f, h), hg = d(h, g);
              InequalityTracker track;
              track.record(fg, fh + hg, [&] { return Witness{{}, {fg, fh, hg}, "d(f, g) > d(f, h) + d(h, g)"}; });
              auto t = detail::from_check(track.result());
              t.values["d_fg"] = num(fg);
              t.values["d_fh"] = num(fh);
              t.values["d_hg"] = num(hg);
              return t;
            }),
            nullptr};
  }
  if (check == "distance") {
    const auto f = b.real("f"), g = b.real("g");
    const auto expect = detail::Expect::read(b);
    return {gated([=](const RunOptions&) {
              const double v = metric_eval(spec, f, g, mu).value();
              auto t = detail::from_check(expect.check(v));
              t.values["value"] = num(v);
              return t;
            }),
            nullptr};
  }
  if (check == "doltw3") {
    const auto seq = b.real_list("sequence");
    const auto limit = b.real("limit");
    return {gated([=](const RunOptions&) { return detail::from_check(verify_doltw3(spec, mu, seq, limit)); }), nullptr};
  }
  if (check == "cauchy_chain") {
    const auto seq = b.real_list("sequence");
    return {gated([=](const RunOptions&) { return detail::from_check(cauchy_chain(spec, mu, seq)); }), nullptr};
  }
  if (check == "cauchy_probe") {
    const auto seed = b.maybe_count("seed");
    const auto terms = b.maybe_count("terms").value_or(8);
    return {gated([=](const RunOptions& o) { return detail::from_check(cauchy_probe(spec, mu, o.seed_or(seed), terms)); }), nullptr};
  }
  throw ScenarioError(b.field("check"), "unknown metric check '" + check + "' (axioms, triangle, distance, doltw3, cauchy_chain, cauchy_probe)");
}

inline Runner shilkret_norm(Binder& b) {
  const auto mu = b.measure();
  const auto trials = b.maybe_count("trials");
  const auto seed = b.maybe_count("seed");
  return [=](const RunOptions& o) {
    return detail::from_check(check_shilkret_norm(mu, trials.value_or(o.trials.value_or(100)), o.seed_or(seed)));
  };
}

inline Runner convergence(Binder& b) {
  const auto kind = detail::guarded(b.field("lemma"), [&] { return parse_convergence_kind(b.text("lemma")); });
  const auto op = b.op("op");
  const auto mu = b.measure();
  const auto seq = b.fn_list("sequence", op.scale());
  const Fn limit = b.fn("limit", op.scale());
  return [=](const RunOptions&) { return detail::from_check(check_convergence_lemmas(mu, seq, limit, kind, op)); };
}

inline std::pair<Runner, ReproHook> fuzz(Binder& b) {
  const auto id = b.text("theorem");
  detail::guarded(b.field("theorem"), [&] { return find_theorem(id).id; });
  const auto trials = b.maybe_count("trials");
  const auto seed = b.maybe_count("seed");
  const auto first = b.maybe_count("first").value_or(0);
  const auto cap = b.maybe_count("resample_cap").value_or(64);
  const std::optional<double> tol = b.has("tolerance") ? std::optional<double>(b.number("tolerance")) : std::nullopt;
  Runner run = [=](const RunOptions& o) {
    FuzzOptions fo;
    fo.trials = trials.value_or(o.trials.value_or(100));
    fo.seed = o.seed_or(seed);
    fo.first = first;
    fo.tolerance = tol.value_or(o.tolerance.value_or(0.0));
    fo.jobs = o.jobs;
    fo.resample_cap = cap;
    const auto rep = nonadditive::fuzz(id, fo);
    TaskResult t;
    t.check.evaluated = fo.trials;
    t.check.mode = CheckMode::sampled;
    if (rep.violated) {
      t.check.verdict = Verdict::violated;
      t.check.margin = rep.worst_violation;
    } else if (rep.cap_exhausted) {
      t.check.verdict = Verdict::hypothesis_failed;
      t.input_error = true;
    }
    if (rep.failure) {
      t.check.witness = rep.failure->witness;
      t.check.exhibit = rep.failure->exhibit;
      t.check.note = "first failure at trial " + std::to_string(*rep.first_failure) + ": " + rep.failure->note;
    }
    if (rep.cap_exhausted) t.check.note += (t.check.note.empty() ? "" : "; ") + std::string("resample cap exhausted");
    t.passed = rep.passed();
    t.values["trials"] = fo.trials;
    t.values["seed"] = fo.seed;
    t.values["holds"] = rep.holds;
    t.values["violated"] = rep.violated;
    t.values["within_tolerance"] = rep.within_tolerance;
    t.values["cap_exhausted"] = rep.cap_exhausted;
    t.values["resamples"] = rep.resamples;
    if (rep.first_failure) t.values["first_failure"] = *rep.first_failure;
    return t;
  };
  ReproHook repro = [task = b.task()](const TaskResult& t, std::uint64_t seed) -> std::optional<Repro> {
    Repro r{task};
    if (t.values.contains("first_failure")) {
      r.task["first"] = t.values["first_failure"];
      r.task["trials"] = 1;
      r.task["seed"] = t.values.contains("seed") ? t.values["seed"] : json(seed);
    }
    return r;
  };
  return {run, repro};
}

}  // namespace tasks

inline PreparedTask prepare_task(const Definitions& defs, const json& task, std::size_t index) {
  const std::string path = detail::at("tasks", index);
  if (!task.is_object()) throw ScenarioError(path, "expected an object");
  Binder b(defs, task, path);
  PreparedTask p;
  p.index = index;
  p.kind = b.text("kind");
  p.name = b.text("name", "");
  p.source = task;
  const auto& k = p.kind;
  if (k == "integral") p.run = tasks::integral(b);
  else if (k == "profile_integral") p.run = tasks::profile_integral(b);
  else if (k == "condition") std::tie(p.run, p.reproduce) = tasks::condition(b);
  else if (k == "relation") p.run = tasks::relation(b);
  else if (k == "measure_property") p.run = tasks::measure_property(b);
  else if (k == "counterexample") p.run = tasks::counterexample(b);
  else if (k == "theorem") p.run = tasks::theorem(b);
  else if (k == "metric") std::tie(p.run, p.reproduce) = tasks::metric(b);
  else if (k == "shilkret_norm") p.run = tasks::shilkret_norm(b);
  else if (k == "convergence") p.run = tasks::convergence(b);
  else if (k == "fuzz") std::tie(p.run, p.reproduce) = tasks::fuzz(b);
  else
    throw ScenarioError(b.field("kind"), "unknown task kind '" + k +
                                             "' (integral, profile_integral, condition, relation, measure_property, counterexample, theorem, metric, "
                                             "shilkret_norm, convergence, fuzz)");
  b.reject_unread();
  p.definitions = b.used_definitions();
  return p;
}

// ---------------------------------------------------------------------------
// Scenarios and runs
// ---------------------------------------------------------------------------

struct Scenario {
  std::string name;
  json document;
  Definitions definitions;
  std::vector<PreparedTask> tasks;
};

/// Validates the whole document; throws ScenarioError naming the first offending field.
inline Scenario load(const json& doc, std::string name) {
  if (!doc.is_object()) throw ScenarioError("<document>", "expected a JSON object");
  const auto& v = detail::require(doc, "version", "");
  if (!v.is_number_integer() || v.get<int>() != kSchemaVersion)
    throw ScenarioError("version", "unsupported version " + v.dump() + " (expected " + std::to_string(kSchemaVersion) + ")");
  static const std::set<std::string> known{"version", "name", "description", "space", "measures", "functions", "operators", "maps", "tasks"};
  for (const auto& [key, _] : doc.items())
    if (!known.count(key)) throw ScenarioError(key, "unknown top-level field");
  Scenario s;
  s.name = doc.contains("name") ? detail::text(doc["name"], "name") : std::move(name);
  s.document = doc;
  s.definitions = parse_definitions(doc);
  const auto& tasks = detail::require(doc, "tasks", "");
  if (!tasks.is_array() || tasks.empty()) throw ScenarioError("tasks", "expected a non-empty array");
  for (std::size_t i = 0; i < tasks.size(); ++i) s.tasks.push_back(prepare_task(s.definitions, tasks[i], i));
  return s;
}

inline json parse_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError("<document>", origin + " is not valid JSON: " + e.what());
  }
}

inline Scenario load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("<document>", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load(parse_text(ss.str(), path), path);
}

struct RunReport {
  std::string scenario;
  std::uint64_t seed = 1;
  std::vector<TaskResult> tasks;

  std::size_t passed() const {
    std::size_t k = 0;
    for (const auto& t : tasks) k += t.passed;
    return k;
  }
  std::size_t failed() const { return tasks.size() - passed(); }
  int exit_code() const {
    for (const auto& t : tasks)
      if (t.input_error) return 2;
    return failed() ? 1 : 0;
  }
};

namespace detail {

inline json reproducer_document(const Scenario& s, const PreparedTask& p, const Repro& r) {
  json doc = json::object();
  doc["version"] = kSchemaVersion;
  doc["name"] = s.name + " task " + std::to_string(p.index) + " reproducer";
  if (s.definitions.n) doc["space"] = json{{"n", *s.definitions.n}};
  for (const char* section : {"measures", "functions", "operators", "maps"}) {
    json sec = p.definitions.contains(section) ? p.definitions[section] : json::object();
    if (r.definitions.contains(section))
      for (const auto& [k, v] : r.definitions[section].items()) sec[k] = v;
    if (!sec.empty()) doc[section] = sec;
  }
  doc["tasks"] = json::array({r.task});
  return doc;
}

inline TaskResult run_one(const Scenario& s, const PreparedTask& p, const RunOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  TaskResult t;
  try {
    t = p.run(opt);
  } catch (const HypothesisError& e) {
    t = TaskResult{};
    t.check = CheckResult::hypothesis_failed(e.what());
  } catch (const std::exception& e) {
    t = TaskResult{};
    t.check = CheckResult::hypothesis_failed(std::string("input error: ") + e.what());
    t.input_error = true;
  }
  t.index = p.index;
  t.kind = p.kind;
  t.name = p.name;
  if (!t.passed && !t.input_error) {
    std::optional<Repro> r = p.reproduce ? p.reproduce(t, opt.seed.value_or(1)) : std::optional<Repro>(Repro{p.source});
    if (r) t.reproducer = reproducer_document(s, p, *r);
  }
  t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return t;
}

}  // namespace detail

/// Runs tasks in order; with jobs > 1 independent tasks run concurrently, results keep task order.
inline RunReport run(const Scenario& s, const RunOptions& opt = {}) {
  RunReport rep;
  rep.scenario = s.name;
  rep.seed = opt.seed.value_or(1);
  RunOptions inner = opt;
  const bool across = opt.jobs > 1 && s.tasks.size() > 1;
  if (across) inner.jobs = 1;
  rep.tasks = parallel_map(s.tasks.size(), across ? opt.jobs : 1, [&](std::size_t i) { return detail::run_one(s, s.tasks[i], inner); });
  return rep;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

inline json task_json(const TaskResult& t, bool timing) {
  json j = json::object();
  j["index"] = t.index;
  j["kind"] = t.kind;
  if (!t.name.empty()) j["name"] = t.name;
  j["verdict"] = to_string(t.check.verdict);
  j["expected"] = t.expected;
  j["passed"] = t.passed;
  j["margin"] = num(t.check.margin);
  j["mode"] = to_string(t.check.mode);
  j["evaluated"] = t.check.evaluated;
  if (!t.check.note.empty()) j["note"] = t.check.note;
  if (!t.values.empty()) j["values"] = t.values;
  if (t.check.witness) j["witness"] = witness_json(*t.check.witness);
  if (t.check.exhibit) j["exhibit"] = witness_json(*t.check.exhibit);
  if (t.reproducer) j["reproducer"] = *t.reproducer;
  if (timing) j["seconds"] = t.seconds;
  return j;
}

inline json to_json(const RunReport& r, bool timing = true) {
  json tasks = json::array();
  for (const auto& t : r.tasks) tasks.push_back(task_json(t, timing));
  return json{{"report_version", kSchemaVersion},
              {"scenario", r.scenario},
              {"seed", r.seed},
              {"tasks", tasks},
              {"summary", {{"tasks", r.tasks.size()}, {"passed", r.passed()}, {"failed", r.failed()}, {"exit_code", r.exit_code()}}}};
}

namespace detail {

inline std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_number(v.get<double>());
  return v.dump();
}

inline std::string witness_text(const Witness& w) {
  std::string s;
  if (!w.sets.empty()) {
    s += "sets=";
    for (std::size_t i = 0; i < w.sets.size(); ++i) s += (i ? "," : "") + mask_to_string(w.sets[i]);
    s += " ";
  }
  s += "values=(";
  for (std::size_t i = 0; i < w.values.size(); ++i) s += (i ? ", " : "") + format_number(w.values[i]);
  s += ")";
  if (!w.detail.empty()) s += " " + w.detail;
  return s;
}

}  // namespace detail

inline std::string to_text(const RunReport& r, bool timing = true) {
  std::ostringstream out;
  out << "scenario " << r.scenario << " (report v" << kSchemaVersion << ", seed " << r.seed << ")\n";
  for (const auto& t : r.tasks) {
    out << "[" << t.index << "] " << (t.passed ? "PASS" : "FAIL") << " " << t.kind;
    if (!t.name.empty()) out << " '" << t.name << "'";
    out << ": " << to_string(t.check.verdict);
    if (t.expected != "holds") out << " (expected " << t.expected << ")";
    out << ", margin " << format_number(t.check.margin) << ", " << to_string(t.check.mode) << ", " << t.check.evaluated << " evaluated";
    if (timing) out << " [" << t.seconds << " s]";
    out << "\n";
    if (!t.check.note.empty()) out << "    note: " << t.check.note << "\n";
    if (!t.values.empty()) {
      out << "    values:";
      for (const auto& [k, v] : t.values.items()) out << " " << k << "=" << detail::scalar_text(v);
      out << "\n";
    }
    if (t.check.witness) out << "    witness: " << detail::witness_text(*t.check.witness) << "\n";
    if (t.check.exhibit) out << "    exhibit: " << detail::witness_text(*t.check.exhibit) << "\n";
    if (t.reproducer) out << "    reproducer: " << t.reproducer->dump() << "\n";
  }
  out << "summary: " << r.passed() << " passed, " << r.failed() << " failed, exit " << r.exit_code() << "\n";
  return out.str();
}

}  // namespace nonadditive::scenario

#endif
