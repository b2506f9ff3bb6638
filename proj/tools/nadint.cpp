// nadint: run scenarios, builtins and randomized campaigns.
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "nonadditive/builtins.hpp"

namespace sc = nonadditive::scenario;
namespace bi = nonadditive::builtins;

namespace {

struct Options {
  std::string format = "text";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<double> tolerance;
  std::size_t jobs = 1;
  bool timing = true;
};

int emit_error(const Options& o, const sc::ScenarioError& e) {
  if (o.format == "json") {
    std::cout << sc::json{{"error", {{"field", e.field()}, {"message", e.what()}}}, {"summary", {{"exit_code", 2}}}}.dump(2) << "\n";
  } else {
    std::cerr << "input error: " << e.what() << "\n";
  }
  return 2;
}

int execute(const Options& o, const sc::json& doc, const std::string& origin) {
  try {
    const auto s = sc::load(doc, origin);
    sc::RunOptions ro;
    ro.seed = o.seed;
    ro.trials = o.trials;
    ro.tolerance = o.tolerance;
    ro.jobs = o.jobs;
    const auto report = sc::run(s, ro);
    if (o.format == "json")
      std::cout << sc::to_json(report, o.timing).dump(2) << "\n";
    else
      std::cout << sc::to_text(report, o.timing);
    return report.exit_code();
  } catch (const sc::ScenarioError& e) {
    return emit_error(o, e);
  }
}

sc::json source(const std::string& target) {
  const std::string prefix = "builtin:";
  if (target.rfind(prefix, 0) == 0) return bi::document(target.substr(prefix.size()));
  std::ifstream in(target);
  if (!in) throw sc::ScenarioError("<document>", "cannot open '" + target + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return sc::parse_text(ss.str(), target);
}

void list(const Options& o) {
  const auto& theorems = nonadditive::theorem_registry();
  if (o.format == "json") {
    sc::json out{{"builtins", sc::json::array()}, {"theorems", sc::json::array()}};
    for (const auto& b : bi::catalog()) out["builtins"].push_back({{"name", b.name}, {"summary", b.summary}});
    out["builtins"].push_back({{"name", "all"}, {"summary", "every builtin in one run"}});
    for (const auto& t : theorems) out["theorems"].push_back({{"id", t.id}, {"summary", t.summary}});
    std::cout << out.dump(2) << "\n";
    return;
  }
  std::cout << "builtins (run builtin:NAME):\n";
  for (const auto& b : bi::catalog()) std::cout << "  " << b.name << "  " << b.summary << "\n";
  std::cout << "  all  every builtin in one run\n";
  std::cout << "theorems (fuzz ID):\n";
  for (const auto& t : theorems) std::cout << "  " << t.id << "  " << t.summary << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks inequalities for nonadditive integrals on finite spaces."};
  app.require_subcommand(0, 1);
  Options o;
  bool list_flag = false;
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", o.seed, "Default seed for tasks without one");
  app.add_option("--trials", o.trials, "Default trial count for sampled tasks");
  app.add_option("--tolerance", o.tolerance, "Default fuzz tolerance");
  app.add_option("--jobs", o.jobs, "Worker threads")->check(CLI::Range(1, 256));
  app.add_flag("--no-timing", [&](std::int64_t) { o.timing = false; }, "Omit timings so reports are byte-identical");
  app.add_flag("--list", list_flag, "List builtins and theorem ids");

  std::string target;
  auto* run_cmd = app.add_subcommand("run", "Run a scenario file or builtin:NAME");
  run_cmd->add_option("target", target, "Scenario path or builtin:NAME")->required();

  std::string theorem;
  std::optional<std::size_t> first, cap;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Randomized campaign for one theorem id");
  fuzz_cmd->add_option("theorem", theorem, "Theorem id (see list)")->required();
  fuzz_cmd->add_option("--first", first, "Index of the first trial");
  fuzz_cmd->add_option("--resample-cap", cap, "Rejection resamples allowed per trial");

  std::string shown;
  auto* show_cmd = app.add_subcommand("show", "Print a builtin scenario document");
  show_cmd->add_option("name", shown, "Builtin name")->required();

  auto* list_cmd = app.add_subcommand("list", "List builtins and theorem ids");

  // Global options may follow the subcommand.
  for (auto* sub : {run_cmd, fuzz_cmd, show_cmd, list_cmd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (list_flag || *list_cmd) {
      list(o);
      return 0;
    }
    if (*show_cmd) {
      std::cout << bi::document(shown).dump(2) << "\n";
      return 0;
    }
    if (*run_cmd) return execute(o, source(target), target);
    if (*fuzz_cmd) {
      sc::json task{{"kind", "fuzz"}, {"name", theorem}, {"theorem", theorem}};
      if (first) task["first"] = *first;
      if (cap) task["resample_cap"] = *cap;
      return execute(o, sc::json{{"version", sc::kSchemaVersion}, {"name", "fuzz " + theorem}, {"tasks", {task}}}, "fuzz");
    }
  } catch (const sc::ScenarioError& e) {
    return emit_error(o, e);
  } catch (const std::exception& e) {
    return emit_error(o, sc::ScenarioError("<input>", e.what()));
  }
  std::cout << app.help();
  return 2;
}
