#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mcas/benchmarks.hpp"
#include "mcas/error.hpp"
#include "mcas/harness.hpp"
#include "mcas/model_io.hpp"
#include "mcas/solver.hpp"

namespace fs = std::filesystem;
using namespace mcas;

namespace {

constexpr int kConfigError = 2;
constexpr int kSolverTimeout = 3;

// "problem:agents[:Q1,Q2]", e.g. "meet-3x3:2:AG,UI,WP".
BenchmarkSpec parse_spec_string(const std::string& text) {
  BenchmarkSpec spec;
  const auto first = text.find(':');
  if (first == std::string::npos) throw UnsupportedSpec("expected problem:agents[:qualifiers]");
  spec.problem = parse_problem(text.substr(0, first));
  const auto second = text.find(':', first + 1);
  const std::string agents = text.substr(first + 1, second == std::string::npos ? std::string::npos
                                                                                 : second - first - 1);
  try {
    spec.num_agents = std::stoul(agents);
  } catch (const std::exception&) {
    throw UnsupportedSpec("bad agent count '" + agents + "'");
  }
  if (second != std::string::npos) spec.qualifiers = parse_qualifiers(text.substr(second + 1));
  validate(spec);
  return spec;
}

struct SolverFlags {
  double precision = 1e-3;
  double max_time = 300.0;
  std::size_t max_points = 100000;
  std::uint64_t seed = 0;
  bool explicit_precision = false, explicit_time = false, explicit_points = false,
       explicit_seed = false;

  void attach(CLI::App& app) {
    app.add_option("--precision", precision, "solver precision target")
        ->each([this](const std::string&) { explicit_precision = true; });
    app.add_option("--max-time", max_time, "solver time limit per policy, seconds")
        ->each([this](const std::string&) { explicit_time = true; });
    app.add_option("--max-points", max_points, "solver belief point budget")
        ->each([this](const std::string&) { explicit_points = true; });
    app.add_option("--solver-seed", seed, "solver RNG seed")
        ->each([this](const std::string&) { explicit_seed = true; });
  }

  SolverParams apply(SolverParams p) const {
    if (explicit_precision) p.precision_target = precision;
    if (explicit_time) p.max_time_seconds = max_time;
    if (explicit_points) p.max_belief_points = max_points;
    if (explicit_seed) p.rng_seed = seed;
    return p;
  }
};

struct RunFlags {
  std::string problem = "dec-tiger";
  std::size_t agents = 2;
  std::string qualifiers;
  std::string methods = "mpomdp";
  std::size_t runs = 2000;
  std::size_t steps = 50;
  std::uint64_t seed = 1;
  double delta_single = 1e-5;
  double delta_joint = 1e-5;
  std::size_t max_beliefs = 200;
  std::string message_mode = "action";
  std::string combiner = "conflation";
  std::size_t leader = 1;
  std::string out;
  std::size_t threads = 0;
};

struct CacheFlags {
  std::string dir;
  bool allow_stale = false;
  bool resolve = false;
  bool no_cache = false;
  bool strict = false;

  void attach(CLI::App& app) {
    app.add_option("--cache-dir", dir, "policy cache directory (default: $MCAS_CACHE_DIR or .mcas-cache)");
    app.add_flag("--allow-stale", allow_stale, "use cached policies even if solved for other settings");
    app.add_flag("--resolve", resolve, "re-solve and overwrite stale cached policies");
    app.add_flag("--no-cache", no_cache, "solve in memory without reading or writing the cache");
    app.add_flag("--strict", strict, "exit with status 3 if any solve hit its time limit");
  }

  std::optional<PolicyCache> make() const {
    if (no_cache) return std::nullopt;
    return PolicyCache(dir.empty() ? PolicyCache::default_dir() : fs::path(dir), allow_stale,
                       resolve);
  }
};

std::vector<Method> parse_method_list(const std::string& text) {
  if (text == "all") return all_methods();
  std::vector<Method> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    if (end > pos) out.push_back(parse_method(text.substr(pos, end - pos)));
    pos = end + 1;
  }
  if (out.empty()) throw UnsupportedSpec("no method given");
  return out;
}

MethodSpec method_spec(Method m, const RunFlags& f, std::size_t num_agents) {
  McasConfig cfg;
  cfg.delta_single = f.delta_single;
  cfg.delta_joint = f.delta_joint;
  cfg.max_beliefs = f.max_beliefs;
  if (f.combiner == "conflation") {
    cfg.combiner = Combiner::Conflation;
  } else if (f.combiner == "average") {
    cfg.combiner = Combiner::WeightedAverage;
  } else {
    throw UnsupportedSpec("combiner must be conflation or average");
  }
  MethodSpec spec = MethodSpec::make(m, cfg);
  if (m == Method::Mcas) {
    if (f.message_mode == "alpha") {
      spec.mcas->message_mode = MessageMode::AlphaIndex;
    } else if (f.message_mode != "action") {
      throw UnsupportedSpec("message mode must be action or alpha");
    }
  }
  if (f.leader < 1 || f.leader > num_agents) throw UnsupportedSpec("leader must be in 1..agents");
  spec.leader = f.leader - 1;
  spec.validate();
  return spec;
}

int report(const std::vector<ExperimentResult>& results, const std::string& out, bool strict) {
  const auto emitted = emit_results(results);
  std::cout << emitted.table;
  if (!out.empty()) save_text_file(out, emitted.csv);
  bool timed_out = false;
  for (const auto& r : results) timed_out |= r.solver_timed_out;
  if (timed_out) std::cerr << "warning: at least one policy solve stopped at its time limit\n";
  return strict && timed_out ? kSolverTimeout : 0;
}

int cmd_run(const RunFlags& f, const SolverFlags& sf, const CacheFlags& cf) {
  BenchmarkSpec spec{parse_problem(f.problem), f.agents, parse_qualifiers(f.qualifiers)};
  validate(spec);
  auto cache = cf.make();
  PolicySet policies(spec);
  std::vector<ExperimentResult> results;
  for (Method m : parse_method_list(f.methods)) {
    MethodSpec ms = method_spec(m, f, spec.num_agents);
    policies.prepare(ms, sf.apply(default_solver_params(spec)), cache ? &*cache : nullptr);
    results.push_back(run_experiment(policies, ms, f.runs, f.steps, f.seed, f.threads));
  }
  return report(results, f.out, cf.strict);
}

int cmd_table1(const RunFlags& f, const SolverFlags& sf, const CacheFlags& cf, bool skip_slow) {
  auto cache = cf.make();
  std::vector<ExperimentResult> results;
  for (const BenchmarkSpec& spec : table1_specs()) {
    if (skip_slow && spec.problem == Problem::Meet3x3 && spec.num_agents == 3) continue;
    std::cerr << "== " << spec.key() << "\n";
    PolicySet policies(spec);
    for (Method m : parse_method_list(f.methods)) {
      MethodSpec ms = method_spec(m, f, spec.num_agents);
      policies.prepare(ms, sf.apply(default_solver_params(spec)), cache ? &*cache : nullptr);
      results.push_back(run_experiment(policies, ms, f.runs, f.steps, f.seed, f.threads));
    }
  }
  return report(results, f.out, cf.strict);
}

int cmd_solve(const std::string& model_arg, std::optional<std::size_t> agent_view, bool mmdp,
              const std::string& out, const SolverFlags& sf, bool strict) {
  std::optional<BenchmarkSpec> spec;
  DecModel dec = [&] {
    if (fs::exists(model_arg)) return load_model_file(model_arg);
    spec = parse_spec_string(model_arg);
    return build_benchmark(*spec);
  }();
  if (mmdp) {
    const MdpSolution sol = solve_mdp(build_mmdp(dec).model);
    std::string text = "mmdp-solution v1\nstates: " + std::to_string(sol.value.size()) + "\n";
    for (std::size_t s = 0; s < sol.value.size(); ++s) {
      text += std::to_string(sol.action[s]) + " " + format_real(sol.value[s]) + "\n";
    }
    save_text_file(out, text);
    std::cout << "value from start: " << format_real(sol.expected_value(dec.joint().initial_belief()))
              << "\n";
    return 0;
  }
  TabularModel model = build_mpomdp(dec);
  if (agent_view) {
    if (*agent_view < 1 || *agent_view > dec.num_agents()) {
      throw UnsupportedSpec("--agent-view must be in 1.." + std::to_string(dec.num_agents()));
    }
    model = build_agent_view(dec, *agent_view - 1);
  }
  SolverParams params = sf.apply(spec ? default_solver_params(*spec) : SolverParams{});
  const SolveResult r = solve_pomdp(model, params);
  save_text_file(out, emit_policy(r.policy));
  std::cout << "vectors: " << r.policy.size() << "  belief points: " << r.belief_points
            << "  backups: " << r.backups << "  V(b0): " << format_real(r.initial_value)
            << "  seconds: " << r.seconds << (r.timed_out ? "  (time limit reached)" : "") << "\n";
  return strict && r.timed_out ? kSolverTimeout : 0;
}

int cmd_emit_models(const std::string& dir, bool include_large) {
  fs::create_directories(dir);
  for (const BenchmarkSpec& spec : table1_specs()) {
    if (!include_large && spec.problem == Problem::Meet3x3 && spec.num_agents == 3) continue;
    const fs::path path = fs::path(dir) / (spec.key() + ".model");
    save_text_file(path.string(), emit_model(build_benchmark(spec), provenance(spec)));
    std::cout << path.string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiagent control via action suggestions: solve, simulate, reproduce tables"};
  app.require_subcommand(1);

  RunFlags run_flags;
  SolverFlags solver_flags;
  CacheFlags cache_flags;
  auto add_run_options = [&](CLI::App* sub, bool single_problem) {
    if (single_problem) {
      sub->add_option("--problem", run_flags.problem, "dec-tiger|broadcast|meet-2x2|meet-3x3|box-push")
          ->required();
      sub->add_option("--agents", run_flags.agents, "number of agents");
      sub->add_option("--qualifiers", run_flags.qualifiers, "comma-separated, e.g. UI,WP");
    }
    sub->add_option("--method", run_flags.methods,
                    "mmdp|mpomdp|mpomdp-c|mcas-alpha|mcas|mpomdp-i|independent, a comma list, or all");
    sub->add_option("--runs", run_flags.runs, "episodes per method")->check(CLI::Range(2ul, 10000000ul));
    sub->add_option("--steps", run_flags.steps, "episode horizon");
    sub->add_option("--seed", run_flags.seed, "base episode seed");
    sub->add_option("--delta-single", run_flags.delta_single)->check(CLI::NonNegativeNumber);
    sub->add_option("--delta-joint", run_flags.delta_joint)->check(CLI::NonNegativeNumber);
    sub->add_option("--max-beliefs", run_flags.max_beliefs)->check(CLI::PositiveNumber);
    sub->add_option("--message-mode", run_flags.message_mode, "action|alpha (method mcas)");
    sub->add_option("--combiner", run_flags.combiner, "conflation|average");
    sub->add_option("--leader", run_flags.leader, "1-based leader for mpomdp-i");
    sub->add_option("--out", run_flags.out, "CSV output path");
    sub->add_option("--threads", run_flags.threads, "worker threads (0 = hardware)");
    solver_flags.attach(*sub);
    cache_flags.attach(*sub);
  };

  auto* run = app.add_subcommand("run", "simulate methods on one benchmark");
  add_run_options(run, true);

  auto* table1 = app.add_subcommand("table1", "reproduce every in-scope row of the results table");
  bool skip_slow = false;
  add_run_options(table1, false);
  table1->add_flag("--skip-slow", skip_slow, "leave out the 3-agent Meet 3x3 row");

  auto* solve = app.add_subcommand("solve", "solve one model and write its policy");
  std::string model_arg, solve_out;
  std::optional<std::size_t> agent_view;
  bool joint = false, mmdp = false, solve_strict = false;
  SolverFlags solve_solver_flags;
  solve->add_option("--model", model_arg, "model file, or problem:agents[:qualifiers]")->required();
  auto* view_opt = solve->add_option("--agent-view", agent_view, "1-based agent whose view to solve");
  auto* joint_opt = solve->add_flag("--joint", joint, "solve the joint MPOMDP (default)");
  auto* mmdp_opt = solve->add_flag("--mmdp", mmdp, "value iteration on the fully observable model");
  view_opt->excludes(joint_opt)->excludes(mmdp_opt);
  joint_opt->excludes(mmdp_opt);
  solve->add_option("--out", solve_out, "output path")->required();
  solve->add_flag("--strict", solve_strict, "exit with status 3 if the solver hit its time limit");
  solve_solver_flags.attach(*solve);

  auto* emit = app.add_subcommand("emit-models", "write every benchmark model file");
  std::string emit_dir = "models";
  bool include_large = false;
  emit->add_option("--dir", emit_dir, "output directory");
  emit->add_flag("--include-large", include_large, "also write the 3-agent Meet 3x3 model");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*run) {
      return cmd_run(run_flags, solver_flags, cache_flags);
    }
    if (*table1) {
      if (table1->count("--method") == 0) run_flags.methods = "all";
      return cmd_table1(run_flags, solver_flags, cache_flags, skip_slow);
    }
    if (*solve) return cmd_solve(model_arg, agent_view, mmdp, solve_out, solve_solver_flags, solve_strict);
    if (*emit) return cmd_emit_models(emit_dir, include_large);
  } catch (const UnsupportedSpec& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const StaleCache& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const SyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const SemanticError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
