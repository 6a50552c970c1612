#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mcas/benchmarks.hpp"
#include "mcas/mcas.hpp"
#include "mcas/model.hpp"
#include "mcas/policy.hpp"
#include "mcas/solver.hpp"

namespace mcas {

enum class Method { Mmdp, Mpomdp, MpomdpC, McasAlpha, Mcas, MpomdpI, Independent };

std::string_view to_string(Method m);
/// mmdp, mpomdp, mpomdp-c, mcas-alpha, mcas, mpomdp-i, independent.
Method parse_method(std::string_view name);
std::vector<Method> all_methods();

struct MethodSpec {
  Method method = Method::Mpomdp;
  std::optional<McasConfig> mcas;  // present exactly for mcas and mcas-alpha
  AgentIndex leader = 0;           // mpomdp-i

  /// Attaches a default config (with the matching message mode) when needed.
  static MethodSpec make(Method m, McasConfig base = {});
  void validate() const;
};

/// Cached policies live in dir as <name>.policy with a <name>.meta sidecar
/// recording the model and solver-parameter hashes.
class PolicyCache {
 public:
  /// MCAS_CACHE_DIR if set, else ./.mcas-cache.
  static std::filesystem::path default_dir();

  PolicyCache(std::filesystem::path dir, bool allow_stale = false, bool resolve = false);

  struct Entry {
    std::shared_ptr<const AlphaVectorPolicy> policy;
    bool timed_out = false;
    bool from_cache = false;
  };

  /// Loads name if its hashes match, otherwise solves and stores. A mismatch
  /// throws StaleCache unless allow_stale (use it anyway) or resolve (overwrite).
  Entry get_or_solve(const std::string& name, const TabularModel& model,
                     const SolverParams& params);

  const std::filesystem::path& dir() const noexcept { return dir_; }

 private:
  std::filesystem::path dir_;
  bool allow_stale_;
  bool resolve_;
};

std::uint64_t params_hash(const SolverParams& params);

/// Solver settings used for a benchmark's MPOMDP and agent-view solves.
SolverParams default_solver_params(const BenchmarkSpec& spec);

/// Models and policies of one benchmark. Members are filled on demand by
/// prepare() for the methods that need them.
struct PolicySet {
  BenchmarkSpec spec;
  std::shared_ptr<const DecModel> dec;
  std::shared_ptr<const TabularModel> joint;
  std::vector<std::shared_ptr<const TabularModel>> views;
  std::shared_ptr<const AlphaVectorPolicy> joint_policy;
  std::vector<std::shared_ptr<const AlphaVectorPolicy>> view_policies;
  std::shared_ptr<const MdpSolution> mdp;
  bool solver_timed_out = false;

  explicit PolicySet(const BenchmarkSpec& spec);
  PolicySet(const BenchmarkSpec& spec, DecModel dec);

  /// Solves (or loads from cache, when given) whatever the method needs.
  void prepare(const MethodSpec& method, const SolverParams& params, PolicyCache* cache = nullptr);
  void prepare(const MethodSpec& method, PolicyCache* cache = nullptr) {
    prepare(method, default_solver_params(spec), cache);
  }
};

struct RunRecord {
  std::uint64_t seed = 0;
  double discounted_return = 0.0;
  std::size_t steps = 0;
  std::vector<std::size_t> max_est_set_sizes;  // per teammate; empty for non-MCAS methods
  std::size_t anomalies = 0;

  bool operator==(const RunRecord&) const = default;
};

/// Everything visible at one simulated step, after the transition.
struct StepInfo {
  std::size_t t = 0;
  StateIndex state = 0;       // before the transition
  StateIndex next_state = 0;
  ActionIndex joint_action = 0;
  std::vector<ObservationIndex> observations;  // per agent
  double reward = 0.0;
  const Belief* prev_joint_belief = nullptr;   // omniscient, before update
  const Belief* joint_belief = nullptr;        // omniscient, after update
  const std::vector<Belief>* agent_beliefs = nullptr;  // per agent, after update
  const Coordinator* coordinator = nullptr;    // MCAS methods only
};

using StepHook = std::function<void(const StepInfo&)>;

/// One episode of horizon steps. Environment randomness depends only on seed,
/// so different methods see the same random stream (paired comparison).
/// The MMDP method reports the converged optimal value from the start
/// distribution instead of sampling.
RunRecord simulate_episode(const PolicySet& policies, const MethodSpec& method,
                           std::size_t horizon, std::uint64_t seed,
                           const StepHook& hook = nullptr);

struct ExperimentResult {
  BenchmarkSpec spec;
  Method method = Method::Mpomdp;
  double mean = 0.0;
  double ci95_halfwidth = 0.0;
  std::size_t n_runs = 0;
  double mean_max_set_size = 0.0;
  double max_set_ci95 = 0.0;
  std::size_t anomalies = 0;
  bool solver_timed_out = false;
  std::vector<RunRecord> runs;
};

/// 1.96 * sample standard deviation / sqrt(n); 0 for n < 2.
double ci95_halfwidth(const std::vector<double>& samples);
double sample_mean(const std::vector<double>& samples);

/// Episodes with seeds base_seed .. base_seed + n_runs - 1 on a worker pool;
/// aggregation is in seed order so results do not depend on thread count.
ExperimentResult run_experiment(const PolicySet& policies, const MethodSpec& method,
                                std::size_t n_runs, std::size_t horizon, std::uint64_t base_seed,
                                std::size_t threads = 0);

/// Builds the benchmark, prepares policies (through cache if given), runs.
ExperimentResult run_experiment(const BenchmarkSpec& spec, const MethodSpec& method,
                                std::size_t n_runs, std::size_t horizon, std::uint64_t base_seed,
                                PolicyCache* cache = nullptr, std::size_t threads = 0);

/// CSV with columns problem, qualifiers, agents, method, mean, ci95, n_runs,
/// mean_max_set, anomalies; rows sorted by (problem, agents, method).
std::string emit_csv(std::vector<ExperimentResult> results);
/// Aligned text table of the same rows.
std::string emit_table(std::vector<ExperimentResult> results);

struct EmittedResults {
  std::string csv;
  std::string table;
};
EmittedResults emit_results(const std::vector<ExperimentResult>& results);

}  // namespace mcas
