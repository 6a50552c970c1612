#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "mcas/error.hpp"
#include "mcas/harness.hpp"

namespace mcas {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Mmdp: return "mmdp";
    case Method::Mpomdp: return "mpomdp";
    case Method::MpomdpC: return "mpomdp-c";
    case Method::McasAlpha: return "mcas-alpha";
    case Method::Mcas: return "mcas";
    case Method::MpomdpI: return "mpomdp-i";
    case Method::Independent: return "independent";
  }
  return "?";
}

std::vector<Method> all_methods() {
  return {Method::Mmdp, Method::Mpomdp, Method::MpomdpC, Method::McasAlpha,
          Method::Mcas, Method::MpomdpI, Method::Independent};
}

Method parse_method(std::string_view name) {
  for (Method m : all_methods()) {
    if (to_string(m) == name) return m;
  }
  throw UnsupportedSpec("unknown method '" + std::string(name) + "'");
}

MethodSpec MethodSpec::make(Method m, McasConfig base) {
  MethodSpec spec;
  spec.method = m;
  if (m == Method::Mcas || m == Method::McasAlpha) {
    base.message_mode = m == Method::Mcas ? MessageMode::Action : MessageMode::AlphaIndex;
    spec.mcas = base;
  }
  return spec;
}

void MethodSpec::validate() const {
  const bool wants = method == Method::Mcas || method == Method::McasAlpha;
  if (wants != mcas.has_value()) {
    throw InvalidModel("an MCAS config must be given exactly for mcas and mcas-alpha");
  }
  if (mcas) mcas->validate();
}

double sample_mean(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double ci95_halfwidth(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;
  const double mean = sample_mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  return 1.96 * sd / std::sqrt(static_cast<double>(n));
}

ExperimentResult run_experiment(const PolicySet& policies, const MethodSpec& method,
                                std::size_t n_runs, std::size_t horizon, std::uint64_t base_seed,
                                std::size_t threads) {
  if (n_runs < 2) throw InvalidModel("an experiment needs at least 2 runs");
  method.validate();
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n_runs);

  std::vector<RunRecord> runs(n_runs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < n_runs;) {
      try {
        runs[k] = simulate_episode(policies, method, horizon, base_seed + k);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n_runs;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  ExperimentResult res;
  res.spec = policies.spec;
  res.method = method.method;
  res.n_runs = n_runs;
  res.solver_timed_out = policies.solver_timed_out;
  std::vector<double> returns, sizes;
  for (const RunRecord& r : runs) {
    returns.push_back(r.discounted_return);
    res.anomalies += r.anomalies;
    if (!r.max_est_set_sizes.empty()) {
      sizes.push_back(static_cast<double>(
          *std::max_element(r.max_est_set_sizes.begin(), r.max_est_set_sizes.end())));
    }
  }
  res.mean = sample_mean(returns);
  res.ci95_halfwidth = ci95_halfwidth(returns);
  res.mean_max_set_size = sample_mean(sizes);
  res.max_set_ci95 = ci95_halfwidth(sizes);
  res.runs = std::move(runs);
  return res;
}

ExperimentResult run_experiment(const BenchmarkSpec& spec, const MethodSpec& method,
                                std::size_t n_runs, std::size_t horizon, std::uint64_t base_seed,
                                PolicyCache* cache, std::size_t threads) {
  PolicySet policies(spec);
  policies.prepare(method, cache);
  return run_experiment(policies, method, n_runs, horizon, base_seed, threads);
}

}  // namespace mcas
