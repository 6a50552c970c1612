#include <cstdlib>
#include <cstring>
#include <sstream>

#include "mcas/error.hpp"
#include "mcas/harness.hpp"
#include "mcas/model_io.hpp"

namespace mcas {
namespace fs = std::filesystem;

namespace {

std::uint64_t mix(std::uint64_t h, const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001B3ull;
  }
  return h;
}

template <class T>
std::uint64_t mix_value(std::uint64_t h, T v) {
  return mix(h, &v, sizeof v);
}

std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << v;
  return os.str();
}

struct Meta {
  std::string model_hash, params_hash;
  bool timed_out = false;
};

Meta read_meta(const fs::path& path) {
  Meta m;
  std::istringstream in(read_text_file(path.string()));
  std::string key, value;
  while (in >> key >> value) {
    if (key == "model_hash:") m.model_hash = value;
    if (key == "params_hash:") m.params_hash = value;
    if (key == "timed_out:") m.timed_out = value == "1";
  }
  return m;
}

void write_atomic(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp";
  save_text_file(tmp.string(), text);
  fs::rename(tmp, path);
}

}  // namespace

std::uint64_t params_hash(const SolverParams& p) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  h = mix_value(h, p.precision_target);
  h = mix_value(h, p.max_time_seconds);
  h = mix_value(h, static_cast<std::uint64_t>(p.max_belief_points));
  h = mix_value(h, p.rng_seed);
  h = mix_value(h, static_cast<std::uint64_t>(p.trajectories_per_round));
  h = mix_value(h, static_cast<std::uint64_t>(p.trajectory_length));
  h = mix_value(h, p.exploration);
  h = mix_value(h, static_cast<std::uint64_t>(p.max_rounds));
  h = mix_value(h, static_cast<std::uint64_t>(p.stable_rounds));
  return h;
}

fs::path PolicyCache::default_dir() {
  if (const char* env = std::getenv("MCAS_CACHE_DIR"); env && *env) return env;
  return ".mcas-cache";
}

PolicyCache::PolicyCache(fs::path dir, bool allow_stale, bool resolve)
    : dir_(std::move(dir)), allow_stale_(allow_stale), resolve_(resolve) {}

PolicyCache::Entry PolicyCache::get_or_solve(const std::string& name, const TabularModel& model,
                                             const SolverParams& params) {
  const fs::path policy_path = dir_ / (name + ".policy");
  const fs::path meta_path = dir_ / (name + ".meta");
  const std::string model_hash = hex(model.content_hash());
  const std::string solver_hash = hex(params_hash(params));

  if (fs::exists(policy_path) && fs::exists(meta_path)) {
    const Meta meta = read_meta(meta_path);
    const bool fresh = meta.model_hash == model_hash && meta.params_hash == solver_hash;
    if (fresh || allow_stale_) {
      auto policy = std::make_shared<const AlphaVectorPolicy>(parse_policy(
          read_text_file(policy_path.string()), model.num_actions(), model.content_hash()));
      if (policy->num_states() != model.num_states()) {
        throw StaleCache("cached policy " + policy_path.string() + " has the wrong state count");
      }
      return {policy, meta.timed_out, true};
    }
    if (!resolve_) {
      throw StaleCache("cached policy " + policy_path.string() +
                       " was solved for a different model or solver settings; "
                       "re-solve with --resolve or accept it with --allow-stale");
    }
  }

  SolveResult r = solve_pomdp(model, params);
  fs::create_directories(dir_);
  write_atomic(policy_path, emit_policy(r.policy));
  write_atomic(meta_path, "model_hash: " + model_hash + "\nparams_hash: " + solver_hash +
                              "\ntimed_out: " + (r.timed_out ? "1" : "0") + "\n");
  return {std::make_shared<const AlphaVectorPolicy>(std::move(r.policy)), r.timed_out, false};
}

SolverParams default_solver_params(const BenchmarkSpec& spec) {
  SolverParams p;
  (void)spec;
  return p;
}

}  // namespace mcas
