#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "mcas/model.hpp"
#include "mcas/policy.hpp"

namespace mcas {

struct SolverParams {
  double precision_target = 1e-3;
  double max_time_seconds = 300.0;
  std::size_t max_belief_points = 100000;
  std::uint64_t rng_seed = 0;

  // Belief collection: simulated trajectories from the initial belief,
  // uniformly random in the first round, epsilon-greedy afterwards.
  std::size_t trajectories_per_round = 16;
  std::size_t trajectory_length = 50;
  double exploration = 0.2;
  std::size_t max_rounds = 100;
  // Stop once V(b0) moved less than precision_target for this many rounds.
  std::size_t stable_rounds = 3;
};

struct SolveResult {
  AlphaVectorPolicy policy;
  bool timed_out = false;
  std::size_t belief_points = 0;
  std::size_t backups = 0;
  std::size_t rounds = 0;
  double initial_value = 0.0;  // V(b0) under the returned policy
  double seconds = 0.0;
};

/// Point-based value iteration over a growing set of reachable beliefs
/// (Perseus-style randomized stages, with a full sweep to confirm
/// convergence). Exposed for tests that need to drive individual sweeps.
class PointBasedSolver {
 public:
  PointBasedSolver(const TabularModel& model, SolverParams params);
  ~PointBasedSolver();
  PointBasedSolver(const PointBasedSolver&) = delete;
  PointBasedSolver& operator=(const PointBasedSolver&) = delete;

  /// Adds b unless a numerically identical point is stored. Returns whether added.
  bool add_belief(const Belief& b);
  std::size_t num_beliefs() const;

  /// Simulates trajectories and stores visited beliefs; returns the number added.
  std::size_t expand(std::size_t trajectories, std::size_t length, double exploration);

  /// Backs up every stored belief. Returns the largest value gain.
  double sweep();
  /// One randomized stage: backs up until every point has been improved or
  /// kept. Returns the largest value gain.
  double perseus_stage();

  /// Value of every stored point under the current vectors.
  std::vector<double> point_values() const;
  double value(const Belief& b) const;
  std::size_t backups() const;
  bool out_of_time() const;

  AlphaVectorPolicy policy(std::uint64_t model_id = 0) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Runs PointBasedSolver until precision, time, or point budget is exhausted.
/// Throws NonConvergence only when no backup completed.
SolveResult solve_pomdp(const TabularModel& model, const SolverParams& params);

struct MdpSolution {
  std::vector<double> value;        // V*(s)
  std::vector<ActionIndex> action;  // greedy, lowest index on ties
  std::size_t iterations = 0;
  double residual = 0.0;

  double expected_value(const Belief& b) const;
};

/// Synchronous value iteration to Bellman residual <= tolerance. Observations
/// are ignored.
MdpSolution solve_mdp(const TabularModel& model, double tolerance = 1e-10);

}  // namespace mcas
