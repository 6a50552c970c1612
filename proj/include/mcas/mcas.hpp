#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <vector>

#include "mcas/model.hpp"
#include "mcas/policy.hpp"

namespace mcas {

/// One agent's estimate of a teammate's feasible beliefs, each with a count
/// weight (expansion paths plus absorbed merge mass).
struct WeightedBeliefSet {
  std::vector<Belief> beliefs;
  std::vector<double> weights;

  std::size_t size() const noexcept { return beliefs.size(); }
  bool empty() const noexcept { return beliefs.empty(); }
  void add(Belief b, double w) {
    beliefs.push_back(std::move(b));
    weights.push_back(w);
  }
  double total_weight() const;
};

enum class MessageMode { Action, AlphaIndex };
enum class Combiner { Conflation, WeightedAverage };

struct McasConfig {
  double delta_single = 1e-5;
  double delta_joint = 1e-5;
  std::size_t max_beliefs = 200;
  MessageMode message_mode = MessageMode::Action;
  Combiner combiner = Combiner::Conflation;
  std::uint64_t rng_seed = 0;

  /// Throws InvalidModel on negative deltas or a zero belief limit.
  void validate() const;
};

/// A teammate's message: its policy's joint action, or the index of its
/// dominant alpha vector, at its current belief.
struct Suggestion {
  AgentIndex sender = 0;
  std::size_t payload = 0;
};

/// What an agent with this policy and belief would broadcast.
std::size_t suggestion_payload(const AlphaVectorPolicy& policy, const Belief& b, MessageMode mode);

/// Keeps the members whose suggestion under policy equals msg.payload.
/// Throws EmptyAfterPrune when nothing survives.
WeightedBeliefSet prune_beliefs(const AlphaVectorPolicy& policy, const WeightedBeliefSet& set,
                                const Suggestion& msg, MessageMode mode = MessageMode::Action);

/// One-step reachable beliefs of the modeled agent under joint_action, one
/// branch per feasible observation with weight w + 1. A branch within
/// delta_single (L1, inclusive) of an existing output member is folded into
/// the closest one.
WeightedBeliefSet expand_and_merge(const TabularModel& agent_model, const WeightedBeliefSet& set,
                                   ActionIndex joint_action, double delta_single);

/// Repeatedly folds the lower-weight member of the closest pair into the
/// other (equal weights: the higher index goes) until size <= max_beliefs.
WeightedBeliefSet reduce_to_max_limit(const WeightedBeliefSet& set, std::size_t max_beliefs);

/// Normalized pointwise product. Throws DisjointSupports when it vanishes.
Belief conflate(std::span<const Belief> beliefs);

/// Equal-weight mixture, kept for ablation against conflation.
Belief average_beliefs(std::span<const Belief> beliefs);

Belief combine(std::span<const Belief> beliefs, Combiner combiner);

/// Joint Bayes update from each agent's observation (the exact
/// reconstruction used as an oracle).
Belief exact_joint_update(const DecModel& dec, const Belief& prev_joint, ActionIndex joint_action,
                          std::span<const ObservationIndex> observations);

/// Combines own with every tuple of teammate estimates, merges candidates
/// within delta_joint, and returns the heaviest (uniform-random among exact
/// ties, drawn from rng). Candidates with disjoint supports are dropped;
/// throws AllCandidatesInvalid if none remains.
Belief select_joint_belief(const Belief& own, std::span<const WeightedBeliefSet> sets,
                           const McasConfig& cfg, std::mt19937_64& rng);
Belief select_joint_belief(const Belief& own, std::span<const WeightedBeliefSet> sets,
                           const McasConfig& cfg);

/// Models and policies the coordinator reads. Index = agent.
struct CoordinatorSetup {
  std::shared_ptr<const TabularModel> joint_model;
  std::shared_ptr<const AlphaVectorPolicy> joint_policy;
  std::vector<std::shared_ptr<const TabularModel>> view_models;
  std::vector<std::shared_ptr<const AlphaVectorPolicy>> view_policies;
};

/// Agent 0's side of the control loop. Call act() with the teammates'
/// suggestions, execute the returned joint action, then observe().
class Coordinator {
 public:
  Coordinator(CoordinatorSetup setup, McasConfig cfg);

  ActionIndex act(std::span<const Suggestion> suggestions);
  void observe(ObservationIndex own_observation);

  std::size_t num_agents() const noexcept { return setup_.view_models.size(); }
  const Belief& own_belief() const noexcept { return own_; }
  /// Estimate set for teammate j (1-based within the team, j >= 1).
  const WeightedBeliefSet& teammate_set(AgentIndex j) const { return sets_.at(j - 1); }
  const Belief& selected_joint_belief() const noexcept { return selected_; }
  /// Largest set size seen after pruning and reduction, per teammate.
  const std::vector<std::size_t>& max_set_sizes() const noexcept { return max_sizes_; }
  std::size_t anomalies() const noexcept { return anomalies_; }

 private:
  WeightedBeliefSet restart_set(AgentIndex j) const;

  CoordinatorSetup setup_;
  McasConfig cfg_;
  std::mt19937_64 rng_;
  Belief own_;
  std::vector<WeightedBeliefSet> sets_;
  std::vector<std::size_t> max_sizes_;
  Belief selected_;
  ActionIndex last_action_ = 0;
  bool acted_ = false;
  std::size_t anomalies_ = 0;
};

}  // namespace mcas
