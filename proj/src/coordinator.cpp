#include <algorithm>

#include "mcas/error.hpp"
#include "mcas/mcas.hpp"

namespace mcas {

Coordinator::Coordinator(CoordinatorSetup setup, McasConfig cfg)
    : setup_(std::move(setup)), cfg_(cfg), rng_(cfg.rng_seed) {
  cfg_.validate();
  const std::size_t n = setup_.view_models.size();
  if (n == 0 || setup_.view_policies.size() != n || !setup_.joint_model || !setup_.joint_policy) {
    throw InvalidModel("coordinator setup needs a joint model/policy and one view per agent");
  }
  own_ = setup_.view_models[0]->initial_belief();
  selected_ = own_;
  sets_.resize(n - 1);
  for (auto& s : sets_) s.add(own_, 1.0);
  max_sizes_.assign(n - 1, 0);
}

WeightedBeliefSet Coordinator::restart_set(AgentIndex j) const {
  WeightedBeliefSet seed;
  if (!acted_) {
    seed.add(setup_.view_models[j]->initial_belief(), 1.0);
    return seed;
  }
  seed.add(selected_, 0.0);
  return expand_and_merge(*setup_.view_models[j], seed, last_action_, cfg_.delta_single);
}

ActionIndex Coordinator::act(std::span<const Suggestion> suggestions) {
  const std::size_t n = num_agents();
  if (suggestions.size() != n - 1) {
    throw DimensionMismatch("expected one suggestion per teammate");
  }
  for (const Suggestion& msg : suggestions) {
    if (msg.sender == 0 || msg.sender >= n) throw DimensionMismatch("suggestion from unknown agent");
    const AgentIndex j = msg.sender;
    const auto& policy = *setup_.view_policies[j];
    WeightedBeliefSet& set = sets_[j - 1];
    try {
      set = prune_beliefs(policy, set, msg, cfg_.message_mode);
    } catch (const EmptyAfterPrune&) {
      ++anomalies_;
      WeightedBeliefSet fresh = restart_set(j);
      try {
        set = prune_beliefs(policy, fresh, msg, cfg_.message_mode);
      } catch (const EmptyAfterPrune&) {
        set = std::move(fresh);
      }
    }
    set = reduce_to_max_limit(set, cfg_.max_beliefs);
    max_sizes_[j - 1] = std::max(max_sizes_[j - 1], set.size());
  }

  try {
    selected_ = select_joint_belief(own_, sets_, cfg_, rng_);
  } catch (const AllCandidatesInvalid&) {
    ++anomalies_;
    for (const Suggestion& msg : suggestions) {
      WeightedBeliefSet fresh = restart_set(msg.sender);
      try {
        fresh = prune_beliefs(*setup_.view_policies[msg.sender], fresh, msg, cfg_.message_mode);
      } catch (const EmptyAfterPrune&) {
      }
      sets_[msg.sender - 1] = reduce_to_max_limit(fresh, cfg_.max_beliefs);
    }
    try {
      selected_ = select_joint_belief(own_, sets_, cfg_, rng_);
    } catch (const AllCandidatesInvalid&) {
      selected_ = own_;
    }
  }
  last_action_ = policy_action(*setup_.joint_policy, selected_);
  return last_action_;
}

void Coordinator::observe(ObservationIndex own_observation) {
  own_ = belief_update(*setup_.view_models[0], own_, last_action_, own_observation);
  for (std::size_t j = 1; j < num_agents(); ++j) {
    sets_[j - 1] = expand_and_merge(*setup_.view_models[j], sets_[j - 1], last_action_,
                                    cfg_.delta_single);
  }
  acted_ = true;
}

}  // namespace mcas
