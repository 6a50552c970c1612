#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcas/model.hpp"

namespace mcas {

/// Set of value hyperplanes over the belief simplex, each labeled with the
/// action it prescribes. V(b) = max_k alpha_k . b.
///
/// Pointwise-dominated vectors are removed at construction (equal vectors
/// keep the lowest index), so the stored order is the input order minus the
/// pruned entries.
class AlphaVectorPolicy {
 public:
  AlphaVectorPolicy(std::size_t num_states, std::size_t num_actions,
                    std::vector<std::vector<double>> vectors, std::vector<ActionIndex> actions,
                    std::uint64_t model_id = 0);

  std::size_t size() const noexcept { return actions_.size(); }
  std::size_t num_states() const noexcept { return num_states_; }
  std::size_t num_actions() const noexcept { return num_actions_; }
  std::uint64_t model_id() const noexcept { return model_id_; }

  std::span<const double> vector(std::size_t k) const {
    return {vectors_.data() + k * num_states_, num_states_};
  }
  ActionIndex action_of(std::size_t k) const { return actions_[k]; }
  std::span<const ActionIndex> actions() const noexcept { return actions_; }

  /// alpha_k . b for every k, written to out (resized to size()).
  void values(const Belief& b, std::vector<double>& out) const;

  bool operator==(const AlphaVectorPolicy& other) const {
    return num_states_ == other.num_states_ && vectors_ == other.vectors_ &&
           actions_ == other.actions_;
  }

 private:
  std::size_t num_states_;
  std::size_t num_actions_;
  std::vector<double> vectors_;     // [k][s]
  std::vector<double> by_state_;    // [s][k], for sparse-belief evaluation
  std::vector<ActionIndex> actions_;
  std::uint64_t model_id_;
};

/// max_k alpha_k . b. Throws DimensionMismatch.
double policy_value(const AlphaVectorPolicy& policy, const Belief& b);

/// argmax_k alpha_k . b, lowest index on ties. Throws DimensionMismatch.
std::size_t dominant_alpha_index(const AlphaVectorPolicy& policy, const Belief& b);

/// Action label of the dominant vector.
ActionIndex policy_action(const AlphaVectorPolicy& policy, const Belief& b);

/// Text format:
///   alpha-policy v1
///   states: |S|
///   vectors: K
///   a: <action>        (K records, each followed by a line of |S| reals)
///   v_1 ... v_|S|
std::string emit_policy(const AlphaVectorPolicy& policy);

/// num_actions bounds the action labels; pass 0 to accept any label.
AlphaVectorPolicy parse_policy(std::string_view text, std::size_t num_actions = 0,
                               std::uint64_t model_id = 0);

}  // namespace mcas
