#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace mcas {

using StateIndex = std::size_t;
using ActionIndex = std::size_t;
using ObservationIndex = std::size_t;
using AgentIndex = std::size_t;

/// Tolerance used when checking that probability rows sum to one.
inline constexpr double kStochasticTolerance = 1e-9;

/// Probability distribution over states. Always nonnegative and normalized.
class Belief {
 public:
  Belief() = default;

  /// Validates the input: throws InvalidModel on a negative entry or when the
  /// entries do not sum to one within kStochasticTolerance.
  explicit Belief(std::vector<double> probs);

  static Belief uniform(std::size_t num_states);
  static Belief point(std::size_t num_states, StateIndex s);

  /// Divides nonnegative weights by their sum. Throws InvalidModel if the sum
  /// is not positive.
  static Belief from_weights(std::vector<double> weights);

  std::size_t size() const noexcept { return probs_.size(); }
  bool empty() const noexcept { return probs_.empty(); }
  double operator[](StateIndex s) const { return probs_[s]; }
  std::span<const double> probs() const noexcept { return probs_; }

  bool operator==(const Belief&) const = default;

 private:
  struct Trusted {};
  Belief(Trusted, std::vector<double> probs) : probs_(std::move(probs)) {}

  std::vector<double> probs_;
};

/// L1 distance between two beliefs of equal size.
double l1_distance(const Belief& a, const Belief& b);

/// Mutable storage used to assemble a model before validation.
///
/// Layouts (row-major):
///   transition  [s][a][s']   = P(s' | s, a)
///   observation [a][o][s']   = P(o | a, s')   (contiguous over s')
///   reward      [s][a]
struct ModelTables {
  std::size_t num_states = 0;
  std::size_t num_actions = 0;
  std::size_t num_observations = 0;
  std::vector<double> transition;
  std::vector<double> observation;
  std::vector<double> reward;
  double discount = 0.0;
  std::vector<double> initial_belief;

  ModelTables() = default;
  ModelTables(std::size_t states, std::size_t actions, std::size_t observations);

  double& T(StateIndex s, ActionIndex a, StateIndex next) {
    return transition[(s * num_actions + a) * num_states + next];
  }
  double& Z(ActionIndex a, StateIndex next, ObservationIndex o) {
    return observation[(a * num_observations + o) * num_states + next];
  }
  double& R(StateIndex s, ActionIndex a) { return reward[s * num_actions + a]; }
};

/// Immutable tabular POMDP. Large tables are reference counted so derived
/// models (agent views, MMDP) share them instead of copying.
class TabularModel {
 public:
  using Table = std::shared_ptr<const std::vector<double>>;

  /// Validates every stochasticity invariant; throws InvalidModel.
  explicit TabularModel(ModelTables tables);

  TabularModel(std::size_t num_states, std::size_t num_actions, std::size_t num_observations,
               Table transition, Table observation, Table reward, double discount,
               Belief initial_belief);

  std::size_t num_states() const noexcept { return num_states_; }
  std::size_t num_actions() const noexcept { return num_actions_; }
  std::size_t num_observations() const noexcept { return num_observations_; }
  double discount() const noexcept { return discount_; }
  const Belief& initial_belief() const noexcept { return initial_belief_; }

  double transition(StateIndex s, ActionIndex a, StateIndex next) const {
    return (*transition_)[(s * num_actions_ + a) * num_states_ + next];
  }
  /// P(· | s, a) as a contiguous row of length num_states.
  std::span<const double> transition_row(StateIndex s, ActionIndex a) const {
    return {transition_->data() + (s * num_actions_ + a) * num_states_, num_states_};
  }
  double observation(ActionIndex a, StateIndex next, ObservationIndex o) const {
    return (*observation_)[(a * num_observations_ + o) * num_states_ + next];
  }
  /// P(o | a, ·) over next states, contiguous.
  std::span<const double> observation_column(ActionIndex a, ObservationIndex o) const {
    return {observation_->data() + (a * num_observations_ + o) * num_states_, num_states_};
  }
  double reward(StateIndex s, ActionIndex a) const { return (*reward_)[s * num_actions_ + a]; }

  const Table& transition_table() const noexcept { return transition_; }
  const Table& observation_table() const noexcept { return observation_; }
  const Table& reward_table() const noexcept { return reward_; }

  /// Deep copy of the tables, for building modified variants.
  ModelTables tables() const;

  TabularModel with_initial_belief(Belief b) const;

  /// FNV-1a over dimensions and table contents.
  std::uint64_t content_hash() const;

  bool operator==(const TabularModel& other) const;

 private:
  void validate() const;

  std::size_t num_states_ = 0;
  std::size_t num_actions_ = 0;
  std::size_t num_observations_ = 0;
  Table transition_;
  Table observation_;
  Table reward_;
  double discount_ = 0.0;
  Belief initial_belief_;
};

/// Row-major codec between per-agent index tuples and flat joint indices.
/// Agent 0 is the most significant digit.
class JointIndexCodec {
 public:
  JointIndexCodec() = default;
  explicit JointIndexCodec(std::vector<std::size_t> sizes);

  std::size_t num_agents() const noexcept { return sizes_.size(); }
  std::size_t size() const noexcept { return total_; }
  std::span<const std::size_t> sizes() const noexcept { return sizes_; }

  std::size_t encode(std::span<const std::size_t> parts) const;
  std::vector<std::size_t> decode(std::size_t flat) const;
  std::size_t component(std::size_t flat, AgentIndex agent) const {
    return (flat / strides_[agent]) % sizes_[agent];
  }
  /// Flat index with agent's component replaced by value.
  std::size_t with_component(std::size_t flat, AgentIndex agent, std::size_t value) const;

  bool operator==(const JointIndexCodec& other) const { return sizes_ == other.sizes_; }

 private:
  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> strides_;
  std::size_t total_ = 0;
};

struct FactoredSpaces {
  JointIndexCodec actions;
  JointIndexCodec observations;

  std::size_t num_agents() const noexcept { return actions.num_agents(); }
  bool operator==(const FactoredSpaces&) const = default;
};

/// Dec-POMDP: a joint tabular model plus the per-agent factoring of its
/// action and observation spaces.
class DecModel {
 public:
  DecModel(TabularModel joint, FactoredSpaces spaces);

  const TabularModel& joint() const noexcept { return joint_; }
  const FactoredSpaces& spaces() const noexcept { return spaces_; }
  std::size_t num_agents() const noexcept { return spaces_.num_agents(); }

  bool operator==(const DecModel& other) const {
    return spaces_ == other.spaces_ && joint_ == other.joint_;
  }

 private:
  TabularModel joint_;
  FactoredSpaces spaces_;
};

/// Predicted next-state distribution sum_s T[s][a][·] b(s) (unnormalized only
/// through rounding).
std::vector<double> predict(const TabularModel& model, const Belief& b, ActionIndex a);

/// Bayes correction of a predicted distribution; nullopt when o is impossible.
std::optional<Belief> condition_on_observation(const TabularModel& model,
                                              std::span<const double> predicted, ActionIndex a,
                                              ObservationIndex o);

/// Bayes filter. Throws ZeroProbabilityObservation when P(o | b, a) = 0.
Belief belief_update(const TabularModel& model, const Belief& b, ActionIndex a,
                     ObservationIndex o);

double observation_likelihood(const TabularModel& model, const Belief& b, ActionIndex a,
                              ObservationIndex o);

/// Joint model with joint actions and joint observations.
TabularModel build_mpomdp(const DecModel& dec);

/// Joint actions, but only agent's own observations (marginalized).
TabularModel build_agent_view(const DecModel& dec, AgentIndex agent);

struct MmdpModel {
  TabularModel model;  // single placeholder observation; the state is read directly
  bool fully_observable = true;
};

MmdpModel build_mmdp(const DecModel& dec);

}  // namespace mcas
