#include "mcas/model.hpp"

#include <cmath>
#include <cstring>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>

#include "mcas/error.hpp"
#include "mcas/kernels.hpp"

namespace mcas {

// ---------------------------------------------------------------------------
// Belief

Belief::Belief(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw InvalidModel("belief over zero states");
  double total = 0.0;
  for (std::size_t s = 0; s < probs_.size(); ++s) {
    if (!(probs_[s] >= 0.0) || probs_[s] > 1.0 + kStochasticTolerance) {
      throw InvalidModel("belief entry " + std::to_string(s) + " out of [0,1]");
    }
    total += probs_[s];
  }
  if (std::fabs(total - 1.0) > kStochasticTolerance) {
    throw InvalidModel("belief sums to " + std::to_string(total));
  }
}

Belief Belief::uniform(std::size_t num_states) {
  if (num_states == 0) throw InvalidModel("belief over zero states");
  return Belief(Trusted{}, std::vector<double>(num_states, 1.0 / static_cast<double>(num_states)));
}

Belief Belief::point(std::size_t num_states, StateIndex s) {
  if (s >= num_states) throw InvalidModel("point belief index out of range");
  std::vector<double> p(num_states, 0.0);
  p[s] = 1.0;
  return Belief(Trusted{}, std::move(p));
}

Belief Belief::from_weights(std::vector<double> weights) {
  const double total = kernels::sum(weights);
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw InvalidModel("cannot normalize weights with sum " + std::to_string(total));
  }
  kernels::scale(weights, 1.0 / total);
  return Belief(Trusted{}, std::move(weights));
}

double l1_distance(const Belief& a, const Belief& b) {
  if (a.size() != b.size()) throw DimensionMismatch("l1_distance: belief sizes differ");
  return kernels::l1_distance(a.probs(), b.probs());
}

// ---------------------------------------------------------------------------
// TabularModel

ModelTables::ModelTables(std::size_t states, std::size_t actions, std::size_t observations)
    : num_states(states),
      num_actions(actions),
      num_observations(observations),
      transition(states * actions * states, 0.0),
      observation(actions * observations * states, 0.0),
      reward(states * actions, 0.0),
      initial_belief(states, states == 0 ? 0.0 : 1.0 / static_cast<double>(states)) {}

namespace {

TabularModel::Table share(std::vector<double>&& v) {
  return std::make_shared<const std::vector<double>>(std::move(v));
}

}  // namespace

TabularModel::TabularModel(ModelTables tables)
    : num_states_(tables.num_states),
      num_actions_(tables.num_actions),
      num_observations_(tables.num_observations),
      transition_(share(std::move(tables.transition))),
      observation_(share(std::move(tables.observation))),
      reward_(share(std::move(tables.reward))),
      discount_(tables.discount),
      initial_belief_(std::move(tables.initial_belief)) {
  validate();
}

TabularModel::TabularModel(std::size_t num_states, std::size_t num_actions,
                           std::size_t num_observations, Table transition, Table observation,
                           Table reward, double discount, Belief initial_belief)
    : num_states_(num_states),
      num_actions_(num_actions),
      num_observations_(num_observations),
      transition_(std::move(transition)),
      observation_(std::move(observation)),
      reward_(std::move(reward)),
      discount_(discount),
      initial_belief_(std::move(initial_belief)) {
  validate();
}

void TabularModel::validate() const {
  if (num_states_ == 0 || num_actions_ == 0 || num_observations_ == 0) {
    throw InvalidModel("model spaces must be nonempty");
  }
  if (!transition_ || transition_->size() != num_states_ * num_actions_ * num_states_) {
    throw InvalidModel("transition table has wrong size");
  }
  if (!observation_ || observation_->size() != num_actions_ * num_observations_ * num_states_) {
    throw InvalidModel("observation table has wrong size");
  }
  if (!reward_ || reward_->size() != num_states_ * num_actions_) {
    throw InvalidModel("reward table has wrong size");
  }
  if (!(discount_ >= 0.0 && discount_ < 1.0)) {
    throw InvalidModel("discount must lie in [0,1), got " + std::to_string(discount_));
  }
  if (initial_belief_.size() != num_states_) {
    throw InvalidModel("initial belief has wrong size");
  }
  for (StateIndex s = 0; s < num_states_; ++s) {
    for (ActionIndex a = 0; a < num_actions_; ++a) {
      double total = 0.0;
      for (double p : transition_row(s, a)) {
        if (!(p >= 0.0 && p <= 1.0)) {
          throw InvalidModel("transition probability out of [0,1] at (s=" + std::to_string(s) +
                             ", a=" + std::to_string(a) + ")");
        }
        total += p;
      }
      if (std::fabs(total - 1.0) > kStochasticTolerance) {
        std::ostringstream msg;
        msg << "transition row (s=" << s << ", a=" << a << ") sums to " << total;
        throw InvalidModel(msg.str());
      }
    }
  }
  std::vector<double> column_sum(num_states_);
  for (ActionIndex a = 0; a < num_actions_; ++a) {
    std::fill(column_sum.begin(), column_sum.end(), 0.0);
    for (ObservationIndex o = 0; o < num_observations_; ++o) {
      auto col = observation_column(a, o);
      for (StateIndex sp = 0; sp < num_states_; ++sp) {
        if (!(col[sp] >= 0.0 && col[sp] <= 1.0)) {
          throw InvalidModel("observation probability out of [0,1] at (a=" + std::to_string(a) +
                             ", s'=" + std::to_string(sp) + ", o=" + std::to_string(o) + ")");
        }
        column_sum[sp] += col[sp];
      }
    }
    for (StateIndex sp = 0; sp < num_states_; ++sp) {
      if (std::fabs(column_sum[sp] - 1.0) > kStochasticTolerance) {
        std::ostringstream msg;
        msg << "observation row (a=" << a << ", s'=" << sp << ") sums to " << column_sum[sp];
        throw InvalidModel(msg.str());
      }
    }
  }
  for (double r : *reward_) {
    if (!std::isfinite(r)) throw InvalidModel("non-finite reward");
  }
}

ModelTables TabularModel::tables() const {
  ModelTables t;
  t.num_states = num_states_;
  t.num_actions = num_actions_;
  t.num_observations = num_observations_;
  t.transition = *transition_;
  t.observation = *observation_;
  t.reward = *reward_;
  t.discount = discount_;
  t.initial_belief.assign(initial_belief_.probs().begin(), initial_belief_.probs().end());
  return t;
}

TabularModel TabularModel::with_initial_belief(Belief b) const {
  return TabularModel(num_states_, num_actions_, num_observations_, transition_, observation_,
                      reward_, discount_, std::move(b));
}

namespace {

class Fnv1a {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h_ ^= p[i];
      h_ *= 0x100000001b3ULL;
    }
  }
  void value(std::uint64_t v) { bytes(&v, sizeof v); }
  void doubles(std::span<const double> v) { bytes(v.data(), v.size_bytes()); }
  std::uint64_t digest() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

}  // namespace

std::uint64_t TabularModel::content_hash() const {
  Fnv1a h;
  h.value(num_states_);
  h.value(num_actions_);
  h.value(num_observations_);
  h.doubles(std::span<const double>(&discount_, 1));
  h.doubles(initial_belief_.probs());
  h.doubles(*transition_);
  h.doubles(*observation_);
  h.doubles(*reward_);
  return h.digest();
}

bool TabularModel::operator==(const TabularModel& other) const {
  auto same = [](const Table& a, const Table& b) { return a == b || *a == *b; };
  return num_states_ == other.num_states_ && num_actions_ == other.num_actions_ &&
         num_observations_ == other.num_observations_ && discount_ == other.discount_ &&
         initial_belief_ == other.initial_belief_ && same(transition_, other.transition_) &&
         same(observation_, other.observation_) && same(reward_, other.reward_);
}

// ---------------------------------------------------------------------------
// Joint index codec

JointIndexCodec::JointIndexCodec(std::vector<std::size_t> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty()) throw InvalidModel("joint space needs at least one agent");
  strides_.assign(sizes_.size(), 1);
  total_ = 1;
  for (std::size_t i = sizes_.size(); i-- > 0;) {
    if (sizes_[i] == 0) throw InvalidModel("agent space of size zero");
    strides_[i] = total_;
    total_ *= sizes_[i];
  }
}

std::size_t JointIndexCodec::encode(std::span<const std::size_t> parts) const {
  if (parts.size() != sizes_.size()) {
    throw DimensionMismatch("joint index needs " + std::to_string(sizes_.size()) + " parts");
  }
  std::size_t flat = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] >= sizes_[i]) throw DimensionMismatch("joint index part out of range");
    flat += parts[i] * strides_[i];
  }
  return flat;
}

std::vector<std::size_t> JointIndexCodec::decode(std::size_t flat) const {
  if (flat >= total_) throw DimensionMismatch("flat joint index out of range");
  std::vector<std::size_t> parts(sizes_.size());
  for (std::size_t i = 0; i < sizes_.size(); ++i) parts[i] = component(flat, i);
  return parts;
}

std::size_t JointIndexCodec::with_component(std::size_t flat, AgentIndex agent,
                                            std::size_t value) const {
  const std::size_t old = component(flat, agent);
  return flat - old * strides_[agent] + value * strides_[agent];
}

DecModel::DecModel(TabularModel joint, FactoredSpaces spaces)
    : joint_(std::move(joint)), spaces_(std::move(spaces)) {
  if (spaces_.actions.num_agents() != spaces_.observations.num_agents()) {
    throw InvalidModel("action and observation factorings disagree on the number of agents");
  }
  if (joint_.num_actions() != spaces_.actions.size()) {
    throw InvalidModel("joint action count does not match the product of agent action sizes");
  }
  if (joint_.num_observations() != spaces_.observations.size()) {
    throw InvalidModel(
        "joint observation count does not match the product of agent observation sizes");
  }
}

// ---------------------------------------------------------------------------
// Belief arithmetic

namespace {

void check_indices(const TabularModel& model, const Belief& b, ActionIndex a,
                   ObservationIndex o) {
  if (b.size() != model.num_states()) throw DimensionMismatch("belief size != number of states");
  if (a >= model.num_actions()) throw DimensionMismatch("action index out of range");
  if (o >= model.num_observations()) throw DimensionMismatch("observation index out of range");
}

}  // namespace

std::vector<double> predict(const TabularModel& model, const Belief& b, ActionIndex a) {
  if (b.size() != model.num_states()) throw DimensionMismatch("belief size != number of states");
  if (a >= model.num_actions()) throw DimensionMismatch("action index out of range");
  std::vector<double> next(model.num_states(), 0.0);
  for (StateIndex s = 0; s < model.num_states(); ++s) {
    if (b[s] > 0.0) kernels::axpy(b[s], model.transition_row(s, a), next);
  }
  return next;
}

std::optional<Belief> condition_on_observation(const TabularModel& model,
                                              std::span<const double> predicted, ActionIndex a,
                                              ObservationIndex o) {
  std::vector<double> next(predicted.begin(), predicted.end());
  kernels::multiply(next, model.observation_column(a, o), next);
  const double total = kernels::sum(next);
  if (!(total > 0.0)) return std::nullopt;
  return Belief::from_weights(std::move(next));
}

Belief belief_update(const TabularModel& model, const Belief& b, ActionIndex a,
                     ObservationIndex o) {
  check_indices(model, b, a, o);
  auto next = condition_on_observation(model, predict(model, b, a), a, o);
  if (!next) {
    throw ZeroProbabilityObservation("observation " + std::to_string(o) +
                                     " has zero probability under action " + std::to_string(a));
  }
  return std::move(*next);
}

double observation_likelihood(const TabularModel& model, const Belief& b, ActionIndex a,
                              ObservationIndex o) {
  check_indices(model, b, a, o);
  const std::vector<double> next = predict(model, b, a);
  return kernels::dot(next, model.observation_column(a, o));
}

// ---------------------------------------------------------------------------
// Model transformations

TabularModel build_mpomdp(const DecModel& dec) { return dec.joint(); }

TabularModel build_agent_view(const DecModel& dec, AgentIndex agent) {
  const auto& spaces = dec.spaces();
  if (agent >= spaces.num_agents()) throw DimensionMismatch("agent index out of range");
  const TabularModel& joint = dec.joint();
  const std::size_t S = joint.num_states();
  const std::size_t A = joint.num_actions();
  const std::size_t own = spaces.observations.sizes()[agent];

  std::vector<double> z(A * own * S, 0.0);
  for (ActionIndex a = 0; a < A; ++a) {
    for (ObservationIndex jo = 0; jo < joint.num_observations(); ++jo) {
      const std::size_t oi = spaces.observations.component(jo, agent);
      kernels::axpy(1.0, joint.observation_column(a, jo),
                    std::span<double>(z.data() + (a * own + oi) * S, S));
    }
  }
  return TabularModel(S, A, own, joint.transition_table(),
                      std::make_shared<const std::vector<double>>(std::move(z)),
                      joint.reward_table(), joint.discount(), joint.initial_belief());
}

MmdpModel build_mmdp(const DecModel& dec) {
  // The state is observed directly, so the observation table is a single
  // placeholder symbol; solvers and the simulator read the state instead.
  const TabularModel& joint = dec.joint();
  std::vector<double> z(joint.num_actions() * joint.num_states(), 1.0);
  return MmdpModel{TabularModel(joint.num_states(), joint.num_actions(), 1,
                                joint.transition_table(),
                                std::make_shared<const std::vector<double>>(std::move(z)),
                                joint.reward_table(), joint.discount(), joint.initial_belief()),
                   true};
}

}  // namespace mcas
