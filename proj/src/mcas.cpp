#include "mcas/mcas.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "internal/random.hpp"
#include "mcas/error.hpp"
#include "mcas/kernels.hpp"

namespace mcas {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// L1 distance, abandoning the sum once it exceeds bound.
double l1_bounded(std::span<const double> a, std::span<const double> b, double bound) {
  constexpr std::size_t kChunk = 32;
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); i += kChunk) {
    const std::size_t len = std::min(kChunk, a.size() - i);
    d += kernels::l1_distance(a.subspan(i, len), b.subspan(i, len));
    if (d > bound) return d;
  }
  return d;
}

// Closest member within delta (inclusive), lowest index among equals.
std::size_t closest_within(const std::vector<Belief>& members, const Belief& b, double delta) {
  std::size_t best = kNone;
  double best_d = delta;
  for (std::size_t k = 0; k < members.size(); ++k) {
    const double d = l1_bounded(members[k].probs(), b.probs(), best_d);
    if (d < best_d || (best == kNone && d <= best_d)) {
      best = k;
      best_d = d;
    }
  }
  return best;
}

void merge_or_append(WeightedBeliefSet& out, Belief b, double w, double delta) {
  const std::size_t k = closest_within(out.beliefs, b, delta);
  if (k == kNone) {
    out.add(std::move(b), w);
  } else {
    out.weights[k] += w;
  }
}

}  // namespace

double WeightedBeliefSet::total_weight() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

void McasConfig::validate() const {
  if (!(delta_single >= 0.0) || !(delta_joint >= 0.0)) {
    throw InvalidModel("similarity thresholds must be nonnegative");
  }
  if (max_beliefs < 1) throw InvalidModel("max_beliefs must be at least 1");
}

std::size_t suggestion_payload(const AlphaVectorPolicy& policy, const Belief& b,
                               MessageMode mode) {
  return mode == MessageMode::Action ? policy_action(policy, b) : dominant_alpha_index(policy, b);
}

WeightedBeliefSet prune_beliefs(const AlphaVectorPolicy& policy, const WeightedBeliefSet& set,
                                const Suggestion& msg, MessageMode mode) {
  WeightedBeliefSet out;
  for (std::size_t k = 0; k < set.size(); ++k) {
    if (suggestion_payload(policy, set.beliefs[k], mode) == msg.payload) {
      out.add(set.beliefs[k], set.weights[k]);
    }
  }
  if (out.empty()) {
    throw EmptyAfterPrune("no estimated belief of agent " + std::to_string(msg.sender) +
                          " suggests " + std::to_string(msg.payload));
  }
  return out;
}

WeightedBeliefSet expand_and_merge(const TabularModel& agent_model, const WeightedBeliefSet& set,
                                   ActionIndex joint_action, double delta_single) {
  WeightedBeliefSet out;
  for (std::size_t k = 0; k < set.size(); ++k) {
    const std::vector<double> predicted = predict(agent_model, set.beliefs[k], joint_action);
    const double w = set.weights[k] + 1.0;
    for (ObservationIndex o = 0; o < agent_model.num_observations(); ++o) {
      auto next = condition_on_observation(agent_model, predicted, joint_action, o);
      if (!next) continue;
      merge_or_append(out, std::move(*next), w, delta_single);
    }
  }
  return out;
}

WeightedBeliefSet reduce_to_max_limit(const WeightedBeliefSet& set, std::size_t max_beliefs) {
  if (max_beliefs < 1) throw InvalidModel("max_beliefs must be at least 1");
  if (set.size() <= max_beliefs) return set;

  // Members never move, only weights change, so one sorted pass over all
  // pairs visits closest pairs in the same order as recomputing each time.
  struct Pair {
    double d;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  const std::size_t n = set.size();
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      pairs.push_back({l1_distance(set.beliefs[i], set.beliefs[j]), i, j});
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.d != b.d) return a.d < b.d;
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });

  std::vector<double> w = set.weights;
  std::vector<bool> alive(n, true);
  std::size_t remaining = n;
  for (const Pair& p : pairs) {
    if (remaining <= max_beliefs) break;
    if (!alive[p.i] || !alive[p.j]) continue;
    const std::size_t drop = w[p.i] < w[p.j] ? p.i : p.j;  // ties drop the higher index j
    const std::size_t keep = drop == p.i ? p.j : p.i;
    w[keep] += w[drop];
    alive[drop] = false;
    --remaining;
  }
  WeightedBeliefSet out;
  for (std::size_t k = 0; k < n; ++k) {
    if (alive[k]) out.add(set.beliefs[k], w[k]);
  }
  return out;
}

Belief conflate(std::span<const Belief> beliefs) {
  if (beliefs.empty()) throw InvalidModel("conflate needs at least one belief");
  std::vector<double> product(beliefs[0].probs().begin(), beliefs[0].probs().end());
  for (std::size_t k = 1; k < beliefs.size(); ++k) {
    if (beliefs[k].size() != product.size()) throw DimensionMismatch("conflate: sizes differ");
    kernels::multiply(product, beliefs[k].probs(), product);
  }
  if (!(kernels::sum(product) > 0.0)) {
    throw DisjointSupports("conflation of beliefs with disjoint supports");
  }
  return Belief::from_weights(std::move(product));
}

Belief average_beliefs(std::span<const Belief> beliefs) {
  if (beliefs.empty()) throw InvalidModel("average needs at least one belief");
  std::vector<double> acc(beliefs[0].size(), 0.0);
  for (const Belief& b : beliefs) {
    if (b.size() != acc.size()) throw DimensionMismatch("average: sizes differ");
    kernels::axpy(1.0, b.probs(), acc);
  }
  return Belief::from_weights(std::move(acc));
}

Belief combine(std::span<const Belief> beliefs, Combiner combiner) {
  return combiner == Combiner::Conflation ? conflate(beliefs) : average_beliefs(beliefs);
}

Belief exact_joint_update(const DecModel& dec, const Belief& prev_joint, ActionIndex joint_action,
                          std::span<const ObservationIndex> observations) {
  if (observations.size() != dec.num_agents()) {
    throw DimensionMismatch("need one observation per agent");
  }
  const auto& codec = dec.spaces().observations;
  for (std::size_t i = 0; i < observations.size(); ++i) {
    if (observations[i] >= codec.sizes()[i]) throw DimensionMismatch("observation out of range");
  }
  return belief_update(dec.joint(), prev_joint, joint_action, codec.encode(observations));
}

Belief select_joint_belief(const Belief& own, std::span<const WeightedBeliefSet> sets,
                           const McasConfig& cfg, std::mt19937_64& rng) {
  if (sets.empty()) return own;
  for (const auto& s : sets) {
    if (s.empty()) throw InvalidModel("select_joint_belief needs nonempty estimate sets");
  }

  std::vector<Belief> candidates;
  std::vector<double> weights;
  std::vector<std::size_t> pick(sets.size(), 0);
  std::vector<Belief> members(sets.size() + 1);
  members[0] = own;
  for (;;) {
    double w = 0.0;
    for (std::size_t j = 0; j < sets.size(); ++j) {
      members[j + 1] = sets[j].beliefs[pick[j]];
      w += sets[j].weights[pick[j]];
    }
    try {
      Belief c = combine(members, cfg.combiner);
      const std::size_t k = closest_within(candidates, c, cfg.delta_joint);
      if (k == kNone) {
        candidates.push_back(std::move(c));
        weights.push_back(w);
      } else {
        weights[k] += w;
      }
    } catch (const DisjointSupports&) {
      // contradictory tuple: dropped
    }
    std::size_t j = 0;
    while (j < sets.size() && ++pick[j] == sets[j].size()) pick[j++] = 0;
    if (j == sets.size()) break;
  }
  if (candidates.empty()) {
    throw AllCandidatesInvalid("every candidate joint belief had disjoint supports");
  }
  // Normalizing the weights would not change the ranking; compare raw sums.
  const double top = *std::max_element(weights.begin(), weights.end());
  std::vector<std::size_t> tied;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] == top) tied.push_back(k);
  }
  const std::size_t chosen = tied.size() == 1 ? tied[0] : tied[detail::uniform_index(rng, tied.size())];
  return candidates[chosen];
}

Belief select_joint_belief(const Belief& own, std::span<const WeightedBeliefSet> sets,
                           const McasConfig& cfg) {
  std::mt19937_64 rng(cfg.rng_seed);
  return select_joint_belief(own, sets, cfg, rng);
}

}  // namespace mcas
