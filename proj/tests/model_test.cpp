#include <doctest.h>

#include <numeric>
#include <random>

#include "mcas/benchmarks.hpp"
#include "mcas/error.hpp"
#include "mcas/model.hpp"
#include "oracles.hpp"

using namespace mcas;

namespace {

DecModel tiger2() { return build_benchmark({Problem::DecTiger, 2, {}}); }

std::size_t joint_index(const DecModel& d, std::vector<std::size_t> parts) {
  return d.spaces().actions.encode(parts);
}
std::size_t joint_obs(const DecModel& d, std::vector<std::size_t> parts) {
  return d.spaces().observations.encode(parts);
}

// 1-agent Dec model with T = identity and uniform Z.
TabularModel uninformative(std::size_t S, std::size_t A, std::size_t O) {
  ModelTables t(S, A, O);
  t.discount = 0.5;
  for (std::size_t s = 0; s < S; ++s)
    for (std::size_t a = 0; a < A; ++a) t.T(s, a, s) = 1.0;
  for (std::size_t a = 0; a < A; ++a)
    for (std::size_t n = 0; n < S; ++n)
      for (std::size_t o = 0; o < O; ++o) t.Z(a, n, o) = 1.0 / static_cast<double>(O);
  t.initial_belief.assign(S, 1.0 / static_cast<double>(S));
  return TabularModel(std::move(t));
}

}  // namespace

TEST_CASE("belief construction validates its input") {
  CHECK_THROWS_AS(Belief({0.5, 0.6}), InvalidModel);
  CHECK_THROWS_AS(Belief({1.5, -0.5}), InvalidModel);
  CHECK_THROWS_AS(Belief::from_weights({0.0, 0.0}), InvalidModel);
  const Belief b = Belief::from_weights({1.0, 3.0});
  CHECK(b[0] == 0.25);
  CHECK(b[1] == 0.75);
  CHECK(Belief::uniform(4)[2] == 0.25);
  CHECK(Belief::point(3, 1)[1] == 1.0);
}

TEST_CASE("model construction rejects non-stochastic tables") {
  ModelTables t(2, 1, 1);
  t.discount = 0.9;
  t.T(0, 0, 0) = 1.0;
  t.T(1, 0, 0) = 0.9;
  t.Z(0, 0, 0) = 1.0;
  t.Z(0, 1, 0) = 1.0;
  t.initial_belief = {0.5, 0.5};
  CHECK_THROWS_AS(TabularModel{t}, InvalidModel);
  t.T(1, 0, 0) = 1.0;
  CHECK_NOTHROW(TabularModel{t});
  t.discount = 1.0;
  CHECK_THROWS_AS(TabularModel{t}, InvalidModel);
}

TEST_CASE("Dec-Tiger joint update after both agents hear left") {
  const DecModel d = tiger2();
  const std::size_t a = joint_index(d, {0, 0});
  const std::size_t o = joint_obs(d, {0, 0});
  const Belief b = belief_update(d.joint(), Belief::uniform(2), a, o);
  const auto expected = oracle::bayes(d.joint(), {0.5, 0.5}, a, o);
  CHECK(oracle::l1(expected, b.probs()) < 1e-15);
  const double hand = 0.85 * 0.85 / (0.85 * 0.85 + 0.15 * 0.15);
  CHECK(b[0] == doctest::Approx(hand).epsilon(1e-14));
  CHECK(b[0] == doctest::Approx(0.9698).epsilon(1e-4));
  CHECK(b[1] == doctest::Approx(0.0302).epsilon(1e-2));
}

TEST_CASE("Dec-Tiger door opening resets the belief") {
  const DecModel d = tiger2();
  const Belief start({0.9, 0.1});
  for (std::size_t a = 0; a < d.joint().num_actions(); ++a) {
    if (a == joint_index(d, {0, 0})) continue;
    for (std::size_t o = 0; o < d.joint().num_observations(); ++o) {
      const Belief b = belief_update(d.joint(), start, a, o);
      const auto expected = oracle::bayes(d.joint(), {0.9, 0.1}, a, o);
      CHECK(oracle::l1(expected, b.probs()) < 1e-15);
      CHECK(b[0] == doctest::Approx(0.5));
    }
  }
}

TEST_CASE("uninformative model leaves the belief unchanged") {
  const TabularModel m = uninformative(3, 2, 4);
  const Belief b({0.2, 0.3, 0.5});
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t o = 0; o < 4; ++o) {
      CHECK(oracle::l1(oracle::to_vec(b), belief_update(m, b, a, o).probs()) < 1e-15);
      CHECK(observation_likelihood(m, b, a, o) == doctest::Approx(0.25));
    }
  }
}

TEST_CASE("observation likelihood") {
  const DecModel d = tiger2();
  const std::size_t a = joint_index(d, {0, 0});
  const std::size_t o = joint_obs(d, {0, 0});
  const double p = observation_likelihood(d.joint(), Belief::point(2, 0), a, o);
  CHECK(p == doctest::Approx(oracle::likelihood(d.joint(), {1.0, 0.0}, a, o)).epsilon(1e-15));
  CHECK(p == doctest::Approx(0.7225).epsilon(1e-12));

  // Deterministic observations: the emitted observation has likelihood 1.
  const DecModel bc = build_benchmark({Problem::Broadcast, 2, {}});
  const Belief known = Belief::point(4, 1);
  const std::size_t wait = 0;
  double total = 0.0;
  std::size_t certain = 0;
  for (std::size_t obs = 0; obs < 4; ++obs) {
    const double q = observation_likelihood(bc.joint(), Belief::point(4, 3), wait, obs);
    CHECK((q == doctest::Approx(1.0) || q == doctest::Approx(0.0)));
    if (q > 0.5) ++certain;
    total += q;
  }
  CHECK(certain == 1);
  CHECK(total == doctest::Approx(1.0));
  CHECK_THROWS_AS(belief_update(bc.joint(), known, wait, 0), ZeroProbabilityObservation);
}

TEST_CASE("Bayes consistency on random models") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const TabularModel m = oracle::random_model(rng, 5, 3, 4, 0.9);
    const auto b = oracle::random_simplex(rng, 5);
    const Belief belief(b);
    for (std::size_t a = 0; a < 3; ++a) {
      double total = 0.0;
      std::vector<double> mixture(5, 0.0);
      for (std::size_t o = 0; o < 4; ++o) {
        const double p = observation_likelihood(m, belief, a, o);
        CHECK(p == doctest::Approx(oracle::likelihood(m, b, a, o)).epsilon(1e-12));
        total += p;
        const Belief next = belief_update(m, belief, a, o);
        CHECK(oracle::l1(oracle::bayes(m, b, a, o), next.probs()) < 1e-12);
        double sum = 0.0;
        for (double x : next.probs()) {
          CHECK(x >= 0.0);
          sum += x;
        }
        CHECK(std::abs(sum - 1.0) < 1e-9);
        for (std::size_t s = 0; s < 5; ++s) mixture[s] += p * next[s];
      }
      CHECK(std::abs(total - 1.0) < 1e-9);
      const auto predicted = predict(m, belief, a);
      CHECK(oracle::l1(mixture, predicted) < 1e-12);
    }
  }
}

TEST_CASE("joint index codec is a bijection") {
  const JointIndexCodec codec({3, 5, 2, 7});
  CHECK(codec.size() == 210);
  for (std::size_t flat = 0; flat < codec.size(); ++flat) {
    const auto parts = codec.decode(flat);
    CHECK(codec.encode(parts) == flat);
    for (std::size_t i = 0; i < 4; ++i) CHECK(codec.component(flat, i) == parts[i]);
  }
  // Agent 0 is the most significant digit.
  CHECK(codec.encode(std::vector<std::size_t>{1, 0, 0, 0}) == 70);
  CHECK(codec.with_component(0, 2, 1) == 7);

  const JointIndexCodec big({10, 10, 10, 10});
  for (std::size_t flat = 0; flat < big.size(); ++flat) CHECK(big.encode(big.decode(flat)) == flat);
}

TEST_CASE("space sizes of the derived models") {
  const DecModel d = tiger2();
  const TabularModel joint = build_mpomdp(d);
  CHECK(joint.num_states() == 2);
  CHECK(joint.num_actions() == 9);
  CHECK(joint.num_observations() == 4);
  CHECK(joint == d.joint());

  const TabularModel view = build_agent_view(d, 0);
  CHECK(view.num_states() == 2);
  CHECK(view.num_actions() == 9);
  CHECK(view.num_observations() == 2);

  const DecModel bc = build_benchmark({Problem::Broadcast, 3, {}});
  CHECK(build_mpomdp(bc).num_actions() == 8);
  CHECK(build_mpomdp(bc).num_observations() == 8);

  const MmdpModel mmdp = build_mmdp(d);
  CHECK(mmdp.fully_observable);
  CHECK(mmdp.model.num_observations() == 1);
  CHECK(mmdp.model.num_actions() == 9);
}

TEST_CASE("single-agent Dec model is its own MPOMDP") {
  std::mt19937_64 rng(3);
  const TabularModel m = oracle::random_model(rng, 3, 2, 2, 0.8);
  const DecModel d(m, FactoredSpaces{JointIndexCodec({2}), JointIndexCodec({2})});
  CHECK(build_mpomdp(d) == m);
  CHECK(build_agent_view(d, 0) == m);
}

TEST_CASE("agent views marginalize joint observations") {
  for (const BenchmarkSpec& spec :
       {BenchmarkSpec{Problem::DecTiger, 3, {}}, BenchmarkSpec{Problem::Broadcast, 2, {}},
        BenchmarkSpec{Problem::Meet2x2, 2, {}}}) {
    const DecModel d = build_benchmark(spec);
    const auto& obs = d.spaces().observations;
    for (std::size_t i = 0; i < d.num_agents(); ++i) {
      const TabularModel v = build_agent_view(d, i);
      for (std::size_t a = 0; a < v.num_actions(); ++a) {
        for (std::size_t n = 0; n < v.num_states(); ++n) {
          double row = 0.0;
          for (std::size_t oi = 0; oi < v.num_observations(); ++oi) {
            double expected = 0.0;
            for (std::size_t o = 0; o < obs.size(); ++o)
              if (obs.component(o, i) == oi) expected += d.joint().observation(a, n, o);
            CHECK(v.observation(a, n, oi) == doctest::Approx(expected).epsilon(1e-14));
            row += v.observation(a, n, oi);
          }
          CHECK(std::abs(row - 1.0) < 1e-9);
          for (std::size_t s = 0; s < v.num_states(); ++s)
            CHECK(v.transition(s, a, n) == d.joint().transition(s, a, n));
        }
      }
    }
  }
}

TEST_CASE("agent view of a deterministic paired observation is deterministic") {
  // Broadcast observations are (own buffer, teammate buffer): a deterministic function of s'.
  const DecModel d = build_benchmark({Problem::Broadcast, 2, {}});
  const TabularModel v = build_agent_view(d, 1);
  for (std::size_t a = 0; a < v.num_actions(); ++a)
    for (std::size_t n = 0; n < 4; ++n) {
      CHECK(v.observation(a, n, n % 2) == 1.0);
      CHECK(v.observation(a, n, 1 - n % 2) == 0.0);
    }
}

TEST_CASE("content hash distinguishes models") {
  const DecModel a = tiger2();
  const DecModel b = build_benchmark({Problem::DecTiger, 2, {Qualifier::UI}});
  const DecModel c = build_benchmark({Problem::DecTiger, 3, {}});
  CHECK(a.joint().content_hash() == tiger2().joint().content_hash());
  CHECK(a.joint().content_hash() != c.joint().content_hash());
  CHECK(b.joint().content_hash() == a.joint().content_hash());  // same start [0.5, 0.5]
  const TabularModel shifted = a.joint().with_initial_belief(Belief({0.3, 0.7}));
  CHECK(shifted.content_hash() != a.joint().content_hash());
}
