#include <doctest.h>

#include <random>

#include "mcas/error.hpp"
#include "mcas/policy.hpp"
#include "oracles.hpp"

using namespace mcas;

namespace {

AlphaVectorPolicy two_vectors() { return AlphaVectorPolicy(2, 2, {{1, 0}, {0, 1}}, {0, 1}); }

AlphaVectorPolicy random_policy(std::mt19937_64& rng, std::size_t S, std::size_t K,
                                std::size_t A) {
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::vector<std::vector<double>> v(K, std::vector<double>(S));
  std::vector<ActionIndex> acts(K);
  for (std::size_t k = 0; k < K; ++k) {
    for (double& x : v[k]) x = u(rng);
    acts[k] = k % A;
  }
  return AlphaVectorPolicy(S, A, std::move(v), std::move(acts));
}

double brute_value(const AlphaVectorPolicy& p, const std::vector<double>& b) {
  double best = -1e300;
  for (std::size_t k = 0; k < p.size(); ++k) {
    double v = 0.0;
    for (std::size_t s = 0; s < b.size(); ++s) v += p.vector(k)[s] * b[s];
    best = std::max(best, v);
  }
  return best;
}

}  // namespace

TEST_CASE("value of a single vector is a dot product") {
  const AlphaVectorPolicy p(2, 1, {{1, 2}}, {0});
  CHECK(policy_value(p, Belief({0.5, 0.5})) == 1.5);
  CHECK(policy_action(p, Belief({0.9, 0.1})) == 0);
  CHECK(policy_action(p, Belief({0.0, 1.0})) == 0);
}

TEST_CASE("dominant index and tie-break") {
  const AlphaVectorPolicy p = two_vectors();
  CHECK(dominant_alpha_index(p, Belief({0.9, 0.1})) == 0);
  CHECK(dominant_alpha_index(p, Belief({0.5, 0.5})) == 0);
  CHECK(dominant_alpha_index(p, Belief({0.4, 0.6})) == 1);
  CHECK(policy_action(p, Belief({0.4, 0.6})) == 1);
}

TEST_CASE("dimension mismatch") {
  const AlphaVectorPolicy p = two_vectors();
  CHECK_THROWS_AS(policy_value(p, Belief::uniform(3)), DimensionMismatch);
  CHECK_THROWS_AS(dominant_alpha_index(p, Belief::uniform(1)), DimensionMismatch);
}

TEST_CASE("construction validates labels and shapes") {
  CHECK_THROWS(AlphaVectorPolicy(2, 2, {}, {}));
  CHECK_THROWS(AlphaVectorPolicy(2, 2, {{1, 0}}, {2}));
  CHECK_THROWS(AlphaVectorPolicy(2, 2, {{1, 0, 0}}, {0}));
  CHECK_THROWS(AlphaVectorPolicy(2, 2, {{1, 0}}, {0, 1}));
}

TEST_CASE("dominated vectors are pruned and never change the value") {
  const AlphaVectorPolicy base = two_vectors();
  const AlphaVectorPolicy padded(2, 2, {{1, 0}, {0.5, -1}, {0, 1}, {1, 0}}, {0, 1, 1, 1});
  CHECK(padded.size() == 2);
  CHECK(padded == base);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const Belief b(oracle::random_simplex(rng, 2));
    CHECK(policy_value(padded, b) == policy_value(base, b));
  }
}

TEST_CASE("no stored vector is pointwise dominated") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const AlphaVectorPolicy p = random_policy(rng, 3, 30, 4);
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = 0; j < p.size(); ++j) {
        if (i == j) continue;
        bool dominated = true;
        for (std::size_t s = 0; s < 3; ++s) dominated &= p.vector(i)[s] <= p.vector(j)[s];
        CHECK_FALSE(dominated);
      }
    }
  }
}

TEST_CASE("dominant index attains the policy value on random inputs") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const AlphaVectorPolicy p = random_policy(rng, 4, 12, 3);
    const auto raw = oracle::random_simplex(rng, 4);
    const Belief b(raw);
    const std::size_t k = dominant_alpha_index(p, b);
    double vk = 0.0;
    for (std::size_t s = 0; s < 4; ++s) vk += p.vector(k)[s] * raw[s];
    CHECK(std::abs(vk - policy_value(p, b)) <= 1e-12);
    CHECK(std::abs(brute_value(p, raw) - policy_value(p, b)) <= 1e-12);
    // Some vector labeled with the returned action dominates every vector at b.
    const ActionIndex a = policy_action(p, b);
    bool some = false;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p.action_of(i) != a) continue;
      bool all = true;
      for (std::size_t j = 0; j < p.size(); ++j) {
        double diff = 0.0;
        for (std::size_t s = 0; s < 4; ++s) diff += (p.vector(i)[s] - p.vector(j)[s]) * raw[s];
        all &= diff >= -1e-12;
      }
      some |= all;
    }
    CHECK(some);
  }
}

TEST_CASE("value function is convex") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const AlphaVectorPolicy p = random_policy(rng, 3, 8, 2);
    const auto b1 = oracle::random_simplex(rng, 3), b2 = oracle::random_simplex(rng, 3);
    const double lambda = u(rng);
    std::vector<double> mix(3);
    for (std::size_t s = 0; s < 3; ++s) mix[s] = lambda * b1[s] + (1 - lambda) * b2[s];
    const double lhs = policy_value(p, Belief::from_weights(mix));
    const double rhs = lambda * policy_value(p, Belief(b1)) + (1 - lambda) * policy_value(p, Belief(b2));
    CHECK(lhs <= rhs + 1e-12);
  }
}

TEST_CASE("policy text round trip is exact") {
  std::mt19937_64 rng(2);
  const AlphaVectorPolicy p = random_policy(rng, 5, 10, 3);
  const std::string text = emit_policy(p);
  CHECK(text.rfind("alpha-policy v1\nstates: 5\n", 0) == 0);
  const AlphaVectorPolicy back = parse_policy(text, 3);
  CHECK(back == p);
  CHECK(emit_policy(back) == text);
  CHECK_THROWS_AS(parse_policy("alpha-policy v2\n"), SyntaxError);
  CHECK_THROWS_AS(parse_policy(text, 2), InvalidModel);
}
