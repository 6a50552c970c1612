#include <doctest.h>

#include "mcas/benchmarks.hpp"
#include "mcas/error.hpp"

using namespace mcas;
using Q = Qualifier;

namespace {

void check_stochastic(const TabularModel& m) {
  for (std::size_t s = 0; s < m.num_states(); ++s)
    for (std::size_t a = 0; a < m.num_actions(); ++a) {
      double row = 0.0;
      for (double p : m.transition_row(s, a)) {
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
        row += p;
      }
      CHECK(std::abs(row - 1.0) <= 1e-9);
    }
  for (std::size_t a = 0; a < m.num_actions(); ++a)
    for (std::size_t n = 0; n < m.num_states(); ++n) {
      double row = 0.0;
      for (std::size_t o = 0; o < m.num_observations(); ++o) row += m.observation(a, n, o);
      CHECK(std::abs(row - 1.0) <= 1e-9);
    }
}

}  // namespace

TEST_CASE("every bundled benchmark is a valid model") {
  for (const BenchmarkSpec& spec : table1_specs()) {
    if (spec.problem == Problem::Meet3x3 && spec.num_agents == 3) continue;
    CAPTURE(spec.key());
    check_stochastic(build_benchmark(spec).joint());
  }
}

TEST_CASE("space sizes") {
  const DecModel tiger = build_benchmark({Problem::DecTiger, 2, {}});
  CHECK(tiger.joint().num_states() == 2);
  CHECK(tiger.spaces().actions.sizes()[0] == 3);
  CHECK(tiger.spaces().observations.sizes()[1] == 2);
  CHECK(build_benchmark({Problem::DecTiger, 4, {}}).joint().num_actions() == 81);
  CHECK(build_benchmark({Problem::Broadcast, 3, {}}).joint().num_states() == 8);
  CHECK(build_benchmark({Problem::Meet2x2, 2, {}}).joint().num_states() == 16);
  CHECK(build_benchmark({Problem::Meet3x3, 2, {}}).joint().num_actions() == 25);
  const DecModel box = build_benchmark({Problem::BoxPush, 2, {}});
  CHECK(box.joint().num_actions() == 16);
  CHECK(box.joint().num_observations() == 25);
}

TEST_CASE("Dec-Tiger two-agent rewards") {
  const DecModel d = build_benchmark({Problem::DecTiger, 2, {}});
  auto r = [&](std::size_t s, std::size_t a0, std::size_t a1) {
    return d.joint().reward(s, d.spaces().actions.encode(std::vector<std::size_t>{a0, a1}));
  };
  // state 0: tiger behind the left door; action 1 opens left, 2 opens right.
  CHECK(r(0, 0, 0) == -2);
  CHECK(r(0, 2, 2) == 20);
  CHECK(r(0, 1, 1) == -50);
  CHECK(r(0, 0, 2) == 9);
  CHECK(r(0, 0, 1) == -101);
  CHECK(r(0, 1, 2) == -100);
  CHECK(r(1, 1, 1) == 20);
}

TEST_CASE("DP sets the three-agent buffer fill rates") {
  const DecModel d = build_benchmark({Problem::Broadcast, 3, {Q::DP}});
  // From all-empty buffers with everyone waiting, agent i refills with its own rate.
  const JointIndexCodec bits({2, 2, 2});
  const std::vector<double> expected = {0.2, 0.4, 0.4};
  for (std::size_t i = 0; i < 3; ++i) {
    double p = 0.0;
    for (std::size_t next = 0; next < 8; ++next)
      if (bits.component(next, i) == 1) p += d.joint().transition(0, 0, next);
    CHECK(p == doctest::Approx(expected[i]).epsilon(1e-14));
  }
  const DecModel base = build_benchmark({Problem::Broadcast, 3, {}});
  CHECK_FALSE(base.joint() == d.joint());
}

TEST_CASE("AG rewards co-location in every cell") {
  const DecModel plain = build_benchmark({Problem::Meet3x3, 2, {}});
  const DecModel ag = build_benchmark({Problem::Meet3x3, 2, {Q::AG}});
  const std::size_t stay = plain.spaces().actions.encode(std::vector<std::size_t>{4, 4});
  for (std::size_t c = 0; c < 9; ++c) {
    const std::size_t s = c * 9 + c;
    CHECK(ag.joint().reward(s, stay) == 1.0);
    CHECK(plain.joint().reward(s, stay) == ((c == 0 || c == 8) ? 1.0 : 0.0));
  }
  CHECK(ag.joint().reward(0 * 9 + 1, stay) == 0.0);
}

TEST_CASE("WP on meet-2x2 only touches wall-bump rewards") {
  const DecModel base = build_benchmark({Problem::Meet2x2, 2, {}});
  const DecModel wp = build_benchmark({Problem::Meet2x2, 2, {Q::WP}});
  const auto& codec = base.spaces().actions;
  // Cells: 0 top-left, 1 top-right, 2 bottom-left, 3 bottom-right.
  // Moves: 0 up, 1 down, 2 left, 3 right, 4 stay.
  auto bumps = [](std::size_t cell, std::size_t move) {
    const std::size_t r = cell / 2, c = cell % 2;
    return (move == 0 && r == 0) || (move == 1 && r == 1) || (move == 2 && c == 0) ||
           (move == 3 && c == 1);
  };
  std::size_t changed = 0;
  for (std::size_t s = 0; s < 16; ++s) {
    for (std::size_t a = 0; a < codec.size(); ++a) {
      const std::size_t c0 = s / 4, c1 = s % 4;
      const std::size_t m0 = codec.component(a, 0), m1 = codec.component(a, 1);
      const double expected = -0.1 * (bumps(c0, m0) + bumps(c1, m1));
      CHECK(wp.joint().reward(s, a) - base.joint().reward(s, a) == doctest::Approx(expected));
      if (expected != 0.0) ++changed;
      for (std::size_t n = 0; n < 16; ++n)
        CHECK(wp.joint().transition(s, a, n) == base.joint().transition(s, a, n));
    }
  }
  CHECK(changed > 0);
}

TEST_CASE("UI gives a uniform start on every problem") {
  for (const BenchmarkSpec& spec :
       {BenchmarkSpec{Problem::DecTiger, 2, {Q::UI}}, BenchmarkSpec{Problem::Broadcast, 2, {Q::UI}},
        BenchmarkSpec{Problem::Meet2x2, 2, {Q::UI}}, BenchmarkSpec{Problem::Meet3x3, 2, {Q::UI}},
        BenchmarkSpec{Problem::BoxPush, 2, {Q::UI}}}) {
    const TabularModel m = build_benchmark(spec).joint();
    for (double p : m.initial_belief().probs())
      CHECK(p == doctest::Approx(1.0 / static_cast<double>(m.num_states())));
  }
}

TEST_CASE("SS starts the meet-2x2 agents in a shared row or column") {
  const DecModel ss = build_benchmark({Problem::Meet2x2, 2, {Q::SS}});
  const DecModel base = build_benchmark({Problem::Meet2x2, 2, {}});
  for (std::size_t s = 0; s < 16; ++s) {
    const std::size_t a = s / 4, b = s % 4;
    const bool aligned = a != b && (a / 2 == b / 2 || a % 2 == b % 2);
    const bool diagonal = a / 2 != b / 2 && a % 2 != b % 2;
    CHECK(ss.joint().initial_belief()[s] == (aligned ? 0.125 : 0.0));
    CHECK(base.joint().initial_belief()[s] == (diagonal ? 0.25 : 0.0));
  }
}

TEST_CASE("qualifiers are idempotent and deterministic") {
  const BenchmarkInstance base = make_instance({Problem::Meet2x2, 2, {}});
  const BenchmarkInstance once = apply_qualifier(base, Q::WP);
  const BenchmarkInstance twice = apply_qualifier(once, Q::WP);
  CHECK(once.model == twice.model);
  CHECK(once.spec == twice.spec);
  CHECK(build_benchmark({Problem::Meet2x2, 2, {Q::WP}}) == once.model);
  CHECK(build_benchmark({Problem::BoxPush, 2, {}}) == build_benchmark({Problem::BoxPush, 2, {}}));
  CHECK_THROWS_AS(apply_qualifier(base, Q::AG), UnsupportedSpec);
  CHECK_THROWS_AS(apply_qualifier(apply_qualifier(base, Q::UI), Q::SS), UnsupportedSpec);
}

TEST_CASE("unsupported combinations") {
  CHECK_THROWS_AS(build_benchmark({Problem::DecTiger, 5, {}}), UnsupportedSpec);
  CHECK_THROWS_AS(build_benchmark({Problem::Broadcast, 2, {Q::DP}}), UnsupportedSpec);
  CHECK_THROWS_AS(build_benchmark({Problem::Meet2x2, 3, {}}), UnsupportedSpec);
  CHECK_THROWS_AS(build_benchmark({Problem::BoxPush, 2, {Q::WP}}), UnsupportedSpec);
  CHECK_THROWS_AS(parse_problem("mars-rover"), UnsupportedSpec);
  CHECK_THROWS_AS(parse_qualifiers("UI,XX"), UnsupportedSpec);
}

TEST_CASE("names and keys") {
  CHECK(parse_problem("meet-3x3") == Problem::Meet3x3);
  CHECK(parse_qualifiers("WP,UI") == std::set<Q>{Q::UI, Q::WP});
  CHECK(parse_qualifiers("-").empty());
  const BenchmarkSpec spec{Problem::Meet3x3, 2, {Q::AG, Q::UI, Q::WP}};
  CHECK(spec.key() == "meet-3x3_2_UI-WP-AG");
  CHECK(spec.qualifier_string() == "UI,WP,AG");
  CHECK(BenchmarkSpec{Problem::DecTiger, 2, {}}.key() == "dec-tiger_2");
  CHECK(provenance(spec).find("source:") != std::string::npos);
}

TEST_CASE("blocked grid moves return their mass to the origin") {
  for (const DecModel& d : {build_benchmark({Problem::Meet2x2, 2, {}}),
                            build_benchmark({Problem::Meet3x3, 2, {}})}) {
    const auto& acts = d.spaces().actions;
    const std::size_t cells = d.joint().num_states() == 16 ? 4 : 9;
    // Agent 1 stays; agent 0 in the top-left corner moves up (blocked) or left (blocked).
    for (std::size_t move : {0u, 2u}) {
      const std::size_t a = acts.encode(std::vector<std::size_t>{move, 4});
      const std::size_t s = 0 * cells + (cells - 1);
      double at_origin = 0.0, total = 0.0;
      for (std::size_t n = 0; n < d.joint().num_states(); ++n) {
        const double p = d.joint().transition(s, a, n);
        total += p;
        if (n / cells == 0) at_origin += p;
        if (p > 0.0) CHECK(n % cells == cells - 1);
      }
      CHECK(total == doctest::Approx(1.0));
      // 2x2: all mass stays (success is blocked, failure stays). 3x3: the
      // blocked move, the other blocked direction and staying all remain.
      CHECK(at_origin == doctest::Approx(cells == 4 ? 1.0 : 0.6 + 0.1 + 0.1));
    }
  }
}

TEST_CASE("grid transitions are stochastic") {
  const DecModel d = build_benchmark({Problem::Meet3x3, 2, {}});
  const std::size_t a = d.spaces().actions.encode(std::vector<std::size_t>{3, 3});
  std::size_t support = 0;
  for (std::size_t n = 0; n < d.joint().num_states(); ++n)
    if (d.joint().transition(40, a, n) > 0.0) ++support;
  CHECK(support > 1);
}
