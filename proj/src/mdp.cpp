#include <algorithm>
#include <cmath>
#include <limits>

#include "internal/sparse_model.hpp"
#include "mcas/error.hpp"
#include "mcas/kernels.hpp"
#include "mcas/solver.hpp"

namespace mcas {

double MdpSolution::expected_value(const Belief& b) const {
  if (b.size() != value.size()) throw DimensionMismatch("belief size does not match MDP");
  return kernels::dot(b.probs(), value);
}

MdpSolution solve_mdp(const TabularModel& model, double tolerance) {
  if (!(model.discount() < 1.0)) throw InvalidModel("value iteration requires discount < 1");
  const detail::SparseModel sm(model, /*with_observations=*/false);
  const std::size_t S = sm.S, A = sm.A;
  const double g = sm.discount;

  MdpSolution sol;
  sol.value.assign(S, 0.0);
  sol.action.assign(S, 0);
  std::vector<double> next(S);

  auto q = [&](std::size_t s, std::size_t a, const std::vector<double>& v) {
    const std::size_t e = s * A + a;
    double acc = 0.0;
    for (std::uint32_t k = sm.succ_begin[e]; k < sm.succ_begin[e + 1]; ++k) {
      acc += sm.succ_prob[k] * v[sm.succ_state[k]];
    }
    return sm.reward[e] + g * acc;
  };

  for (;;) {
    double residual = 0.0;
    for (std::size_t s = 0; s < S; ++s) {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t a = 0; a < A; ++a) best = std::max(best, q(s, a, sol.value));
      next[s] = best;
      residual = std::max(residual, std::abs(best - sol.value[s]));
    }
    sol.value.swap(next);
    ++sol.iterations;
    sol.residual = residual;
    if (residual <= tolerance) break;
  }

  for (std::size_t s = 0; s < S; ++s) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < A; ++a) {
      const double v = q(s, a, sol.value);
      if (v > best) {
        best = v;
        sol.action[s] = a;
      }
    }
  }
  return sol;
}

}  // namespace mcas
