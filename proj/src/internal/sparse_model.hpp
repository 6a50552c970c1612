#pragma once

#include <cstdint>
#include <vector>

#include "mcas/model.hpp"

namespace mcas::detail {

/// Compressed nonzero lists of a TabularModel, built once per solve.
struct SparseModel {
  std::size_t S = 0, A = 0, O = 0;
  double discount = 0.0;

  // successors of (s, a): range [succ_begin[s*A+a], succ_begin[s*A+a+1])
  std::vector<std::uint32_t> succ_begin;
  std::vector<std::uint32_t> succ_state;
  std::vector<double> succ_prob;

  // observations emitted after a into s': range over obs_begin[a*S+s']
  std::vector<std::uint32_t> obs_begin;
  std::vector<std::uint32_t> obs_index;
  std::vector<double> obs_prob;

  std::vector<double> reward;  // [s][a]

  explicit SparseModel(const TabularModel& m, bool with_observations = true) {
    S = m.num_states();
    A = m.num_actions();
    O = m.num_observations();
    discount = m.discount();
    succ_begin.reserve(S * A + 1);
    for (std::size_t s = 0; s < S; ++s) {
      for (std::size_t a = 0; a < A; ++a) {
        succ_begin.push_back(static_cast<std::uint32_t>(succ_state.size()));
        auto row = m.transition_row(s, a);
        for (std::size_t n = 0; n < S; ++n) {
          if (row[n] > 0.0) {
            succ_state.push_back(static_cast<std::uint32_t>(n));
            succ_prob.push_back(row[n]);
          }
        }
      }
    }
    succ_begin.push_back(static_cast<std::uint32_t>(succ_state.size()));

    if (with_observations) {
      obs_begin.reserve(A * S + 1);
      for (std::size_t a = 0; a < A; ++a) {
        for (std::size_t n = 0; n < S; ++n) {
          obs_begin.push_back(static_cast<std::uint32_t>(obs_index.size()));
          for (std::size_t o = 0; o < O; ++o) {
            double z = m.observation(a, n, o);
            if (z > 0.0) {
              obs_index.push_back(static_cast<std::uint32_t>(o));
              obs_prob.push_back(z);
            }
          }
        }
      }
      obs_begin.push_back(static_cast<std::uint32_t>(obs_index.size()));
    }

    reward.resize(S * A);
    for (std::size_t s = 0; s < S; ++s)
      for (std::size_t a = 0; a < A; ++a) reward[s * A + a] = m.reward(s, a);
  }
};

}  // namespace mcas::detail
