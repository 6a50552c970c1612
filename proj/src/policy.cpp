#include "mcas/policy.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mcas/error.hpp"
#include "mcas/kernels.hpp"
#include "mcas/model_io.hpp"

namespace mcas {
namespace {

bool dominated_by(std::span<const double> lhs, std::span<const double> rhs) {
  for (std::size_t s = 0; s < lhs.size(); ++s) {
    if (lhs[s] > rhs[s]) return false;
  }
  return true;
}

}  // namespace

AlphaVectorPolicy::AlphaVectorPolicy(std::size_t num_states, std::size_t num_actions,
                                     std::vector<std::vector<double>> vectors,
                                     std::vector<ActionIndex> actions, std::uint64_t model_id)
    : num_states_(num_states), num_actions_(num_actions), model_id_(model_id) {
  if (vectors.empty()) throw InvalidModel("alpha-vector policy needs at least one vector");
  if (vectors.size() != actions.size()) {
    throw DimensionMismatch("alpha-vector policy: vector and action counts differ");
  }
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    if (vectors[k].size() != num_states) {
      throw DimensionMismatch("alpha vector " + std::to_string(k) + " has wrong length");
    }
    if (num_actions != 0 && actions[k] >= num_actions) {
      throw InvalidModel("alpha vector " + std::to_string(k) + " labeled with invalid action");
    }
  }

  // Candidates by descending sum: only a vector with a larger-or-equal sum
  // can dominate another.
  const std::size_t K = vectors.size();
  std::vector<double> sums(K);
  for (std::size_t k = 0; k < K; ++k) sums[k] = kernels::sum(vectors[k]);
  std::vector<std::size_t> order(K);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sums[a] > sums[b]; });

  std::vector<bool> keep(K, true);
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t idx : order) {
      if (idx == k || !keep[idx]) continue;
      if (sums[idx] < sums[k]) break;
      if (!dominated_by(vectors[k], vectors[idx])) continue;
      // Equal vectors: the lower index survives.
      if (vectors[k] == vectors[idx] && k < idx) continue;
      keep[k] = false;
      break;
    }
  }

  for (std::size_t k = 0; k < K; ++k) {
    if (!keep[k]) continue;
    vectors_.insert(vectors_.end(), vectors[k].begin(), vectors[k].end());
    actions_.push_back(actions[k]);
  }
  const std::size_t kept = actions_.size();
  by_state_.assign(num_states_ * kept, 0.0);
  for (std::size_t k = 0; k < kept; ++k) {
    for (std::size_t s = 0; s < num_states_; ++s) {
      by_state_[s * kept + k] = vectors_[k * num_states_ + s];
    }
  }
}

void AlphaVectorPolicy::values(const Belief& b, std::vector<double>& out) const {
  if (b.size() != num_states_) {
    throw DimensionMismatch("belief has " + std::to_string(b.size()) + " states, policy has " +
                            std::to_string(num_states_));
  }
  const std::size_t K = size();
  out.assign(K, 0.0);
  for (std::size_t s = 0; s < num_states_; ++s) {
    if (b[s] != 0.0) {
      kernels::axpy(b[s], std::span<const double>(by_state_.data() + s * K, K), out);
    }
  }
}

std::size_t dominant_alpha_index(const AlphaVectorPolicy& policy, const Belief& b) {
  thread_local std::vector<double> scratch;
  policy.values(b, scratch);
  return kernels::argmax(scratch);
}

double policy_value(const AlphaVectorPolicy& policy, const Belief& b) {
  thread_local std::vector<double> scratch;
  policy.values(b, scratch);
  return scratch[kernels::argmax(scratch)];
}

ActionIndex policy_action(const AlphaVectorPolicy& policy, const Belief& b) {
  return policy.action_of(dominant_alpha_index(policy, b));
}

std::string emit_policy(const AlphaVectorPolicy& policy) {
  std::string out = "alpha-policy v1\n";
  out += "states: " + std::to_string(policy.num_states()) + "\n";
  out += "vectors: " + std::to_string(policy.size()) + "\n";
  for (std::size_t k = 0; k < policy.size(); ++k) {
    out += "a: " + std::to_string(policy.action_of(k)) + "\n";
    auto v = policy.vector(k);
    for (std::size_t s = 0; s < v.size(); ++s) {
      if (s) out += ' ';
      out += format_real(v[s]);
    }
    out += '\n';
  }
  return out;
}

namespace {

class PolicyReader {
 public:
  explicit PolicyReader(std::string_view text) : text_(text) {}

  std::string_view next_line() {
    while (pos_ <= text_.size()) {
      std::size_t end = text_.find('\n', pos_);
      if (end == std::string_view::npos) end = text_.size();
      std::string_view line = text_.substr(pos_, end - pos_);
      pos_ = end + 1;
      ++line_no_;
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
      if (!line.empty()) return line;
      if (end == text_.size()) break;
    }
    throw SyntaxError(line_no_ + 1, 1, "unexpected end of policy file");
  }

  std::size_t header_value(std::string_view key) {
    std::string_view line = next_line();
    const std::string prefix = std::string(key) + ":";
    if (!line.starts_with(prefix)) {
      throw SyntaxError(line_no_, 1, "expected '" + prefix + "'");
    }
    return parse_count(line.substr(prefix.size()));
  }

  std::size_t parse_count(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw SyntaxError(line_no_, 1, "expected an integer");
    }
    return value;
  }

  std::vector<double> reals(std::size_t count) {
    std::string_view line = next_line();
    std::vector<double> values;
    values.reserve(count);
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && line[i] == ' ') ++i;
      if (i >= line.size()) break;
      std::size_t j = line.find(' ', i);
      if (j == std::string_view::npos) j = line.size();
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, v);
      if (ec != std::errc() || ptr != line.data() + j) {
        throw SyntaxError(line_no_, i + 1, "expected a real number");
      }
      values.push_back(v);
      i = j;
    }
    if (values.size() != count) {
      throw SyntaxError(line_no_, 1,
                        "expected " + std::to_string(count) + " values, got " +
                            std::to_string(values.size()));
    }
    return values;
  }

  std::size_t line_no() const { return line_no_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

}  // namespace

AlphaVectorPolicy parse_policy(std::string_view text, std::size_t num_actions,
                               std::uint64_t model_id) {
  PolicyReader in(text);
  if (in.next_line() != "alpha-policy v1") {
    throw SyntaxError(in.line_no(), 1, "expected header 'alpha-policy v1'");
  }
  const std::size_t S = in.header_value("states");
  const std::size_t K = in.header_value("vectors");
  std::vector<std::vector<double>> vectors;
  std::vector<ActionIndex> actions;
  for (std::size_t k = 0; k < K; ++k) {
    actions.push_back(in.header_value("a"));
    vectors.push_back(in.reals(S));
  }
  return AlphaVectorPolicy(S, num_actions, std::move(vectors), std::move(actions), model_id);
}

}  // namespace mcas
