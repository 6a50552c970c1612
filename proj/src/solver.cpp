#include "mcas/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "internal/random.hpp"
#include "internal/sparse_model.hpp"
#include "mcas/error.hpp"
#include "mcas/kernels.hpp"

namespace mcas {

using detail::SparseModel;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPointQuantum = 1e8;

struct Point {
  std::vector<std::uint32_t> idx;
  std::vector<double> p;
};

std::uint64_t fnv_mix(std::uint64_t h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xFF;
    h *= 0x100000001B3ull;
  }
  return h;
}

std::uint64_t point_key(const Point& pt) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (std::size_t i = 0; i < pt.idx.size(); ++i) {
    h = fnv_mix(h, pt.idx[i]);
    h = fnv_mix(h, static_cast<std::uint64_t>(std::llround(pt.p[i] * kPointQuantum)));
  }
  return h;
}

std::uint64_t vector_key(std::span<const double> v, ActionIndex a) {
  std::uint64_t h = fnv_mix(0xCBF29CE484222325ull, a);
  for (double x : v) {
    std::uint64_t bits;
    std::memcpy(&bits, &x, sizeof bits);
    h = fnv_mix(h, bits);
  }
  return h;
}

}  // namespace

struct PointBasedSolver::Impl {
  TabularModel model;
  SparseModel sm;
  SolverParams params;
  std::mt19937_64 rng;
  Clock::time_point deadline;

  std::vector<Point> points;
  std::unordered_set<std::uint64_t> point_keys;
  std::vector<double> values;  // per point, under the current vectors

  std::size_t K = 0;
  std::vector<double> rows;  // [k][s]
  std::vector<double> cols;  // [s][k]
  std::vector<ActionIndex> actions;
  std::size_t backups = 0;

  // scratch
  std::vector<double> pred;
  std::vector<std::uint32_t> touched;
  std::vector<std::vector<std::pair<std::uint32_t, double>>> buckets;
  std::vector<std::uint32_t> touched_obs;
  std::vector<double> scores;
  std::vector<std::size_t> choice;
  std::vector<double> w;

  Impl(const TabularModel& m, SolverParams p)
      : model(m), sm(m), params(p), rng(p.rng_seed) {
    if (!(params.precision_target > 0.0)) {
      throw InvalidModel("solver precision_target must be positive");
    }
    if (!(m.discount() < 1.0)) throw InvalidModel("solver requires discount < 1");
    deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                  std::chrono::duration<double>(params.max_time_seconds));
    pred.assign(sm.S, 0.0);
    buckets.resize(sm.O);
    choice.resize(sm.O);
    w.resize(sm.S);
    init_blind();
  }

  bool out_of_time() const { return Clock::now() >= deadline; }

  // Blind-policy vectors, iterated upward from Rmin/(1-g) so every iterate
  // stays a lower bound.
  void init_blind() {
    const std::size_t S = sm.S, A = sm.A;
    const double g = sm.discount;
    double rmin = *std::min_element(sm.reward.begin(), sm.reward.end());
    rows.assign(A * S, rmin / (1.0 - g));
    actions.resize(A);
    std::vector<double> next(S);
    for (std::size_t a = 0; a < A; ++a) {
      actions[a] = a;
      double* alpha = rows.data() + a * S;
      for (int it = 0; it < 10000; ++it) {
        double change = 0.0;
        for (std::size_t s = 0; s < S; ++s) {
          double acc = 0.0;
          const std::size_t e = s * A + a;
          for (std::uint32_t k = sm.succ_begin[e]; k < sm.succ_begin[e + 1]; ++k) {
            acc += sm.succ_prob[k] * alpha[sm.succ_state[k]];
          }
          next[s] = sm.reward[e] + g * acc;
          change = std::max(change, std::abs(next[s] - alpha[s]));
        }
        std::copy(next.begin(), next.end(), alpha);
        if (change <= 1e-12 * (1.0 + std::abs(alpha[0]))) break;
      }
    }
    K = A;
    rebuild_cols();
  }

  void rebuild_cols() {
    const std::size_t S = sm.S;
    cols.assign(S * K, 0.0);
    for (std::size_t k = 0; k < K; ++k)
      for (std::size_t s = 0; s < S; ++s) cols[s * K + k] = rows[k * S + s];
  }

  void score(const Point& pt, std::vector<double>& out) const {
    out.assign(K, 0.0);
    for (std::size_t i = 0; i < pt.idx.size(); ++i) {
      kernels::axpy(pt.p[i], std::span<const double>(cols.data() + pt.idx[i] * K, K), out);
    }
  }

  double dot(std::span<const double> alpha, const Point& pt) const {
    double v = 0.0;
    for (std::size_t i = 0; i < pt.idx.size(); ++i) v += pt.p[i] * alpha[pt.idx[i]];
    return v;
  }

  double point_value(const Point& pt) {
    score(pt, scores);
    return scores[kernels::argmax(scores)];
  }

  bool add_dense(std::span<const double> probs) {
    if (points.size() >= params.max_belief_points) return false;
    Point pt;
    for (std::size_t s = 0; s < probs.size(); ++s) {
      if (probs[s] > 0.0) {
        pt.idx.push_back(static_cast<std::uint32_t>(s));
        pt.p.push_back(probs[s]);
      }
    }
    if (!point_keys.insert(point_key(pt)).second) return false;
    values.push_back(point_value(pt));
    points.push_back(std::move(pt));
    return true;
  }

  // Point-based backup of one belief against the current vectors.
  std::pair<ActionIndex, std::vector<double>> backup(const Point& b) {
    const std::size_t S = sm.S, A = sm.A;
    const double g = sm.discount;
    score(b, scores);
    const std::size_t fallback = kernels::argmax(scores);

    double best_val = kNegInf;
    ActionIndex best_a = 0;
    std::vector<std::pair<std::uint32_t, std::size_t>> best_choice, cur_choice;

    for (std::size_t a = 0; a < A; ++a) {
      double val = 0.0;
      touched.clear();
      for (std::size_t i = 0; i < b.idx.size(); ++i) {
        const std::size_t e = b.idx[i] * A + a;
        val += b.p[i] * sm.reward[e];
        for (std::uint32_t k = sm.succ_begin[e]; k < sm.succ_begin[e + 1]; ++k) {
          const std::uint32_t n = sm.succ_state[k];
          if (pred[n] == 0.0) touched.push_back(n);
          pred[n] += b.p[i] * sm.succ_prob[k];
        }
      }
      touched_obs.clear();
      for (std::uint32_t n : touched) {
        const std::size_t e = a * S + n;
        for (std::uint32_t k = sm.obs_begin[e]; k < sm.obs_begin[e + 1]; ++k) {
          const std::uint32_t o = sm.obs_index[k];
          if (buckets[o].empty()) touched_obs.push_back(o);
          buckets[o].emplace_back(n, sm.obs_prob[k] * pred[n]);
        }
        pred[n] = 0.0;
      }
      cur_choice.clear();
      for (std::uint32_t o : touched_obs) {
        scores.assign(K, 0.0);
        for (auto [n, v] : buckets[o]) {
          kernels::axpy(v, std::span<const double>(cols.data() + n * K, K), scores);
        }
        const std::size_t k = kernels::argmax(scores);
        val += g * scores[k];
        cur_choice.emplace_back(o, k);
        buckets[o].clear();
      }
      if (val > best_val) {
        best_val = val;
        best_a = a;
        best_choice.swap(cur_choice);
      }
    }

    std::fill(choice.begin(), choice.end(), fallback);
    for (auto [o, k] : best_choice) choice[o] = k;
    for (std::size_t n = 0; n < S; ++n) {
      double acc = 0.0;
      const std::size_t e = best_a * S + n;
      for (std::uint32_t k = sm.obs_begin[e]; k < sm.obs_begin[e + 1]; ++k) {
        acc += sm.obs_prob[k] * rows[choice[sm.obs_index[k]] * S + n];
      }
      w[n] = acc;
    }
    std::vector<double> alpha(S);
    for (std::size_t s = 0; s < S; ++s) {
      const std::size_t e = s * A + best_a;
      double acc = 0.0;
      for (std::uint32_t k = sm.succ_begin[e]; k < sm.succ_begin[e + 1]; ++k) {
        acc += sm.succ_prob[k] * w[sm.succ_state[k]];
      }
      alpha[s] = sm.reward[e] + g * acc;
    }
    ++backups;
    return {best_a, std::move(alpha)};
  }

  struct NewSet {
    std::vector<double> rows;
    std::vector<ActionIndex> actions;
    std::unordered_multimap<std::uint64_t, std::size_t> index;
    std::size_t S;

    bool add(std::span<const double> v, ActionIndex a) {
      const std::uint64_t key = vector_key(v, a);
      auto [lo, hi] = index.equal_range(key);
      for (auto it = lo; it != hi; ++it) {
        if (actions[it->second] == a &&
            std::equal(v.begin(), v.end(), rows.begin() + it->second * S)) {
          return false;
        }
      }
      index.emplace(key, actions.size());
      rows.insert(rows.end(), v.begin(), v.end());
      actions.push_back(a);
      return true;
    }
  };

  // Installs new vectors, recomputes point values, returns the largest gain.
  double install(NewSet&& next) {
    rows = std::move(next.rows);
    actions = std::move(next.actions);
    K = actions.size();
    rebuild_cols();
    double gain = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double v = point_value(points[i]);
      gain = std::max(gain, v - values[i]);
      values[i] = v;
    }
    return gain;
  }

  std::span<const double> row(std::size_t k) const { return {rows.data() + k * sm.S, sm.S}; }

  // Backup of point i, or its current best vector when the backup is worse.
  void improve_point(std::size_t i, std::vector<double>& alpha_out, ActionIndex& a_out) {
    auto [a, alpha] = backup(points[i]);
    if (dot(alpha, points[i]) >= values[i]) {
      alpha_out = std::move(alpha);
      a_out = a;
    } else {
      score(points[i], scores);
      const std::size_t k = kernels::argmax(scores);
      auto r = row(k);
      alpha_out.assign(r.begin(), r.end());
      a_out = actions[k];
    }
  }

  double sweep() {
    NewSet next{{}, {}, {}, sm.S};
    std::vector<double> alpha;
    ActionIndex a = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      improve_point(i, alpha, a);
      next.add(alpha, a);
    }
    return install(std::move(next));
  }

  double perseus_stage() {
    NewSet next{{}, {}, {}, sm.S};
    std::vector<std::size_t> remaining(points.size());
    for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
    std::vector<double> best(points.size(), kNegInf);
    std::vector<double> alpha;
    ActionIndex a = 0;
    while (!remaining.empty()) {
      const std::size_t i = remaining[detail::uniform_index(rng, remaining.size())];
      improve_point(i, alpha, a);
      next.add(alpha, a);
      // The chosen point is covered by construction; comparing its dot
      // product against the stored value could fail by rounding alone.
      best[i] = std::max(best[i], values[i]);
      std::size_t keep = 0;
      for (std::size_t r = 0; r < remaining.size(); ++r) {
        const std::size_t j = remaining[r];
        best[j] = std::max(best[j], dot(alpha, points[j]));
        if (best[j] < values[j]) remaining[keep++] = j;
      }
      remaining.resize(keep);
      if (out_of_time()) {
        // Carry the old best vector for points not yet covered.
        for (std::size_t j : remaining) {
          score(points[j], scores);
          const std::size_t k = kernels::argmax(scores);
          next.add(row(k), actions[k]);
        }
        break;
      }
    }
    return install(std::move(next));
  }

  std::size_t expand(std::size_t trajectories, std::size_t length, double exploration) {
    const std::size_t S = sm.S, A = sm.A;
    std::size_t added = 0;
    std::vector<double> b(S), nb(S), zrow(sm.O);
    auto b0 = model.initial_belief().probs();
    for (std::size_t t = 0; t < trajectories; ++t) {
      std::copy(b0.begin(), b0.end(), b.begin());
      std::size_t s = detail::sample_index(rng, b0);
      for (std::size_t step = 0; step < length; ++step) {
        if (points.size() >= params.max_belief_points) return added;
        ActionIndex a;
        if (detail::uniform01(rng) < exploration) {
          a = detail::uniform_index(rng, A);
        } else {
          Point pt;
          for (std::size_t x = 0; x < S; ++x) {
            if (b[x] > 0.0) {
              pt.idx.push_back(static_cast<std::uint32_t>(x));
              pt.p.push_back(b[x]);
            }
          }
          score(pt, scores);
          a = actions[kernels::argmax(scores)];
        }
        const std::size_t e = s * A + a;
        std::vector<double> trow(sm.succ_prob.begin() + sm.succ_begin[e],
                                 sm.succ_prob.begin() + sm.succ_begin[e + 1]);
        const std::size_t next_s = sm.succ_state[sm.succ_begin[e] + detail::sample_index(rng, trow)];
        std::fill(zrow.begin(), zrow.end(), 0.0);
        for (std::uint32_t k = sm.obs_begin[a * S + next_s]; k < sm.obs_begin[a * S + next_s + 1]; ++k) {
          zrow[sm.obs_index[k]] = sm.obs_prob[k];
        }
        const std::size_t o = detail::sample_index(rng, zrow);

        std::fill(nb.begin(), nb.end(), 0.0);
        for (std::size_t x = 0; x < S; ++x) {
          if (b[x] == 0.0) continue;
          const std::size_t ex = x * A + a;
          for (std::uint32_t k = sm.succ_begin[ex]; k < sm.succ_begin[ex + 1]; ++k) {
            nb[sm.succ_state[k]] += b[x] * sm.succ_prob[k];
          }
        }
        double total = 0.0;
        for (std::size_t n = 0; n < S; ++n) {
          if (nb[n] == 0.0) continue;
          nb[n] *= model.observation(a, n, o);
          total += nb[n];
        }
        if (!(total > 0.0)) break;
        for (std::size_t n = 0; n < S; ++n) b[n] = nb[n] / total;
        if (add_dense(b)) ++added;
        s = next_s;
      }
    }
    return added;
  }
};

PointBasedSolver::PointBasedSolver(const TabularModel& model, SolverParams params)
    : impl_(std::make_unique<Impl>(model, params)) {}

PointBasedSolver::~PointBasedSolver() = default;

bool PointBasedSolver::add_belief(const Belief& b) {
  if (b.size() != impl_->sm.S) throw DimensionMismatch("belief size does not match model");
  return impl_->add_dense(b.probs());
}

std::size_t PointBasedSolver::num_beliefs() const { return impl_->points.size(); }

std::size_t PointBasedSolver::expand(std::size_t trajectories, std::size_t length,
                                     double exploration) {
  return impl_->expand(trajectories, length, exploration);
}

double PointBasedSolver::sweep() { return impl_->sweep(); }
double PointBasedSolver::perseus_stage() { return impl_->perseus_stage(); }
std::vector<double> PointBasedSolver::point_values() const { return impl_->values; }
std::size_t PointBasedSolver::backups() const { return impl_->backups; }
bool PointBasedSolver::out_of_time() const { return impl_->out_of_time(); }

double PointBasedSolver::value(const Belief& b) const {
  if (b.size() != impl_->sm.S) throw DimensionMismatch("belief size does not match model");
  double best = kNegInf;
  for (std::size_t k = 0; k < impl_->K; ++k) best = std::max(best, kernels::dot(impl_->row(k), b.probs()));
  return best;
}

AlphaVectorPolicy PointBasedSolver::policy(std::uint64_t model_id) const {
  const std::size_t S = impl_->sm.S;
  std::vector<std::vector<double>> vectors;
  vectors.reserve(impl_->K);
  for (std::size_t k = 0; k < impl_->K; ++k) {
    auto r = impl_->row(k);
    vectors.emplace_back(r.begin(), r.end());
  }
  return AlphaVectorPolicy(S, impl_->sm.A, std::move(vectors), impl_->actions, model_id);
}

SolveResult solve_pomdp(const TabularModel& model, const SolverParams& params) {
  const auto start = Clock::now();
  PointBasedSolver solver(model, params);
  const double tol = params.precision_target * (1.0 - model.discount());

  solver.add_belief(model.initial_belief());
  double prev = kNegInf;
  std::size_t stable = 0, rounds = 0;
  bool timed_out = false;
  for (; rounds < params.max_rounds; ++rounds) {
    solver.expand(params.trajectories_per_round, params.trajectory_length,
                  rounds == 0 ? 1.0 : params.exploration);
    for (;;) {
      const double gain = solver.perseus_stage();
      if (solver.out_of_time()) break;
      if (gain < tol && solver.sweep() < tol) break;
      if (solver.out_of_time()) break;
    }
    if (solver.out_of_time()) {
      timed_out = true;
      ++rounds;
      break;
    }
    const double v = solver.value(model.initial_belief());
    stable = std::abs(v - prev) < params.precision_target ? stable + 1 : 0;
    prev = v;
    if (stable >= params.stable_rounds) {
      ++rounds;
      break;
    }
    if (solver.num_beliefs() >= params.max_belief_points) {
      ++rounds;
      break;
    }
  }
  if (solver.backups() == 0) throw NonConvergence("solver finished without completing a backup");

  SolveResult result{solver.policy(model.content_hash()), timed_out, solver.num_beliefs(),
                     solver.backups(), rounds, 0.0, 0.0};
  result.initial_value = policy_value(result.policy, model.initial_belief());
  result.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

}  // namespace mcas
