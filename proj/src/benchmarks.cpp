#include "mcas/benchmarks.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "mcas/error.hpp"

namespace mcas {
namespace {

using Dist = std::vector<std::pair<std::size_t, double>>;

void add_mass(Dist& d, std::size_t x, double p) {
  for (auto& [y, q] : d) {
    if (y == x) {
      q += p;
      return;
    }
  }
  d.emplace_back(x, p);
}

// Assembles a DecModel from per-(s, a) callbacks over flat joint indices.
struct Builder {
  std::size_t S;
  JointIndexCodec actions, observations;
  ModelTables t;

  Builder(std::size_t states, std::vector<std::size_t> agent_actions,
          std::vector<std::size_t> agent_observations)
      : S(states),
        actions(std::move(agent_actions)),
        observations(std::move(agent_observations)),
        t(states, actions.size(), observations.size()) {
    t.discount = kDiscount;
  }

  DecModel finish(std::vector<double> start) {
    t.initial_belief = std::move(start);
    return DecModel(TabularModel(std::move(t)), FactoredSpaces{actions, observations});
  }
};

// ---------------------------------------------------------------- Dec-Tiger
// States: 0 tiger-left, 1 tiger-right. Agent actions: 0 listen, 1 open-left,
// 2 open-right. Agent observations: 0 hear-left, 1 hear-right.

DecModel dec_tiger(std::size_t n) {
  Builder b(2, std::vector<std::size_t>(n, 3), std::vector<std::size_t>(n, 2));
  const std::size_t A = b.actions.size(), O = b.observations.size();
  for (std::size_t a = 0; a < A; ++a) {
    bool all_listen = true;
    for (std::size_t i = 0; i < n; ++i) all_listen &= b.actions.component(a, i) == 0;
    for (std::size_t s = 0; s < 2; ++s) {
      for (std::size_t next = 0; next < 2; ++next) {
        b.t.T(s, a, next) = all_listen ? (s == next ? 1.0 : 0.0) : 0.5;
      }
      std::size_t opened_tiger = 0, opened_safe = 0, listening = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t ai = b.actions.component(a, i);
        if (ai == 0) {
          ++listening;
        } else if (ai - 1 == s) {
          ++opened_tiger;
        } else {
          ++opened_safe;
        }
      }
      // Reproduces the 2-agent table (-2, 9, 20, -101, -100, -50) and
      // extends it to n agents: tiger damage is shared among the openers.
      b.t.R(s, a) = opened_tiger > 0
                        ? -100.0 / static_cast<double>(opened_tiger) - static_cast<double>(listening)
                        : 10.0 * static_cast<double>(opened_safe) - static_cast<double>(listening);
    }
    for (std::size_t next = 0; next < 2; ++next) {
      for (std::size_t o = 0; o < O; ++o) {
        double p = 1.0;
        if (all_listen) {
          for (std::size_t i = 0; i < n; ++i) {
            p *= b.observations.component(o, i) == next ? kListenAccuracy : 1.0 - kListenAccuracy;
          }
        } else {
          p = 1.0 / static_cast<double>(O);
        }
        b.t.Z(a, next, o) = p;
      }
    }
  }
  return b.finish({0.5, 0.5});
}

// ---------------------------------------------------------------- Broadcast
// State: one buffer bit per agent (agent 0 most significant). Actions: 0 wait,
// 1 send. Reward 1 when exactly one agent sends from a full buffer; that
// buffer empties, then every empty buffer refills with its own probability.
// Observation: own buffer after the transition.

DecModel broadcast(std::size_t n, const std::set<Qualifier>& q) {
  std::vector<double> fill;
  if (n == 2) {
    fill = {0.9, 0.1};
  } else {
    fill = q.count(Qualifier::DP) ? std::vector<double>{0.2, 0.4, 0.4}
                                  : std::vector<double>{0.9, 0.1, 0.1};
  }
  const double send_penalty = q.count(Qualifier::WP) ? kSendPenalty : 0.0;
  JointIndexCodec bits(std::vector<std::size_t>(n, 2));
  Builder b(bits.size(), std::vector<std::size_t>(n, 2), std::vector<std::size_t>(n, 2));
  const std::size_t S = b.S, A = b.actions.size();
  for (std::size_t s = 0; s < S; ++s) {
    for (std::size_t a = 0; a < A; ++a) {
      std::size_t senders = 0, sender = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (b.actions.component(a, i) == 1) {
          ++senders;
          sender = i;
        }
      }
      std::vector<std::size_t> buf = bits.decode(s);
      const bool delivered = senders == 1 && buf[sender] == 1;
      b.t.R(s, a) = (delivered ? 1.0 : 0.0) - send_penalty * static_cast<double>(senders);
      if (delivered) buf[sender] = 0;
      for (std::size_t next = 0; next < S; ++next) {
        double p = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
          const std::size_t nb = bits.component(next, i);
          if (buf[i] == 1) {
            p *= nb == 1 ? 1.0 : 0.0;
          } else {
            p *= nb == 1 ? fill[i] : 1.0 - fill[i];
          }
        }
        b.t.T(s, a, next) = p;
      }
    }
  }
  for (std::size_t a = 0; a < A; ++a)
    for (std::size_t next = 0; next < S; ++next) b.t.Z(a, next, next) = 1.0;
  std::vector<double> start(S, 0.0);
  std::vector<std::size_t> initial(n, 0);
  initial[0] = 1;
  start[bits.encode(initial)] = 1.0;
  return b.finish(std::move(start));
}

// -------------------------------------------------------------------- grids

enum Move : std::size_t { kUp, kDown, kLeft, kRight, kStay, kNumMoves };

struct Grid {
  std::size_t rows, cols;
  std::size_t cells() const { return rows * cols; }
  // Target cell, or the origin when the move leaves the grid.
  std::size_t step(std::size_t cell, std::size_t move, bool* blocked = nullptr) const {
    std::size_t r = cell / cols, c = cell % cols;
    bool ok = true;
    switch (move) {
      case kUp: ok = r > 0; if (ok) --r; break;
      case kDown: ok = r + 1 < rows; if (ok) ++r; break;
      case kLeft: ok = c > 0; if (ok) --c; break;
      case kRight: ok = c + 1 < cols; if (ok) ++c; break;
      default: break;
    }
    if (blocked) *blocked = !ok;
    return r * cols + c;
  }
};

struct MeetParams {
  Grid grid;
  std::size_t n;
  // Failure mass goes to "stay" (2x2) or is spread over the other three
  // moves and stay (3x3). Stay always succeeds.
  bool spread_failures;
  std::function<std::size_t(std::size_t)> observe;  // own cell -> observation
  std::size_t num_observations;
  std::function<bool(const std::vector<std::size_t>&)> rewarded;
  bool wall_penalty;
  std::vector<double> start;
};

Dist meet_move(const MeetParams& m, std::size_t cell, std::size_t move) {
  Dist d;
  if (move == kStay) {
    d.emplace_back(cell, 1.0);
    return d;
  }
  add_mass(d, m.grid.step(cell, move), kMoveSuccess);
  if (m.spread_failures) {
    const double share = (1.0 - kMoveSuccess) / 4.0;
    for (std::size_t other = 0; other < kNumMoves; ++other) {
      if (other != move) add_mass(d, m.grid.step(cell, other), share);
    }
  } else {
    add_mass(d, cell, 1.0 - kMoveSuccess);
  }
  return d;
}

DecModel meet(const MeetParams& m) {
  const std::size_t n = m.n;
  JointIndexCodec cells(std::vector<std::size_t>(n, m.grid.cells()));
  Builder b(cells.size(), std::vector<std::size_t>(n, kNumMoves),
            std::vector<std::size_t>(n, m.num_observations));
  const std::size_t S = b.S, A = b.actions.size();

  std::vector<std::vector<Dist>> moves(m.grid.cells(), std::vector<Dist>(kNumMoves));
  for (std::size_t c = 0; c < m.grid.cells(); ++c)
    for (std::size_t mv = 0; mv < kNumMoves; ++mv) moves[c][mv] = meet_move(m, c, mv);

  std::vector<double> row(S);
  for (std::size_t s = 0; s < S; ++s) {
    const std::vector<std::size_t> pos = cells.decode(s);
    const double base = m.rewarded(pos) ? 1.0 : 0.0;
    for (std::size_t a = 0; a < A; ++a) {
      const std::vector<std::size_t> act = b.actions.decode(a);
      double r = base;
      Dist joint{{0, 1.0}};
      for (std::size_t i = 0; i < n; ++i) {
        bool blocked = false;
        if (act[i] != kStay) m.grid.step(pos[i], act[i], &blocked);
        if (blocked && m.wall_penalty) r -= kWallPenalty;
        Dist next;
        for (auto [partial, p] : joint) {
          for (auto [c, q] : moves[pos[i]][act[i]]) {
            next.emplace_back(partial * m.grid.cells() + c, p * q);
          }
        }
        joint.swap(next);
      }
      b.t.R(s, a) = r;
      for (auto [next, p] : joint) b.t.T(s, a, next) += p;
    }
  }
  for (std::size_t next = 0; next < S; ++next) {
    const std::vector<std::size_t> pos = cells.decode(next);
    std::vector<std::size_t> obs(n);
    for (std::size_t i = 0; i < n; ++i) obs[i] = m.observe(pos[i]);
    const std::size_t o = b.observations.encode(obs);
    for (std::size_t a = 0; a < A; ++a) b.t.Z(a, next, o) = 1.0;
  }
  return b.finish(m.start);
}

std::vector<double> point_start(const JointIndexCodec& codec, std::vector<std::size_t> parts) {
  std::vector<double> start(codec.size(), 0.0);
  start[codec.encode(parts)] = 1.0;
  return start;
}

// Meet 2x2: observation is the wall beside the agent (0 left, 1 right). The
// agents start in opposite corners (SS: sharing a row or column) without
// knowing which ones.
DecModel meet_2x2(const std::set<Qualifier>& q) {
  MeetParams m{Grid{2, 2}, 2, false, [](std::size_t c) { return c % 2; }, 2,
               [](const std::vector<std::size_t>& p) { return p[0] == p[1]; },
               q.count(Qualifier::WP) > 0, {}};
  if (q.count(Qualifier::UI)) {
    m.start.assign(16, 1.0 / 16.0);
  } else {
    const bool adjacent = q.count(Qualifier::SS) > 0;
    m.start.assign(16, 0.0);
    std::size_t count = 0;
    for (std::size_t a = 0; a < 4; ++a) {
      for (std::size_t b = 0; b < 4; ++b) {
        const bool same_row = a / 2 == b / 2, same_col = a % 2 == b % 2;
        const bool diagonal = !same_row && !same_col;
        if (a != b && (adjacent ? !diagonal : diagonal)) {
          m.start[a * 4 + b] = 1.0;
          ++count;
        }
      }
    }
    for (double& p : m.start) p /= static_cast<double>(count);
  }
  return meet(m);
}

// Meet 3x3: each agent observes its own cell. Reward for all agents in the
// top-left or bottom-right corner, or anywhere together with AG.
DecModel meet_3x3(std::size_t n, const std::set<Qualifier>& q) {
  const bool anywhere = q.count(Qualifier::AG) > 0;
  MeetParams m{Grid{3, 3}, n, true, [](std::size_t c) { return c; }, 9,
               [anywhere](const std::vector<std::size_t>& p) {
                 const bool together = std::all_of(p.begin(), p.end(),
                                                   [&](std::size_t c) { return c == p[0]; });
                 return together && (anywhere || p[0] == 0 || p[0] == 8);
               },
               q.count(Qualifier::WP) > 0, {}};
  JointIndexCodec cells(std::vector<std::size_t>(n, 9));
  if (q.count(Qualifier::UI)) {
    m.start.assign(cells.size(), 1.0 / static_cast<double>(cells.size()));
  } else {
    std::vector<std::size_t> corners = {2, 6, 8};
    corners.resize(n);
    m.start = point_start(cells, corners);
  }
  return meet(m);
}

// ----------------------------------------------------------------- Box Push
// 3x4 grid, boxes on the middle row (small at columns 0 and 3, large across
// 1-2), agents confined to the bottom row. Agent state = (column, heading).
// Actions: 0 turn left, 1 turn right, 2 forward, 3 stay; each succeeds with
// probability 0.9, otherwise nothing happens. Pushing a small box up scores
// 10; the large box needs both agents pushing together and scores 100. Any
// delivery resets the world to the start configuration. Observation: what
// lies ahead (0 empty, 1 wall, 2 agent, 3 small box, 4 large box).

enum Heading : std::size_t { kNorth, kEast, kSouth, kWest };

DecModel box_push() {
  constexpr std::size_t kCols = 4, kHeadings = 4, kAgentStates = kCols * kHeadings;
  JointIndexCodec agent_states({kAgentStates, kAgentStates});
  // Only distinct-column pairs are reachable; others are kept as absorbing
  // padding so the state codec stays a plain product.
  Builder b(agent_states.size(), {4, 4}, {5, 5});
  const std::size_t S = b.S, A = b.actions.size();
  auto col_of = [](std::size_t x) { return x / kHeadings; };
  auto head_of = [](std::size_t x) { return x % kHeadings; };
  auto make = [](std::size_t col, std::size_t head) { return col * kHeadings + head; };
  const std::size_t start = agent_states.encode(std::vector<std::size_t>{make(0, kEast), make(3, kWest)});

  auto ahead = [&](std::size_t self, std::size_t other) -> std::size_t {
    const std::size_t c = col_of(self);
    switch (head_of(self)) {
      case kNorth: return (c == 0 || c == 3) ? 3 : 4;
      case kSouth: return 1;
      case kEast: return c == kCols - 1 ? 1 : (col_of(other) == c + 1 ? 2 : 0);
      default: return c == 0 ? 1 : (col_of(other) + 1 == c ? 2 : 0);
    }
  };

  for (std::size_t s = 0; s < S; ++s) {
    const std::size_t x0 = agent_states.component(s, 0), x1 = agent_states.component(s, 1);
    const bool valid = col_of(x0) != col_of(x1);
    for (std::size_t a = 0; a < A; ++a) {
      if (!valid) {
        b.t.T(s, a, s) = 1.0;
        b.t.R(s, a) = 0.0;
        continue;
      }
      const std::size_t act[2] = {b.actions.component(a, 0), b.actions.component(a, 1)};
      const std::size_t pos[2] = {x0, x1};
      double penalty = -0.2;
      // Per-agent success outcomes, enumerated jointly since moves interact.
      for (int mask = 0; mask < 4; ++mask) {
        double p = 1.0;
        bool ok[2];
        for (int i = 0; i < 2; ++i) {
          ok[i] = (mask >> i) & 1;
          p *= ok[i] ? kBoxActionSuccess : 1.0 - kBoxActionSuccess;
        }
        std::size_t next[2] = {pos[0], pos[1]};
        bool pushes_small[2] = {false, false}, pushes_large[2] = {false, false};
        for (int i = 0; i < 2; ++i) {
          if (!ok[i]) continue;
          const std::size_t c = col_of(pos[i]), h = head_of(pos[i]);
          if (act[i] == 0) next[i] = make(c, (h + 3) % 4);
          if (act[i] == 1) next[i] = make(c, (h + 1) % 4);
          if (act[i] == 2) {
            const std::size_t front = ahead(pos[i], pos[1 - i]);
            if (front == 3) pushes_small[i] = true;
            if (front == 4) pushes_large[i] = true;
            if (front == 0) next[i] = make(h == kEast ? c + 1 : c - 1, h);
          }
        }
        // Two agents stepping into the same cell both stay put.
        if (col_of(next[0]) == col_of(next[1])) {
          if (col_of(next[0]) != col_of(pos[0])) next[0] = pos[0];
          if (col_of(next[1]) != col_of(pos[1])) next[1] = pos[1];
        }
        double gain = 0.0;
        if (pushes_large[0] && pushes_large[1]) gain += 100.0;
        for (int i = 0; i < 2; ++i) gain += pushes_small[i] ? 10.0 : 0.0;
        const std::size_t target =
            gain > 0.0 ? start : agent_states.encode(std::vector<std::size_t>{next[0], next[1]});
        b.t.T(s, a, target) += p;
        b.t.R(s, a) += p * gain;
      }
      for (int i = 0; i < 2; ++i) {
        if (act[i] == 2 && ahead(pos[i], pos[1 - i]) == 1) penalty -= 5.0;
      }
      b.t.R(s, a) += penalty;
    }
  }
  for (std::size_t next = 0; next < S; ++next) {
    const std::size_t x0 = agent_states.component(next, 0), x1 = agent_states.component(next, 1);
    const std::size_t o = b.observations.encode(std::vector<std::size_t>{ahead(x0, x1), ahead(x1, x0)});
    for (std::size_t a = 0; a < A; ++a) b.t.Z(a, next, o) = 1.0;
  }
  std::vector<double> start_belief(S, 0.0);
  start_belief[start] = 1.0;
  return b.finish(std::move(start_belief));
}

bool allowed(Problem p, std::size_t n, Qualifier q) {
  switch (q) {
    case Qualifier::UI: return true;
    case Qualifier::WP:
      return p == Problem::Broadcast || p == Problem::Meet2x2 || p == Problem::Meet3x3;
    case Qualifier::DP: return p == Problem::Broadcast && n == 3;
    case Qualifier::SS: return p == Problem::Meet2x2;
    case Qualifier::AG: return p == Problem::Meet3x3;
  }
  return false;
}

}  // namespace

std::string_view to_string(Problem p) {
  switch (p) {
    case Problem::DecTiger: return "dec-tiger";
    case Problem::Broadcast: return "broadcast";
    case Problem::Meet2x2: return "meet-2x2";
    case Problem::Meet3x3: return "meet-3x3";
    case Problem::BoxPush: return "box-push";
  }
  return "?";
}

std::string_view to_string(Qualifier q) {
  switch (q) {
    case Qualifier::UI: return "UI";
    case Qualifier::WP: return "WP";
    case Qualifier::DP: return "DP";
    case Qualifier::SS: return "SS";
    case Qualifier::AG: return "AG";
  }
  return "?";
}

Problem parse_problem(std::string_view name) {
  for (Problem p : {Problem::DecTiger, Problem::Broadcast, Problem::Meet2x2, Problem::Meet3x3,
                    Problem::BoxPush}) {
    if (to_string(p) == name) return p;
  }
  throw UnsupportedSpec("unknown problem '" + std::string(name) + "'");
}

Qualifier parse_qualifier(std::string_view name) {
  for (Qualifier q :
       {Qualifier::UI, Qualifier::WP, Qualifier::DP, Qualifier::SS, Qualifier::AG}) {
    if (to_string(q) == name) return q;
  }
  throw UnsupportedSpec("unknown qualifier '" + std::string(name) + "'");
}

std::set<Qualifier> parse_qualifiers(std::string_view list) {
  std::set<Qualifier> out;
  if (list.empty() || list == "-") return out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    std::size_t end = list.find(',', pos);
    if (end == std::string_view::npos) end = list.size();
    std::string_view item = list.substr(pos, end - pos);
    if (!item.empty()) out.insert(parse_qualifier(item));
    pos = end + 1;
  }
  return out;
}

std::string BenchmarkSpec::qualifier_string(char sep) const {
  if (qualifiers.empty()) return "-";
  std::string out;
  for (Qualifier q : qualifiers) {
    if (!out.empty()) out += sep;
    out += to_string(q);
  }
  return out;
}

std::string BenchmarkSpec::key() const {
  std::string out = std::string(to_string(problem)) + "_" + std::to_string(num_agents);
  if (!qualifiers.empty()) out += "_" + qualifier_string('-');
  return out;
}

void validate(const BenchmarkSpec& spec) {
  const std::size_t n = spec.num_agents;
  bool agents_ok = false;
  switch (spec.problem) {
    case Problem::DecTiger: agents_ok = n >= 2 && n <= 4; break;
    case Problem::Broadcast: agents_ok = n == 2 || n == 3; break;
    case Problem::Meet2x2: agents_ok = n == 2; break;
    case Problem::Meet3x3: agents_ok = n == 2 || n == 3; break;
    case Problem::BoxPush: agents_ok = n == 2; break;
  }
  if (!agents_ok) {
    throw UnsupportedSpec(std::string(to_string(spec.problem)) + " does not support " +
                          std::to_string(n) + " agents");
  }
  for (Qualifier q : spec.qualifiers) {
    if (!allowed(spec.problem, n, q)) {
      throw UnsupportedSpec("qualifier " + std::string(to_string(q)) + " does not apply to " +
                            std::string(to_string(spec.problem)) + " with " + std::to_string(n) +
                            " agents");
    }
  }
  if (spec.qualifiers.count(Qualifier::UI) && spec.qualifiers.count(Qualifier::SS)) {
    throw UnsupportedSpec("UI and SS both set the initial belief");
  }
}

DecModel build_benchmark(const BenchmarkSpec& spec) {
  validate(spec);
  DecModel model = [&] {
    switch (spec.problem) {
      case Problem::DecTiger: return dec_tiger(spec.num_agents);
      case Problem::Broadcast: return broadcast(spec.num_agents, spec.qualifiers);
      case Problem::Meet2x2: return meet_2x2(spec.qualifiers);
      case Problem::Meet3x3: return meet_3x3(spec.num_agents, spec.qualifiers);
      case Problem::BoxPush: return box_push();
    }
    throw UnsupportedSpec("unknown problem");
  }();
  if (spec.qualifiers.count(Qualifier::UI) && spec.problem != Problem::Meet2x2 &&
      spec.problem != Problem::Meet3x3) {
    const std::size_t S = model.joint().num_states();
    model = DecModel(model.joint().with_initial_belief(Belief::uniform(S)), model.spaces());
  }
  return model;
}

BenchmarkInstance make_instance(const BenchmarkSpec& spec) {
  return {spec, build_benchmark(spec)};
}

BenchmarkInstance apply_qualifier(const BenchmarkInstance& inst, Qualifier q) {
  if (inst.spec.qualifiers.count(q)) return inst;
  BenchmarkSpec next = inst.spec;
  next.qualifiers.insert(q);
  return make_instance(next);
}

std::string provenance(const BenchmarkSpec& spec) {
  std::string text = "benchmark: " + std::string(to_string(spec.problem)) +
                     "  agents: " + std::to_string(spec.num_agents) +
                     "  qualifiers: " + spec.qualifier_string() + "\n";
  switch (spec.problem) {
    case Problem::DecTiger:
      text +=
          "source: Nair et al. 2003 (Decentralized Tiger), as distributed on the MASPlan\n"
          "Dec-POMDP page. listen accuracy 0.85; rewards -2/9/20/-101/-100/-50 for two agents;\n"
          "door opening resets the tiger uniformly. n-agent rewards: tiger damage -100 split\n"
          "among agents opening its door, +10 per agent opening the safe door, -1 per listener.\n";
      break;
    case Problem::Broadcast:
      text +=
          "source: Hansen et al. 2004 (Broadcast Channel). buffer fill probabilities 0.9/0.1\n"
          "(two agents), 0.2/0.4/0.4 under DP; reward 1 per delivered message; observation is\n"
          "the agent's own buffer. WP: -0.1 per send action.\n";
      break;
    case Problem::Meet2x2:
      text +=
          "source: Bernstein et al. 2005 (Meeting in a 2x2 grid). moves succeed w.p. 0.6,\n"
          "otherwise stay; observation is the wall on the agent's left or right; reward 1 per\n"
          "step co-located. start: uniform over opposite-corner placements (SS: placements\n"
          "sharing a row or column). WP: -0.1 per wall bump.\n";
      break;
    case Problem::Meet3x3:
      text +=
          "source: Amato et al. 2009 (Meeting in a 3x3 grid). moves succeed w.p. 0.6, the rest\n"
          "spread evenly over the other moves and staying; blocked moves stay. observation is\n"
          "the agent's own cell. reward 1 when all agents share the top-left or bottom-right\n"
          "cell (AG: any cell). start: opposite corners. WP: -0.1 per wall bump.\n";
      break;
    case Problem::BoxPush:
      text +=
          "source: Seuken and Zilberstein 2007 (Cooperative Box Pushing), reconstructed: 3x4\n"
          "grid, two small boxes (10) and one large box (100, needs both agents); actions\n"
          "succeed w.p. 0.9; -0.1 per agent per step, -5 per wall bump; deterministic\n"
          "observation of the cell ahead.\n";
      break;
  }
  return text;
}

std::vector<BenchmarkSpec> table1_specs() {
  using Q = Qualifier;
  return {
      {Problem::DecTiger, 2, {}},
      {Problem::DecTiger, 3, {}},
      {Problem::DecTiger, 4, {}},
      {Problem::Broadcast, 2, {}},
      {Problem::Broadcast, 3, {Q::DP, Q::WP}},
      {Problem::Meet2x2, 2, {}},
      {Problem::Meet2x2, 2, {Q::SS}},
      {Problem::Meet2x2, 2, {Q::UI, Q::WP}},
      {Problem::Meet3x3, 2, {}},
      {Problem::Meet3x3, 2, {Q::AG, Q::UI, Q::WP}},
      {Problem::Meet3x3, 3, {Q::AG, Q::UI, Q::WP}},
      {Problem::BoxPush, 2, {}},
  };
}

}  // namespace mcas
