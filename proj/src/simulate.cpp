#include <cmath>

#include "internal/random.hpp"
#include "mcas/error.hpp"
#include "mcas/harness.hpp"

namespace mcas {
namespace {

// Stream tags mixed into the episode seed so environment sampling and MCAS
// tie-breaking never share a generator.
constexpr std::uint64_t kEnvStream = 0x656E7669726F6E00ull;
constexpr std::uint64_t kTieStream = 0x7469656272656B00ull;

bool needs_joint_policy(Method m) {
  return m == Method::Mpomdp || m == Method::MpomdpC || m == Method::Mcas ||
         m == Method::McasAlpha;
}

}  // namespace

PolicySet::PolicySet(const BenchmarkSpec& s) : PolicySet(s, build_benchmark(s)) {}

PolicySet::PolicySet(const BenchmarkSpec& s, DecModel model)
    : spec(s), dec(std::make_shared<const DecModel>(std::move(model))) {
  joint = std::make_shared<const TabularModel>(build_mpomdp(*dec));
  for (AgentIndex i = 0; i < dec->num_agents(); ++i) {
    views.push_back(std::make_shared<const TabularModel>(build_agent_view(*dec, i)));
  }
  view_policies.resize(dec->num_agents());
}

void PolicySet::prepare(const MethodSpec& method, const SolverParams& params, PolicyCache* cache) {
  method.validate();
  auto solve = [&](const std::string& name, const TabularModel& model) {
    if (cache) {
      auto entry = cache->get_or_solve(name, model, params);
      solver_timed_out |= entry.timed_out;
      return entry.policy;
    }
    SolveResult r = solve_pomdp(model, params);
    solver_timed_out |= r.timed_out;
    return std::make_shared<const AlphaVectorPolicy>(std::move(r.policy));
  };
  auto view_name = [&](AgentIndex i) { return spec.key() + ".agent" + std::to_string(i + 1); };

  if (method.method == Method::Mmdp) {
    if (!mdp) mdp = std::make_shared<const MdpSolution>(solve_mdp(build_mmdp(*dec).model));
    return;
  }
  if (needs_joint_policy(method.method) && !joint_policy) {
    joint_policy = solve(spec.key() + ".joint", *joint);
  }
  std::vector<AgentIndex> agents;
  switch (method.method) {
    case Method::MpomdpI: agents = {method.leader}; break;
    case Method::Independent:
      for (AgentIndex i = 0; i < dec->num_agents(); ++i) agents.push_back(i);
      break;
    case Method::Mcas:
    case Method::McasAlpha:
      for (AgentIndex i = 1; i < dec->num_agents(); ++i) agents.push_back(i);
      break;
    default: break;
  }
  for (AgentIndex i : agents) {
    if (!view_policies[i]) view_policies[i] = solve(view_name(i), *views[i]);
  }
}

RunRecord simulate_episode(const PolicySet& ps, const MethodSpec& method, std::size_t horizon,
                           std::uint64_t seed, const StepHook& hook) {
  method.validate();
  RunRecord rec;
  rec.seed = seed;
  rec.steps = horizon;
  if (horizon == 0) return rec;

  const DecModel& dec = *ps.dec;
  const TabularModel& joint = *ps.joint;
  const std::size_t n = dec.num_agents();
  const auto& acodec = dec.spaces().actions;
  const auto& ocodec = dec.spaces().observations;

  if (method.method == Method::Mmdp) {
    if (!ps.mdp) throw InvalidModel("MMDP solution not prepared");
    rec.discounted_return = ps.mdp->expected_value(joint.initial_belief());
    return rec;
  }
  auto require = [](const auto& ptr, const char* what) {
    if (!ptr) throw InvalidModel(std::string(what) + " policy not prepared");
  };
  if (needs_joint_policy(method.method)) require(ps.joint_policy, "joint");
  if (method.method == Method::MpomdpI) {
    if (method.leader >= n) throw DimensionMismatch("leader index out of range");
    require(ps.view_policies[method.leader], "leader");
  }
  if (method.method == Method::Independent) {
    for (const auto& p : ps.view_policies) require(p, "agent");
  }

  std::mt19937_64 env(detail::splitmix64(seed ^ kEnvStream));

  std::optional<Coordinator> coordinator;
  const bool is_mcas = method.method == Method::Mcas || method.method == Method::McasAlpha;
  if (is_mcas) {
    for (AgentIndex j = 1; j < n; ++j) require(ps.view_policies[j], "teammate");
    McasConfig cfg = *method.mcas;
    cfg.rng_seed = detail::splitmix64(seed ^ kTieStream ^ cfg.rng_seed);
    coordinator.emplace(CoordinatorSetup{ps.joint, ps.joint_policy, ps.views, ps.view_policies},
                        cfg);
  }

  Belief joint_belief = joint.initial_belief();
  std::vector<Belief> beliefs(n, joint.initial_belief());
  std::vector<ActionIndex> intended(n, 0);
  std::vector<Suggestion> suggestions;
  std::vector<ObservationIndex> obs(n);
  std::vector<std::size_t> own_actions(n);
  std::vector<double> zrow(joint.num_observations());

  StateIndex s = detail::sample_index(env, joint.initial_belief().probs());
  double discount = 1.0;

  for (std::size_t t = 0; t < horizon; ++t) {
    ActionIndex a = 0;
    switch (method.method) {
      case Method::Mpomdp: a = policy_action(*ps.joint_policy, joint_belief); break;
      case Method::MpomdpC: a = policy_action(*ps.joint_policy, conflate(beliefs)); break;
      case Method::MpomdpI:
        a = policy_action(*ps.view_policies[method.leader], beliefs[method.leader]);
        break;
      case Method::Independent:
        for (AgentIndex i = 0; i < n; ++i) {
          intended[i] = policy_action(*ps.view_policies[i], beliefs[i]);
          own_actions[i] = acodec.component(intended[i], i);
        }
        a = acodec.encode(own_actions);
        break;
      case Method::Mcas:
      case Method::McasAlpha: {
        suggestions.clear();
        for (AgentIndex j = 1; j < n; ++j) {
          suggestions.push_back(
              {j, suggestion_payload(*ps.view_policies[j], beliefs[j], method.mcas->message_mode)});
        }
        a = coordinator->act(suggestions);
        break;
      }
      case Method::Mmdp: break;
    }

    const double r = joint.reward(s, a);
    rec.discounted_return += discount * r;
    discount *= joint.discount();

    const StateIndex next = detail::sample_index(env, joint.transition_row(s, a));
    for (ObservationIndex o = 0; o < zrow.size(); ++o) zrow[o] = joint.observation(a, next, o);
    const ObservationIndex o = detail::sample_index(env, zrow);
    for (AgentIndex i = 0; i < n; ++i) obs[i] = ocodec.component(o, i);

    const Belief prev_joint = hook ? joint_belief : Belief{};
    joint_belief = belief_update(joint, joint_belief, a, o);
    for (AgentIndex i = 0; i < n; ++i) {
      if (method.method != Method::Independent) {
        beliefs[i] = belief_update(*ps.views[i], beliefs[i], a, obs[i]);
        continue;
      }
      // An independent agent assumes its own joint plan was executed.
      auto predicted = predict(*ps.views[i], beliefs[i], intended[i]);
      auto updated = condition_on_observation(*ps.views[i], predicted, intended[i], obs[i]);
      if (updated) {
        beliefs[i] = std::move(*updated);
      } else {
        ++rec.anomalies;
        beliefs[i] = Belief::from_weights(std::move(predicted));
      }
    }
    if (coordinator) coordinator->observe(obs[0]);

    if (hook) {
      StepInfo info;
      info.t = t;
      info.state = s;
      info.next_state = next;
      info.joint_action = a;
      info.observations = obs;
      info.reward = r;
      info.prev_joint_belief = &prev_joint;
      info.joint_belief = &joint_belief;
      info.agent_beliefs = &beliefs;
      info.coordinator = coordinator ? &*coordinator : nullptr;
      hook(info);
    }
    s = next;
  }
  if (coordinator) {
    rec.max_est_set_sizes = coordinator->max_set_sizes();
    rec.anomalies += coordinator->anomalies();
  }
  return rec;
}

}  // namespace mcas
