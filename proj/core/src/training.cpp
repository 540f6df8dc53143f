#include "acr/training.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "acr/error.hpp"

namespace acr::rl {

using lightworld::GridMap;
using lightworld::GridState;

std::string to_string(AgentKind k) {
  switch (k) {
    case AgentKind::kQ: return "Q";
    case AgentKind::kAcrQ: return "ACR+Q";
    case AgentKind::kHat: return "HAT";
    case AgentKind::kAcrHat: return "ACR+HAT";
  }
  return "?";
}

double LearningCurve::mean_reward(std::size_t first, std::size_t last) const {
  last = std::min(last, rewards.size());
  if (first >= last) return 0.0;
  double sum = std::accumulate(rewards.begin() + first, rewards.begin() + last, 0.0);
  return sum / static_cast<double>(last - first);
}

double LearningCurve::mean_steps() const {
  if (steps.empty()) return 0.0;
  double sum = std::accumulate(steps.begin(), steps.end(), 0.0);
  return sum / static_cast<double>(steps.size());
}

int convergence_episode(const std::vector<double>& rewards, ConvergenceRule rule) {
  const int n = static_cast<int>(rewards.size());
  if (n == 0) return 0;
  const int tail = std::min(rule.plateau_episodes, n);
  double plateau = std::accumulate(rewards.end() - tail, rewards.end(), 0.0) / tail;
  double threshold = plateau - rule.tolerance * std::abs(plateau);

  const int w = std::min(rule.window, n);
  double window = std::accumulate(rewards.begin(), rewards.begin() + w, 0.0);
  for (int e = 0; e + w <= n; ++e) {
    if (e > 0) window += rewards[e + w - 1] - rewards[e - 1];
    if (window / w >= threshold) return e;
  }
  return n;
}

TrainingResult run_training(const GridMap& map, AgentKind kind, const RLParams& params,
                            const TrainingInputs& inputs, std::vector<TraceStep>* trace) {
  params.validate();
  const bool wants_acr = kind == AgentKind::kAcrQ || kind == AgentKind::kAcrHat;
  const bool wants_dlist = kind == AgentKind::kHat || kind == AgentKind::kAcrHat;
  if (wants_acr && !inputs.acr) {
    throw ValidationError(to_string(kind) + " agent needs an ACR");
  }
  if (wants_dlist && !inputs.dlist) {
    throw ValidationError(to_string(kind) + " agent needs a decision list");
  }

  std::optional<AcrGuide> guide;
  if (wants_acr) guide.emplace(*inputs.acr, inputs.unseen_objects, inputs.strategy);

  TrainingResult result;
  QTable& q = result.q;
  LearningCurve& curve = result.curve;
  curve.rewards.reserve(params.episodes);
  curve.steps.reserve(params.episodes);
  Rng rng(params.seed);
  const int acr_window = kind == AgentKind::kAcrHat ? std::max(params.n_acr, params.n_hat)
                                                    : params.n_acr;

  for (int episode = 0; episode < params.episodes; ++episode) {
    GridState s = lightworld::initial_state(map);
    int steps = 0;
    while (!s.terminal && steps < params.max_steps) {
      StateKey key = lightworld::state_key(map, s);
      LabelSet objects = lightworld::interactable_objects(map, s);
      Action a = Action::kDown;
      switch (kind) {
        case AgentKind::kQ:
          a = select_action_plain(q, key, rng, params);
          break;
        case AgentKind::kAcrQ:
          a = select_action_acr(q, key, objects, *guide, episode, rng, params);
          break;
        case AgentKind::kHat:
          a = select_action_hat(q, key, extract_features(map, s), *inputs.dlist, episode,
                                rng, params);
          break;
        case AgentKind::kAcrHat:
          a = select_action_acr_hat(q, key, objects, extract_features(map, s), *guide,
                                    *inputs.dlist, episode, rng, params);
          break;
      }
      lightworld::StepOutcome out = lightworld::step(map, s, a);
      StateKey next_key = lightworld::state_key(map, out.next);
      if (guide && episode < acr_window) {
        // Actions the ACR rules out here would fail: back them up as a
        // step-cost self-loop so the bias outlives the window.
        auto here = guide->permitted(objects);
        for (Action b : lightworld::kAllActions) {
          if (b == a || std::find(here.begin(), here.end(), b) != here.end()) continue;
          q_update(q, key, b, lightworld::kStepReward, key, false, params, here);
        }
      }
      if (guide && episode < acr_window && !out.terminal) {
        // Inside the ACR window the agent only ever picks permitted actions,
        // so the bootstrap ranges over those.
        auto next_allowed = guide->permitted(lightworld::interactable_objects(map, out.next));
        q_update(q, key, a, out.reward, next_key, out.terminal, params, next_allowed);
      } else {
        q_update(q, key, a, out.reward, next_key, out.terminal, params);
      }
      if (guide) guide->observe(objects, a, out.succeeded);
      if (trace) trace->push_back({episode, s, objects, a, out.succeeded});
      s = out.next;
      ++steps;
    }
    curve.rewards.push_back(s.cumulative_reward);
    curve.steps.push_back(steps);
  }
  curve.convergence_episode = convergence_episode(curve.rewards);
  return result;
}

}  // namespace acr::rl
