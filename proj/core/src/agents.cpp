#include "acr/agents.hpp"

#include <algorithm>

#include "acr/error.hpp"

namespace acr::rl {

using lightworld::kAllActions;
using lightworld::label;

AcrGuide::AcrGuide(CategorySet acr, const LabelSet& unseen, ProbeStrategy strategy)
    : acr_(std::move(acr)), strategy_(strategy) {
  non_object_ = acr::non_object_actions(acr_, lightworld::action_labels());
  HypothesisSet candidates = acr_.object_categories();
  for (const auto& object : unseen) {
    if (candidates.size() == 1) {
      learned_[object] = candidates.front().actions;
    } else if (candidates.empty()) {
      learned_[object] = lightworld::action_labels();
    } else {
      pending_[object] = Pending{candidates, {}};
    }
  }
}

bool AcrGuide::is_resolved(const std::string& object) const {
  return !pending_.contains(object);
}

LabelSet AcrGuide::object_actions(const LabelSet& objects) const {
  LabelSet out;
  for (const auto& o : objects) {
    if (auto it = pending_.find(o); it != pending_.end()) {
      for (const auto& c : it->second.candidates) out.insert(c.actions.begin(), c.actions.end());
    } else if (auto jt = learned_.find(o); jt != learned_.end()) {
      out.insert(jt->second.begin(), jt->second.end());
    } else {
      LabelSet linked = allowed_actions(acr_, {o});
      out.insert(linked.begin(), linked.end());
    }
  }
  return out;
}

std::vector<Action> AcrGuide::permitted(const LabelSet& objects) const {
  LabelSet allowed = non_object_;
  LabelSet linked = object_actions(objects);
  allowed.insert(linked.begin(), linked.end());
  std::vector<Action> out;
  for (Action a : kAllActions) {
    if (allowed.contains(std::string(label(a)))) out.push_back(a);
  }
  if (out.empty()) out.assign(kAllActions.begin(), kAllActions.end());
  return out;
}

std::optional<std::string> AcrGuide::unresolved_object(const LabelSet& objects) const {
  for (const auto& o : objects) {
    if (pending_.contains(o)) return o;
  }
  return std::nullopt;
}

Action AcrGuide::probe_action(const std::string& object) const {
  const Pending& p = pending_.at(object);
  std::string pick = select_probe(p.candidates, p.tried, strategy_);
  auto a = lightworld::parse_action(pick);
  if (!a) throw ContractError("ACR category holds non-Lightworld action '" + pick + "'");
  return *a;
}

void AcrGuide::observe(const LabelSet& objects, Action action, bool succeeded) {
  if (lightworld::is_movement(action)) return;
  auto object = unresolved_object(objects);
  if (!object) return;
  Pending& p = pending_.at(*object);
  std::string a(label(action));
  if (p.tried.contains(a)) return;
  p.tried.insert(a);
  probes_[*object].emplace_back(a, succeeded);
  p.candidates = eliminate(p.candidates, a, succeeded);
  if (p.candidates.size() == 1) {
    learned_[*object] = p.candidates.front().actions;
    pending_.erase(*object);
  } else if (p.candidates.empty()) {
    // Contradiction: nothing known fits, so stop restricting this object.
    learned_[*object] = lightworld::action_labels();
    pending_.erase(*object);
  }
}

Action select_action_acr(const QTable& q, StateKey s, const LabelSet& env_objects,
                         const AcrGuide& guide, int episode, Rng& rng,
                         const RLParams& params) {
  if (episode >= params.n_acr) return select_action_plain(q, s, rng, params);
  if (auto object = guide.unresolved_object(env_objects)) {
    return guide.probe_action(*object);
  }
  std::vector<Action> allowed = guide.permitted(env_objects);
  return epsilon_greedy(q, s, allowed, rng, params.epsilon);
}

Action select_action_hat(const QTable& q, StateKey s, const FeatureVector& features,
                         const DecisionList& dlist, int episode, Rng& rng,
                         const RLParams& params) {
  if (episode >= params.n_hat) return select_action_plain(q, s, rng, params);
  if (auto a = dlist.lookup(features)) return *a;
  return kAllActions[rng.index(kAllActions.size())];
}

Action select_action_acr_hat(const QTable& q, StateKey s, const LabelSet& env_objects,
                             const FeatureVector& features, const AcrGuide& guide,
                             const DecisionList& dlist, int episode, Rng& rng,
                             const RLParams& params) {
  if (episode >= std::max(params.n_acr, params.n_hat)) {
    return select_action_plain(q, s, rng, params);
  }
  Action suggested;
  if (auto a = dlist.lookup(features)) {
    suggested = *a;
  } else {
    suggested = kAllActions[rng.index(kAllActions.size())];
  }
  std::vector<Action> allowed = guide.permitted(env_objects);
  if (std::find(allowed.begin(), allowed.end(), suggested) != allowed.end()) {
    return suggested;
  }
  return epsilon_greedy(q, s, allowed, rng, params.epsilon);
}

}  // namespace acr::rl
