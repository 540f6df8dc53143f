#include "acr/qlearning.hpp"

#include <algorithm>
#include <cmath>

#include "acr/error.hpp"

namespace acr::rl {

void RLParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ValidationError("alpha must be in (0, 1]");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ValidationError("gamma must be in [0, 1]");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw ValidationError("epsilon must be in [0, 1]");
  }
  if (n_acr < 0 || n_hat < 0) throw ValidationError("bias horizons must be >= 0");
  if (episodes < 0) throw ValidationError("episodes must be >= 0");
  if (max_steps <= 0) throw ValidationError("max_steps must be positive");
}

const ActionValues& QTable::values(StateKey s) const {
  static const ActionValues kZero{};
  auto it = table_.find(s);
  return it == table_.end() ? kZero : it->second;
}

double QTable::max_value(StateKey s) const {
  const ActionValues& v = values(s);
  return *std::max_element(v.begin(), v.end());
}

void q_update(QTable& q, StateKey s, Action a, double reward, StateKey next,
              bool next_terminal, const RLParams& params) {
  double bootstrap = next_terminal ? 0.0 : q.max_value(next);
  double old = q.get(s, a);
  double updated = old + params.alpha * (reward + params.gamma * bootstrap - old);
  if (updated != old || params.alpha != 0.0) q.set(s, a, updated);
}

void q_update(QTable& q, StateKey s, Action a, double reward, StateKey next,
              bool next_terminal, const RLParams& params,
              std::span<const Action> next_candidates) {
  double bootstrap = 0.0;
  if (!next_terminal) {
    if (next_candidates.empty()) throw ContractError("q_update over no next actions");
    const ActionValues& v = q.values(next);
    bootstrap = v[lightworld::index_of(next_candidates.front())];
    for (Action b : next_candidates) bootstrap = std::max(bootstrap, v[lightworld::index_of(b)]);
  }
  double old = q.get(s, a);
  double updated = old + params.alpha * (reward + params.gamma * bootstrap - old);
  if (updated != old || params.alpha != 0.0) q.set(s, a, updated);
}

Action greedy(const QTable& q, StateKey s, std::span<const Action> candidates) {
  const ActionValues& v = q.values(s);
  Action best = candidates.front();
  for (Action a : candidates) {
    double va = v[lightworld::index_of(a)];
    double vb = v[lightworld::index_of(best)];
    if (va > vb || (va == vb && a < best)) best = a;
  }
  return best;
}

Action epsilon_greedy(const QTable& q, StateKey s, std::span<const Action> candidates,
                      Rng& rng, double epsilon) {
  if (candidates.empty()) throw ContractError("epsilon_greedy over no actions");
  if (rng.uniform() < epsilon) return candidates[rng.index(candidates.size())];
  return greedy(q, s, candidates);
}

Action select_action_plain(const QTable& q, StateKey s, Rng& rng, const RLParams& params) {
  return epsilon_greedy(q, s, lightworld::kAllActions, rng, params.epsilon);
}

}  // namespace acr::rl
