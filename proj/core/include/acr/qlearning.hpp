#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <unordered_map>

#include "acr/lightworld.hpp"
#include "acr/rng.hpp"

namespace acr::rl {

using lightworld::Action;
using lightworld::StateKey;

struct RLParams {
  double alpha = 0.25;
  double gamma = 0.99;
  double epsilon = 0.1;
  int n_acr = 50;
  int n_hat = 50;
  int episodes = 1000;
  int max_steps = 500;
  std::uint64_t seed = 0;

  // Throws ValidationError on out-of-range values.
  void validate() const;
};

using ActionValues = std::array<double, lightworld::kNumActions>;

// Tabular action values, zero for anything not yet written.
class QTable {
 public:
  const ActionValues& values(StateKey s) const;
  double get(StateKey s, Action a) const { return values(s)[lightworld::index_of(a)]; }
  void set(StateKey s, Action a, double v) { table_[s][lightworld::index_of(a)] = v; }
  double max_value(StateKey s) const;
  std::size_t size() const { return table_.size(); }

  friend bool operator==(const QTable&, const QTable&) = default;

 private:
  std::unordered_map<StateKey, ActionValues> table_;
};

// Q(s,a) += alpha * (r + gamma * max_b Q(s',b) - Q(s,a)), with the bootstrap
// term dropped when s' is terminal.
void q_update(QTable& q, StateKey s, Action a, double reward, StateKey next,
              bool next_terminal, const RLParams& params);
// Same, with the max taken over the actions the agent may choose in s'.
void q_update(QTable& q, StateKey s, Action a, double reward, StateKey next,
              bool next_terminal, const RLParams& params,
              std::span<const Action> next_candidates);

// Highest-valued action among the candidates; ties go to the smallest label.
Action greedy(const QTable& q, StateKey s, std::span<const Action> candidates);

// One uniform draw decides explore vs exploit; exploring costs a second draw.
Action epsilon_greedy(const QTable& q, StateKey s, std::span<const Action> candidates,
                      Rng& rng, double epsilon);

// epsilon-greedy over all six actions.
Action select_action_plain(const QTable& q, StateKey s, Rng& rng, const RLParams& params);

}  // namespace acr::rl
