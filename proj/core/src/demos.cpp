#include "acr/training.hpp"

#include <json.hpp>

#include "acr/error.hpp"
#include "acr/rng.hpp"

namespace acr::rl {

using lightworld::GridMap;
using lightworld::GridState;

std::string to_string(DemoQuality q) {
  return q == DemoQuality::kExpert ? "expert" : "suboptimal";
}

std::vector<Action> Demonstration::actions() const {
  std::vector<Action> out;
  out.reserve(steps.size());
  for (const auto& [s, a] : steps) out.push_back(a);
  return out;
}

std::vector<Demonstration> generate_demos(const GridMap& map, DemoQuality quality,
                                          int count, std::uint64_t seed,
                                          SuboptimalModel model) {
  lightworld::GoalDistances dist(map);
  const GridState start = lightworld::initial_state(map);
  auto optimal_length = dist.distance(start);
  if (!optimal_length) throw ValidationError("map has no path to the goal");

  Rng rng(seed);
  std::vector<Demonstration> demos;
  // Detours can wander into dead ends; cap the length generously.
  const int cap = 4 * *optimal_length + 50;
  for (int i = 0; i < count; ++i) {
    Demonstration demo;
    int stop_at = -1;
    if (quality == DemoQuality::kSuboptimal && rng.bernoulli(model.early_stop_probability)) {
      stop_at = static_cast<int>(rng.index(static_cast<std::size_t>(*optimal_length)));
    }
    GridState s = start;
    while (!s.terminal && static_cast<int>(demo.steps.size()) < cap) {
      if (static_cast<int>(demo.steps.size()) == stop_at) {
        demo.stopped_early = true;
        break;
      }
      std::vector<Action> best = dist.optimal_actions(s);
      Action a;
      bool detour = quality == DemoQuality::kSuboptimal &&
                    rng.bernoulli(model.detour_probability);
      if (detour || best.empty()) {
        a = lightworld::kAllActions[rng.index(lightworld::kNumActions)];
      } else {
        a = best[rng.index(best.size())];
      }
      demo.steps.emplace_back(s, a);
      s = lightworld::step(map, s, a).next;
    }
    demo.reached_goal = s.terminal && map.terrain(s.pos) == lightworld::Terrain::kGoal;
    demo.reward = s.cumulative_reward;
    demo.log = lightworld::record_log(map, demo.actions());
    demos.push_back(std::move(demo));
  }
  return demos;
}

std::vector<Example> demo_examples(const GridMap& map,
                                   const std::vector<Demonstration>& demos) {
  std::vector<Example> out;
  for (const auto& d : demos) {
    for (const auto& [s, a] : d.steps) out.emplace_back(extract_features(map, s), a);
  }
  return out;
}

DecisionList hat_train(const GridMap& map, const std::vector<Demonstration>& demos) {
  if (demos.empty()) throw ValidationError("HAT needs at least one demonstration");
  std::vector<Example> examples = demo_examples(map, demos);
  if (examples.empty()) throw ValidationError("demonstrations contain no steps");
  return learn_decision_list(examples);
}

std::string format_demos_jsonl(const GridMap& map, const std::vector<Demonstration>& demos) {
  std::string out;
  for (std::size_t i = 0; i < demos.size(); ++i) {
    for (const auto& [s, a] : demos[i].steps) {
      nlohmann::json line = {{"demo", i},
                             {"state", lightworld::state_key_string(map, s)},
                             {"action", std::string(lightworld::label(a))}};
      out += line.dump();
      out += '\n';
    }
  }
  return out;
}

ObservationLog demo_log(const std::vector<Demonstration>& demos) {
  ObservationLog out;
  for (const auto& d : demos) out.insert(out.end(), d.log.begin(), d.log.end());
  return out;
}

}  // namespace acr::rl
