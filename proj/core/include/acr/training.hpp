#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "acr/agents.hpp"
#include "acr/hat.hpp"
#include "acr/lightworld.hpp"

namespace acr::rl {

// ---------------------------------------------------------------------------
// Demonstrations

enum class DemoQuality { kExpert, kSuboptimal };

std::string to_string(DemoQuality q);

struct Demonstration {
  std::vector<std::pair<lightworld::GridState, Action>> steps;
  ObservationLog log;
  bool reached_goal = false;
  bool stopped_early = false;
  double reward = 0.0;

  std::vector<Action> actions() const;
};

struct SuboptimalModel {
  double detour_probability = 0.2;
  double early_stop_probability = 0.25;
};

// Expert demos follow a shortest path, choosing uniformly among the optimal
// actions at each state. Suboptimal demos replace each optimal action by a
// uniform random one with detour_probability, and with early_stop_probability
// stop at a uniform step before the optimal length. Throws ValidationError on
// an unsolvable map.
std::vector<Demonstration> generate_demos(const lightworld::GridMap& map,
                                          DemoQuality quality, int count,
                                          std::uint64_t seed,
                                          SuboptimalModel model = {});

std::vector<Example> demo_examples(const lightworld::GridMap& map,
                                   const std::vector<Demonstration>& demos);

// hat_train: summarizes demonstrations into a decision list.
DecisionList hat_train(const lightworld::GridMap& map,
                       const std::vector<Demonstration>& demos);

// JSON lines {"demo": i, "state": "r,c|ops", "action": "up"}.
std::string format_demos_jsonl(const lightworld::GridMap& map,
                               const std::vector<Demonstration>& demos);

// Concatenated action-code logs of the demonstrations.
ObservationLog demo_log(const std::vector<Demonstration>& demos);

// ---------------------------------------------------------------------------
// Training

enum class AgentKind { kQ, kAcrQ, kHat, kAcrHat };

std::string to_string(AgentKind k);

struct LearningCurve {
  std::vector<double> rewards;  // per-episode total reward
  std::vector<int> steps;       // per-episode action count
  int convergence_episode = 0;  // 0-based

  double mean_reward(std::size_t first, std::size_t last) const;
  double mean_steps() const;
};

struct ConvergenceRule {
  int window = 50;
  double tolerance = 0.05;  // fraction of |plateau|
  int plateau_episodes = 100;
};

// First episode e whose window [e, e+W) averages at least plateau - delta,
// with the plateau the mean of the final episodes. Returns the episode count
// when no full window qualifies.
int convergence_episode(const std::vector<double>& rewards, ConvergenceRule rule = {});

struct TrainingInputs {
  std::optional<CategorySet> acr;
  // Objects whose category the ACR agent infers online.
  LabelSet unseen_objects;
  ProbeStrategy strategy = ProbeStrategy::kPaperMinEntropy;
  std::optional<DecisionList> dlist;
};

// One step of a run, for trace-level checks.
struct TraceStep {
  int episode;
  lightworld::GridState state;
  LabelSet objects;
  Action action;
  bool succeeded;
};

struct TrainingResult {
  LearningCurve curve;
  QTable q;
};

// Trains one agent for params.episodes episodes of at most params.max_steps
// steps each. A single Rng seeded with params.seed drives every draw. Throws
// ValidationError when the agent kind lacks its ACR or decision list.
TrainingResult run_training(const lightworld::GridMap& map, AgentKind kind,
                            const RLParams& params, const TrainingInputs& inputs,
                            std::vector<TraceStep>* trace = nullptr);

}  // namespace acr::rl
