#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "acr/catalog.hpp"
#include "acr/formation.hpp"
#include "acr/graph.hpp"
#include "acr/lightworld.hpp"
#include "acr/training.hpp"

namespace acr::experiments {

inline constexpr const char* kCodeVersion = "0.1.0";

struct ResultRow {
  std::string experiment;
  std::string condition;
  std::uint64_t seed = 0;
  std::string metric;
  double value = 0.0;
};

// Long-form results with a provenance header. Rows are only ever appended;
// to_csv writes them sorted so insertion order does not matter.
class ResultTable {
 public:
  explicit ResultTable(std::string config_text = {});

  void add(ResultRow row);
  const std::vector<ResultRow>& rows() const { return rows_; }
  std::string config_hash() const { return config_hash_; }

  // "# config-hash: ..." and "# code-version: ..." then
  // experiment,condition,seed,metric,value.
  std::string to_csv() const;

 private:
  std::string config_hash_;
  std::vector<ResultRow> rows_;
};

// FNV-1a 64 over the text, as 16 hex digits.
std::string fnv1a_hex(std::string_view text);

// Fixed-precision formatting shared by every CSV writer.
std::string format_value(double v);

// Worker count: ACRLAB_THREADS when set to a positive integer, else the
// hardware concurrency. Never below 1.
unsigned thread_cap();

// Runs fn(i) for i in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

// ---------------------------------------------------------------------------
// ACR from logs

struct BuildAcrResult {
  AcrGraph graph;
  CategorySet categories;
  std::string json;
  std::string table;
  bool empty = false;
};

BuildAcrResult build_acr(const std::vector<ObservationLog>& logs);

// ---------------------------------------------------------------------------
// Formation planning

struct FormationBenchConfig {
  int max_units = 5;
  int width = 5;
  int height = 5;
  std::chrono::milliseconds cell_budget{60000};
};

struct FormationCell {
  int n_units = 0;
  planner::GroundingMode mode = planner::GroundingMode::kBaseline;
  planner::SearchStats stats;
};

// Runs both grounding modes for n = 1..max_units, sequentially so wall times
// are not skewed by contention. Cells sorted by (n_units, mode).
std::vector<FormationCell> formation_bench(const FormationBenchConfig& config);

// n_units,mode,expanded,generated,time_ms,plan_len. Censored cells have
// plan_len -1. time_ms is wall clock, so include_time=false gives the
// reproducible subset.
std::string formation_csv(const std::vector<FormationCell>& cells, bool include_time = true);
std::string formation_time_svg(const std::vector<FormationCell>& cells);
std::string formation_nodes_svg(const std::vector<FormationCell>& cells);
ResultTable formation_table(const FormationBenchConfig& config,
                            const std::vector<FormationCell>& cells);

// ---------------------------------------------------------------------------
// Exploration phase

struct ExplorationRow {
  std::string build_order;
  std::string condition;  // baseline, or acr-<strategy>
  planner::ExplorationResult result;
};

std::vector<ExplorationRow> exploration_bench(const planner::SyntheticCatalog& catalog,
                                              const std::vector<std::string>& build_orders);

// build_order,condition,unseen_kinds,total_a_obj
std::string exploration_csv(const std::vector<ExplorationRow>& rows);
// build_order,condition,kind,a_obj,result
std::string exploration_detail_csv(const std::vector<ExplorationRow>& rows);

// ---------------------------------------------------------------------------
// Lightworld RL

struct AgentSpec {
  std::string name;
  rl::AgentKind kind;
  std::optional<rl::DemoQuality> demo_quality;
  int demo_count = 0;
};

// Q, ACR+Q, HAT(expert x5), HAT(subopt x5), HAT(expert x1), ACR+HAT(expert x1),
// ACR+HAT(subopt x5).
std::vector<AgentSpec> default_agents();
std::optional<AgentSpec> find_agent(const std::string& name);

struct LightworldBenchConfig {
  lightworld::GridMap map = lightworld::canonical_map();
  std::vector<std::uint64_t> seeds;
  rl::RLParams params;
  ProbeStrategy strategy = ProbeStrategy::kPaperMinEntropy;
  unsigned threads = 1;
};

struct RunRecord {
  std::string agent;
  std::uint64_t seed = 0;
  rl::LearningCurve curve;
};

// Builds one agent's inputs for a seed: demonstrations drawn from a stream
// derived from the seed, the decision list for HAT kinds, and for ACR kinds
// the ACR of the first goal-reaching demonstration (an expert one for ACR+Q).
rl::TrainingInputs agent_inputs(const lightworld::GridMap& map, const AgentSpec& agent,
                                std::uint64_t seed, ProbeStrategy strategy);

RunRecord run_agent(const LightworldBenchConfig& config, const AgentSpec& agent,
                    std::uint64_t seed);

// Every (agent, seed) cell; records ordered by agent list then seed.
std::vector<RunRecord> lightworld_bench(const LightworldBenchConfig& config,
                                        const std::vector<AgentSpec>& agents);

// episode,reward,steps,agent,seed (episodes 1-based).
std::string curves_csv(const std::vector<RunRecord>& records);
// agent,seeds,mean_convergence_episode,mean_actions_per_episode,
// mean_reward_1_50,mean_reward_1_100
std::string summary_csv(const std::vector<RunRecord>& records);
// Mean reward per episode with a min/max band across seeds.
std::string reward_svg(const std::vector<RunRecord>& records, std::size_t smooth = 10);
ResultTable lightworld_table(const LightworldBenchConfig& config,
                             const std::vector<RunRecord>& records);

// Per-seed values of one metric for one agent, in seed order.
std::vector<double> per_seed(const std::vector<RunRecord>& records, const std::string& agent,
                             double (*metric)(const rl::LearningCurve&));

double metric_convergence(const rl::LearningCurve& c);
double metric_reward_1_50(const rl::LearningCurve& c);
double metric_reward_1_100(const rl::LearningCurve& c);

}  // namespace acr::experiments
