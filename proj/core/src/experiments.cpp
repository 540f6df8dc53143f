#include "acr/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "acr/error.hpp"
#include "acr/svg.hpp"

namespace acr::experiments {

using planner::GroundingMode;

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_value(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

ResultTable::ResultTable(std::string config_text) : config_hash_(fnv1a_hex(config_text)) {}

void ResultTable::add(ResultRow row) { rows_.push_back(std::move(row)); }

std::string ResultTable::to_csv() const {
  std::vector<const ResultRow*> sorted;
  sorted.reserve(rows_.size());
  for (const auto& r : rows_) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(), [](const ResultRow* a, const ResultRow* b) {
    return std::tie(a->experiment, a->condition, a->seed, a->metric) <
           std::tie(b->experiment, b->condition, b->seed, b->metric);
  });
  std::string out = "# config-hash: " + config_hash_ + "\n";
  out += std::string("# code-version: ") + kCodeVersion + "\n";
  out += "experiment,condition,seed,metric,value\n";
  for (const ResultRow* r : sorted) {
    out += r->experiment + "," + r->condition + "," + std::to_string(r->seed) + "," +
           r->metric + "," + format_value(r->value) + "\n";
  }
  return out;
}

unsigned thread_cap() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ACRLAB_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return hw;
}

void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------------------

BuildAcrResult build_acr(const std::vector<ObservationLog>& logs) {
  BuildAcrResult out;
  for (const auto& log : logs) {
    for (const auto& code : log) out.graph = ingest(std::move(out.graph), code);
  }
  out.categories = derive_categories(out.graph);
  out.json = export_json(out.graph, out.categories);
  out.table = format_category_table(out.categories);
  out.empty = out.graph.actions().empty();
  return out;
}

// ---------------------------------------------------------------------------

std::vector<FormationCell> formation_bench(const FormationBenchConfig& config) {
  if (config.max_units < 1) throw ValidationError("max_units must be at least 1");
  std::vector<FormationCell> cells;
  for (int n = 1; n <= config.max_units; ++n) {
    auto problem = planner::benchmark_problem(n, config.width, config.height);
    auto acr = planner::formation_acr(problem);
    for (GroundingMode mode : {GroundingMode::kBaseline, GroundingMode::kAcrTyped}) {
      planner::SearchLimits limits;
      limits.time_budget = config.cell_budget;
      auto result = planner::search(problem, mode, acr, limits);
      cells.push_back({n, mode, result.stats});
    }
  }
  return cells;
}

std::string formation_csv(const std::vector<FormationCell>& cells, bool include_time) {
  std::string out = include_time ? "n_units,mode,expanded,generated,time_ms,plan_len\n"
                                 : "n_units,mode,expanded,generated,plan_len\n";
  for (const auto& c : cells) {
    out += std::to_string(c.n_units) + "," + planner::to_string(c.mode) + "," +
           std::to_string(c.stats.expanded) + "," + std::to_string(c.stats.generated) + ",";
    if (include_time) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", c.stats.wall_ms);
      out += std::string(buf) + ",";
    }
    out += std::to_string(c.stats.censored ? -1 : c.stats.plan_length) + "\n";
  }
  return out;
}

namespace {

std::vector<svg::Series> formation_series(const std::vector<FormationCell>& cells,
                                          bool time) {
  std::vector<svg::Series> series;
  for (GroundingMode mode : {GroundingMode::kBaseline, GroundingMode::kAcrTyped}) {
    svg::Series s;
    s.name = planner::to_string(mode);
    for (const auto& c : cells) {
      if (c.mode != mode) continue;
      s.x.push_back(c.n_units);
      double y = time ? c.stats.wall_ms : static_cast<double>(c.stats.expanded);
      s.y.push_back(std::max(y, time ? 1e-3 : 1.0));
    }
    series.push_back(std::move(s));
  }
  return series;
}

}  // namespace

std::string formation_time_svg(const std::vector<FormationCell>& cells) {
  svg::Axes axes{"Planning time by number of units", "units", "time (ms)", true};
  return svg::render_svg(formation_series(cells, true), axes);
}

std::string formation_nodes_svg(const std::vector<FormationCell>& cells) {
  svg::Axes axes{"Expanded nodes by number of units", "units", "expanded nodes", true};
  return svg::render_svg(formation_series(cells, false), axes);
}

ResultTable formation_table(const FormationBenchConfig& config,
                            const std::vector<FormationCell>& cells) {
  std::ostringstream cfg;
  cfg << "formation-bench max_units=" << config.max_units << " grid=" << config.width << "x"
      << config.height << " budget_ms=" << config.cell_budget.count();
  ResultTable table(cfg.str());
  for (const auto& c : cells) {
    std::string cond = planner::to_string(c.mode) + "-n" + std::to_string(c.n_units);
    table.add({"formation-bench", cond, 0, "expanded", static_cast<double>(c.stats.expanded)});
    table.add({"formation-bench", cond, 0, "generated", static_cast<double>(c.stats.generated)});
    table.add({"formation-bench", cond, 0, "plan_len",
               static_cast<double>(c.stats.censored ? -1 : c.stats.plan_length)});
    table.add({"formation-bench", cond, 0, "censored", c.stats.censored ? 1.0 : 0.0});
  }
  return table;
}

// ---------------------------------------------------------------------------

std::vector<ExplorationRow> exploration_bench(const planner::SyntheticCatalog& catalog,
                                              const std::vector<std::string>& build_orders) {
  std::vector<ExplorationRow> rows;
  for (const auto& name : build_orders) {
    rows.push_back({name, "baseline", planner::exploration_phase(name, catalog, false)});
    for (ProbeStrategy s : {ProbeStrategy::kPaperMinEntropy, ProbeStrategy::kMaxEntropy,
                            ProbeStrategy::kLexicographic}) {
      rows.push_back({name, "acr-" + to_string(s), planner::exploration_phase(name, catalog, true, s)});
    }
  }
  return rows;
}

std::string exploration_csv(const std::vector<ExplorationRow>& rows) {
  std::string out = "build_order,condition,unseen_kinds,total_a_obj\n";
  for (const auto& r : rows) {
    out += r.build_order + "," + r.condition + "," + std::to_string(r.result.unseen_kinds) +
           "," + std::to_string(r.result.total_a_obj) + "\n";
  }
  return out;
}

std::string exploration_detail_csv(const std::vector<ExplorationRow>& rows) {
  std::string out = "build_order,condition,kind,a_obj,result\n";
  for (const auto& r : rows) {
    for (const auto& [kind, report] : r.result.reports) {
      std::string result;
      if (const auto* known = std::get_if<KnownCategory>(&report.result)) {
        result = "known:" + std::to_string(known->id);
      } else {
        result = "new";
      }
      out += r.build_order + "," + r.condition + "," + kind + "," +
             std::to_string(report.a_obj()) + "," + result + "\n";
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<AgentSpec> default_agents() {
  using rl::AgentKind;
  using rl::DemoQuality;
  return {
      {"Q", AgentKind::kQ, std::nullopt, 0},
      {"ACR+Q", AgentKind::kAcrQ, DemoQuality::kExpert, 1},
      {"HAT(expert x5)", AgentKind::kHat, DemoQuality::kExpert, 5},
      {"HAT(subopt x5)", AgentKind::kHat, DemoQuality::kSuboptimal, 5},
      {"HAT(expert x1)", AgentKind::kHat, DemoQuality::kExpert, 1},
      {"ACR+HAT(expert x1)", AgentKind::kAcrHat, DemoQuality::kExpert, 1},
      {"ACR+HAT(subopt x5)", AgentKind::kAcrHat, DemoQuality::kSuboptimal, 5},
  };
}

std::optional<AgentSpec> find_agent(const std::string& name) {
  for (auto& a : default_agents()) {
    if (a.name == name) return a;
  }
  return std::nullopt;
}

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t demo_seed(std::uint64_t seed, rl::DemoQuality q) {
  return mix(seed ^ (q == rl::DemoQuality::kExpert ? 0x45585045ULL : 0x5355424fULL));
}

}  // namespace

rl::TrainingInputs agent_inputs(const lightworld::GridMap& map, const AgentSpec& agent,
                                std::uint64_t seed, ProbeStrategy strategy) {
  using rl::AgentKind;
  rl::TrainingInputs inputs;
  inputs.strategy = strategy;
  std::vector<rl::Demonstration> demos;
  if (agent.demo_quality && agent.demo_count > 0) {
    demos = rl::generate_demos(map, *agent.demo_quality, agent.demo_count,
                               demo_seed(seed, *agent.demo_quality));
  }
  if (agent.kind == AgentKind::kHat || agent.kind == AgentKind::kAcrHat) {
    if (demos.empty()) throw ValidationError(agent.name + " needs demonstrations");
    inputs.dlist = rl::hat_train(map, demos);
  }
  if (agent.kind == AgentKind::kAcrQ || agent.kind == AgentKind::kAcrHat) {
    // The ACR comes from one demonstration that completes the game.
    const rl::Demonstration* source = nullptr;
    for (const auto& d : demos) {
      if (d.reached_goal) {
        source = &d;
        break;
      }
    }
    std::vector<rl::Demonstration> fallback;
    if (!source) {
      fallback = rl::generate_demos(map, rl::DemoQuality::kExpert, 1,
                                    demo_seed(seed, rl::DemoQuality::kExpert));
      source = &fallback.front();
    }
    inputs.acr = derive_categories(build_graph(source->log));
    inputs.unseen_objects = {std::string(lightworld::kKeyLabel), std::string(lightworld::kSwitchLabel)};
  }
  return inputs;
}

RunRecord run_agent(const LightworldBenchConfig& config, const AgentSpec& agent,
                    std::uint64_t seed) {
  rl::RLParams params = config.params;
  params.seed = seed;
  auto inputs = agent_inputs(config.map, agent, seed, config.strategy);
  auto result = rl::run_training(config.map, agent.kind, params, inputs);
  return {agent.name, seed, std::move(result.curve)};
}

std::vector<RunRecord> lightworld_bench(const LightworldBenchConfig& config,
                                        const std::vector<AgentSpec>& agents) {
  if (config.seeds.empty()) throw ValidationError("seed list is empty");
  config.params.validate();
  const std::size_t n = agents.size() * config.seeds.size();
  std::vector<RunRecord> records(n);
  parallel_for(n, config.threads, [&](std::size_t i) {
    const auto& agent = agents[i / config.seeds.size()];
    std::uint64_t seed = config.seeds[i % config.seeds.size()];
    records[i] = run_agent(config, agent, seed);
  });
  return records;
}

std::string curves_csv(const std::vector<RunRecord>& records) {
  std::string out = "episode,reward,steps,agent,seed\n";
  for (const auto& r : records) {
    for (std::size_t e = 0; e < r.curve.rewards.size(); ++e) {
      out += std::to_string(e + 1) + "," + format_value(r.curve.rewards[e]) + "," +
             std::to_string(r.curve.steps[e]) + "," + r.agent + "," + std::to_string(r.seed) +
             "\n";
    }
  }
  return out;
}

double metric_convergence(const rl::LearningCurve& c) { return c.convergence_episode; }
double metric_reward_1_50(const rl::LearningCurve& c) { return c.mean_reward(0, 50); }
double metric_reward_1_100(const rl::LearningCurve& c) { return c.mean_reward(0, 100); }

namespace {

std::vector<std::string> agent_order(const std::vector<RunRecord>& records) {
  std::vector<std::string> names;
  for (const auto& r : records) {
    if (std::find(names.begin(), names.end(), r.agent) == names.end()) names.push_back(r.agent);
  }
  return names;
}

}  // namespace

std::vector<double> per_seed(const std::vector<RunRecord>& records, const std::string& agent,
                             double (*metric)(const rl::LearningCurve&)) {
  std::vector<std::pair<std::uint64_t, double>> vals;
  for (const auto& r : records) {
    if (r.agent == agent) vals.emplace_back(r.seed, metric(r.curve));
  }
  std::sort(vals.begin(), vals.end());
  std::vector<double> out;
  for (auto& [s, v] : vals) out.push_back(v);
  return out;
}

std::string summary_csv(const std::vector<RunRecord>& records) {
  std::string out =
      "agent,seeds,mean_convergence_episode,mean_actions_per_episode,mean_reward_1_50,"
      "mean_reward_1_100\n";
  for (const auto& name : agent_order(records)) {
    double conv = 0, actions = 0, r50 = 0, r100 = 0;
    int count = 0;
    for (const auto& r : records) {
      if (r.agent != name) continue;
      conv += r.curve.convergence_episode;
      actions += r.curve.mean_steps();
      r50 += metric_reward_1_50(r.curve);
      r100 += metric_reward_1_100(r.curve);
      ++count;
    }
    out += name + "," + std::to_string(count) + "," + format_value(conv / count) + "," +
           format_value(actions / count) + "," + format_value(r50 / count) + "," +
           format_value(r100 / count) + "\n";
  }
  return out;
}

std::string reward_svg(const std::vector<RunRecord>& records, std::size_t smooth) {
  smooth = std::max<std::size_t>(smooth, 1);
  std::vector<svg::Series> series;
  for (const auto& name : agent_order(records)) {
    std::vector<const rl::LearningCurve*> curves;
    for (const auto& r : records) {
      if (r.agent == name) curves.push_back(&r.curve);
    }
    std::size_t len = curves.front()->rewards.size();
    for (auto* c : curves) len = std::min(len, c->rewards.size());
    svg::Series s;
    s.name = name;
    // One point per block of `smooth` episodes keeps the file small.
    for (std::size_t b = 0; b < len; b += smooth) {
      std::size_t e = std::min(len, b + smooth);
      double mean = 0, lo = 0, hi = 0;
      for (std::size_t k = 0; k < curves.size(); ++k) {
        double v = curves[k]->mean_reward(b, e);
        mean += v;
        lo = k == 0 ? v : std::min(lo, v);
        hi = k == 0 ? v : std::max(hi, v);
      }
      s.x.push_back(static_cast<double>(b + 1));
      s.y.push_back(mean / static_cast<double>(curves.size()));
      s.lower.push_back(lo);
      s.upper.push_back(hi);
    }
    series.push_back(std::move(s));
  }
  svg::Axes axes{"Reward per episode (mean, min/max across seeds)", "episode", "reward"};
  return svg::render_svg(series, axes);
}

ResultTable lightworld_table(const LightworldBenchConfig& config,
                             const std::vector<RunRecord>& records) {
  std::ostringstream cfg;
  cfg << "lightworld-bench map=" << fnv1a_hex(lightworld::serialize_map(config.map))
      << " alpha=" << config.params.alpha << " gamma=" << config.params.gamma
      << " epsilon=" << config.params.epsilon << " n_acr=" << config.params.n_acr
      << " n_hat=" << config.params.n_hat << " episodes=" << config.params.episodes
      << " max_steps=" << config.params.max_steps << " strategy=" << to_string(config.strategy)
      << " seeds=";
  for (auto s : config.seeds) cfg << s << ";";
  ResultTable table(cfg.str());
  for (const auto& r : records) {
    table.add({"lightworld-bench", r.agent, r.seed, "convergence_episode",
               metric_convergence(r.curve)});
    table.add({"lightworld-bench", r.agent, r.seed, "mean_actions", r.curve.mean_steps()});
    table.add({"lightworld-bench", r.agent, r.seed, "mean_reward_1_50", metric_reward_1_50(r.curve)});
    table.add({"lightworld-bench", r.agent, r.seed, "mean_reward_1_100",
               metric_reward_1_100(r.curve)});
  }
  return table;
}

}  // namespace acr::experiments
