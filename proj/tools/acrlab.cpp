// acrlab: build ACRs from logs and run the planning, exploration and RL
// benchmarks.
#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "acr/action_code.hpp"
#include "acr/catalog.hpp"
#include "acr/error.hpp"
#include "acr/experiments.hpp"
#include "acr/lightworld.hpp"

namespace fs = std::filesystem;
namespace ex = acr::experiments;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitBudget = 3;

// Missing or unreadable input files.
struct FileError : acr::Error {
  using acr::Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("cannot write " + path.string());
  out << text;
}

acr::planner::SyntheticCatalog load_catalog(const std::string& path) {
  if (path.empty()) return acr::planner::canonical_catalog();
  return acr::planner::parse_catalog(read_file(path));
}

int cmd_build_acr(const std::vector<std::string>& paths, const std::string& output) {
  std::vector<acr::ObservationLog> logs;
  for (const auto& p : paths) {
    std::string text = read_file(p);
    try {
      logs.push_back(acr::parse_log_text(text));
    } catch (const acr::Error& e) {
      throw acr::ParseError(p + ": " + e.what());
    }
  }
  auto built = ex::build_acr(logs);
  if (built.empty) std::cerr << "warning: logs contain no action codes; ACR is empty\n";
  if (output.empty() || output == "-") {
    std::cout << built.json;
  } else {
    write_file(output, built.json);
  }
  std::cout << built.table;
  return kExitOk;
}

int cmd_infer(const std::string& catalog_path, const std::string& object,
              const std::string& strategy) {
  auto catalog = load_catalog(catalog_path);
  auto report = acr::planner::infer_kind(catalog, object, acr::parse_strategy(strategy));
  std::cout << acr::to_json(report) << "\n";
  return kExitOk;
}

std::pair<int, int> parse_grid(const std::string& grid) {
  int w = 0, h = 0;
  char x = 0;
  std::istringstream in(grid);
  if (!(in >> w >> x >> h) || x != 'x' || w <= 0 || h <= 0 || !in.eof()) {
    throw CLI::ValidationError("--grid", "expected WxH, e.g. 5x5");
  }
  return {w, h};
}

int cmd_plan_bench(int max_units, const std::string& grid, const std::string& out_dir,
                   double budget_s) {
  ex::FormationBenchConfig config;
  config.max_units = max_units;
  std::tie(config.width, config.height) = parse_grid(grid);
  config.cell_budget = std::chrono::milliseconds(static_cast<long long>(budget_s * 1000));
  auto cells = ex::formation_bench(config);

  fs::create_directories(out_dir);
  fs::path dir(out_dir);
  write_file(dir / "formation.csv", ex::formation_csv(cells));
  write_file(dir / "formation_results.csv", ex::formation_table(config, cells).to_csv());
  write_file(dir / "formation_time.svg", ex::formation_time_svg(cells));
  write_file(dir / "formation_nodes.svg", ex::formation_nodes_svg(cells));
  std::cout << ex::formation_csv(cells);

  bool censored = false;
  for (const auto& c : cells) censored = censored || c.stats.censored;
  if (censored) {
    std::cerr << "budget exceeded: some cells were censored\n";
    return kExitBudget;
  }
  return kExitOk;
}

int cmd_explore_bench(const std::string& catalog_path, std::vector<std::string> orders,
                      const std::string& out_dir) {
  auto catalog = load_catalog(catalog_path);
  if (orders.empty()) {
    for (const auto& [name, seq] : catalog.build_orders) orders.push_back(name);
  }
  for (const auto& name : orders) {
    if (!catalog.build_orders.contains(name)) {
      throw acr::ValidationError("unknown build order '" + name + "'");
    }
  }
  auto rows = ex::exploration_bench(catalog, orders);
  std::cout << ex::exploration_csv(rows);
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "exploration.csv", ex::exploration_csv(rows));
    write_file(fs::path(out_dir) / "exploration_detail.csv", ex::exploration_detail_csv(rows));
  }
  return kExitOk;
}

struct RlOptions {
  std::string map_path;
  int seeds = 20;
  std::uint64_t first_seed = 1;
  std::string out_dir = "out";
  std::vector<std::string> agents;
  std::string strategy = "minent";
  acr::rl::RLParams params;
  double budget_s = 0;
};

int cmd_rl_bench(const RlOptions& opt) {
  ex::LightworldBenchConfig config;
  if (!opt.map_path.empty()) config.map = acr::lightworld::load_map(read_file(opt.map_path));
  if (opt.seeds < 1) throw acr::ValidationError("--seeds must be at least 1");
  for (int i = 0; i < opt.seeds; ++i) config.seeds.push_back(opt.first_seed + i);
  config.params = opt.params;
  config.strategy = acr::parse_strategy(opt.strategy);
  config.threads = ex::thread_cap();

  std::vector<ex::AgentSpec> agents;
  if (opt.agents.empty()) {
    agents = ex::default_agents();
  } else {
    for (const auto& name : opt.agents) {
      auto spec = ex::find_agent(name);
      if (!spec) throw acr::ValidationError("unknown agent '" + name + "'");
      agents.push_back(*spec);
    }
  }

  auto start = std::chrono::steady_clock::now();
  auto records = ex::lightworld_bench(config, agents);
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  fs::create_directories(opt.out_dir);
  fs::path dir(opt.out_dir);
  write_file(dir / "curves.csv", ex::curves_csv(records));
  write_file(dir / "summary.csv", ex::summary_csv(records));
  write_file(dir / "lightworld_results.csv", ex::lightworld_table(config, records).to_csv());
  write_file(dir / "rewards.svg", ex::reward_svg(records));
  std::cout << ex::summary_csv(records);

  if (opt.budget_s > 0 && elapsed > opt.budget_s) {
    std::cerr << "budget exceeded: run took " << elapsed << " s\n";
    return kExitBudget;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Action category representation lab"};
  app.require_subcommand(1);

  std::vector<std::string> logs;
  std::string acr_out;
  auto* build = app.add_subcommand("build-acr", "Build an ACR from action-code logs");
  build->add_option("logs", logs, "JSON-lines logs")->required()->check(CLI::ExistingFile);
  build->add_option("-o,--output", acr_out, "Output JSON (default stdout)");

  std::string catalog;
  std::string object;
  std::string strategy = "minent";
  auto* infer = app.add_subcommand("infer", "Infer the category of an object kind");
  infer->add_option("--catalog", catalog, "Catalog JSON (default: built-in)")
      ->check(CLI::ExistingFile);
  infer->add_option("--object", object, "Object kind")->required();
  infer->add_option("--strategy", strategy, "minent, maxent or lex")
      ->check(CLI::IsMember({"minent", "maxent", "lex"}));

  int max_units = 5;
  std::string grid = "5x5";
  std::string plan_out = "out";
  double plan_budget = 60;
  auto* plan = app.add_subcommand("plan-bench", "Formation planning benchmark");
  plan->add_option("--max-units", max_units, "Largest unit count")->check(CLI::Range(1, 8));
  plan->add_option("--grid", grid, "Grid size WxH");
  plan->add_option("-o,--output", plan_out, "Output directory");
  plan->add_option("--budget", plan_budget, "Seconds per cell")->check(CLI::PositiveNumber);

  std::vector<std::string> orders;
  std::string explore_out;
  auto* explore = app.add_subcommand("explore-bench", "Exploration-phase probe counts");
  explore->add_option("--catalog", catalog, "Catalog JSON (default: built-in)")
      ->check(CLI::ExistingFile);
  explore->add_option("--build-order", orders, "Build order name (repeatable; default all)");
  explore->add_option("-o,--output", explore_out, "Output directory");

  RlOptions rl;
  auto* rlb = app.add_subcommand("rl-bench", "Lightworld agent comparison");
  rlb->add_option("--map", rl.map_path, "Map file (default: built-in)")->check(CLI::ExistingFile);
  rlb->add_option("--seeds", rl.seeds, "Number of seeds");
  rlb->add_option("--first-seed", rl.first_seed, "First seed");
  rlb->add_option("--episodes", rl.params.episodes, "Episodes per run");
  rlb->add_option("--max-steps", rl.params.max_steps, "Step cap per episode");
  rlb->add_option("--alpha", rl.params.alpha);
  rlb->add_option("--gamma", rl.params.gamma);
  rlb->add_option("--epsilon", rl.params.epsilon);
  rlb->add_option("--n-acr", rl.params.n_acr, "Episodes guided by the ACR");
  rlb->add_option("--n-hat", rl.params.n_hat, "Episodes guided by the decision list");
  rlb->add_option("--agent", rl.agents, "Agent name (repeatable; default all seven)");
  rlb->add_option("--strategy", rl.strategy, "minent, maxent or lex")
      ->check(CLI::IsMember({"minent", "maxent", "lex"}));
  rlb->add_option("-o,--output", rl.out_dir, "Output directory");
  rlb->add_option("--budget", rl.budget_s, "Wall-clock budget in seconds (0: none)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*build) return cmd_build_acr(logs, acr_out);
    if (*infer) return cmd_infer(catalog, object, strategy);
    if (*plan) return cmd_plan_bench(max_units, grid, plan_out, plan_budget);
    if (*explore) return cmd_explore_bench(catalog, orders, explore_out);
    if (*rlb) return cmd_rl_bench(rl);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const acr::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
