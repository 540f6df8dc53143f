#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "acr/error.hpp"
#include "acr/experiments.hpp"
#include "acr/lightworld.hpp"
#include "acr/stats.hpp"
#include "acr/svg.hpp"
#include "acr/training.hpp"

namespace acr::experiments {
namespace {

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = 0; (pos = text.find(needle, pos)) != std::string::npos; ++pos) ++n;
  return n;
}

svg::Series line(std::string name, std::vector<double> y) {
  svg::Series s;
  s.name = std::move(name);
  for (std::size_t i = 0; i < y.size(); ++i) s.x.push_back(static_cast<double>(i));
  s.y = std::move(y);
  return s;
}

TEST(RenderSvg, ConstantSeriesIsHorizontal) {
  std::string out = svg::render_svg({line("flat", {3, 3, 3, 3})}, {"t", "x", "y"});
  EXPECT_EQ(out.rfind("<svg", 0), 0u);
  EXPECT_NE(out.find("</svg>"), std::string::npos);
  auto start = out.find("<polyline");
  ASSERT_NE(start, std::string::npos);
  auto points = out.find("points=\"", start) + 8;
  auto end = out.find('"', points);
  std::string list = out.substr(points, end - points);
  std::set<std::string> ys;
  for (std::size_t pos = 0; pos < list.size();) {
    auto comma = list.find(',', pos);
    auto space = list.find(' ', comma);
    ys.insert(list.substr(comma + 1, space - comma - 1));
    if (space == std::string::npos) break;
    pos = space + 1;
  }
  EXPECT_EQ(ys.size(), 1u);
}

TEST(RenderSvg, LegendPerSeries) {
  std::string out = svg::render_svg({line("a", {1, 2}), line("b", {2, 1})}, {"t", "x", "y"});
  EXPECT_EQ(count(out, "class=\"legend\""), 2u);
  EXPECT_EQ(count(out, "<polyline"), 2u);
}

TEST(RenderSvg, Errors) {
  EXPECT_THROW(svg::render_svg({}, {}), ValidationError);
  try {
    svg::render_svg({line("bad", {1, std::numeric_limits<double>::quiet_NaN()})}, {});
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("'bad'"), std::string::npos);
    EXPECT_NE(msg.find("index 1"), std::string::npos);
  }
  svg::Series mismatch = line("m", {1, 2});
  mismatch.x.pop_back();
  EXPECT_THROW(svg::render_svg({mismatch}, {}), ValidationError);
  svg::Axes log_axes;
  log_axes.log_y = true;
  EXPECT_THROW(svg::render_svg({line("z", {0, 1})}, log_axes), ValidationError);
}

TEST(RenderSvg, DeterministicAndEscaped) {
  svg::Series s = line("a<b & \"c\"", {1, 5, 2});
  s.lower = {0, 4, 1};
  s.upper = {2, 6, 3};
  std::string a = svg::render_svg({s}, {"t", "x", "y"});
  EXPECT_EQ(a, svg::render_svg({s}, {"t", "x", "y"}));
  EXPECT_NE(a.find("a&lt;b &amp; &quot;c&quot;"), std::string::npos);
  EXPECT_NE(a.find("<polygon"), std::string::npos);
}

TEST(ResultTable, SortedCsvWithProvenance) {
  ResultTable a("cfg"), b("cfg");
  ResultRow r1{"e", "x", 2, "m", 1.5};
  ResultRow r2{"e", "x", 1, "m", 0.25};
  a.add(r1);
  a.add(r2);
  b.add(r2);
  b.add(r1);
  EXPECT_EQ(a.to_csv(), b.to_csv());
  EXPECT_EQ(a.config_hash(), fnv1a_hex("cfg"));
  std::string csv = a.to_csv();
  EXPECT_EQ(csv.rfind("# config-hash: " + fnv1a_hex("cfg") + "\n# code-version: ", 0), 0u);
  EXPECT_NE(csv.find("experiment,condition,seed,metric,value\ne,x,1,m,0.25\ne,x,2,m,1.5\n"),
            std::string::npos);
  EXPECT_NE(ResultTable("other").config_hash(), a.config_hash());
}

TEST(Fnv1a, KnownVectors) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(ThreadCap, ReadsEnvironment) {
  ::setenv("ACRLAB_THREADS", "3", 1);
  EXPECT_EQ(thread_cap(), 3u);
  ::setenv("ACRLAB_THREADS", "zero", 1);
  EXPECT_GE(thread_cap(), 1u);
  ::unsetenv("ACRLAB_THREADS");
  EXPECT_GE(thread_cap(), 1u);
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(10, 2, [](std::size_t i) {
                 if (i == 7) throw ValidationError("boom");
               }),
               ValidationError);
}

TEST(SignTest, MatchesBinomialTail) {
  auto tail = [](std::size_t w, std::size_t l) {
    std::size_t n = w + l;
    double total = 0;
    for (std::size_t k = w; k <= n; ++k) {
      double c = 1;
      for (std::size_t i = 0; i < k; ++i) c = c * static_cast<double>(n - i) / (i + 1);
      total += c;
    }
    return total / std::pow(2.0, static_cast<double>(n));
  };
  EXPECT_NEAR(stats::sign_test_one_sided(15, 4), 5036.0 / 524288.0, 1e-12);
  for (std::size_t w = 0; w <= 12; ++w) {
    for (std::size_t l = 0; l <= 12; ++l) {
      EXPECT_NEAR(stats::sign_test_one_sided(w, l), tail(w, l), 1e-9);
    }
  }
  auto out = stats::paired_sign_test_less({1, 2, 3, 4}, {2, 2, 5, 3});
  EXPECT_EQ(out.wins, 2u);
  EXPECT_EQ(out.losses, 1u);
  EXPECT_EQ(out.ties, 1u);
  EXPECT_DOUBLE_EQ(stats::mean({1, 2, 6}), 3.0);
}

TEST(BuildAcr, ExpertLogCategories) {
  auto path = lightworld::shortest_path(lightworld::canonical_map());
  auto log = lightworld::record_log(lightworld::canonical_map(), *path);
  BuildAcrResult r = build_acr({log});
  EXPECT_FALSE(r.empty);
  bool pickup = false, press = false;
  for (const auto& c : r.categories.categories) {
    pickup |= c.actions == LabelSet{"pickup"} && c.objects == LabelSet{"key"};
    press |= c.actions == LabelSet{"press"} && c.objects == LabelSet{"switch"};
  }
  EXPECT_TRUE(pickup);
  EXPECT_TRUE(press);
  EXPECT_NE(r.table.find("pickup"), std::string::npos);
}

TEST(BuildAcr, SameDistinctCodesSameBytes) {
  auto log = lightworld::record_log(lightworld::canonical_map(),
                                    *lightworld::shortest_path(lightworld::canonical_map()));
  auto doubled = log;
  doubled.insert(doubled.end(), log.rbegin(), log.rend());
  EXPECT_EQ(build_acr({log}).json, build_acr({doubled}).json);
  EXPECT_EQ(build_acr({log}).json, build_acr({log, log}).json);
}

TEST(BuildAcr, EmptyLog) {
  BuildAcrResult r = build_acr({{}});
  EXPECT_TRUE(r.empty);
  EXPECT_TRUE(r.categories.empty());
}

TEST(FormationBench, ShapeAndSmallCase) {
  FormationBenchConfig cfg;
  cfg.max_units = 3;
  auto cells = formation_bench(cfg);
  ASSERT_EQ(cells.size(), 6u);
  std::string csv = formation_csv(cells);
  EXPECT_EQ(csv.rfind("n_units,mode,expanded,generated,time_ms,plan_len\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
  const auto& b1 = cells[0].stats;
  const auto& a1 = cells[1].stats;
  EXPECT_LE(b1.expanded, 2 * a1.expanded);
  EXPECT_LE(a1.expanded, 2 * b1.expanded);
  EXPECT_LT(cells[5].stats.expanded, cells[4].stats.expanded);
  EXPECT_EQ(formation_csv(cells, false), formation_csv(formation_bench(cfg), false));
  EXPECT_NE(formation_nodes_svg(cells).find("<svg"), std::string::npos);
  EXPECT_NE(formation_time_svg(cells).find("<svg"), std::string::npos);
}

TEST(ExplorationBench, Csv) {
  auto rows = exploration_bench(planner::canonical_catalog(), {"protoss"});
  ASSERT_EQ(rows.size(), 4u);
  std::string csv = exploration_csv(rows);
  EXPECT_EQ(csv.rfind("build_order,condition,unseen_kinds,total_a_obj\n", 0), 0u);
  EXPECT_NE(csv.find("protoss,baseline,"), std::string::npos);
  EXPECT_NE(csv.find("protoss,acr-maxent,"), std::string::npos);
  EXPECT_EQ(exploration_detail_csv(rows).rfind("build_order,condition,kind,a_obj,result\n", 0),
            0u);
}

TEST(LightworldBench, ShapeAndDeterminism) {
  LightworldBenchConfig cfg;
  cfg.seeds = {1, 2};
  cfg.params.episodes = 120;
  cfg.threads = 2;
  auto records = lightworld_bench(cfg, default_agents());
  ASSERT_EQ(records.size(), 14u);
  for (const auto& r : records) EXPECT_EQ(r.curve.rewards.size(), 120u);
  std::string curves = curves_csv(records);
  EXPECT_EQ(curves.rfind("episode,reward,steps,agent,seed\n1,", 0), 0u);
  EXPECT_EQ(std::count(curves.begin(), curves.end(), '\n'), 1 + 14 * 120);
  cfg.threads = 1;
  auto again = lightworld_bench(cfg, default_agents());
  EXPECT_EQ(curves, curves_csv(again));
  EXPECT_EQ(summary_csv(records), summary_csv(again));
  EXPECT_EQ(lightworld_table(cfg, records).to_csv(), lightworld_table(cfg, again).to_csv());
  EXPECT_NE(reward_svg(records).find("<svg"), std::string::npos);
  EXPECT_EQ(per_seed(records, "Q", metric_reward_1_50).size(), 2u);
}

TEST(Agents, DefaultMatrix) {
  auto agents = default_agents();
  ASSERT_EQ(agents.size(), 7u);
  EXPECT_EQ(agents[0].name, "Q");
  EXPECT_TRUE(find_agent("HAT(subopt x5)"));
  EXPECT_FALSE(find_agent("SARSA"));
  auto in = agent_inputs(lightworld::canonical_map(), *find_agent("ACR+HAT(subopt x5)"), 3,
                         ProbeStrategy::kPaperMinEntropy);
  EXPECT_TRUE(in.acr.has_value());
  EXPECT_TRUE(in.dlist.has_value());
}

}  // namespace
}  // namespace acr::experiments
