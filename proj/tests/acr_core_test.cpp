#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <sstream>

#include "acr/action_code.hpp"
#include "acr/error.hpp"
#include "acr/graph.hpp"
#include "random_logs.hpp"

namespace acr {
namespace {

ActionCode code(std::vector<std::string> objects, std::vector<std::string> actions) {
  return ActionCode{std::move(objects), std::move(actions)};
}

AcrGraph graph_of(std::initializer_list<std::pair<const char*, const char*>> edges) {
  AcrGraph g;
  for (auto [a, o] : edges) g.ingest(code({o}, {a}));
  return g;
}

TEST(ParseLog, SingleCode) {
  auto log = parse_log_text(R"({"objects":["box"],"actions":["close","move"]})");
  ASSERT_EQ(log.size(), 1u);
  EXPECT_EQ(log[0], code({"box"}, {"close", "move"}));
}

TEST(ParseLog, EmptyStream) {
  EXPECT_TRUE(parse_log_text("").empty());
  std::istringstream in("\n  \n");
  EXPECT_TRUE(parse_log(in).empty());
}

TEST(ParseLog, EmptyObjectsIsValidationErrorOnLine1) {
  try {
    parse_log_text(R"({"objects":[],"actions":["move"]})");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
}

TEST(ParseLog, MalformedJsonReportsLine) {
  std::string text =
      "{\"objects\":[\"box\"],\"actions\":[\"push\"]}\n"
      "\n"
      "{\"objects\":[\"box\"],\"actions\":\n";
  try {
    parse_log_text(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(ParseLog, OptionalTimestampAndRejects) {
  auto log = parse_log_text(R"({"t": 4, "objects":["cup"],"actions":["grab"]})");
  EXPECT_EQ(log.size(), 1u);
  EXPECT_THROW(parse_log_text(R"({"t": "x", "objects":["cup"],"actions":["grab"]})"),
               ValidationError);
  EXPECT_THROW(parse_log_text(R"({"objects":["cup"],"actions":["grab","grab"]})"),
               ValidationError);
  EXPECT_THROW(parse_log_text(R"({"objects":[" cup"],"actions":["grab"]})"),
               ValidationError);
  EXPECT_THROW(parse_log_text(R"({"objects":[""],"actions":["grab"]})"), ValidationError);
  EXPECT_THROW(parse_log_text(R"({"objects":["cup"]})"), ValidationError);
  EXPECT_THROW(parse_log_text(R"([1,2])"), ParseError);
}

TEST(ParseLog, LabelsAreCaseSensitive) {
  auto log = parse_log_text(R"({"objects":["Box","box"],"actions":["Push"]})");
  EXPECT_EQ(log[0].objects.size(), 2u);
}

TEST(ParseLog, FormatRoundTrip) {
  Rng rng(3);
  auto log = testing::random_log(rng, 6, 5, 40);
  EXPECT_EQ(parse_log_text(format_log(log)), log);
}

TEST(Ingest, AddsEdge) {
  AcrGraph g = ingest(AcrGraph{}, code({"box"}, {"push"}));
  EXPECT_EQ(g.edges(), (std::vector<std::pair<std::string, std::string>>{{"push", "box"}}));
  EXPECT_EQ(g.objects(), LabelSet{"box"});
  EXPECT_EQ(g.actions(), LabelSet{"push"});
}

TEST(Ingest, Idempotent) {
  AcrGraph once = ingest(AcrGraph{}, code({"box", "cup"}, {"push", "lift"}));
  AcrGraph twice = ingest(once, code({"box", "cup"}, {"push", "lift"}));
  EXPECT_EQ(once, twice);
  EXPECT_EQ(once.edge_count(), 4u);
}

TEST(Ingest, UnionSemantics) {
  AcrGraph g = graph_of({{"push", "box"}});
  g = ingest(g, code({"cup"}, {"push"}));
  EXPECT_EQ(g.edges(), (std::vector<std::pair<std::string, std::string>>{
                           {"push", "box"}, {"push", "cup"}}));
}

TEST(Ingest, AgentObjectAddsActionWithoutEdges) {
  AcrGraph g = ingest(AcrGraph{}, code({std::string(kAgentObject)}, {"up"}));
  EXPECT_EQ(g.actions(), LabelSet{"up"});
  EXPECT_TRUE(g.objects().empty());
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(DeriveCategories, SplitNeighborhoods) {
  AcrGraph g = graph_of({{"close", "box"}, {"move", "box"}, {"move", "cup"}});
  CategorySet cs = derive_categories(g);
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_EQ(cs.categories[0].id, 0);
  EXPECT_EQ(cs.categories[0].actions, LabelSet{"close"});
  EXPECT_EQ(cs.categories[0].objects, LabelSet{"box"});
  EXPECT_EQ(cs.categories[1].actions, LabelSet{"move"});
  EXPECT_EQ(cs.categories[1].objects, (LabelSet{"box", "cup"}));
}

TEST(DeriveCategories, GroupsCloseAndMove) {
  CategorySet cs = derive_categories(graph_of({{"close", "box"}, {"move", "box"}}));
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_EQ(cs.categories[0].actions, (LabelSet{"close", "move"}));
  EXPECT_EQ(cs.categories[0].objects, LabelSet{"box"});
}

TEST(DeriveCategories, EmptyGraph) { EXPECT_TRUE(derive_categories(AcrGraph{}).empty()); }

TEST(DeriveCategories, IdsFollowDiscoveryOrder) {
  AcrGraph g;
  g.ingest(code({"cup"}, {"zap"}));
  g.ingest(code({"box"}, {"alpha"}));
  CategorySet cs = derive_categories(g);
  EXPECT_EQ(cs.categories[0].actions, LabelSet{"zap"});
  EXPECT_EQ(cs.categories[1].actions, LabelSet{"alpha"});
}

TEST(DeriveCategories, AgentPseudoCategory) {
  AcrGraph g;
  g.ingest(code({std::string(kAgentObject)}, {"up"}));
  g.ingest(code({std::string(kAgentObject)}, {"down"}));
  g.ingest(code({"key"}, {"pickup"}));
  CategorySet cs = derive_categories(g);
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_TRUE(cs.categories[0].is_agent_category());
  EXPECT_EQ(cs.categories[0].actions, (LabelSet{"down", "up"}));
  EXPECT_EQ(cs.object_categories().size(), 1u);
}

class ExampleCategories : public ::testing::Test {
 protected:
  CategorySet cs =
      derive_categories(graph_of({{"close", "box"}, {"move", "box"}, {"move", "cup"}}));
};

TEST_F(ExampleCategories, CategoriesOfBox) { EXPECT_EQ(categories_of(cs, "box").size(), 2u); }

TEST_F(ExampleCategories, CategoriesOfCup) {
  auto of = categories_of(cs, "cup");
  ASSERT_EQ(of.size(), 1u);
  EXPECT_EQ(of[0].actions, LabelSet{"move"});
}

TEST_F(ExampleCategories, CategoriesOfUnknown) {
  EXPECT_TRUE(categories_of(cs, "unknown").empty());
}

TEST_F(ExampleCategories, AllowedActions) {
  EXPECT_EQ(allowed_actions(cs, {"box"}), (LabelSet{"close", "move"}));
  EXPECT_TRUE(allowed_actions(cs, {}).empty());
  EXPECT_EQ(allowed_actions(cs, {"cup", "box"}), (LabelSet{"close", "move"}));
}

TEST(NonObjectActions, SetDifference) {
  CategorySet cs = derive_categories(graph_of({{"press", "switch"}}));
  EXPECT_EQ(non_object_actions(cs, {"up", "down", "press"}), (LabelSet{"down", "up"}));
  EXPECT_EQ(non_object_actions(CategorySet{}, {"up", "down"}), (LabelSet{"down", "up"}));
  EXPECT_TRUE(non_object_actions(cs, {"press"}).empty());
}

TEST(NonObjectActions, PreconditionNamesAction) {
  CategorySet cs = derive_categories(graph_of({{"press", "switch"}}));
  try {
    non_object_actions(cs, {"up"});
    FAIL() << "expected ContractError";
  } catch (const ContractError& e) {
    EXPECT_NE(std::string(e.what()).find("press"), std::string::npos);
  }
}

TEST(NonObjectActions, AgentActionsStayNonObject) {
  AcrGraph g;
  g.ingest(code({std::string(kAgentObject)}, {"up"}));
  g.ingest(code({"switch"}, {"press"}));
  CategorySet cs = derive_categories(g);
  EXPECT_EQ(non_object_actions(cs, {"up", "press"}), LabelSet{"up"});
  EXPECT_TRUE(allowed_actions(cs, {std::string(kAgentObject)}).empty());
}

TEST(ExportJson, SortedLayout) {
  AcrGraph g = graph_of({{"move", "cup"}, {"close", "box"}, {"move", "box"}});
  std::string json = export_json(g, derive_categories(g));
  EXPECT_NE(json.find("\"actions\""), std::string::npos);
  EXPECT_LT(json.find("\"close\""), json.find("\"move\""));
  auto doc = import_json(json);
  EXPECT_EQ(doc.graph, g);
  EXPECT_EQ(doc.categories, derive_categories(g));
}

TEST(ExportJson, SameDistinctCodesGiveIdenticalBytes) {
  ObservationLog a = {code({"box"}, {"push"}), code({"cup"}, {"lift"}),
                      code({"box"}, {"push"})};
  ObservationLog b = {code({"box"}, {"push"}), code({"cup"}, {"lift"}),
                      code({"cup"}, {"lift"}), code({"cup"}, {"lift"})};
  AcrGraph ga = build_graph(a), gb = build_graph(b);
  EXPECT_EQ(export_json(ga, derive_categories(ga)), export_json(gb, derive_categories(gb)));
}

TEST(ImportJson, RejectsInconsistentEdges) {
  EXPECT_THROW(import_json("{"), ParseError);
  std::string bad = R"({"actions":["a"],"objects":["o"],"edges":[["a","o"]],
    "categories":[{"id":0,"actions":["a"],"objects":["p"]}]})";
  EXPECT_THROW(import_json(bad), ValidationError);
}

TEST(CategoryTable, OneRowPerCategory) {
  CategorySet cs = derive_categories(graph_of({{"close", "box"}, {"move", "cup"}}));
  std::string table = format_category_table(cs);
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 3);
  EXPECT_NE(table.find("A^c1"), std::string::npos);
  EXPECT_NE(table.find("A^c2"), std::string::npos);
}

// ---------------------------------------------------------------------------
// Properties over random logs.

std::map<LabelSet, LabelSet> by_actions(const CategorySet& cs) {
  std::map<LabelSet, LabelSet> out;
  for (const auto& c : cs.categories) out[c.actions] = c.objects;
  return out;
}

TEST(CategoryProperties, PartitionAndSignature) {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    auto log = testing::random_log(rng, 1 + rng.index(12), 1 + rng.index(12), rng.index(30));
    AcrGraph g = build_graph(log);
    CategorySet cs = derive_categories(g);
    LabelSet seen;
    for (const auto& c : cs.categories) {
      ASSERT_FALSE(c.actions.empty());
      for (const auto& a : c.actions) {
        ASSERT_TRUE(seen.insert(a).second) << "action in two categories";
        ASSERT_EQ(g.neighborhood(a), c.objects);
      }
    }
    ASSERT_EQ(seen, g.actions());
    for (std::size_t i = 0; i < cs.size(); ++i) {
      ASSERT_EQ(cs.categories[i].id, static_cast<int>(i));
      for (std::size_t j = i + 1; j < cs.size(); ++j) {
        ASSERT_NE(cs.categories[i].objects, cs.categories[j].objects);
      }
    }
    ASSERT_LE(cs.size(), g.actions().size());
  }
}

TEST(CategoryProperties, OnlineEqualsBatchUnderPermutation) {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    auto log = testing::random_log(rng, 8, 8, 1 + rng.index(25));
    AcrGraph batch = build_graph(log);
    auto shuffled = log;
    for (std::size_t i = shuffled.size(); i > 1; --i) {
      std::swap(shuffled[i - 1], shuffled[rng.index(i)]);
    }
    AcrGraph online;
    for (const auto& c : shuffled) online = ingest(online, c);
    ASSERT_EQ(online, batch);
    ASSERT_EQ(by_actions(derive_categories(online)), by_actions(derive_categories(batch)));
  }
}

TEST(CategoryProperties, DistinctCodesDetermineGraph) {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    auto log = testing::random_log(rng, 6, 6, 1 + rng.index(15));
    ObservationLog repeated;
    for (const auto& c : log) {
      std::size_t copies = 1 + rng.index(3);
      for (std::size_t k = 0; k < copies; ++k) repeated.push_back(c);
    }
    ASSERT_EQ(build_graph(log), build_graph(repeated));
  }
}

}  // namespace
}  // namespace acr
