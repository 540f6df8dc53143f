#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "acr/error.hpp"
#include "acr/inference.hpp"
#include "acr/rng.hpp"
#include "oracles.hpp"

namespace acr {
namespace {

ActionCategory cat(int id, LabelSet actions) { return ActionCategory{id, std::move(actions), {"o"}}; }

HypothesisSet four() {
  return {cat(0, {"a1"}), cat(1, {"a1", "a2"}), cat(2, {"a3"}), cat(3, {"a4"})};
}

using testing::oracle_for;
const auto h_ref = testing::entropy_ref;

TEST(Rational, LowestTerms) {
  Rational r(2, 4);
  EXPECT_EQ(r.num(), 1);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(to_string(r), "1/2");
  EXPECT_EQ(r.complement(), Rational(1, 2));
}

TEST(ProbabilityContains, Examples) {
  EXPECT_EQ(probability_contains("a1", four()), Rational(2, 4));
  EXPECT_EQ(probability_contains("zz", four()), Rational(0, 1));
  HypothesisSet all = {cat(0, {"a1"}), cat(1, {"a1", "a2"})};
  EXPECT_EQ(probability_contains("a1", all), Rational(1, 1));
}

TEST(ProbabilityContains, EmptySetThrows) {
  EXPECT_THROW(probability_contains("a1", {}), ContractError);
  EXPECT_THROW(entropy("a1", {}), ContractError);
}

TEST(Entropy, Examples) {
  EXPECT_DOUBLE_EQ(binary_entropy(Rational(1, 2)), 1.0);
  EXPECT_DOUBLE_EQ(binary_entropy(Rational(0, 1)), 0.0);
  EXPECT_DOUBLE_EQ(binary_entropy(Rational(1, 1)), 0.0);
  EXPECT_NEAR(binary_entropy(Rational(1, 4)), 0.8113, 1e-4);
  EXPECT_NEAR(binary_entropy(Rational(1, 4)), h_ref(0.25), 1e-9);
  EXPECT_NEAR(entropy("a2", four()), h_ref(0.25), 1e-12);
}

TEST(Entropy, SymmetricAndBounded) {
  for (int den = 1; den <= 12; ++den) {
    for (int num = 0; num <= den; ++num) {
      Rational p(num, den);
      double h = binary_entropy(p);
      EXPECT_GE(h, 0.0);
      EXPECT_LE(h, 1.0 + 1e-15);
      EXPECT_NEAR(h, binary_entropy(p.complement()), 1e-12);
      EXPECT_NEAR(h, h_ref(p.value()), 1e-12);
    }
  }
}

TEST(SelectProbe, MaxEntropyPicksHalf) {
  EXPECT_EQ(select_probe(four(), {}, ProbeStrategy::kMaxEntropy), "a1");
}

TEST(SelectProbe, MinEntropyBreaksTiesByLabel) {
  EXPECT_EQ(select_probe(four(), {}, ProbeStrategy::kPaperMinEntropy), "a2");
}

TEST(SelectProbe, SymmetricPairAllStrategies) {
  HypothesisSet s = {cat(0, {"a1"}), cat(1, {"a2"})};
  for (auto st : {ProbeStrategy::kPaperMinEntropy, ProbeStrategy::kMaxEntropy,
                  ProbeStrategy::kLexicographic}) {
    EXPECT_EQ(select_probe(s, {}, st), "a1");
  }
}

TEST(SelectProbe, SkipsTriedAndNonDiscriminating) {
  HypothesisSet s = {cat(0, {"a0", "a1"}), cat(1, {"a0", "a2"})};
  EXPECT_EQ(select_probe(s, {}, ProbeStrategy::kLexicographic), "a1");
  EXPECT_EQ(select_probe(s, {"a1"}, ProbeStrategy::kPaperMinEntropy), "a2");
}

TEST(SelectProbe, IndistinguishableListsCandidates) {
  HypothesisSet s = {cat(0, {"a1"}), cat(1, {"a1", "a2"})};
  try {
    select_probe(s, {"a2"}, ProbeStrategy::kMaxEntropy);
    FAIL() << "expected ContractError";
  } catch (const ContractError& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("indistinguishable"), std::string::npos);
    EXPECT_NE(msg.find("a2"), std::string::npos);
  }
  EXPECT_THROW(select_probe({cat(0, {"a1"})}, {}, ProbeStrategy::kMaxEntropy), ContractError);
}

TEST(Eliminate, Examples) {
  HypothesisSet s = {cat(0, {"a1"}), cat(1, {"a1", "a2"}), cat(2, {"a3"})};
  EXPECT_EQ(eliminate(s, "a1", true), (HypothesisSet{s[0], s[1]}));
  EXPECT_EQ(eliminate(s, "a1", false), (HypothesisSet{s[2]}));
  EXPECT_TRUE(eliminate({cat(0, {"a1"})}, "a1", false).empty());
}

TEST(InferCategory, MaxEntropyTrace) {
  LabelSet all = {"a1", "a2", "a3", "a4"};
  auto r = infer_category(oracle_for({"a3"}), four(), all, ProbeStrategy::kMaxEntropy);
  ASSERT_EQ(r.a_obj(), 2u);
  EXPECT_EQ(r.probes[0], (std::pair<std::string, bool>{"a1", false}));
  EXPECT_EQ(r.probes[1], (std::pair<std::string, bool>{"a3", true}));
  EXPECT_EQ(std::get<KnownCategory>(r.result).id, 2);
}

TEST(InferCategory, SingleCandidateCostsNothing) {
  auto r = infer_category(oracle_for({"a9"}), {cat(5, {"a1"})}, {"a1", "a9"},
                          ProbeStrategy::kPaperMinEntropy);
  EXPECT_EQ(r.a_obj(), 0u);
  EXPECT_EQ(std::get<KnownCategory>(r.result), (KnownCategory{5, {"a1"}}));
}

TEST(InferCategory, SurvivorIsNotVerified) {
  LabelSet all = {"a1", "a2", "a3", "a4", "a5"};
  auto r = infer_category(oracle_for({"a5"}), four(), all, ProbeStrategy::kPaperMinEntropy);
  EXPECT_TRUE(std::holds_alternative<KnownCategory>(r.result));
  EXPECT_LE(r.a_obj(), all.size());
}

TEST(InferCategory, NoCandidatesLearnsNewCategory) {
  LabelSet all = {"a1", "a2", "a3", "a4", "a5"};
  for (auto st : {ProbeStrategy::kPaperMinEntropy, ProbeStrategy::kMaxEntropy,
                  ProbeStrategy::kLexicographic}) {
    auto r = infer_category(oracle_for({"a5"}), {}, all, st);
    ASSERT_TRUE(std::holds_alternative<NewCategory>(r.result));
    EXPECT_EQ(std::get<NewCategory>(r.result).actions, LabelSet{"a5"});
    EXPECT_EQ(r.a_obj(), all.size());
    std::set<std::string> distinct;
    for (auto& [a, ok] : r.probes) distinct.insert(a);
    EXPECT_EQ(distinct.size(), r.a_obj());
  }
}

TEST(BaselineProbe, Examples) {
  LabelSet nine;
  for (int i = 1; i <= 9; ++i) nine.insert("a" + std::to_string(i));
  auto r = baseline_probe(oracle_for({"a3"}), nine);
  EXPECT_EQ(r.a_obj(), 9u);
  EXPECT_EQ(r.probes.front().first, "a1");
  EXPECT_EQ(baseline_probe(oracle_for({}), {}).a_obj(), 0u);
  auto none = baseline_probe(oracle_for({}), {"a1", "a2"});
  EXPECT_EQ(none.a_obj(), 2u);
  EXPECT_TRUE(std::get<NewCategory>(none.result).actions.empty());
}

TEST(MatchKnown, ReplacesNewByKnown) {
  auto r = match_known(baseline_probe(oracle_for({"a3"}), {"a1", "a2", "a3", "a4"}), four());
  EXPECT_EQ(std::get<KnownCategory>(r.result).id, 2);
}

TEST(ProbeReportJson, Layout) {
  LabelSet all = {"a1", "a2", "a3", "a4"};
  auto r = infer_category(oracle_for({"a3"}), four(), all, ProbeStrategy::kMaxEntropy);
  EXPECT_EQ(to_json(r),
            R"({"a_obj":2,"probes":[["a1",false],["a3",true]],"result":{"known_id":2}})");
  auto n = baseline_probe(oracle_for({"a2"}), {"a1", "a2"});
  EXPECT_NE(to_json(n).find(R"("new_category":["a2"])"), std::string::npos);
}

TEST(ParseStrategy, Names) {
  EXPECT_EQ(parse_strategy("minent"), ProbeStrategy::kPaperMinEntropy);
  EXPECT_EQ(parse_strategy("maxent"), ProbeStrategy::kMaxEntropy);
  EXPECT_EQ(parse_strategy("lex"), ProbeStrategy::kLexicographic);
  EXPECT_THROW(parse_strategy("argmin"), ValidationError);
}

// ---------------------------------------------------------------------------
// Random catalogs: up to 10 actions, up to 8 distinct non-empty categories.

using testing::random_catalog;
using Draw = testing::CatalogDraw;

TEST(InferenceProperties, BoundsCorrectnessAndNoRepeats) {
  Rng rng(21);
  for (int trial = 0; trial < 1500; ++trial) {
    Draw d = random_catalog(rng);
    const ActionCategory& truth = d.s[rng.index(d.s.size())];
    for (auto st : {ProbeStrategy::kPaperMinEntropy, ProbeStrategy::kMaxEntropy,
                    ProbeStrategy::kLexicographic}) {
      auto r = infer_category(oracle_for(truth.actions), d.s, d.actions, st);
      auto base = baseline_probe(oracle_for(truth.actions), d.actions);
      if (d.s.size() > 1) {
        ASSERT_GE(r.a_obj(), 1u);
      } else {
        ASSERT_EQ(r.a_obj(), 0u);
      }
      ASSERT_LE(r.a_obj(), d.actions.size());
      ASSERT_LE(r.a_obj(), base.a_obj());
      // Brute force: the only candidate consistent with every answer.
      int expected = -1;
      for (const auto& c : d.s) {
        if (c.actions == truth.actions) expected = c.id;
      }
      ASSERT_EQ(std::get<KnownCategory>(r.result).id, expected);

      std::set<std::string> distinct;
      HypothesisSet live = d.s;
      for (auto& [a, ok] : r.probes) {
        ASSERT_TRUE(distinct.insert(a).second);
        bool in_some = false;
        for (const auto& c : live) in_some = in_some || c.actions.count(a);
        ASSERT_TRUE(in_some);
        std::size_t before = live.size();
        live = eliminate(live, a, ok);
        ASSERT_LT(live.size(), before);
      }
    }
  }
}

TEST(InferenceProperties, MaxEntropyNoWorseThanLexOnAverage) {
  Rng rng(22);
  double maxent = 0, lex = 0;
  const int draws = 1000;
  for (int trial = 0; trial < draws; ++trial) {
    Draw d = random_catalog(rng);
    const auto& truth = d.s[rng.index(d.s.size())];
    maxent += infer_category(oracle_for(truth.actions), d.s, d.actions,
                             ProbeStrategy::kMaxEntropy).a_obj();
    lex += infer_category(oracle_for(truth.actions), d.s, d.actions,
                          ProbeStrategy::kLexicographic).a_obj();
  }
  EXPECT_LE(maxent / draws, lex / draws);
}

}  // namespace
}  // namespace acr
