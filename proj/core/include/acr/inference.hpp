#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "acr/graph.hpp"

namespace acr {

// Exact non-negative fraction, always stored in lowest terms.
class Rational {
 public:
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  Rational complement() const { return Rational(den_ - num_, den_); }

  friend bool operator==(const Rational&, const Rational&) = default;

 private:
  std::int64_t num_;
  std::int64_t den_;
};

std::string to_string(const Rational& r);

// Candidate categories still consistent with the probes made so far.
using HypothesisSet = std::vector<ActionCategory>;

enum class ProbeStrategy {
  kPaperMinEntropy,  // argmin H over discriminating actions
  kMaxEntropy,       // argmax H, the information-gain choice
  kLexicographic,    // smallest discriminating label
};

std::string to_string(ProbeStrategy s);
// Accepts "minent", "maxent", "lex".
ProbeStrategy parse_strategy(std::string_view name);

// Fraction of candidates whose action set contains the action.
Rational probability_contains(const std::string& action, const HypothesisSet& s);

// Binary entropy in bits with 0 log 0 = 0.
double binary_entropy(double p);
double binary_entropy(const Rational& p);
double entropy(const std::string& action, const HypothesisSet& s);

// Untried actions of the candidates whose probability lies strictly between
// 0 and 1, sorted by label.
std::vector<std::string> discriminating_actions(const HypothesisSet& s,
                                                const LabelSet& tried);

// Picks the next action to try on the object. Entropy ties (within 1e-12) go
// to the smallest label. Throws ContractError when |s| > 1 but no untried
// action separates the candidates, and when |s| <= 1.
std::string select_probe(const HypothesisSet& s, const LabelSet& tried,
                         ProbeStrategy strategy);

// Keeps the candidates that contain the action when associated, and those
// that lack it otherwise.
HypothesisSet eliminate(const HypothesisSet& s, const std::string& action,
                        bool associated);

struct KnownCategory {
  int id = 0;
  LabelSet actions;
  friend bool operator==(const KnownCategory&, const KnownCategory&) = default;
};
struct NewCategory {
  LabelSet actions;
  friend bool operator==(const NewCategory&, const NewCategory&) = default;
};
using InferenceResult = std::variant<KnownCategory, NewCategory>;

struct ProbeReport {
  std::vector<std::pair<std::string, bool>> probes;
  InferenceResult result;

  std::size_t a_obj() const { return probes.size(); }
  // The associated actions as far as the report can tell.
  const LabelSet& actions() const;
};

// Answers whether the action is associated with the object under test.
using ProbeOracle = std::function<bool(const std::string&)>;

// Eliminates candidates until one remains. When the probes contradict every
// candidate, the remaining untried actions are probed in label order and the
// exact associated set is reported as a new category. The survivor's other
// actions are not re-verified.
ProbeReport infer_category(const ProbeOracle& oracle, const HypothesisSet& s0,
                           const LabelSet& all_actions, ProbeStrategy strategy);

// Tries every action once, in label order.
ProbeReport baseline_probe(const ProbeOracle& oracle, const LabelSet& all_actions);

// Replaces a NewCategory result by the candidate with the same action set,
// if there is one.
ProbeReport match_known(ProbeReport report, const HypothesisSet& candidates);

// {"probes": [["a1", false], ...], "result": {...}, "a_obj": k}
std::string to_json(const ProbeReport& report);

}  // namespace acr
