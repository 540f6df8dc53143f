#include "acr/inference.hpp"

#include <cmath>
#include <numeric>

#include <json.hpp>

#include "acr/error.hpp"

namespace acr {

namespace {
constexpr double kEntropyTolerance = 1e-12;
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den <= 0 || num < 0) {
    throw ContractError("rational needs num >= 0 and den > 0");
  }
  std::int64_t g = std::gcd(num, den);
  if (g == 0) g = 1;
  num_ = num / g;
  den_ = den / g;
}

std::string to_string(const Rational& r) {
  return std::to_string(r.num()) + "/" + std::to_string(r.den());
}

std::string to_string(ProbeStrategy s) {
  switch (s) {
    case ProbeStrategy::kPaperMinEntropy: return "minent";
    case ProbeStrategy::kMaxEntropy: return "maxent";
    case ProbeStrategy::kLexicographic: return "lex";
  }
  return "?";
}

ProbeStrategy parse_strategy(std::string_view name) {
  if (name == "minent") return ProbeStrategy::kPaperMinEntropy;
  if (name == "maxent") return ProbeStrategy::kMaxEntropy;
  if (name == "lex") return ProbeStrategy::kLexicographic;
  throw ValidationError("unknown probe strategy '" + std::string(name) + "'");
}

Rational probability_contains(const std::string& action, const HypothesisSet& s) {
  if (s.empty()) throw ContractError("probability over an empty hypothesis set");
  std::int64_t hits = 0;
  for (const auto& c : s) {
    if (c.actions.contains(action)) ++hits;
  }
  return Rational(hits, static_cast<std::int64_t>(s.size()));
}

double binary_entropy(double p) {
  auto term = [](double x) { return x <= 0.0 ? 0.0 : -x * std::log2(x); };
  return term(p) + term(1.0 - p);
}

double binary_entropy(const Rational& p) {
  // Evaluate both halves from exact fractions so H(p) == H(1-p) bit for bit.
  auto term = [](std::int64_t n, std::int64_t d) {
    if (n == 0) return 0.0;
    double x = static_cast<double>(n) / static_cast<double>(d);
    return -x * std::log2(x);
  };
  double a = term(p.num(), p.den());
  double b = term(p.den() - p.num(), p.den());
  return a < b ? a + b : b + a;
}

double entropy(const std::string& action, const HypothesisSet& s) {
  return binary_entropy(probability_contains(action, s));
}

std::vector<std::string> discriminating_actions(const HypothesisSet& s,
                                                const LabelSet& tried) {
  LabelSet pool;
  for (const auto& c : s) pool.insert(c.actions.begin(), c.actions.end());
  std::vector<std::string> out;
  for (const auto& a : pool) {
    if (tried.contains(a)) continue;
    Rational p = probability_contains(a, s);
    if (p.num() != 0 && p.num() != p.den()) out.push_back(a);
  }
  return out;
}

std::string select_probe(const HypothesisSet& s, const LabelSet& tried,
                         ProbeStrategy strategy) {
  if (s.size() <= 1) {
    throw ContractError("select_probe needs at least two candidates");
  }
  std::vector<std::string> pool = discriminating_actions(s, tried);
  if (pool.empty()) {
    std::string names;
    for (const auto& c : s) {
      if (!names.empty()) names += ", ";
      names += "#" + std::to_string(c.id) + "{";
      bool first = true;
      for (const auto& a : c.actions) {
        names += (first ? "" : ",") + a;
        first = false;
      }
      names += "}";
    }
    throw ContractError("indistinguishable candidates: " + names);
  }
  if (strategy == ProbeStrategy::kLexicographic) return pool.front();

  // pool is sorted, so keeping the first of any tie gives the label tie-break.
  const bool minimize = strategy == ProbeStrategy::kPaperMinEntropy;
  std::size_t best = 0;
  double best_h = entropy(pool[0], s);
  for (std::size_t i = 1; i < pool.size(); ++i) {
    double h = entropy(pool[i], s);
    bool better = minimize ? h < best_h - kEntropyTolerance
                           : h > best_h + kEntropyTolerance;
    if (better) {
      best = i;
      best_h = h;
    }
  }
  return pool[best];
}

HypothesisSet eliminate(const HypothesisSet& s, const std::string& action,
                        bool associated) {
  HypothesisSet out;
  for (const auto& c : s) {
    if (c.actions.contains(action) == associated) out.push_back(c);
  }
  return out;
}

const LabelSet& ProbeReport::actions() const {
  return std::visit([](const auto& r) -> const LabelSet& { return r.actions; },
                    result);
}

ProbeReport infer_category(const ProbeOracle& oracle, const HypothesisSet& s0,
                           const LabelSet& all_actions, ProbeStrategy strategy) {
  for (const auto& c : s0) {
    for (const auto& a : c.actions) {
      if (!all_actions.contains(a)) {
        throw ContractError("candidate action '" + a + "' is outside the action set");
      }
    }
  }

  ProbeReport report;
  HypothesisSet s = s0;
  LabelSet tried;
  LabelSet associated;
  auto probe = [&](const std::string& a) {
    bool answer = oracle(a);
    report.probes.emplace_back(a, answer);
    tried.insert(a);
    if (answer) associated.insert(a);
    return answer;
  };

  while (s.size() > 1) {
    std::string a = select_probe(s, tried, strategy);
    s = eliminate(s, a, probe(a));
  }

  if (s.size() == 1) {
    report.result = KnownCategory{s.front().id, s.front().actions};
    return report;
  }

  for (const auto& a : all_actions) {
    if (!tried.contains(a)) probe(a);
  }
  report.result = NewCategory{associated};
  return report;
}

ProbeReport baseline_probe(const ProbeOracle& oracle, const LabelSet& all_actions) {
  ProbeReport report;
  LabelSet associated;
  for (const auto& a : all_actions) {
    bool answer = oracle(a);
    report.probes.emplace_back(a, answer);
    if (answer) associated.insert(a);
  }
  report.result = NewCategory{associated};
  return report;
}

ProbeReport match_known(ProbeReport report, const HypothesisSet& candidates) {
  if (const auto* fresh = std::get_if<NewCategory>(&report.result)) {
    for (const auto& c : candidates) {
      if (c.actions == fresh->actions) {
        report.result = KnownCategory{c.id, c.actions};
        break;
      }
    }
  }
  return report;
}

std::string to_json(const ProbeReport& report) {
  using nlohmann::json;
  json probes = json::array();
  for (const auto& [a, ok] : report.probes) probes.push_back({a, ok});
  json result;
  if (const auto* known = std::get_if<KnownCategory>(&report.result)) {
    result = {{"known_id", known->id}};
  } else {
    result = {{"new_category", std::get<NewCategory>(report.result).actions}};
  }
  json doc = {{"probes", probes}, {"result", result}, {"a_obj", report.a_obj()}};
  return doc.dump();
}

}  // namespace acr
