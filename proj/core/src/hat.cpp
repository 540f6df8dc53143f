#include "acr/hat.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <mutex>

#include "acr/error.hpp"

namespace acr::rl {

namespace {

using lightworld::GridMap;
using lightworld::GridState;
using lightworld::Pos;

const std::vector<std::string> kDirections = {"none", "here", "down", "left", "right", "up"};
constexpr std::array<Pos, 4> kSteps = {Pos{1, 0}, Pos{0, -1}, Pos{0, 1}, Pos{-1, 0}};

bool enterable(const GridMap& map, const GridState& s, Pos p) {
  return lightworld::passable(map, s, p) && map.terrain(p) != lightworld::Terrain::kPit;
}

// First step of a shortest walkable route to the nearest target cell: 0 when
// none is reachable, 1 when standing on one, else 2 + step index (down, left,
// right, up; the first shortest one wins).
std::uint8_t route(const GridMap& map, const GridState& s, const std::vector<Pos>& targets) {
  if (targets.empty()) return 0;
  std::vector<int> dist(static_cast<std::size_t>(map.width() * map.height()), -1);
  std::vector<Pos> queue;
  for (Pos t : targets) {
    if (t == s.pos) return 1;
    dist[map.cell_index(t)] = 0;
    queue.push_back(t);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Pos p = queue[head];
    for (Pos d : kSteps) {
      Pos n{p.row + d.row, p.col + d.col};
      if (!map.in_bounds(n) || dist[map.cell_index(n)] >= 0) continue;
      if (n != s.pos && !enterable(map, s, n)) continue;
      dist[map.cell_index(n)] = dist[map.cell_index(p)] + 1;
      if (n != s.pos) queue.push_back(n);
    }
  }
  int here = dist[map.cell_index(s.pos)];
  if (here < 0) return 0;
  for (std::size_t i = 0; i < kSteps.size(); ++i) {
    Pos n{s.pos.row + kSteps[i].row, s.pos.col + kSteps[i].col};
    if (map.in_bounds(n) && enterable(map, s, n) && dist[map.cell_index(n)] == here - 1) {
      return static_cast<std::uint8_t>(2 + i);
    }
  }
  return 0;
}

std::vector<Pos> unused(const GridMap& map, const GridState& s, lightworld::OperatorKind kind) {
  std::vector<Pos> out;
  for (std::size_t i = 0; i < map.operators().size(); ++i) {
    const auto& o = map.operators()[i];
    if (o.kind == kind && !s.used(static_cast<int>(i))) out.push_back(o.pos);
  }
  return out;
}

FeatureSchema build_schema(const GridMap& map) {
  FeatureSchema schema;
  const std::vector<std::string> flag = {"false", "true"};
  schema.names = {"on_key", "on_switch", "key_dir", "switch_dir", "goal_dir"};
  schema.values = {flag, flag, kDirections, kDirections, kDirections};
  for (std::size_t d = 0; d < map.doors().size(); ++d) {
    schema.names.push_back("door" + std::to_string(d) + "_open");
    schema.values.push_back(flag);
  }
  for (const char* n : {"open_down", "open_left", "open_right", "open_up"}) {
    schema.names.push_back(n);
    schema.values.push_back(flag);
  }
  return schema;
}

}  // namespace

int FeatureSchema::find(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<int>(i);
  }
  return -1;
}

std::string FeatureSchema::describe(int feature, std::uint8_t value) const {
  return names.at(feature) + "=" + values.at(feature).at(value);
}

const FeatureSchema& lightworld_schema(const GridMap& map) {
  // Schemas differ only by door count.
  static std::mutex mu;
  static std::map<std::size_t, FeatureSchema> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(map.doors().size());
  if (it == cache.end()) it = cache.emplace(map.doors().size(), build_schema(map)).first;
  return it->second;
}

FeatureVector extract_features(const GridMap& map, const GridState& s) {
  using lightworld::OperatorKind;
  FeatureVector f;
  f.reserve(9 + map.doors().size());
  int op = map.operator_at(s.pos);
  bool on_key = op >= 0 && map.operators()[op].kind == OperatorKind::kKey && !s.used(op);
  bool on_switch = op >= 0 && map.operators()[op].kind == OperatorKind::kSwitch;
  f.push_back(on_key);
  f.push_back(on_switch);
  f.push_back(route(map, s, unused(map, s, OperatorKind::kKey)));
  f.push_back(route(map, s, unused(map, s, OperatorKind::kSwitch)));
  f.push_back(route(map, s, {map.goal()}));
  for (std::size_t d = 0; d < map.doors().size(); ++d) {
    f.push_back(lightworld::door_open(map, s, static_cast<int>(d)));
  }
  for (Pos d : kSteps) f.push_back(enterable(map, s, {s.pos.row + d.row, s.pos.col + d.col}));
  return f;
}

bool Rule::matches(const FeatureVector& f) const {
  return std::all_of(conditions.begin(), conditions.end(),
                     [&](const Condition& c) { return f[c.feature] == c.value; });
}

std::optional<Action> DecisionList::lookup(const FeatureVector& f) const {
  for (const auto& r : rules_) {
    if (r.matches(f)) return r.action;
  }
  return std::nullopt;
}

std::string DecisionList::describe(const FeatureSchema& schema) const {
  std::string out;
  for (const auto& r : rules_) {
    out += "if ";
    if (r.conditions.empty()) out += "true";
    for (std::size_t i = 0; i < r.conditions.size(); ++i) {
      if (i) out += " and ";
      out += schema.describe(r.conditions[i].feature, r.conditions[i].value);
    }
    out += " then " + std::string(lightworld::label(r.action)) + "  [coverage " +
           std::to_string(r.coverage) + "]\n";
  }
  return out;
}

namespace {

// Most frequent action; enumerators are in label order, so the first maximum
// is the label tie-break.
Action majority(const std::vector<const Example*>& examples) {
  std::array<int, lightworld::kNumActions> counts{};
  for (const Example* e : examples) ++counts[lightworld::index_of(e->second)];
  std::size_t best = 0;
  for (std::size_t i = 1; i < counts.size(); ++i) {
    if (counts[i] > counts[best]) best = i;
  }
  return lightworld::kAllActions[best];
}

struct Score {
  int matched = 0;
  int positives = 0;  // matched with the target action, over all examples
  int fresh = 0;      // positives not yet covered by an earlier rule
  double precision() const { return matched ? static_cast<double>(positives) / matched : 0.0; }
};

}  // namespace

DecisionList learn_decision_list(const std::vector<Example>& examples) {
  if (examples.empty()) throw ValidationError("decision list needs at least one example");
  const std::size_t width = examples.front().first.size();
  for (const auto& e : examples) {
    if (e.first.size() != width) throw ValidationError("feature vectors differ in length");
  }

  std::vector<bool> covered(examples.size(), false);
  std::vector<const Example*> remaining;
  for (const auto& e : examples) remaining.push_back(&e);

  auto score = [&](const std::vector<Condition>& conds, Action target) {
    Score sc;
    for (std::size_t i = 0; i < examples.size(); ++i) {
      const auto& [f, a] = examples[i];
      bool match = std::all_of(conds.begin(), conds.end(),
                               [&](const Condition& c) { return f[c.feature] == c.value; });
      if (!match) continue;
      ++sc.matched;
      if (a == target) {
        ++sc.positives;
        if (!covered[i]) ++sc.fresh;
      }
    }
    return sc;
  };

  std::vector<Rule> rules;
  while (!remaining.empty()) {
    Rule rule;
    rule.action = majority(remaining);
    Score current = score(rule.conditions, rule.action);
    std::vector<bool> used(width, false);

    while (current.precision() < 1.0) {
      std::optional<Condition> best;
      Score best_score = current;
      for (std::size_t f = 0; f < width; ++f) {
        if (used[f]) continue;
        std::vector<std::uint8_t> values;
        for (const Example* e : remaining) {
          if (e->second == rule.action && rule.matches(e->first)) values.push_back(e->first[f]);
        }
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        for (std::uint8_t v : values) {
          auto conds = rule.conditions;
          conds.push_back({static_cast<int>(f), v});
          Score sc = score(conds, rule.action);
          if (sc.fresh == 0) continue;
          bool better = sc.precision() > best_score.precision() ||
                        (best && sc.precision() == best_score.precision() &&
                         sc.fresh > best_score.fresh);
          if (better) {
            best = Condition{static_cast<int>(f), v};
            best_score = sc;
          }
        }
      }
      if (!best) break;
      used[best->feature] = true;
      rule.conditions.push_back(*best);
      current = best_score;
    }

    rule.coverage = current.fresh;
    rule.precision = current.precision();
    rule.discovery = static_cast<int>(rules.size());
    for (std::size_t i = 0; i < examples.size(); ++i) {
      if (examples[i].second == rule.action && rule.matches(examples[i].first)) covered[i] = true;
    }
    std::erase_if(remaining, [&](const Example* e) {
      return e->second == rule.action && rule.matches(e->first);
    });
    rules.push_back(std::move(rule));
  }

  std::stable_sort(rules.begin(), rules.end(), [](const Rule& a, const Rule& b) {
    if (a.coverage != b.coverage) return a.coverage > b.coverage;
    if (a.precision != b.precision) return a.precision > b.precision;
    return a.discovery < b.discovery;
  });
  return DecisionList(std::move(rules));
}

}  // namespace acr::rl
