#include "acr/formation.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <set>
#include <unordered_map>

#include "acr/error.hpp"

namespace acr::planner {

namespace {

constexpr std::size_t kMaxUnits = 8;
constexpr std::size_t kMaxCells = 255;

using Packed = std::uint64_t;
using Slots = std::array<std::uint8_t, kMaxUnits>;

Packed pack(const Slots& s, std::size_t n) {
  Packed p = 0;
  for (std::size_t i = 0; i < n; ++i) p |= static_cast<Packed>(s[i]) << (8 * i);
  return p;
}

Slots unpack(Packed p, std::size_t n) {
  Slots s{};
  for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<std::uint8_t>(p >> (8 * i));
  return s;
}

Cell delta(Direction d) {
  switch (d) {
    case Direction::kDown: return {1, 0};
    case Direction::kLeft: return {0, -1};
    case Direction::kRight: return {0, 1};
    case Direction::kUp: return {-1, 0};
  }
  return {0, 0};
}

struct Geometry {
  int width;
  int height;
  std::uint8_t index(Cell c) const { return static_cast<std::uint8_t>(c.row * width + c.col); }
  Cell cell(std::uint8_t i) const { return {i / width, i % width}; }
  // Neighbour cell index or -1 when the move leaves the grid.
  int neighbour(std::uint8_t i, Direction d) const {
    Cell c = cell(i);
    Cell dd = delta(d);
    Cell t{c.row + dd.row, c.col + dd.col};
    if (t.row < 0 || t.col < 0 || t.row >= height || t.col >= width) return -1;
    return index(t);
  }
};

// Expands states for one grounding mode; shared by search and enumeration.
class Space {
 public:
  Space(const FormationProblem& p, GroundingMode mode, const GroundedOperatorSet& ops)
      : geo_{p.width, p.height}, n_(p.units.size()), mode_(mode), ops_(ops) {
    Slots init{};
    for (std::size_t i = 0; i < n_; ++i) init[i] = geo_.index(p.initial[i]);
    if (mode_ == GroundingMode::kAcrTyped) std::sort(init.begin(), init.begin() + n_);
    initial_ = pack(init, n_);
    for (std::size_t i = 0; i < n_; ++i) goal_[i] = geo_.index(p.goal[i]);
    std::sort(goal_.begin(), goal_.begin() + n_);
    for (std::size_t k = 0; k < ops_.operators.size(); ++k) {
      const GroundedOperator& op = ops_.operators[k];
      if (mode_ == GroundingMode::kBaseline) {
        unit_op_[static_cast<std::size_t>(op.unit)][static_cast<std::size_t>(op.direction)] =
            static_cast<std::uint16_t>(k);
      }
    }
  }

  Packed initial() const { return initial_; }

  bool is_goal(Packed state) const {
    Slots s = unpack(state, n_);
    std::sort(s.begin(), s.begin() + n_);
    return std::equal(s.begin(), s.begin() + n_, goal_.begin());
  }

  struct Successor {
    Packed state;
    std::uint16_t op;
    std::uint8_t from;
    std::uint8_t to;
  };

  template <typename Fn>
  void for_each_successor(Packed state, Fn&& fn) const {
    Slots s = unpack(state, n_);
    auto occupied = [&](int cell) {
      for (std::size_t i = 0; i < n_; ++i) {
        if (s[i] == cell) return true;
      }
      return false;
    };
    // Both modes enumerate direction first, then the moving unit's cell in
    // row-major order, so a baseline search meets the abstract states in the
    // same order as the typed one.
    std::array<std::size_t, kMaxUnits> by_cell{};
    for (std::size_t i = 0; i < n_; ++i) by_cell[i] = i;
    std::sort(by_cell.begin(), by_cell.begin() + n_,
              [&](std::size_t a, std::size_t b) { return s[a] < s[b]; });
    for (Direction d : kDirections) {
      const auto di = static_cast<std::size_t>(d);
      for (std::size_t i = 0; i < n_; ++i) {
        std::size_t u = by_cell[i];
        int t = geo_.neighbour(s[u], d);
        if (t < 0 || occupied(t)) continue;
        Slots next = s;
        next[u] = static_cast<std::uint8_t>(t);
        std::uint16_t k = static_cast<std::uint16_t>(di);
        if (mode_ == GroundingMode::kBaseline) {
          k = unit_op_[u][di];
        } else {
          std::sort(next.begin(), next.begin() + n_);
        }
        fn(Successor{pack(next, n_), k, s[u], static_cast<std::uint8_t>(t)});
      }
    }
  }

  const Geometry& geometry() const { return geo_; }

 private:
  Geometry geo_;
  std::size_t n_;
  GroundingMode mode_;
  const GroundedOperatorSet& ops_;
  Packed initial_ = 0;
  Slots goal_{};
  std::array<std::array<std::uint16_t, 4>, kMaxUnits> unit_op_{};
};

}  // namespace

void FormationProblem::validate() const {
  if (width <= 0 || height <= 0) throw ValidationError("grid dimensions must be positive");
  if (cell_count() > kMaxCells) throw ValidationError("grid has more than 255 cells");
  if (units.size() > kMaxUnits) throw ValidationError("at most 8 units are supported");
  if (initial.size() != units.size()) {
    throw ValidationError("need one initial position per unit");
  }
  if (goal.size() != units.size()) {
    throw ValidationError("goal has " + std::to_string(goal.size()) + " cells for " +
                          std::to_string(units.size()) + " units");
  }
  auto check = [&](const std::vector<Cell>& cells, const char* what) {
    std::set<Cell> seen;
    for (Cell c : cells) {
      if (c.row < 0 || c.col < 0 || c.row >= height || c.col >= width) {
        throw ValidationError(std::string(what) + " cell (" + std::to_string(c.row) + "," +
                              std::to_string(c.col) + ") is out of bounds");
      }
      if (!seen.insert(c).second) {
        throw ValidationError(std::string(what) + " cells must be distinct");
      }
    }
  };
  check(initial, "initial");
  check(goal, "goal");
  std::set<std::string> names(units.begin(), units.end());
  if (names.size() != units.size()) throw ValidationError("unit labels must be distinct");
}

FormationProblem benchmark_problem(int n_units, int width, int height) {
  if (n_units < 0 || n_units > width || height < 2) {
    throw ValidationError("benchmark needs 0 <= units <= width and height >= 2");
  }
  FormationProblem p;
  p.width = width;
  p.height = height;
  for (int i = 0; i < n_units; ++i) {
    p.units.push_back("d" + std::to_string(i + 1));
    p.initial.push_back({height - 1, i});
    p.goal.push_back({0, i});
  }
  return p;
}

CategorySet formation_acr(const FormationProblem& problem) {
  CategorySet cs;
  ActionCategory c;
  c.id = 0;
  c.actions = {"attack", "hold", "move", "patrol"};
  c.objects.insert(problem.units.begin(), problem.units.end());
  if (!c.objects.empty()) cs.categories.push_back(c);
  return cs;
}

std::string to_string(GroundingMode m) {
  return m == GroundingMode::kBaseline ? "baseline" : "acr";
}

std::string_view label(Direction d) {
  switch (d) {
    case Direction::kDown: return "down";
    case Direction::kLeft: return "left";
    case Direction::kRight: return "right";
    case Direction::kUp: return "up";
  }
  return "?";
}

GroundedOperatorSet ground(const FormationProblem& problem, GroundingMode mode,
                           const CategorySet& acr) {
  problem.validate();
  GroundedOperatorSet out{mode, {}, {}};
  if (mode == GroundingMode::kBaseline) {
    for (std::size_t u = 0; u < problem.units.size(); ++u) {
      for (Direction d : kDirections) {
        out.operators.push_back({"move-" + problem.units[u] + "-" + std::string(label(d)),
                                 problem.units[u], d, static_cast<int>(u)});
      }
    }
  } else if (!problem.units.empty()) {
    std::optional<int> shared;
    for (const auto& unit : problem.units) {
      auto cats = categories_of(acr, unit);
      if (cats.size() != 1) {
        throw ValidationError("unit '" + unit + "' belongs to " +
                              std::to_string(cats.size()) +
                              " categories; typed grounding needs exactly one");
      }
      if (shared && *shared != cats.front().id) {
        throw ValidationError("units span several action categories");
      }
      shared = cats.front().id;
    }
    out.category_type = "category-" + std::to_string(*shared + 1);
    for (Direction d : kDirections) {
      out.operators.push_back({"move-" + out.category_type + "-" + std::string(label(d)),
                               out.category_type, d, -1});
    }
  }
  std::stable_sort(out.operators.begin(), out.operators.end(),
                   [](const auto& a, const auto& b) { return a.name < b.name; });
  return out;
}

SearchResult search(const FormationProblem& problem, GroundingMode mode,
                    const CategorySet& acr, SearchLimits limits) {
  using Clock = std::chrono::steady_clock;
  const auto started = Clock::now();
  GroundedOperatorSet ops = ground(problem, mode, acr);
  Space space(problem, mode, ops);

  struct Node {
    Packed state;
    std::uint32_t parent;
    std::uint16_t op;
    std::uint8_t from;
    std::uint8_t to;
  };
  constexpr std::uint32_t kRoot = std::numeric_limits<std::uint32_t>::max();

  std::vector<Node> nodes;
  std::unordered_map<Packed, std::uint32_t> seen;
  nodes.push_back({space.initial(), kRoot, 0, 0, 0});
  seen.emplace(space.initial(), 0);

  SearchResult result;
  SearchStats& stats = result.stats;
  stats.generated = 1;
  stats.frontier_peak = 1;

  auto finish = [&] {
    stats.wall_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - started).count();
  };

  std::size_t head = 0;
  while (head < nodes.size()) {
    if (limits.max_expanded && stats.expanded >= *limits.max_expanded) {
      stats.censored = true;
      break;
    }
    if (limits.time_budget && (stats.expanded & 1023) == 0 &&
        Clock::now() - started > *limits.time_budget) {
      stats.censored = true;
      break;
    }
    const std::uint32_t current = static_cast<std::uint32_t>(head++);
    const Packed state = nodes[current].state;
    ++stats.expanded;

    if (space.is_goal(state)) {
      std::vector<PlanStep> plan;
      const Geometry& geo = space.geometry();
      for (std::uint32_t i = current; nodes[i].parent != kRoot; i = nodes[i].parent) {
        plan.push_back({ops.operators[nodes[i].op].name, geo.cell(nodes[i].from),
                        geo.cell(nodes[i].to)});
      }
      std::reverse(plan.begin(), plan.end());
      stats.plan_length = static_cast<int>(plan.size());
      result.plan = std::move(plan);
      finish();
      return result;
    }

    space.for_each_successor(state, [&](const Space::Successor& s) {
      auto [it, inserted] = seen.emplace(s.state, static_cast<std::uint32_t>(nodes.size()));
      if (!inserted) return;
      nodes.push_back({s.state, current, s.op, s.from, s.to});
      ++stats.generated;
    });
    stats.frontier_peak = std::max<std::uint64_t>(stats.frontier_peak, nodes.size() - head);
  }
  finish();
  return result;
}

std::uint64_t enumerate_reachable(const FormationProblem& problem, GroundingMode mode,
                                  const CategorySet& acr) {
  GroundedOperatorSet ops = ground(problem, mode, acr);
  Space space(problem, mode, ops);
  std::vector<Packed> queue{space.initial()};
  std::unordered_map<Packed, bool> seen{{space.initial(), true}};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    space.for_each_successor(queue[head], [&](const Space::Successor& s) {
      if (seen.emplace(s.state, true).second) queue.push_back(s.state);
    });
  }
  return queue.size();
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  __extension__ using u128 = unsigned __int128;
  u128 r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) {
      throw ValidationError("binomial coefficient overflows 64 bits");
    }
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t state_space_size(std::size_t cells, std::size_t n_units, GroundingMode mode) {
  if (n_units > cells) throw ValidationError("more units than cells");
  std::uint64_t placements = binomial(cells, n_units);
  // The baseline factor is n_o, not n_o!; see the README.
  return mode == GroundingMode::kAcrTyped ? placements : placements * n_units;
}

std::uint64_t state_space_size(const FormationProblem& problem, GroundingMode mode) {
  return state_space_size(problem.cell_count(), problem.units.size(), mode);
}

std::uint64_t branching_factor(std::size_t n_objects, std::size_t action_count) {
  return static_cast<std::uint64_t>(n_objects) * action_count;
}

std::uint64_t branching_factor(const std::vector<std::string>& objects,
                               const CategorySet& acr) {
  std::uint64_t total = 0;
  for (const auto& c : acr.categories) {
    std::uint64_t members = 0;
    for (const auto& o : objects) {
      if (c.objects.contains(o)) ++members;
    }
    total += members * c.actions.size();
  }
  return total;
}

}  // namespace acr::planner
