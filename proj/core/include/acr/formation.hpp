#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "acr/graph.hpp"

namespace acr::planner {

struct Cell {
  int row = 0;
  int col = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

// Units must reach a formation: the goal is a set of cells and any unit may
// fill any of them. Moves are unit-cost steps into free in-bounds cells.
struct FormationProblem {
  int width = 5;
  int height = 5;
  std::vector<std::string> units;
  std::vector<Cell> initial;  // parallel to units
  std::vector<Cell> goal;

  std::size_t cell_count() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  // Throws ValidationError: positions out of bounds or repeated, |goal| != n_o,
  // more than 8 units, or more than 255 cells.
  void validate() const;
};

// n units in the leftmost cells of the bottom row; the formation is the same
// columns of the top row. The default benchmark grid is 5x5.
FormationProblem benchmark_problem(int n_units, int width = 5, int height = 5);

// A category holding every unit, for AcrTyped grounding.
CategorySet formation_acr(const FormationProblem& problem);

enum class GroundingMode { kBaseline, kAcrTyped };
std::string to_string(GroundingMode m);

enum class Direction : std::uint8_t { kDown, kLeft, kRight, kUp };
inline constexpr Direction kDirections[] = {Direction::kDown, Direction::kLeft,
                                            Direction::kRight, Direction::kUp};
std::string_view label(Direction d);

struct GroundedOperator {
  std::string name;     // move-<subject>-<direction>
  std::string subject;  // unit label (Baseline) or category type (AcrTyped)
  Direction direction;
  int unit = -1;        // Baseline only
  friend bool operator==(const GroundedOperator&, const GroundedOperator&) = default;
};

struct GroundedOperatorSet {
  GroundingMode mode;
  std::vector<GroundedOperator> operators;  // sorted by name
  std::string category_type;                // AcrTyped only
};

// Baseline: one operator per (unit, direction). AcrTyped: one per
// (category, direction); every unit must belong to exactly one category and
// all units to the same one, otherwise ValidationError.
GroundedOperatorSet ground(const FormationProblem& problem, GroundingMode mode,
                           const CategorySet& acr);

struct PlanStep {
  std::string op;
  Cell from;
  Cell to;
  friend bool operator==(const PlanStep&, const PlanStep&) = default;
};

struct SearchStats {
  std::uint64_t expanded = 0;
  std::uint64_t generated = 0;
  std::uint64_t frontier_peak = 0;
  double wall_ms = 0.0;
  int plan_length = -1;
  bool censored = false;
};

struct SearchLimits {
  std::optional<std::chrono::milliseconds> time_budget;
  std::optional<std::uint64_t> max_expanded;
};

struct SearchResult {
  std::optional<std::vector<PlanStep>> plan;  // empty optional: no plan
  SearchStats stats;
};

// Breadth-first search over canonical states; plans are optimal in length.
// Successors come direction by direction (down, left, right, up), and within a
// direction by the moving unit's cell in row-major order, in both modes. A goal test happens when a node is
// popped. Exhausting the space sets plan to nullopt; hitting a limit also sets
// stats.censored.
SearchResult search(const FormationProblem& problem, GroundingMode mode,
                    const CategorySet& acr, SearchLimits limits = {});

// Number of states reachable from the initial state, by exhaustive search.
std::uint64_t enumerate_reachable(const FormationProblem& problem, GroundingMode mode,
                                  const CategorySet& acr);

// C(cells, n_o) for AcrTyped and C(cells, n_o) * n_o for Baseline.
std::uint64_t state_space_size(std::size_t cells, std::size_t n_units, GroundingMode mode);
std::uint64_t state_space_size(const FormationProblem& problem, GroundingMode mode);

std::uint64_t binomial(std::size_t n, std::size_t k);

// n_o * |A|.
std::uint64_t branching_factor(std::size_t n_objects, std::size_t action_count);
// Sum over categories of (#objects mapped to it) * |actions|, counting only
// the listed objects.
std::uint64_t branching_factor(const std::vector<std::string>& objects,
                               const CategorySet& acr);

struct PddlFiles {
  std::string domain;
  std::string problem;
};

// STRIPS + typing. Baseline gets a type and a set of move actions per unit;
// AcrTyped declares one type for the category and generic moves over it.
PddlFiles emit_pddl(const FormationProblem& problem, GroundingMode mode,
                    const CategorySet& acr);

}  // namespace acr::planner
