#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "acr/error.hpp"
#include "acr/formation.hpp"

namespace acr::planner {

namespace {

std::string pddl_name(const std::string& label) {
  std::string out;
  for (unsigned char c : label) {
    out += std::isalnum(c) ? static_cast<char>(std::tolower(c)) : '-';
  }
  if (out.empty() || !std::isalpha(static_cast<unsigned char>(out.front()))) {
    out = "u" + out;
  }
  return out;
}

std::string cell_name(Cell c) {
  return "c-" + std::to_string(c.row) + "-" + std::to_string(c.col);
}

void write_move(std::ostringstream& os, const std::string& action,
                const std::string& unit_type, std::string_view dir) {
  os << "  (:action " << action << "\n"
     << "    :parameters (?u - " << unit_type << " ?from ?to - cell)\n"
     << "    :precondition (and (at ?u ?from) (adjacent-" << dir
     << " ?from ?to) (free ?to))\n"
     << "    :effect (and (not (at ?u ?from)) (at ?u ?to)\n"
     << "                 (not (free ?to)) (occupied ?to)\n"
     << "                 (free ?from) (not (occupied ?from))))\n";
}

}  // namespace

PddlFiles emit_pddl(const FormationProblem& problem, GroundingMode mode,
                    const CategorySet& acr) {
  GroundedOperatorSet ops = ground(problem, mode, acr);

  std::vector<std::string> unit_names;
  std::set<std::string> distinct;
  for (const auto& u : problem.units) {
    unit_names.push_back(pddl_name(u));
    if (!distinct.insert(unit_names.back()).second) {
      throw ValidationError("unit labels collide after PDDL name mangling: " + u);
    }
  }

  const bool typed = mode == GroundingMode::kAcrTyped;
  const std::string domain_name = typed ? "formation-acr" : "formation-baseline";
  auto unit_type = [&](std::size_t u) {
    return typed ? ops.category_type : "unit-" + unit_names[u];
  };

  std::ostringstream d;
  d << "(define (domain " << domain_name << ")\n"
    << "  (:requirements :strips :typing)\n"
    << "  (:types cell";
  if (typed) {
    if (!ops.category_type.empty()) d << " " << ops.category_type;
  } else {
    for (std::size_t u = 0; u < unit_names.size(); ++u) d << " " << unit_type(u);
  }
  d << ")\n"
    << "  (:predicates (at ?u - object ?c - cell) (free ?c - cell) (occupied ?c - cell)\n"
    << "               (adjacent-down ?a ?b - cell) (adjacent-left ?a ?b - cell)\n"
    << "               (adjacent-right ?a ?b - cell) (adjacent-up ?a ?b - cell))\n";
  for (const auto& op : ops.operators) {
    std::string type = typed ? ops.category_type : unit_type(static_cast<std::size_t>(op.unit));
    std::string name = typed ? op.name
                             : "move-" + unit_names[op.unit] + "-" + std::string(label(op.direction));
    write_move(d, name, type, label(op.direction));
  }
  d << ")\n";

  std::ostringstream p;
  p << "(define (problem formation-" << problem.units.size() << ")\n"
    << "  (:domain " << domain_name << ")\n"
    << "  (:objects\n   ";
  for (int r = 0; r < problem.height; ++r) {
    for (int c = 0; c < problem.width; ++c) p << " " << cell_name({r, c});
  }
  p << " - cell\n";
  for (std::size_t u = 0; u < unit_names.size(); ++u) {
    p << "    " << unit_names[u] << " - " << unit_type(u) << "\n";
  }
  p << "  )\n  (:init\n";
  std::set<Cell> occupied(problem.initial.begin(), problem.initial.end());
  for (std::size_t u = 0; u < unit_names.size(); ++u) {
    p << "    (at " << unit_names[u] << " " << cell_name(problem.initial[u]) << ")\n";
  }
  for (int r = 0; r < problem.height; ++r) {
    for (int c = 0; c < problem.width; ++c) {
      Cell cell{r, c};
      p << "    (" << (occupied.contains(cell) ? "occupied " : "free ") << cell_name(cell)
        << ")\n";
    }
  }
  const std::pair<const char*, Cell> steps[] = {
      {"down", {1, 0}}, {"left", {0, -1}}, {"right", {0, 1}}, {"up", {-1, 0}}};
  for (int r = 0; r < problem.height; ++r) {
    for (int c = 0; c < problem.width; ++c) {
      for (const auto& [dir, dd] : steps) {
        Cell t{r + dd.row, c + dd.col};
        if (t.row < 0 || t.col < 0 || t.row >= problem.height || t.col >= problem.width) {
          continue;
        }
        p << "    (adjacent-" << dir << " " << cell_name({r, c}) << " " << cell_name(t)
          << ")\n";
      }
    }
  }
  p << "  )\n  (:goal (and";
  std::vector<Cell> goal = problem.goal;
  std::sort(goal.begin(), goal.end());
  for (Cell c : goal) p << " (occupied " << cell_name(c) << ")";
  p << "))\n)\n";

  return {d.str(), p.str()};
}

}  // namespace acr::planner
