#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "acr/action_code.hpp"
#include "acr/graph.hpp"

namespace acr::lightworld {

// Enumerators are in label order so index order doubles as the lexicographic
// tie-break.
enum class Action : std::uint8_t { kDown, kLeft, kPickup, kPress, kRight, kUp };

inline constexpr std::size_t kNumActions = 6;
inline constexpr std::array<Action, kNumActions> kAllActions = {
    Action::kDown, Action::kLeft, Action::kPickup,
    Action::kPress, Action::kRight, Action::kUp};

std::string_view label(Action a);
std::optional<Action> parse_action(std::string_view label);
bool is_movement(Action a);
inline std::size_t index_of(Action a) { return static_cast<std::size_t>(a); }
// Labels of all six actions.
LabelSet action_labels();

inline constexpr std::string_view kKeyLabel = "key";
inline constexpr std::string_view kSwitchLabel = "switch";

inline constexpr double kStepReward = -0.04;
inline constexpr double kGoalReward = 100.0;
inline constexpr double kPitReward = -10.0;

struct Pos {
  int row = 0;
  int col = 0;
  friend auto operator<=>(const Pos&, const Pos&) = default;
};

enum class Terrain : std::uint8_t { kFloor, kWall, kPit, kGoal };

enum class OperatorKind : std::uint8_t { kKey, kSwitch };

// A key or a switch. Using it opens every door linked to it.
struct Operator {
  OperatorKind kind;
  char symbol;  // key letter or switch digit
  Pos pos;
  friend bool operator==(const Operator&, const Operator&) = default;
};

struct Door {
  Pos pos;
  int op;  // index into GridMap::operators()
  friend bool operator==(const Door&, const Door&) = default;
};

// Immutable world layout. Build one with load_map.
class GridMap {
 public:
  static constexpr int kMaxOperators = 16;

  int width() const { return width_; }
  int height() const { return height_; }
  Pos start() const { return start_; }
  Pos goal() const { return goal_; }
  const std::vector<Operator>& operators() const { return operators_; }
  const std::vector<Door>& doors() const { return doors_; }

  bool in_bounds(Pos p) const {
    return p.row >= 0 && p.col >= 0 && p.row < height_ && p.col < width_;
  }
  int cell_index(Pos p) const { return p.row * width_ + p.col; }
  Terrain terrain(Pos p) const { return terrain_[cell_index(p)]; }
  // -1 when the cell holds no key or switch.
  int operator_at(Pos p) const { return operator_cell_[cell_index(p)]; }
  // -1 when the cell is not a door.
  int door_at(Pos p) const { return door_cell_[cell_index(p)]; }

  friend bool operator==(const GridMap&, const GridMap&) = default;

 private:
  friend GridMap load_map(std::string_view text);

  int width_ = 0;
  int height_ = 0;
  Pos start_;
  Pos goal_;
  std::vector<Terrain> terrain_;
  std::vector<int> operator_cell_;
  std::vector<int> door_cell_;
  std::vector<Operator> operators_;
  std::vector<Door> doors_;
};

// Map text format:
//
//   <width> <height>
//   <height rows of exactly width characters>
//   door <digit> <row> <col>      one line per '+' cell
//
// '#' wall, '.' floor, 'S' start, 'G' goal, '^' spike pit, lowercase letter a
// key, the same letter uppercase its door, digit a switch, '+' a door opened by
// the switch named on its door line. Rows and columns are 0-based. Keys 's'
// and 'g' are not available because 'S' and 'G' are taken.
GridMap load_map(std::string_view text);
// Canonical text; load_map(serialize_map(m)) == m.
std::string serialize_map(const GridMap& map);

// The bundled 7x8 experiment map: one key door, one switch door, two pits.
std::string_view canonical_map_text();
const GridMap& canonical_map();

// Learner-visible state. Keys held, switches pressed, and open doors are all
// functions of the set of used operators.
struct GridState {
  Pos pos;
  std::uint32_t used_ops = 0;
  bool terminal = false;
  double cumulative_reward = 0.0;

  bool used(int op) const { return (used_ops >> op) & 1u; }
  friend bool operator==(const GridState&, const GridState&) = default;
};

GridState initial_state(const GridMap& map);
std::set<char> held_keys(const GridMap& map, const GridState& s);
std::set<char> pressed_switches(const GridMap& map, const GridState& s);
std::set<Pos> open_doors(const GridMap& map, const GridState& s);
bool door_open(const GridMap& map, const GridState& s, int door);
// True when the agent could stand on p: in bounds, not wall, not a closed door.
bool passable(const GridMap& map, const GridState& s, Pos p);

struct StepOutcome {
  GridState next;
  double reward = 0.0;
  bool terminal = false;
  // Key or switch label the action was attempted on, if any.
  std::optional<std::string> object;
  bool succeeded = false;
};

// Deterministic transition. Throws ContractError on a terminal state.
StepOutcome step(const GridMap& map, const GridState& s, Action a);

// Labels of the key or switch under the agent (doors never count).
LabelSet interactable_objects(const GridMap& map, const GridState& s);

// Compact key of the non-cumulative fields, unique per map.
using StateKey = std::uint64_t;
inline StateKey state_key(const GridMap& map, const GridState& s) {
  return (static_cast<StateKey>(map.cell_index(s.pos)) << 32) | s.used_ops;
}
// "r,c|ops" with ops as a bit string, operator 0 first.
std::string state_key_string(const GridMap& map, const GridState& s);

struct RecordOptions {
  // Movement actions are logged against kAgentObject.
  bool include_movement = true;
};

// Replays a trajectory from the start state and logs one code per successful
// key/switch interaction, plus one agent code per movement action. Throws
// ValidationError naming the index when the trajectory runs past a terminal.
ObservationLog record_log(const GridMap& map, const std::vector<Action>& trajectory,
                          RecordOptions options = {});

// Steps-to-goal for every non-terminal state, by backward relaxation over the
// finite (position, used operators) space. Unreachable states are absent.
class GoalDistances {
 public:
  explicit GoalDistances(const GridMap& map);

  std::optional<int> distance(const GridState& s) const;
  // Actions that reduce the distance by one, in label order. Empty when the
  // state cannot reach the goal.
  std::vector<Action> optimal_actions(const GridState& s) const;

 private:
  const GridMap* map_;
  std::vector<int> dist_;  // indexed by cell * 2^ops + mask, -1 unreachable
  std::size_t index(const GridState& s) const;
};

// A shortest action sequence from the start to the goal, if any.
std::optional<std::vector<Action>> shortest_path(const GridMap& map);

// Number of states reachable from the start (terminal cells included).
std::size_t reachable_state_count(const GridMap& map);

}  // namespace acr::lightworld
