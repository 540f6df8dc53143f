#include "acr/lightworld.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <sstream>

#include "acr/error.hpp"

namespace acr::lightworld {

namespace {

constexpr std::array<std::string_view, kNumActions> kLabels = {
    "down", "left", "pickup", "press", "right", "up"};

constexpr std::string_view kCanonicalMap =
    "7 8\n"
    "S..#..G\n"
    ".1.#.^.\n"
    "...A...\n"
    "#+#####\n"
    ".......\n"
    "..^....\n"
    "...a...\n"
    ".......\n"
    "door 1 3 1\n";

Pos delta(Action a) {
  switch (a) {
    case Action::kDown: return {1, 0};
    case Action::kUp: return {-1, 0};
    case Action::kLeft: return {0, -1};
    case Action::kRight: return {0, 1};
    default: return {0, 0};
  }
}

std::string where(Pos p) {
  return "(" + std::to_string(p.row) + "," + std::to_string(p.col) + ")";
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      if (!cur.empty() && cur.back() == '\r') cur.pop_back();
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

bool is_key_symbol(char c) { return std::islower(static_cast<unsigned char>(c)) && c != 's' && c != 'g'; }
bool is_key_door_symbol(char c) {
  return std::isupper(static_cast<unsigned char>(c)) && c != 'S' && c != 'G';
}

}  // namespace

std::string_view label(Action a) { return kLabels[index_of(a)]; }

std::optional<Action> parse_action(std::string_view l) {
  for (std::size_t i = 0; i < kNumActions; ++i) {
    if (kLabels[i] == l) return kAllActions[i];
  }
  return std::nullopt;
}

bool is_movement(Action a) { return a != Action::kPickup && a != Action::kPress; }

LabelSet action_labels() {
  LabelSet out;
  for (auto l : kLabels) out.emplace(l);
  return out;
}

GridMap load_map(std::string_view text) {
  std::vector<std::string> lines = split_lines(text);
  if (lines.empty()) throw ParseError("empty map");

  GridMap m;
  {
    std::istringstream header(lines[0]);
    if (!(header >> m.width_ >> m.height_) || m.width_ <= 0 || m.height_ <= 0) {
      throw ParseError("map header must be '<width> <height>'", 1);
    }
    std::string extra;
    if (header >> extra) throw ParseError("trailing text in map header", 1);
  }
  if (lines.size() < static_cast<std::size_t>(m.height_) + 1) {
    throw ValidationError("map has " + std::to_string(lines.size() - 1) +
                          " rows, expected " + std::to_string(m.height_));
  }

  const std::size_t cells = static_cast<std::size_t>(m.width_) * m.height_;
  m.terrain_.assign(cells, Terrain::kFloor);
  m.operator_cell_.assign(cells, -1);
  m.door_cell_.assign(cells, -1);

  std::optional<Pos> start, goal;
  std::map<char, int> key_ops, switch_ops;
  std::vector<std::pair<Pos, char>> key_doors;
  std::vector<Pos> switch_doors;

  for (int r = 0; r < m.height_; ++r) {
    const std::string& row = lines[r + 1];
    if (static_cast<int>(row.size()) != m.width_) {
      throw ValidationError("row " + std::to_string(r) + " has " +
                                std::to_string(row.size()) + " cells, expected " +
                                std::to_string(m.width_),
                            r + 2);
    }
    for (int c = 0; c < m.width_; ++c) {
      Pos p{r, c};
      int idx = m.cell_index(p);
      char ch = row[c];
      if (ch == '#') {
        m.terrain_[idx] = Terrain::kWall;
      } else if (ch == '.') {
      } else if (ch == '^') {
        m.terrain_[idx] = Terrain::kPit;
      } else if (ch == 'S') {
        if (start) throw ValidationError("second start cell at " + where(p), r + 2);
        start = p;
      } else if (ch == 'G') {
        if (goal) throw ValidationError("second goal cell at " + where(p), r + 2);
        goal = p;
        m.terrain_[idx] = Terrain::kGoal;
      } else if (is_key_symbol(ch)) {
        if (key_ops.contains(ch)) {
          throw ValidationError(std::string("duplicate key '") + ch + "' at " + where(p),
                                r + 2);
        }
        key_ops[ch] = static_cast<int>(m.operators_.size());
        m.operator_cell_[idx] = key_ops[ch];
        m.operators_.push_back({OperatorKind::kKey, ch, p});
      } else if (std::isdigit(static_cast<unsigned char>(ch))) {
        if (switch_ops.contains(ch)) {
          throw ValidationError(std::string("duplicate switch '") + ch + "' at " +
                                    where(p),
                                r + 2);
        }
        switch_ops[ch] = static_cast<int>(m.operators_.size());
        m.operator_cell_[idx] = switch_ops[ch];
        m.operators_.push_back({OperatorKind::kSwitch, ch, p});
      } else if (is_key_door_symbol(ch)) {
        key_doors.emplace_back(p, ch);
      } else if (ch == '+') {
        switch_doors.push_back(p);
      } else {
        throw ParseError(std::string("unknown map symbol '") + ch + "' at " + where(p),
                         r + 2);
      }
    }
  }
  if (!start) throw ValidationError("map has no start cell 'S'");
  if (!goal) throw ValidationError("map has no goal cell 'G'");
  m.start_ = *start;
  m.goal_ = *goal;
  if (m.operators_.size() > GridMap::kMaxOperators) {
    throw ValidationError("too many keys and switches (max 16)");
  }

  for (const auto& [p, ch] : key_doors) {
    char key = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    auto it = key_ops.find(key);
    if (it == key_ops.end()) throw ValidationError("unlinked door at " + where(p));
    m.door_cell_[m.cell_index(p)] = static_cast<int>(m.doors_.size());
    m.doors_.push_back({p, it->second});
  }

  std::map<Pos, int> switch_link;
  for (std::size_t i = static_cast<std::size_t>(m.height_) + 1; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::istringstream in(line);
    std::string word;
    char sw = 0;
    Pos p;
    std::string extra;
    if (!(in >> word >> sw >> p.row >> p.col) || word != "door" || (in >> extra)) {
      throw ParseError("expected 'door <digit> <row> <col>'", i + 1);
    }
    if (!m.in_bounds(p)) {
      throw ValidationError("door line points outside the map at " + where(p), i + 1);
    }
    if (std::find(switch_doors.begin(), switch_doors.end(), p) == switch_doors.end()) {
      throw ValidationError("door line points at " + where(p) + ", which is not '+'",
                            i + 1);
    }
    auto it = switch_ops.find(sw);
    if (it == switch_ops.end()) {
      throw ValidationError(std::string("door line names missing switch '") + sw + "'",
                            i + 1);
    }
    if (!switch_link.emplace(p, it->second).second) {
      throw ValidationError("door at " + where(p) + " is linked twice", i + 1);
    }
  }
  for (Pos p : switch_doors) {
    auto it = switch_link.find(p);
    if (it == switch_link.end()) throw ValidationError("unlinked door at " + where(p));
  }
  // Doors in row-major order, key doors and switch doors interleaved.
  std::vector<Door> all = m.doors_;
  for (const auto& [p, op] : switch_link) all.push_back({p, op});
  std::sort(all.begin(), all.end(), [](const Door& a, const Door& b) { return a.pos < b.pos; });
  m.doors_ = all;
  for (std::size_t i = 0; i < m.doors_.size(); ++i) {
    m.door_cell_[m.cell_index(m.doors_[i].pos)] = static_cast<int>(i);
  }
  return m;
}

std::string serialize_map(const GridMap& m) {
  std::ostringstream os;
  os << m.width() << ' ' << m.height() << '\n';
  std::vector<std::string> door_lines;
  for (int r = 0; r < m.height(); ++r) {
    for (int c = 0; c < m.width(); ++c) {
      Pos p{r, c};
      char ch = '.';
      switch (m.terrain(p)) {
        case Terrain::kWall: ch = '#'; break;
        case Terrain::kPit: ch = '^'; break;
        case Terrain::kGoal: ch = 'G'; break;
        case Terrain::kFloor: ch = '.'; break;
      }
      if (p == m.start()) ch = 'S';
      if (int op = m.operator_at(p); op >= 0) ch = m.operators()[op].symbol;
      if (int d = m.door_at(p); d >= 0) {
        const Operator& o = m.operators()[m.doors()[d].op];
        if (o.kind == OperatorKind::kKey) {
          ch = static_cast<char>(std::toupper(static_cast<unsigned char>(o.symbol)));
        } else {
          ch = '+';
          door_lines.push_back("door " + std::string(1, o.symbol) + " " +
                               std::to_string(r) + " " + std::to_string(c));
        }
      }
      os << ch;
    }
    os << '\n';
  }
  for (const auto& l : door_lines) os << l << '\n';
  return os.str();
}

std::string_view canonical_map_text() { return kCanonicalMap; }

const GridMap& canonical_map() {
  static const GridMap map = load_map(kCanonicalMap);
  return map;
}

GridState initial_state(const GridMap& map) { return GridState{map.start(), 0, false, 0.0}; }

std::set<char> held_keys(const GridMap& map, const GridState& s) {
  std::set<char> out;
  for (std::size_t i = 0; i < map.operators().size(); ++i) {
    const auto& o = map.operators()[i];
    if (o.kind == OperatorKind::kKey && s.used(static_cast<int>(i))) out.insert(o.symbol);
  }
  return out;
}

std::set<char> pressed_switches(const GridMap& map, const GridState& s) {
  std::set<char> out;
  for (std::size_t i = 0; i < map.operators().size(); ++i) {
    const auto& o = map.operators()[i];
    if (o.kind == OperatorKind::kSwitch && s.used(static_cast<int>(i))) {
      out.insert(o.symbol);
    }
  }
  return out;
}

bool door_open(const GridMap& map, const GridState& s, int door) {
  return s.used(map.doors()[door].op);
}

std::set<Pos> open_doors(const GridMap& map, const GridState& s) {
  std::set<Pos> out;
  for (std::size_t d = 0; d < map.doors().size(); ++d) {
    if (door_open(map, s, static_cast<int>(d))) out.insert(map.doors()[d].pos);
  }
  return out;
}

bool passable(const GridMap& map, const GridState& s, Pos p) {
  if (!map.in_bounds(p) || map.terrain(p) == Terrain::kWall) return false;
  int d = map.door_at(p);
  return d < 0 || door_open(map, s, d);
}

StepOutcome step(const GridMap& map, const GridState& s, Action a) {
  if (s.terminal) throw ContractError("step called on a terminal state");

  StepOutcome out;
  out.next = s;
  out.reward = kStepReward;

  if (is_movement(a)) {
    Pos d = delta(a);
    Pos target{s.pos.row + d.row, s.pos.col + d.col};
    if (passable(map, s, target)) {
      out.succeeded = true;
      out.next.pos = target;
      switch (map.terrain(target)) {
        case Terrain::kGoal:
          out.reward = kGoalReward;
          out.terminal = true;
          break;
        case Terrain::kPit:
          out.reward = kPitReward;
          out.terminal = true;
          break;
        default:
          break;
      }
    }
  } else {
    int op = map.operator_at(s.pos);
    if (op >= 0) {
      const Operator& o = map.operators()[op];
      bool key = o.kind == OperatorKind::kKey;
      // A picked-up key has left the cell; a pressed switch stays put.
      if (!(key && s.used(op))) {
        out.object = std::string(key ? kKeyLabel : kSwitchLabel);
      }
      bool matches = key ? a == Action::kPickup : a == Action::kPress;
      if (matches && !s.used(op)) {
        out.succeeded = true;
        out.next.used_ops |= 1u << op;
      }
    }
  }

  out.next.terminal = out.terminal;
  out.next.cumulative_reward = s.cumulative_reward + out.reward;
  return out;
}

LabelSet interactable_objects(const GridMap& map, const GridState& s) {
  LabelSet out;
  int op = map.operator_at(s.pos);
  if (op < 0) return out;
  const Operator& o = map.operators()[op];
  if (o.kind == OperatorKind::kKey) {
    if (!s.used(op)) out.emplace(kKeyLabel);
  } else {
    out.emplace(kSwitchLabel);
  }
  return out;
}

std::string state_key_string(const GridMap& map, const GridState& s) {
  std::string out = std::to_string(s.pos.row) + "," + std::to_string(s.pos.col) + "|";
  for (std::size_t i = 0; i < map.operators().size(); ++i) {
    out += s.used(static_cast<int>(i)) ? '1' : '0';
  }
  return out;
}

ObservationLog record_log(const GridMap& map, const std::vector<Action>& trajectory,
                          RecordOptions options) {
  ObservationLog log;
  GridState s = initial_state(map);
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    if (s.terminal) {
      throw ValidationError("trajectory continues past a terminal state at index " +
                            std::to_string(i));
    }
    Action a = trajectory[i];
    StepOutcome out = step(map, s, a);
    if (is_movement(a)) {
      if (options.include_movement) {
        log.push_back({{std::string(kAgentObject)}, {std::string(label(a))}});
      }
    } else if (out.succeeded && out.object) {
      log.push_back({{*out.object}, {std::string(label(a))}});
    }
    s = out.next;
  }
  return log;
}

GoalDistances::GoalDistances(const GridMap& map) : map_(&map) {
  const std::size_t masks = std::size_t{1} << map.operators().size();
  const std::size_t cells = static_cast<std::size_t>(map.width()) * map.height();
  dist_.assign(cells * masks, -1);

  // Bellman relaxation; the space is tiny and every edge has unit cost.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int r = 0; r < map.height(); ++r) {
      for (int c = 0; c < map.width(); ++c) {
        Pos p{r, c};
        Terrain t = map.terrain(p);
        if (t == Terrain::kWall || t == Terrain::kGoal || t == Terrain::kPit) continue;
        for (std::uint32_t mask = 0; mask < masks; ++mask) {
          GridState s{p, mask, false, 0.0};
          if (!passable(map, s, p)) continue;
          int best = -1;
          for (Action a : kAllActions) {
            StepOutcome o = step(map, s, a);
            if (!o.succeeded) continue;
            int d;
            if (o.terminal) {
              if (map.terrain(o.next.pos) != Terrain::kGoal) continue;
              d = 1;
            } else {
              int nd = dist_[index(o.next)];
              if (nd < 0) continue;
              d = nd + 1;
            }
            if (best < 0 || d < best) best = d;
          }
          int& slot = dist_[index(s)];
          if (best >= 0 && (slot < 0 || best < slot)) {
            slot = best;
            changed = true;
          }
        }
      }
    }
  }
}

std::size_t GoalDistances::index(const GridState& s) const {
  const std::size_t masks = std::size_t{1} << map_->operators().size();
  return static_cast<std::size_t>(map_->cell_index(s.pos)) * masks + s.used_ops;
}

std::optional<int> GoalDistances::distance(const GridState& s) const {
  if (s.terminal) return map_->terrain(s.pos) == Terrain::kGoal ? std::optional<int>(0)
                                                                 : std::nullopt;
  int d = dist_[index(s)];
  if (d < 0) return std::nullopt;
  return d;
}

std::vector<Action> GoalDistances::optimal_actions(const GridState& s) const {
  std::vector<Action> out;
  auto here = distance(s);
  if (!here || *here == 0) return out;
  for (Action a : kAllActions) {
    StepOutcome o = step(*map_, s, a);
    if (!o.succeeded) continue;
    auto there = distance(o.next);
    if (there && *there == *here - 1) out.push_back(a);
  }
  return out;
}

std::optional<std::vector<Action>> shortest_path(const GridMap& map) {
  GoalDistances dist(map);
  GridState s = initial_state(map);
  if (!dist.distance(s)) return std::nullopt;
  std::vector<Action> path;
  while (!s.terminal) {
    Action a = dist.optimal_actions(s).front();
    path.push_back(a);
    s = step(map, s, a).next;
  }
  return path;
}

std::size_t reachable_state_count(const GridMap& map) {
  std::set<StateKey> seen;
  std::deque<GridState> frontier{initial_state(map)};
  seen.insert(state_key(map, frontier.front()));
  while (!frontier.empty()) {
    GridState s = frontier.front();
    frontier.pop_front();
    if (s.terminal) continue;
    for (Action a : kAllActions) {
      GridState n = step(map, s, a).next;
      n.cumulative_reward = 0.0;
      if (seen.insert(state_key(map, n)).second) frontier.push_back(n);
    }
  }
  return seen.size();
}

}  // namespace acr::lightworld
