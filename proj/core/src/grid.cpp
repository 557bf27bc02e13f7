#include "ier/grid.hpp"

#include <sstream>

namespace ier {

namespace {

const char* kFrozenLake8x8 =
    "SFFFFFFF\n"
    "FFFFFFFF\n"
    "FFFHFFFF\n"
    "FFFFFHFF\n"
    "FFFHFFFF\n"
    "FHHFFFHF\n"
    "FHFFHFHF\n"
    "FFFHFFFG\n";

}  // namespace

int GridMap::start_state() const {
  for (int s = 0; s < state_count(); ++s) {
    if (tile(s) == 'S') return s;
  }
  throw MapParseError("map has no 'S' tile");
}

int GridMap::hole_count() const {
  int n = 0;
  for (int s = 0; s < state_count(); ++s) {
    if (tile(s) == 'H') ++n;
  }
  return n;
}

GridMap parse_map(const std::string& text) {
  GridMap map;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (map.width == 0) {
      map.width = static_cast<int>(line.size());
    } else if (static_cast<int>(line.size()) != map.width) {
      throw MapParseError("map parse error at line " + std::to_string(line_no) +
                          ": row length " + std::to_string(line.size()) +
                          " != " + std::to_string(map.width));
    }
    for (std::size_t col = 0; col < line.size(); ++col) {
      const char c = line[col];
      if (c != 'S' && c != 'F' && c != 'H' && c != 'G') {
        throw MapParseError("map parse error at line " + std::to_string(line_no) +
                            ", column " + std::to_string(col + 1) +
                            ": illegal character '" + std::string(1, c) + "'");
      }
    }
    map.rows.push_back(line);
  }
  map.height = static_cast<int>(map.rows.size());
  if (map.height == 0) throw MapParseError("empty map");

  int starts = 0, goals = 0;
  for (int s = 0; s < map.state_count(); ++s) {
    if (map.tile(s) == 'S') ++starts;
    if (map.tile(s) == 'G') ++goals;
  }
  if (starts == 0) throw MapParseError("map has no 'S' tile");
  if (starts > 1) throw MapParseError("map has more than one 'S' tile");
  if (goals == 0) throw MapParseError("map has no 'G' tile");
  return map;
}

const GridMap& builtin_map(const std::string& name) {
  static const GridMap frozenlake = parse_map(kFrozenLake8x8);
  if (name == "frozenlake8x8") return frozenlake;
  throw MapParseError("unknown built-in map '" + name + "'");
}

void EnvConfig::validate() const {
  if (map.state_count() == 0) throw MapParseError("empty map");
  if (slip < 0.0 || slip > 1.0)
    throw std::invalid_argument("slip must be in [0,1]");
  if (max_episode_steps < 1)
    throw std::invalid_argument("max_episode_steps must be >= 1");
}

EnvState reset(const EnvConfig& config) {
  config.validate();
  return EnvState{config.map.start_state(), 0, false};
}

int resolve_move(const GridMap& map, int s, Action action) {
  int row = s / map.width;
  int col = s % map.width;
  switch (action) {
    case Action::North: row = std::max(row - 1, 0); break;
    case Action::East: col = std::min(col + 1, map.width - 1); break;
    case Action::South: row = std::min(row + 1, map.height - 1); break;
    case Action::West: col = std::max(col - 1, 0); break;
  }
  return row * map.width + col;
}

double tile_reward(const EnvConfig& config, int dest) {
  switch (config.map.tile(dest)) {
    case 'H': return config.hole_reward;
    case 'G': return config.goal_reward;
    default: return config.step_reward;
  }
}

StepResult step(const EnvConfig& config, const EnvState& state, Action action,
                std::mt19937_64& rng) {
  if (state.terminal) throw std::logic_error("step on terminal state");

  Action executed = action;
  if (config.slip > 0.0) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double u = unit(rng);
    if (u >= 1.0 - config.slip) {
      executed = (u < 1.0 - config.slip / 2.0) ? rotate_cw(action)
                                               : rotate_ccw(action);
    }
  }

  StepResult out;
  out.state.position = resolve_move(config.map, state.position, executed);
  out.state.steps_taken = state.steps_taken + 1;
  out.reward = tile_reward(config, out.state.position);
  out.state.terminal = config.map.is_terminal_tile(out.state.position) ||
                       out.state.steps_taken >= config.max_episode_steps;
  out.terminal = out.state.terminal;
  return out;
}

double expected_reward(const EnvConfig& config, int s, Action action) {
  if (config.map.is_terminal_tile(s))
    throw std::logic_error("expected_reward on terminal state");
  const double r_int =
      tile_reward(config, resolve_move(config.map, s, action));
  const double r_right =
      tile_reward(config, resolve_move(config.map, s, rotate_cw(action)));
  const double r_left =
      tile_reward(config, resolve_move(config.map, s, rotate_ccw(action)));
  return config.slip / 2.0 * r_right + config.slip / 2.0 * r_left +
         (1.0 - config.slip) * r_int;
}

std::vector<int> nonterminal_states(const GridMap& map) {
  std::vector<int> out;
  for (int s = 0; s < map.state_count(); ++s) {
    if (!map.is_terminal_tile(s)) out.push_back(s);
  }
  return out;
}

}  // namespace ier
