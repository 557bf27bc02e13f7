#ifndef IER_GRID_HPP
#define IER_GRID_HPP

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace ier {

/// Cardinal actions, encoded 0..3.
enum class Action : int { North = 0, East = 1, South = 2, West = 3 };

inline constexpr int kNumActions = 4;

/// Thrown when a map description cannot be parsed or is inconsistent.
class MapParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rectangular tile grid over the alphabet {S,F,H,G}.
struct GridMap {
  std::vector<std::string> rows;
  int width = 0;
  int height = 0;

  int state_count() const { return width * height; }
  char tile(int s) const { return rows[s / width][s % width]; }
  bool is_terminal_tile(int s) const {
    const char t = tile(s);
    return t == 'H' || t == 'G';
  }
  int start_state() const;
  int hole_count() const;
};

/// Parses a newline-separated map. Throws MapParseError with line/column
/// context on ragged rows, illegal characters or missing S/G tiles.
GridMap parse_map(const std::string& text);

/// Named built-in maps; currently only "frozenlake8x8".
const GridMap& builtin_map(const std::string& name);

struct EnvConfig {
  GridMap map;
  double slip = 2.0 / 3.0;
  double hole_reward = -1.0;
  double goal_reward = 1.0;
  double step_reward = 0.0;
  int max_episode_steps = 200;

  void validate() const;
};

struct EnvState {
  int position = 0;
  int steps_taken = 0;
  bool terminal = false;
};

struct StepResult {
  EnvState state;
  double reward = 0.0;
  bool terminal = false;
};

/// Fresh episode at the 'S' tile.
EnvState reset(const EnvConfig& config);

/// One transition. The intended action executes with probability 1-slip,
/// each perpendicular neighbor with slip/2. Off-grid moves keep the
/// position. Throws std::logic_error when called on a terminal state.
StepResult step(const EnvConfig& config, const EnvState& state, Action action,
                std::mt19937_64& rng);

/// Destination of a deterministic move, clamped at the grid edge.
int resolve_move(const GridMap& map, int s, Action action);

/// Immediate reward for landing on state `dest`.
double tile_reward(const EnvConfig& config, int dest);

/// Probability-weighted one-step reward:
/// slip/2 * r_right + slip/2 * r_left + (1-slip) * r_intended.
double expected_reward(const EnvConfig& config, int s, Action action);

/// All non-terminal (S or F) state indices in ascending order.
std::vector<int> nonterminal_states(const GridMap& map);

inline Action rotate_cw(Action a) {
  return static_cast<Action>((static_cast<int>(a) + 1) % kNumActions);
}
inline Action rotate_ccw(Action a) {
  return static_cast<Action>((static_cast<int>(a) + 3) % kNumActions);
}

}  // namespace ier

#endif
