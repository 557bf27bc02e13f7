#include "ier/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace ier {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid number for '" + key + "': " + value);
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer for '" + key + "': " + value);
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("invalid boolean for '" + key + "': " + value);
}

std::string map_to_inline(const GridMap& map) {
  std::string out;
  for (std::size_t i = 0; i < map.rows.size(); ++i) {
    if (i > 0) out += '/';
    out += map.rows[i];
  }
  return out;
}

GridMap map_from_inline(const std::string& value) {
  std::string text = value;
  for (char& c : text)
    if (c == '/') c = '\n';
  return parse_map(text);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text) {
  ExperimentConfig cfg;
  cfg.env.map = builtin_map("frozenlake8x8");

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "label") cfg.label = value;
    else if (key == "episodes") cfg.episodes = parse_int(key, value);
    else if (key == "repetitions")
      cfg.repetitions = static_cast<int>(parse_int(key, value));
    else if (key == "base_seed")
      cfg.base_seed = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "env.map_name") cfg.env.map = builtin_map(value);
    else if (key == "env.map") cfg.env.map = map_from_inline(value);
    else if (key == "env.map_file") {
      std::ifstream f(value);
      if (!f) throw ConfigError("cannot open map file '" + value + "'");
      std::stringstream buf;
      buf << f.rdbuf();
      cfg.env.map = parse_map(buf.str());
    } else if (key == "env.slip") cfg.env.slip = parse_double(key, value);
    else if (key == "env.hole_reward")
      cfg.env.hole_reward = parse_double(key, value);
    else if (key == "env.goal_reward")
      cfg.env.goal_reward = parse_double(key, value);
    else if (key == "env.step_reward")
      cfg.env.step_reward = parse_double(key, value);
    else if (key == "env.max_episode_steps")
      cfg.env.max_episode_steps = static_cast<int>(parse_int(key, value));
    else if (key == "agent.gamma") cfg.agent.gamma = parse_double(key, value);
    else if (key == "agent.epsilon_start")
      cfg.agent.epsilon_start = parse_double(key, value);
    else if (key == "agent.epsilon_min")
      cfg.agent.epsilon_min = parse_double(key, value);
    else if (key == "agent.t_exploration")
      cfg.agent.t_exploration = parse_int(key, value);
    else if (key == "agent.target_sync_interval")
      cfg.agent.target_sync_interval = parse_int(key, value);
    else if (key == "agent.minibatch_size")
      cfg.agent.minibatch_size = static_cast<int>(parse_int(key, value));
    else if (key == "agent.learn_start_size")
      cfg.agent.learn_start_size = parse_int(key, value);
    else if (key == "agent.learning_rate")
      cfg.agent.learning_rate = parse_double(key, value);
    else if (key == "agent.optimizer") {
      if (value == "adam") cfg.agent.optimizer = OptimizerKind::Adam;
      else if (value == "sgd") cfg.agent.optimizer = OptimizerKind::Sgd;
      else throw ConfigError("invalid optimizer '" + value + "'");
    } else if (key == "agent.loss") {
      if (value == "mse") cfg.agent.loss = LossKind::MeanSquared;
      else if (value == "huber") cfg.agent.loss = LossKind::Huber;
      else throw ConfigError("invalid loss '" + value + "'");
    } else if (key == "replay.s_er")
      cfg.replay.s_er = static_cast<std::size_t>(parse_int(key, value));
    else if (key == "replay.s_ier")
      cfg.replay.s_ier = static_cast<std::size_t>(parse_int(key, value));
    else if (key == "replay.s_synthetic")
      cfg.replay.s_synthetic = static_cast<std::size_t>(parse_int(key, value));
    else if (key == "replay.mode") {
      if (value == "vanilla") cfg.mode = ReplayMode::Vanilla;
      else if (value == "interpolated") cfg.mode = ReplayMode::Interpolated;
      else throw ConfigError("invalid replay.mode '" + value + "'");
    } else if (key == "interpolation.enabled")
      cfg.interpolation.enabled = parse_bool(key, value);
    else if (key == "interpolation.c_start_interpolation")
      cfg.interpolation.c_start_interpolation = parse_int(key, value);
    else
      throw ConfigError("unknown config key '" + key + "'");
  }
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_experiment_config(buf.str());
}

std::string serialize_experiment_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "label = " << cfg.label << "\n";
  out << "episodes = " << cfg.episodes << "\n";
  out << "repetitions = " << cfg.repetitions << "\n";
  out << "base_seed = " << cfg.base_seed << "\n";
  if (cfg.env.map.rows == builtin_map("frozenlake8x8").rows)
    out << "env.map_name = frozenlake8x8\n";
  else
    out << "env.map = " << map_to_inline(cfg.env.map) << "\n";
  out << "env.slip = " << format_double(cfg.env.slip) << "\n";
  out << "env.hole_reward = " << format_double(cfg.env.hole_reward) << "\n";
  out << "env.goal_reward = " << format_double(cfg.env.goal_reward) << "\n";
  out << "env.step_reward = " << format_double(cfg.env.step_reward) << "\n";
  out << "env.max_episode_steps = " << cfg.env.max_episode_steps << "\n";
  out << "agent.gamma = " << format_double(cfg.agent.gamma) << "\n";
  out << "agent.epsilon_start = " << format_double(cfg.agent.epsilon_start)
      << "\n";
  out << "agent.epsilon_min = " << format_double(cfg.agent.epsilon_min) << "\n";
  out << "agent.t_exploration = " << cfg.agent.t_exploration << "\n";
  out << "agent.target_sync_interval = " << cfg.agent.target_sync_interval
      << "\n";
  out << "agent.minibatch_size = " << cfg.agent.minibatch_size << "\n";
  out << "agent.learn_start_size = " << cfg.agent.learn_start_size << "\n";
  out << "agent.learning_rate = " << format_double(cfg.agent.learning_rate)
      << "\n";
  out << "agent.optimizer = "
      << (cfg.agent.optimizer == OptimizerKind::Adam ? "adam" : "sgd") << "\n";
  out << "agent.loss = "
      << (cfg.agent.loss == LossKind::MeanSquared ? "mse" : "huber") << "\n";
  out << "replay.s_er = " << cfg.replay.s_er << "\n";
  out << "replay.s_ier = " << cfg.replay.s_ier << "\n";
  out << "replay.s_synthetic = " << cfg.replay.s_synthetic << "\n";
  out << "replay.mode = "
      << (cfg.mode == ReplayMode::Vanilla ? "vanilla" : "interpolated") << "\n";
  out << "interpolation.enabled = "
      << (cfg.interpolation.enabled ? "true" : "false") << "\n";
  out << "interpolation.c_start_interpolation = "
      << cfg.interpolation.c_start_interpolation << "\n";
  return out.str();
}

std::string config_hash(const ExperimentConfig& cfg) {
  const std::string text = serialize_experiment_config(cfg);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace ier
