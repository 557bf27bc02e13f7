#include "ier/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ier {

const char* kRunsCsvHeader =
    "run_seed,episode,reward,moving_avg_100,epsilon,real_buffer_size,"
    "synthetic_buffer_size";

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::string runs_csv(const std::vector<RunResult>& results) {
  std::ostringstream out;
  out << kRunsCsvHeader << "\n";
  for (const RunResult& r : results) {
    if (r.failed) continue;
    for (std::size_t ep = 0; ep < r.episode_rewards.size(); ++ep) {
      out << r.run_seed << ',' << ep << ',' << fmt(r.episode_rewards[ep])
          << ',' << fmt(r.moving_avg_100[ep]) << ',' << fmt(r.epsilons[ep])
          << ',' << r.buffer_sizes[ep].first << ','
          << r.buffer_sizes[ep].second << "\n";
    }
  }
  return out.str();
}

std::string aggregate_csv(const AggregateResult& agg) {
  std::ostringstream out;
  out << "episode,mean,sd\n";
  for (std::size_t ep = 0; ep < agg.episode_mean.size(); ++ep)
    out << ep << ',' << fmt(agg.episode_mean[ep]) << ','
        << fmt(agg.episode_sd[ep]) << "\n";
  return out.str();
}

std::vector<ParsedRun> parse_runs_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kRunsCsvHeader)
    throw std::runtime_error("runs.csv header mismatch");

  std::vector<ParsedRun> runs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 7)
      throw std::runtime_error("runs.csv row has " +
                               std::to_string(fields.size()) + " fields");
    const std::uint64_t seed = std::stoull(fields[0]);
    if (runs.empty() || runs.back().run_seed != seed) {
      runs.push_back(ParsedRun{seed, {}, {}});
    }
    runs.back().rewards.push_back(std::stod(fields[2]));
    runs.back().moving_avg_100.push_back(std::stod(fields[3]));
  }
  return runs;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

}  // namespace ier
