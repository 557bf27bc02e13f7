#ifndef IER_CSV_HPP
#define IER_CSV_HPP

#include <string>
#include <vector>

#include "ier/experiment.hpp"

namespace ier {

/// runs.csv schema, one row per (repetition, episode):
/// run_seed,episode,reward,moving_avg_100,epsilon,real_buffer_size,synthetic_buffer_size
extern const char* kRunsCsvHeader;

std::string runs_csv(const std::vector<RunResult>& results);

/// aggregate.csv: episode,mean,sd over the moving-average series.
std::string aggregate_csv(const AggregateResult& agg);

/// Parsed view of a runs.csv, grouped per repetition in file order.
struct ParsedRun {
  std::uint64_t run_seed = 0;
  std::vector<double> rewards;
  std::vector<double> moving_avg_100;
};

/// Throws std::runtime_error on header or field mismatches.
std::vector<ParsedRun> parse_runs_csv(const std::string& text);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace ier

#endif
