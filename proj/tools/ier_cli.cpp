// Command-line front end: run experiments, execute the built-in study grid,
// compare result CSVs, and sanity-check environment dynamics.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ier/config.hpp"
#include "ier/csv.hpp"
#include "ier/experiment.hpp"
#include "ier/rng.hpp"
#include "ier/stats.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kArtifactVersion = "0.1.0";
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct RunOptions {
  std::string config_path;
  std::string out_dir;
  std::int64_t seed = -1;
  int parallelism = 1;
  std::int64_t episodes = -1;
  bool quiet = false;
};

void write_experiment_outputs(const ier::ExperimentConfig& cfg,
                              const std::vector<ier::RunResult>& results,
                              const fs::path& out_dir, bool quiet) {
  fs::create_directories(out_dir);
  ier::write_file((out_dir / "runs.csv").string(), ier::runs_csv(results));
  ier::write_file((out_dir / "aggregate.csv").string(),
                  ier::aggregate_csv(ier::aggregate(results)));

  json manifest;
  manifest["config_hash"] = ier::config_hash(cfg);
  manifest["base_seed"] = cfg.base_seed;
  manifest["repetitions"] = cfg.repetitions;
  manifest["artifact_version"] = kArtifactVersion;
  manifest["config"] = ier::serialize_experiment_config(cfg);
  json seeds = json::array();
  for (const auto& r : results) seeds.push_back(r.run_seed);
  manifest["run_seeds"] = seeds;
  ier::write_file((out_dir / "manifest.json").string(), manifest.dump(2) + "\n");

  int failed = 0;
  for (const auto& r : results)
    if (r.failed) {
      ++failed;
      std::cerr << cfg.label << ": repetition with seed " << r.run_seed
                << " failed: " << r.error << "\n";
    }
  if (!quiet) {
    const auto agg = ier::aggregate(results);
    std::cout << cfg.label << ": overall mean " << agg.overall_mean << " (sd "
              << agg.overall_sd << ", " << results.size() - failed << "/"
              << results.size() << " repetitions)\n";
  }
  if (failed > 0)
    throw std::runtime_error(std::to_string(failed) + " repetitions failed");
}

int cmd_run(const RunOptions& opt) {
  ier::ExperimentConfig cfg;
  try {
    cfg = ier::load_experiment_config(opt.config_path);
    if (opt.seed >= 0) cfg.base_seed = static_cast<std::uint64_t>(opt.seed);
    if (opt.episodes > 0) cfg.episodes = opt.episodes;
    cfg.validate();
  } catch (const std::exception& ex) {
    std::cerr << "config error: " << ex.what() << "\n";
    return kExitUsage;
  }
  try {
    const auto results = ier::run_experiment(cfg, opt.parallelism);
    write_experiment_outputs(cfg, results, opt.out_dir, opt.quiet);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}

int cmd_grid(const std::string& out_dir, int parallelism, std::int64_t seed,
             bool quiet) {
  auto grid = ier::builtin_grid();
  int failures = 0;
  for (auto& cfg : grid) {
    if (seed >= 0) cfg.base_seed = static_cast<std::uint64_t>(seed);
    try {
      const auto results = ier::run_experiment(cfg, parallelism);
      write_experiment_outputs(cfg, results, fs::path(out_dir) / cfg.label,
                               quiet);
    } catch (const std::exception& ex) {
      std::cerr << cfg.label << ": " << ex.what() << "\n";
      ++failures;
    }
  }
  return failures == 0 ? 0 : kExitRuntime;
}

struct ComparisonRow {
  std::string label;
  double mean = 0.0;
  double sd = 0.0;
  double p = std::nan("");
  bool significant = false;
};

ComparisonRow summarize(const std::string& path,
                        std::vector<double>* per_rep_means) {
  const auto runs = ier::parse_runs_csv(ier::read_file(path));
  if (runs.empty()) throw std::runtime_error("no rows in '" + path + "'");
  std::vector<double> pooled_avg;
  for (const auto& run : runs) {
    pooled_avg.insert(pooled_avg.end(), run.moving_avg_100.begin(),
                      run.moving_avg_100.end());
    per_rep_means->push_back(ier::descriptive(run.rewards).mean);
  }
  const auto d = ier::descriptive(pooled_avg);
  ComparisonRow row;
  row.label = fs::path(path).parent_path().filename().string();
  if (row.label.empty()) row.label = path;
  row.mean = d.mean;
  row.sd = d.sd;
  return row;
}

int cmd_compare(const std::string& baseline_path,
                const std::vector<std::string>& variant_paths,
                const std::string& out_path) {
  std::vector<ComparisonRow> rows;
  try {
    std::vector<double> baseline_means;
    rows.push_back(summarize(baseline_path, &baseline_means));
    for (const auto& path : variant_paths) {
      std::vector<double> means;
      ComparisonRow row = summarize(path, &means);
      const auto mw = ier::mann_whitney_u(means, baseline_means,
                                          ier::Alternative::TwoSided);
      row.p = mw.p_value;
      row.significant = mw.p_value < 0.05;
      rows.push_back(row);
    }
  } catch (const std::exception& ex) {
    std::cerr << "compare error: " << ex.what() << "\n";
    return kExitUsage;
  }

  std::string csv = "label,mean,sd,p\n";
  std::printf("%-32s %10s %10s %12s\n", "label", "mean", "sd", "p");
  for (const auto& row : rows) {
    char pbuf[32] = "";
    if (!std::isnan(row.p)) std::snprintf(pbuf, sizeof(pbuf), "%.4g", row.p);
    std::printf("%-32s %10.4f %10.4f %12s%s\n", row.label.c_str(), row.mean,
                row.sd, pbuf, row.significant ? " *" : "");
    char line[160];
    std::snprintf(line, sizeof(line), "%s,%.17g,%.17g,%s\n", row.label.c_str(),
                  row.mean, row.sd, pbuf);
    csv += line;
  }
  if (!out_path.empty()) ier::write_file(out_path, csv);
  return 0;
}

int cmd_env_check(double slip, long long samples, const std::string& map_name,
                  std::uint64_t seed, bool quiet) {
  ier::EnvConfig env;
  env.map = ier::builtin_map(map_name);
  env.slip = slip;
  env.validate();
  std::mt19937_64 rng(ier::splitmix64(seed));

  bool all_ok = true;
  if (!quiet) std::printf("%6s %6s %12s %12s %10s\n", "state", "action",
                          "empirical", "analytic", "gap");
  for (int s : ier::nonterminal_states(env.map)) {
    for (int a = 0; a < ier::kNumActions; ++a) {
      const auto action = static_cast<ier::Action>(a);
      double sum = 0.0, sum_sq = 0.0;
      const ier::EnvState state{s, 0, false};
      for (long long i = 0; i < samples; ++i) {
        const double r = ier::step(env, state, action, rng).reward;
        sum += r;
        sum_sq += r * r;
      }
      const double n = static_cast<double>(samples);
      const double mean = sum / n;
      const double var = std::max(0.0, (sum_sq - n * mean * mean) /
                                           std::max(1.0, n - 1.0));
      const double se = std::sqrt(var / n);
      const double analytic = ier::expected_reward(env, s, action);
      const double gap = std::abs(mean - analytic);
      const bool ok = gap <= 3.0 * se + 1e-12;
      all_ok = all_ok && ok;
      if (!quiet)
        std::printf("%6d %6d %12.6f %12.6f %10.6f%s\n", s, a, mean, analytic,
                    gap, ok ? "" : "  FAIL");
    }
  }
  std::printf("env-check %s (slip=%g, samples=%lld)\n",
              all_ok ? "passed" : "FAILED", slip, samples);
  return all_ok ? 0 : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interpolated experience replay experiment runner"};
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run = app.add_subcommand("run", "Execute one experiment config");
  run->add_option("--config", run_opt.config_path, "experiment config file")
      ->required();
  run->add_option("--out", run_opt.out_dir, "output directory")->required();
  run->add_option("--seed", run_opt.seed, "base seed override");
  run->add_option("--parallelism", run_opt.parallelism, "worker threads");
  run->add_option("--episodes", run_opt.episodes, "episode count override");
  run->add_flag("--quiet", run_opt.quiet, "suppress progress output");

  std::string grid_out;
  int grid_parallelism = 1;
  std::int64_t grid_seed = -1;
  bool grid_quiet = false;
  auto* grid = app.add_subcommand("grid", "Run the built-in study grid");
  grid->add_option("--out", grid_out, "output directory")->required();
  grid->add_option("--parallelism", grid_parallelism, "worker threads");
  grid->add_option("--seed", grid_seed, "base seed override");
  grid->add_flag("--quiet", grid_quiet, "suppress progress output");

  std::string baseline_path, compare_out;
  std::vector<std::string> variant_paths;
  auto* compare =
      app.add_subcommand("compare", "Baseline-vs-variant significance report");
  compare->add_option("--baseline", baseline_path, "baseline runs.csv")
      ->required();
  compare->add_option("variants", variant_paths, "variant runs.csv files")
      ->required();
  compare->add_option("--out", compare_out, "also write the report as CSV");

  double check_slip = 2.0 / 3.0;
  long long check_samples = 100000;
  std::string check_map = "frozenlake8x8";
  std::uint64_t check_seed = 1;
  bool check_quiet = false;
  auto* check = app.add_subcommand(
      "env-check", "Empirical vs analytic expected rewards per (s,a)");
  check->add_option("--slip", check_slip, "slip probability");
  check->add_option("--samples", check_samples, "samples per state-action")
      ->check(CLI::PositiveNumber);
  check->add_option("--map", check_map, "built-in map name");
  check->add_option("--seed", check_seed, "RNG seed");
  check->add_flag("--quiet", check_quiet, "summary line only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(run_opt);
    if (grid->parsed())
      return cmd_grid(grid_out, grid_parallelism, grid_seed, grid_quiet);
    if (compare->parsed())
      return cmd_compare(baseline_path, variant_paths, compare_out);
    if (check->parsed())
      return cmd_env_check(check_slip, check_samples, check_map, check_seed,
                           check_quiet);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
