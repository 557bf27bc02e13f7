// Acceptance suite: each numbered check prints one PASS/FAIL line.
// Usage: ier_acceptance [criterion-number] [path-to-ier_cli]

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <sys/wait.h>

#include "ier/agent.hpp"
#include "ier/csv.hpp"
#include "ier/experiment.hpp"
#include "ier/interpolation.hpp"
#include "ier/rng.hpp"
#include "ier/stats.hpp"

using namespace ier;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion,
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

Experience real_exp(int s, int a, double r, int next) {
  return Experience{s, a, r, next, false, false};
}

// ---------------------------------------------------------------------------
// 1. Directional reproduction of the experiment-1 comparison: every IER
//    variant beats the baseline mean, Mann-Whitney (greater) p < 0.05 for at
//    least 5 of 6, and all means within +-0.15 of the published anchors.
void criterion_1() {
  const std::map<std::string, double> anchors = {
      {"exp1_baseline", 0.3772},      {"exp1_syn20000_cs250", 0.43},
      {"exp1_syn20000_cs500", 0.4324}, {"exp1_syn20000_cs1000", 0.4416},
      {"exp1_syn100000_cs250", 0.4287}, {"exp1_syn100000_cs500", 0.4168},
      {"exp1_syn100000_cs1000", 0.4261}};

  const int parallelism =
      std::max(2u, std::thread::hardware_concurrency());
  double baseline_mean = 0.0;
  std::vector<double> baseline_rep_means;
  struct Variant {
    std::string label;
    double mean;
    std::vector<double> rep_means;
  };
  std::vector<Variant> variants;
  bool anchors_ok = true;

  for (const ExperimentConfig& cfg : builtin_grid()) {
    if (cfg.agent.t_exploration != 500) continue;
    const auto results = run_experiment(cfg, parallelism);
    std::vector<double> rep_means;
    for (const auto& r : results) {
      if (r.failed) continue;
      rep_means.push_back(r.overall_mean);
    }
    const double mean = aggregate(results).overall_mean;
    const double anchor = anchors.at(cfg.label);
    const bool within = std::abs(mean - anchor) <= 0.15;
    anchors_ok = anchors_ok && within;
    std::printf("  %-24s mean %.4f (published %.4f)%s\n", cfg.label.c_str(),
                mean, anchor, within ? "" : "  OUT OF RANGE");
    std::fflush(stdout);
    if (!cfg.interpolation.enabled) {
      baseline_mean = mean;
      baseline_rep_means = rep_means;
    } else {
      variants.push_back({cfg.label, mean, rep_means});
    }
  }

  int significant = 0;
  bool all_above = true;
  for (const auto& v : variants) {
    all_above = all_above && (v.mean > baseline_mean);
    const auto mw = mann_whitney_u(v.rep_means, baseline_rep_means,
                                   Alternative::Greater);
    std::printf("  %-24s p(greater) = %.3g\n", v.label.c_str(), mw.p_value);
    if (mw.p_value < 0.05) ++significant;
  }

  char detail[256];
  std::snprintf(detail, sizeof(detail),
                "baseline %.4f, %zu variants above: %s, significant %d/6, "
                "anchors within 0.15: %s",
                baseline_mean, variants.size(), all_above ? "yes" : "no",
                significant, anchors_ok ? "yes" : "no");
  report(1, all_above && significant >= 5 && anchors_ok, detail);
}

// ---------------------------------------------------------------------------
// 2. Dictionary and interpolant equal a brute-force execution of the
//    reward-averaging algorithm on random traces, exactly.
void criterion_2() {
  const GridMap& map = builtin_map("frozenlake8x8");
  const auto candidates = nonterminal_states(map);
  bool ok = true;

  for (int trace_idx = 0; trace_idx < 100 && ok; ++trace_idx) {
    std::mt19937_64 rng(derive_seed(2024, trace_idx));
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    std::uniform_int_distribution<int> action(0, 3);
    std::uniform_int_distribution<int> next(0, map.state_count() - 1);
    std::uniform_int_distribution<int> reward(-1, 1);

    TransitionDict dict;
    std::vector<Experience> trace;
    for (int i = 0; i < 10000; ++i) {
      const Experience e = real_exp(static_cast<int>(candidates[pick(rng)]),
                                    action(rng), reward(rng), next(rng));
      trace.push_back(e);
      dict.update(e);

      if (i % 1000 != 999) continue;
      // brute-force check of every observed (s,a) mean and next-state set
      for (int s = 0; s < map.state_count() && ok; ++s) {
        for (const ActionView& view : dict.lookup(s)) {
          double sum = 0.0;
          long long count = 0;
          std::set<int> nexts;
          for (const Experience& t : trace) {
            if (t.state == s && t.action == view.action) {
              sum += t.reward;
              ++count;
              nexts.insert(t.next_state);
            }
          }
          if (view.reward_avg != sum / static_cast<double>(count) ||
              *view.next_states != nexts) {
            ok = false;
            break;
          }
        }
      }
      // one interpolation against a brute-force pass over the same trace
      InterpolationConfig cfg{0, true};
      const SyntheticBatch batch =
          interpolate_step(dict, i + 1, cfg, map, candidates, rng);
      std::vector<Experience> expected;
      for (int a = 0; a < kNumActions; ++a) {
        double sum = 0.0;
        long long count = 0;
        std::set<int> nexts;
        for (const Experience& t : trace) {
          if (t.state == batch.query_state && t.action == a) {
            sum += t.reward;
            ++count;
            nexts.insert(t.next_state);
          }
        }
        if (count == 0) continue;
        for (int n : nexts)
          expected.push_back(Experience{batch.query_state, a, sum / count, n,
                                        map.is_terminal_tile(n), true});
      }
      if (batch.items != expected) ok = false;
    }
  }
  report(2, ok, "100 traces of 10^4 transitions, exact dictionary and "
                "batch equivalence");
}

// ---------------------------------------------------------------------------
// 3. Batch bounds over 10^6 interpolation calls in a live run.
void criterion_3() {
  EnvConfig env;
  env.map = builtin_map("frozenlake8x8");
  const auto candidates = nonterminal_states(env.map);
  const InterpolationConfig cfg{300, true};

  TransitionDict dict;
  std::map<std::pair<int, int>, std::set<int>> reference;  // independent
  std::mt19937_64 policy_rng(5), env_rng(6), interp_rng(7);
  std::uniform_int_distribution<int> random_action(0, 3);

  bool ok = true;
  long long calls = 0, real_count = 0;
  std::size_t max_batch = 0;
  EnvState state = reset(env);
  while (calls < 1000000) {
    if (state.terminal) state = reset(env);
    const auto a = static_cast<Action>(random_action(policy_rng));
    const StepResult out = step(env, state, a, env_rng);
    const Experience e{state.position, static_cast<int>(a), out.reward,
                       out.state.position, out.state.terminal, false};
    dict.update(e);
    reference[{e.state, e.action}].insert(e.next_state);
    ++real_count;
    state = out.state;

    const SyntheticBatch batch =
        interpolate_step(dict, real_count, cfg, env.map, candidates,
                         interp_rng);
    ++calls;
    max_batch = std::max(max_batch, batch.items.size());
    if (batch.items.size() > 12) ok = false;
    std::map<int, std::set<int>> per_action;
    for (const Experience& se : batch.items)
      per_action[se.action].insert(se.next_state);
    for (const auto& [action, nexts] : per_action) {
      const auto it = reference.find({batch.query_state, action});
      if (it == reference.end() || nexts.size() > it->second.size() ||
          nexts.size() > 3)
        ok = false;
    }
    if (!ok) break;
  }
  char detail[128];
  std::snprintf(detail, sizeof(detail),
                "10^6 calls, max batch %zu (bound 12), per-action counts "
                "bounded by observed next states",
                max_batch);
  report(3, ok, detail);
}

// ---------------------------------------------------------------------------
// 4. Buffer invariants under 10^6 randomized operations, FIFO order checked
//    against plain reference deques.
void criterion_4() {
  const std::size_t s_er = 97, s_ier = 150, s_syn = 70;
  InterpolatedReplay replay(s_er, s_ier, s_syn);
  std::deque<Experience> ref_real, ref_syn;
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> coin(0, 2);

  bool ok = true;
  for (int i = 0; i < 1000000 && ok; ++i) {
    if (coin(rng) == 0) {
      const Experience e = real_exp(i, 0, 0.0, 0);
      replay.store_real(e);
      ref_real.push_back(e);
      while (ref_real.size() > s_er) ref_real.pop_front();
    } else {
      Experience e = real_exp(i, 1, 0.0, 0);
      e.synthetic = true;
      replay.store_synthetic(e);
      ref_syn.push_back(e);
    }
    while (ref_syn.size() >
           std::min(s_syn, s_ier - std::min(ref_real.size(), s_ier)))
      ref_syn.pop_front();

    ok = replay.real_size() <= s_er && replay.size() <= s_ier &&
         replay.synthetic_size() <= s_syn &&
         std::equal(ref_real.begin(), ref_real.end(),
                    replay.real_queue().begin(), replay.real_queue().end()) &&
         std::equal(ref_syn.begin(), ref_syn.end(),
                    replay.synthetic_queue().begin(),
                    replay.synthetic_queue().end());
  }
  report(4, ok, "10^6 store operations, capacities and FIFO order exact");
}

// ---------------------------------------------------------------------------
// 5. Analytic gradient vs central finite differences, 1000 random pairs.
void criterion_5() {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> state(0, 63);
  std::uniform_int_distribution<int> action(0, 3);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  const double h = 1e-5;
  bool ok = true;
  double worst = 0.0;

  for (int trial = 0; trial < 1000 && ok; ++trial) {
    LinearQ q = LinearQ::uniform_init(64, 4, 1.0, rng);
    std::vector<Experience> batch;
    std::vector<double> targets;
    const int n = 1 + trial % 32;
    for (int i = 0; i < n; ++i) {
      batch.push_back(real_exp(state(rng), action(rng), value(rng),
                               state(rng)));
      targets.push_back(value(rng));
    }
    const auto grad = batch_gradient(q, batch, targets);

    auto loss_of = [&](const LinearQ& probe) {
      double loss = 0.0;
      for (std::size_t i = 0; i < batch.size(); ++i) {
        const double r =
            probe.value(batch[i].state, batch[i].action) - targets[i];
        loss += r * r;
      }
      return loss / static_cast<double>(batch.size());
    };

    for (const auto& [idx, g] : grad.weight_grad) {
      LinearQ up = q, down = q;
      up.weights[idx] += h;
      down.weights[idx] -= h;
      const double fd = (loss_of(up) - loss_of(down)) / (2 * h);
      const double rel =
          std::abs(fd - g) / std::max({std::abs(fd), std::abs(g), 1e-8});
      worst = std::max(worst, rel);
      if (rel > 1e-4) ok = false;
    }
    for (int a = 0; a < 4; ++a) {
      if (grad.bias_grad[a] == 0.0) continue;
      LinearQ up = q, down = q;
      up.bias[a] += h;
      down.bias[a] -= h;
      const double fd = (loss_of(up) - loss_of(down)) / (2 * h);
      const double rel = std::abs(fd - grad.bias_grad[a]) /
                         std::max({std::abs(fd), std::abs(grad.bias_grad[a]),
                                   1e-8});
      worst = std::max(worst, rel);
      if (rel > 1e-4) ok = false;
    }
  }
  char detail[128];
  std::snprintf(detail, sizeof(detail),
                "1000 random (weights, batch) pairs, worst relative error "
                "%.2e (bound 1e-4)",
                worst);
  report(5, ok, detail);
}

// ---------------------------------------------------------------------------
// 6. Environment fidelity via the CLI's env-check subcommand.
void criterion_6(const std::string& cli_path) {
  if (cli_path.empty()) {
    report(6, false, "ier_cli path not provided");
    return;
  }
  const std::string cmd = cli_path +
                          " env-check --slip 0.6666666666666666 --samples "
                          "100000 --quiet > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  const int code = WEXITSTATUS(status);
  report(6, code == 0,
         "env-check, slip 2/3, 10^5 samples per (s,a), exit code " +
             std::to_string(code));
}

// ---------------------------------------------------------------------------
// 7. Baseline equivalence: vanilla mode and IER-with-interpolation-off are
//    bitwise identical.
void criterion_7() {
  ExperimentConfig cfg;
  cfg.env.map = builtin_map("frozenlake8x8");
  cfg.episodes = 300;
  cfg.repetitions = 3;
  cfg.base_seed = 99;
  cfg.label = "equivalence";

  ExperimentConfig vanilla = cfg;
  vanilla.mode = ReplayMode::Vanilla;
  vanilla.replay.s_synthetic = 0;
  vanilla.interpolation.enabled = false;

  ExperimentConfig ier_off = cfg;
  ier_off.mode = ReplayMode::Interpolated;
  ier_off.replay.s_synthetic = 0;
  ier_off.interpolation.enabled = false;

  const std::string a = runs_csv(run_experiment(vanilla, 2));
  const std::string b = runs_csv(run_experiment(ier_off, 2));
  report(7, a == b && !a.empty(),
         "vanilla vs interpolation-disabled IER, bitwise-equal runs.csv "
         "(300 episodes x 3 repetitions)");
}

// ---------------------------------------------------------------------------
// 8. Mann-Whitney exact p equals exhaustive enumeration for n1+n2 <= 12.
void criterion_8() {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  std::uniform_int_distribution<int> tie(0, 2);
  bool ok = true;

  // independent recursive enumerator
  struct Enumerator {
    std::vector<double> ranks;
    std::size_t n1;
    double u_obs, le = 0, ge = 0, total = 0;
    void recurse(std::size_t i, std::size_t chosen, double rank_sum) {
      if (chosen == n1) {
        const double u = rank_sum - double(n1) * (n1 + 1) / 2.0;
        total += 1;
        if (u <= u_obs + 1e-9) le += 1;
        if (u >= u_obs - 1e-9) ge += 1;
        return;
      }
      if (i >= ranks.size()) return;
      recurse(i + 1, chosen + 1, rank_sum + ranks[i]);
      recurse(i + 1, chosen, rank_sum);
    }
  };

  int cases = 0;
  while (cases < 1000 && ok) {
    std::uniform_int_distribution<int> n1_of(1, 11);
    const int n1 = n1_of(rng);
    std::uniform_int_distribution<int> n2_of(1, 12 - n1);
    const int n2 = n2_of(rng);
    std::vector<double> x, y;
    for (int i = 0; i < n1; ++i) x.push_back(tie(rng) == 0 ? 0.5 : value(rng));
    for (int i = 0; i < n2; ++i) y.push_back(tie(rng) == 0 ? 0.5 : value(rng));
    ++cases;

    // midranks by definition
    std::vector<double> pooled = x;
    pooled.insert(pooled.end(), y.begin(), y.end());
    std::vector<double> ranks(pooled.size());
    for (std::size_t i = 0; i < pooled.size(); ++i) {
      double less = 0, equal = 0;
      for (double v : pooled) {
        if (v < pooled[i]) ++less;
        if (v == pooled[i]) ++equal;
      }
      ranks[i] = 1.0 + less + (equal - 1.0) / 2.0;
    }
    double obs_rank = 0.0;
    for (int i = 0; i < n1; ++i) obs_rank += ranks[i];

    Enumerator en;
    en.ranks = ranks;
    en.n1 = static_cast<std::size_t>(n1);
    en.u_obs = obs_rank - double(n1) * (n1 + 1) / 2.0;
    en.recurse(0, 0, 0.0);

    const double p_le = en.le / en.total;
    const double p_ge = en.ge / en.total;
    if (mann_whitney_u(x, y, Alternative::Greater).p_value != p_ge) ok = false;
    if (mann_whitney_u(x, y, Alternative::Less).p_value != p_le) ok = false;
    if (mann_whitney_u(x, y, Alternative::TwoSided).p_value !=
        std::min(1.0, 2.0 * std::min(p_le, p_ge)))
      ok = false;
  }
  report(8, ok, "1000 randomized cases with n1+n2 <= 12, exact p agreement "
                "with full enumeration");
}

// ---------------------------------------------------------------------------
// 9. Synthetic/real composition near 50/50 by the end of exploration for
//    s_synthetic = 20,000 in experiment 1.
void criterion_9() {
  ExperimentConfig cfg;
  for (const ExperimentConfig& c : builtin_grid())
    if (c.label == "exp1_syn20000_cs1000") cfg = c;
  cfg.episodes = 520;
  cfg.repetitions = 10;
  cfg.base_seed = 11;
  cfg.label = "composition";

  const auto results = run_experiment(
      cfg, std::max(2u, std::thread::hardware_concurrency()));
  bool ok = true;
  double ratio_sum = 0.0;
  int counted = 0;
  for (const auto& r : results) {
    if (r.failed) {
      ok = false;
      continue;
    }
    const auto [real, synthetic] = r.buffer_sizes[500];
    const double ratio =
        static_cast<double>(synthetic) / static_cast<double>(real + synthetic);
    std::printf("  seed %llu: real %lld, synthetic %lld, ratio %.3f\n",
                static_cast<unsigned long long>(r.run_seed), real, synthetic,
                ratio);
    ratio_sum += ratio;
    ++counted;
  }
  const double mean_ratio = counted > 0 ? ratio_sum / counted : 0.0;
  ok = ok && counted > 0 && mean_ratio >= 0.35 && mean_ratio <= 0.65;
  char detail[128];
  std::snprintf(detail, sizeof(detail),
                "mean synthetic share at end of exploration %.3f, required "
                "within [0.35, 0.65]",
                mean_ratio);
  report(9, ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
  const int which = argc > 1 ? std::atoi(argv[1]) : 0;
  const std::string cli_path = argc > 2 ? argv[2] : "";

  if (which == 0 || which == 1) criterion_1();
  if (which == 0 || which == 2) criterion_2();
  if (which == 0 || which == 3) criterion_3();
  if (which == 0 || which == 4) criterion_4();
  if (which == 0 || which == 5) criterion_5();
  if (which == 0 || which == 6) criterion_6(cli_path);
  if (which == 0 || which == 7) criterion_7();
  if (which == 0 || which == 8) criterion_8();
  if (which == 0 || which == 9) criterion_9();
  return g_failures == 0 ? 0 : 1;
}
