#include "ier/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace ier {

namespace {

constexpr std::size_t kExactLimit = 20;  // combined size for exact enumeration

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Midranks of the pooled sample, in pooled order.
std::vector<double> midranks(const std::vector<double>& pooled) {
  const std::size_t n = pooled.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pooled[a] < pooled[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double u_from_rank_sum(double rank_sum, std::size_t n1) {
  return rank_sum - static_cast<double>(n1) * (n1 + 1) / 2.0;
}

// Exact permutation distribution of U over all C(n, n1) group assignments.
void exact_tail_counts(const std::vector<double>& ranks, std::size_t n1,
                       double u_obs, double& p_le, double& p_ge) {
  const std::size_t n = ranks.size();
  std::vector<std::size_t> comb(n1);
  std::iota(comb.begin(), comb.end(), 0);
  long long total = 0, le = 0, ge = 0;
  const double tol = 1e-9;
  while (true) {
    double rank_sum = 0.0;
    for (std::size_t idx : comb) rank_sum += ranks[idx];
    const double u = u_from_rank_sum(rank_sum, n1);
    ++total;
    if (u <= u_obs + tol) ++le;
    if (u >= u_obs - tol) ++ge;

    // next combination in lexicographic order
    std::size_t i = n1;
    while (i > 0 && comb[i - 1] == n - n1 + i - 1) --i;
    if (i == 0) break;
    ++comb[i - 1];
    for (std::size_t k = i; k < n1; ++k) comb[k] = comb[k - 1] + 1;
  }
  p_le = static_cast<double>(le) / static_cast<double>(total);
  p_ge = static_cast<double>(ge) / static_cast<double>(total);
}

void approx_tail_probs(const std::vector<double>& pooled, std::size_t n1,
                       std::size_t n2, double u_obs, double& p_le,
                       double& p_ge) {
  const double n = static_cast<double>(n1 + n2);
  const double mu = static_cast<double>(n1) * static_cast<double>(n2) / 2.0;

  std::vector<double> sorted(pooled);
  std::sort(sorted.begin(), sorted.end());
  double tie_sum = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i + 1);
    tie_sum += t * t * t - t;
    i = j + 1;
  }
  const double var = static_cast<double>(n1) * static_cast<double>(n2) / 12.0 *
                     ((n + 1.0) - tie_sum / (n * (n - 1.0)));
  if (var <= 0.0) {  // all pooled values identical
    p_le = 1.0;
    p_ge = 1.0;
    return;
  }
  const double sigma = std::sqrt(var);
  p_ge = 1.0 - normal_cdf((u_obs - mu - 0.5) / sigma);
  p_le = normal_cdf((u_obs - mu + 0.5) / sigma);
}

}  // namespace

MannWhitneyResult mann_whitney_u(std::span<const double> x,
                                 std::span<const double> y,
                                 Alternative alternative) {
  if (x.empty() || y.empty())
    throw std::invalid_argument("mann_whitney_u requires nonempty samples");

  std::vector<double> pooled(x.begin(), x.end());
  pooled.insert(pooled.end(), y.begin(), y.end());
  const std::vector<double> ranks = midranks(pooled);

  double rank_sum_x = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) rank_sum_x += ranks[i];
  const double u_obs = u_from_rank_sum(rank_sum_x, x.size());

  double p_le = 1.0, p_ge = 1.0;
  if (pooled.size() <= kExactLimit) {
    exact_tail_counts(ranks, x.size(), u_obs, p_le, p_ge);
  } else {
    approx_tail_probs(pooled, x.size(), y.size(), u_obs, p_le, p_ge);
  }

  MannWhitneyResult res;
  res.u_statistic = u_obs;
  res.n1 = x.size();
  res.n2 = y.size();
  res.alternative = alternative;
  switch (alternative) {
    case Alternative::Greater: res.p_value = p_ge; break;
    case Alternative::Less: res.p_value = p_le; break;
    case Alternative::TwoSided:
      res.p_value = std::min(1.0, 2.0 * std::min(p_le, p_ge));
      break;
  }
  return res;
}

Descriptive descriptive(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("descriptive requires data");
  Descriptive d;
  d.n = x.size();
  d.mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  if (x.size() >= 2) {
    double ss = 0.0;
    for (double v : x) ss += (v - d.mean) * (v - d.mean);
    d.sd = std::sqrt(ss / static_cast<double>(x.size() - 1));
  }
  return d;
}

}  // namespace ier
