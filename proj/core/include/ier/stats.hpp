#ifndef IER_STATS_HPP
#define IER_STATS_HPP

#include <cstddef>
#include <span>

namespace ier {

enum class Alternative { TwoSided, Greater, Less };

struct MannWhitneyResult {
  double u_statistic = 0.0;  // U of the first sample
  double p_value = 1.0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  Alternative alternative = Alternative::TwoSided;
};

/// Rank-sum test with midrank tie handling. Exact permutation enumeration
/// for combined sizes up to 20, otherwise the normal approximation with
/// tie-corrected variance and continuity correction. Two-sided p is
/// min(1, 2*min(p_less, p_greater)).
MannWhitneyResult mann_whitney_u(std::span<const double> x,
                                 std::span<const double> y,
                                 Alternative alternative);

struct Descriptive {
  double mean = 0.0;
  double sd = 0.0;  // sample SD (n-1 denominator), 0 for n = 1
  std::size_t n = 0;
};

Descriptive descriptive(std::span<const double> x);

}  // namespace ier

#endif
