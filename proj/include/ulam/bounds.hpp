// Bonferroni brackets on P(Z >= r), the Stirling form of E[Z], second-moment
// ratio tables, and the Chebyshev-type bound A(N,j) <= alpha(w,x^2)/(w^j x^2N).
#pragma once

#include "ulam/exact.hpp"
#include "ulam/perm.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace ulam {

/// sum_{s=r}^{R} (-1)^{s-r} C(s-1, r-1) E[C(Z, s)].
ExactRational bonferroni_partial_sum(const ZDistribution& dist, int r, int R);

struct BonferroniBracket {
  int n = 0;
  int k = 0;
  int r = 0;
  int R_lower = 0;  // R - r odd (or R = r - 1, the empty sum)
  int R_upper = 0;  // R - r even
  ExactRational lower;
  ExactRational upper;
  std::optional<ExactRational> exact;
};

/// Factorial moments come from exhaustive enumeration, hence n <= 9.
BonferroniBracket bonferroni_bracket(int n, int k, int r, int R_lower, int R_upper, int workers = 1);

struct StirlingEstimate {
  double approx_log = 0.0;  // log of the Stirling form of C(n,k)/k!
  double delta = 0.0;       // delta_n(x), x = k / sqrt(n)
};

/// Needs 2 <= k <= n/2, where the Stirling regime is meaningful.
StirlingEstimate stirling_log_first_moment(std::int64_t n, std::int64_t k);

struct RatioRow {
  std::int64_t n = 0;
  std::int64_t k = 0;
  ExactRational exact;  // E[Z^2] / E[Z]^2
  double ratio = 0.0;
};

/// Guards: 1 <= k <= min(n, 60), n <= 10^6.
std::vector<RatioRow> ratio_table(const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs);

struct ChebyshevBound {
  double bound = 0.0;
  double x_star = 0.0;
  double w_star = 0.0;
  bool polished = false;  // false when Nelder-Mead failed and the grid value is reported
};

/// min over 0 < x <= 0.24, 0 < w, 4x + w^2 < 1 of alpha_closed(w, x)/(w^j x^2N);
/// w = 0 and a search over x alone when j = 0.
ChebyshevBound chebyshev_a_bound(int N, int j);

}  // namespace ulam
