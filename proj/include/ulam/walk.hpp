// Two-dimensional simple random walk realization of A(N, j): the occupation
// time of the axis {U = 0} over t = 0..2N, weighted by returns to the origin.
#pragma once

#include "ulam/exact.hpp"

#include <cstdint>
#include <vector>

namespace ulam {

/// Unit moves (1,0), (0,1), (-1,0), (0,-1).
enum class Step : std::uint8_t { East = 0, North = 1, West = 2, South = 3 };

class WalkPath {
 public:
  /// Throws DomainError when the length is odd.
  explicit WalkPath(std::vector<Step> steps);
  /// Steps read from the base-4 digits of `code`, least significant first.
  static WalkPath from_code(int half_length, std::uint64_t code);

  int half_length() const { return static_cast<int>(steps_.size() / 2); }
  const std::vector<Step>& steps() const { return steps_; }

 private:
  std::vector<Step> steps_;
};

struct WalkStats {
  int tau = 1;            // #{t in 0..2N : U_t = 0}
  bool returned = false;  // (U_2N, V_2N) == (0, 0)
};

WalkStats walk_stats(const WalkPath& path);

/// C(tau + j - 1, j): weakly increasing j-tuples of axis-visit times.
ExactInt q_statistic(const WalkStats& stats, int j);

/// Largest N enumerated exhaustively (4^12 paths).
inline constexpr int kWalkEnumerationGuard = 6;

/// Exhaustive summary over all 4^(2N) paths.
struct WalkEnumeration {
  int half_length = 0;
  ExactInt total_paths;
  /// returning_by_tau[tau] = number of returning paths with that occupation.
  std::vector<ExactInt> returning_by_tau;
  ExactInt x_zero;  // paths with U + V = 0 at time 2N
  ExactInt y_zero;  // paths with U - V = 0 at time 2N

  ExactInt returning() const;
};

WalkEnumeration enumerate_walks(int half_length, int workers = 1);

/// sum over all paths of Q_{N,j} R_N divided by 4^(2N).
ExactRational mean_q_times_return(const WalkEnumeration& e, int j);

/// 16^N E[Q_{N,j} R_N]; an integer that equals A(N, j).
ExactInt a_from_walk_exact(const WalkEnumeration& e, int j);
ExactInt a_from_walk_exact(int half_length, int j, int workers = 1);

/// P(U_2N = V_2N = 0) from the enumeration.
ExactRational return_probability(const WalkEnumeration& e);

struct McEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
};

/// 16^N times the sample mean of Q_{N,j} R_N. Sample i uses the counter
/// stream (seed, i), so the result does not depend on `workers`.
McEstimate a_monte_carlo(int half_length, int j, std::uint64_t samples, std::uint64_t seed, int workers = 1);

/// Draws the path of sample `index` from the counter stream.
WalkPath sample_path(int half_length, std::uint64_t seed, std::uint64_t index);

/// sum_{N < n_terms} 16^-N C(2N,N)^2 z^(2N); converges to (2/pi) K(z).
double polya_series(double z, int n_terms);

}  // namespace ulam
