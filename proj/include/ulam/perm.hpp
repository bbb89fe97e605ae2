// Brute-force ground truth over the symmetric group: increasing-subsequence
// counts, the exact distribution of Z_{n,k}, and the moments and tail
// probabilities derived from it.
#pragma once

#include "ulam/exact.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace ulam {

/// Largest n enumerated exhaustively (9! = 362880 permutations).
inline constexpr int kEnumerationGuard = 9;

/// One-line notation pi_1..pi_n, a bijection on {1..n}.
class Permutation {
 public:
  /// Throws DomainError unless `values` is a permutation of 1..n.
  explicit Permutation(std::vector<int> values);
  static Permutation identity(int n);

  int size() const { return static_cast<int>(values_.size()); }
  const std::vector<int>& values() const { return values_; }
  int operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }

  Permutation reversed() const;
  /// pi_i -> n + 1 - pi_i.
  Permutation complemented() const;

 private:
  std::vector<int> values_;
};

/// Number of index tuples i_1 < ... < i_k with pi increasing along them.
ExactInt count_increasing(const Permutation& pi, int k);
ExactInt count_decreasing(const Permutation& pi, int k);

/// Patience sorting, O(n log n).
int lis_length(const Permutation& pi);

/// Exact histogram of Z_{n,k} over S_n.
struct ZDistribution {
  int n = 0;
  int k = 0;
  std::map<ExactInt, ExactInt> counts;

  ExactInt total() const;
};

/// Visits S_n in lexicographic order, split into `workers` contiguous rank
/// ranges. The callback gets the worker index and the current permutation
/// (one-line, 1-based). Each worker calls only with its own index.
void enumerate_permutations(int n, int workers,
                            const std::function<void(int worker, const std::vector<int>& perm)>& visit);

ZDistribution z_distribution(int n, int k, int workers = 1);

/// E[Z^p].
ExactRational moment(const ZDistribution& dist, int p);

/// E[C(Z, s)].
ExactRational factorial_moment(const ZDistribution& dist, int s);
ExactRational factorial_moment(int n, int k, int s, int workers = 1);

/// P(Z >= r).
ExactRational prob_at_least(const ZDistribution& dist, const ExactInt& r);
ExactRational prob_at_least(int n, int k, int r, int workers = 1);

/// E[Z_{n,k} Z_{n,l}] by joint enumeration.
ExactRational mixed_moment(int n, int k, int l, int workers = 1);

/// Writes "z,count" with ascending z.
void write_csv(std::ostream& out, const ZDistribution& dist);

}  // namespace ulam
