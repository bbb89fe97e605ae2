// The convolution arrays K(L,M,j), A(N,j) = K(N,N,j) and the exact first and
// second moments of Z_{n,k}, the number of increasing k-subsequences of a
// uniform random permutation of n.
#pragma once

#include "ulam/exact.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace ulam {

/// Square table indexed [L][M], 0 <= L, M <= extent.
class SquareTable {
 public:
  SquareTable() = default;
  explicit SquareTable(int extent);

  int extent() const { return extent_; }
  ExactInt& at(int l, int m) { return cells_[index(l, m)]; }
  const ExactInt& at(int l, int m) const { return cells_[index(l, m)]; }

 private:
  std::size_t index(int l, int m) const;

  int extent_ = -1;
  std::vector<ExactInt> cells_;
};

/// The kernel T(l, m) = C(l+m, l)^2 on [0, extent]^2.
SquareTable square_binomial_kernel(int extent);

/// One convolution step: out(L,M) = sum T(l,m) in(L-l, M-m), truncated to
/// the extent of `out_extent` (which must not exceed in.extent()).
SquareTable convolve_with_kernel(const SquareTable& in, const SquareTable& kernel, int out_extent);

/// A(N, j) for 0 <= N <= n_max, 0 <= j <= j_max.
class MomentTriangle {
 public:
  /// Builds by repeated truncated convolution. With `keep_layers` the
  /// K(., ., j) tables are retained.
  static MomentTriangle build(int n_max, int j_max, bool keep_layers = false);

  int n_max() const { return n_max_; }
  int j_max() const { return j_max_; }
  const ExactInt& a(int n, int j) const;

  /// K(., ., j) when built with keep_layers.
  const std::vector<SquareTable>& layers() const { return layers_; }

  /// Header "N,j,A", rows in (N, j) lexicographic order.
  void write_csv(std::ostream& out) const;
  static MomentTriangle read_csv(std::istream& in);

 private:
  int n_max_ = 0;
  int j_max_ = 0;
  std::vector<ExactInt> entries_;
  std::vector<SquareTable> layers_;
};

ExactInt k_array(int l, int m, int j);
ExactInt a_array(int n, int j);

/// A(k - i, i) for i = 0..k (the anti-diagonal that enters the second moment).
std::vector<ExactInt> a_antidiagonal(int k);

/// C(N, j) / j!.
ExactRational b_coefficient(std::int64_t n, std::int64_t j);

ExactRational first_moment(std::int64_t n, std::int64_t k);

/// E[Z_{n,k}^2] = sum_{i=0}^{k} A(k-i, i) B(n, 2k-i).
ExactRational second_moment(std::int64_t n, std::int64_t k);

/// sum_n multinomial(l+m; n, n, l-n, m-n) == C(l+m, l)^2.
bool check_square_identity(int l, int m);

/// Numerator P_N of sum_j A(N,j) w^j = P_N(w) / (1-w)^(2N+1). Degree <= 2N,
/// read off the first 2N+1 table columns; needs j_max >= 2N.
std::vector<ExactInt> shell_numerator(const MomentTriangle& table, int n);

}  // namespace ulam
