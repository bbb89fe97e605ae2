#include "ulam/moments.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace ulam {

SquareTable::SquareTable(int extent)
    : extent_(extent), cells_(static_cast<std::size_t>(extent + 1) * static_cast<std::size_t>(extent + 1)) {
  if (extent < 0) {
    throw DomainError("SquareTable: negative extent");
  }
}

std::size_t SquareTable::index(int l, int m) const {
  if (l < 0 || m < 0 || l > extent_ || m > extent_) {
    throw std::out_of_range("SquareTable index out of range");
  }
  return static_cast<std::size_t>(l) * static_cast<std::size_t>(extent_ + 1) + static_cast<std::size_t>(m);
}

SquareTable square_binomial_kernel(int extent) {
  SquareTable t(extent);
  for (int l = 0; l <= extent; ++l) {
    for (int m = 0; m <= l; ++m) {
      ExactInt c = binomial(l + m, l);
      c *= c;
      t.at(l, m) = c;
      t.at(m, l) = c;
    }
  }
  return t;
}

SquareTable convolve_with_kernel(const SquareTable& in, const SquareTable& kernel, int out_extent) {
  if (out_extent > in.extent() || out_extent > kernel.extent()) {
    throw DomainError("convolve_with_kernel: output extent exceeds inputs");
  }
  SquareTable out(out_extent);
  // Both factors are symmetric in (L, M), so is the product.
  for (int big = 0; big <= out_extent; ++big) {
    for (int small = 0; small <= big; ++small) {
      mpz_class acc = 0;
      for (int l = 0; l <= big; ++l) {
        for (int m = 0; m <= small; ++m) {
          mpz_addmul(acc.get_mpz_t(), kernel.at(l, m).get_mpz_t(), in.at(big - l, small - m).get_mpz_t());
        }
      }
      out.at(small, big) = acc;
      out.at(big, small) = std::move(acc);
    }
  }
  return out;
}

MomentTriangle MomentTriangle::build(int n_max, int j_max, bool keep_layers) {
  if (n_max < 0 || j_max < 0) {
    throw DomainError("MomentTriangle: negative size");
  }
  MomentTriangle tri;
  tri.n_max_ = n_max;
  tri.j_max_ = j_max;
  tri.entries_.resize(static_cast<std::size_t>(n_max + 1) * static_cast<std::size_t>(j_max + 1));

  const SquareTable kernel = square_binomial_kernel(n_max);
  SquareTable layer = kernel;
  for (int j = 0; j <= j_max; ++j) {
    if (j > 0) {
      layer = convolve_with_kernel(layer, kernel, n_max);
    }
    for (int n = 0; n <= n_max; ++n) {
      tri.entries_[static_cast<std::size_t>(n) * static_cast<std::size_t>(j_max + 1) + static_cast<std::size_t>(j)] =
          layer.at(n, n);
    }
    if (keep_layers) {
      tri.layers_.push_back(layer);
    }
  }
  return tri;
}

const ExactInt& MomentTriangle::a(int n, int j) const {
  if (n < 0 || j < 0 || n > n_max_ || j > j_max_) {
    throw std::out_of_range("MomentTriangle: (N, j) outside the table");
  }
  return entries_[static_cast<std::size_t>(n) * static_cast<std::size_t>(j_max_ + 1) + static_cast<std::size_t>(j)];
}

void MomentTriangle::write_csv(std::ostream& out) const {
  out << "N,j,A\n";
  for (int n = 0; n <= n_max_; ++n) {
    for (int j = 0; j <= j_max_; ++j) {
      out << n << ',' << j << ',' << a(n, j).get_str() << '\n';
    }
  }
}

MomentTriangle MomentTriangle::read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "N,j,A") {
    throw DomainError("MomentTriangle CSV: missing header N,j,A");
  }
  struct Row {
    int n;
    int j;
    ExactInt a;
  };
  std::vector<Row> rows;
  int n_max = -1;
  int j_max = -1;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    std::stringstream ss(line);
    std::string f_n;
    std::string f_j;
    std::string f_a;
    if (!std::getline(ss, f_n, ',') || !std::getline(ss, f_j, ',') || !std::getline(ss, f_a)) {
      throw DomainError("MomentTriangle CSV: malformed row: " + line);
    }
    Row r{std::stoi(f_n), std::stoi(f_j), ExactInt(f_a, 10)};
    n_max = std::max(n_max, r.n);
    j_max = std::max(j_max, r.j);
    rows.push_back(std::move(r));
  }
  if (n_max < 0 || rows.size() != static_cast<std::size_t>(n_max + 1) * static_cast<std::size_t>(j_max + 1)) {
    throw DomainError("MomentTriangle CSV: table is not dense");
  }
  MomentTriangle tri;
  tri.n_max_ = n_max;
  tri.j_max_ = j_max;
  tri.entries_.resize(rows.size());
  for (auto& r : rows) {
    tri.entries_[static_cast<std::size_t>(r.n) * static_cast<std::size_t>(j_max + 1) + static_cast<std::size_t>(r.j)] =
        std::move(r.a);
  }
  return tri;
}

ExactInt k_array(int l, int m, int j) {
  if (l < 0 || m < 0 || j < 0) {
    throw DomainError("k_array: negative argument");
  }
  const int extent = std::max(l, m);
  const SquareTable kernel = square_binomial_kernel(extent);
  SquareTable layer = kernel;
  for (int step = 0; step < j; ++step) {
    layer = convolve_with_kernel(layer, kernel, extent);
  }
  return layer.at(l, m);
}

ExactInt a_array(int n, int j) { return k_array(n, n, j); }

std::vector<ExactInt> a_antidiagonal(int k) {
  if (k < 0) {
    throw DomainError("a_antidiagonal: negative k");
  }
  std::vector<ExactInt> out(static_cast<std::size_t>(k) + 1);
  const SquareTable kernel = square_binomial_kernel(k);
  SquareTable layer = kernel;
  for (int i = 0; i <= k; ++i) {
    // Layer i only needs extent k - i for A(k - i, i).
    if (i > 0) {
      layer = convolve_with_kernel(layer, kernel, k - i);
    }
    out[static_cast<std::size_t>(i)] = layer.at(k - i, k - i);
  }
  return out;
}

ExactRational b_coefficient(std::int64_t n, std::int64_t j) {
  if (n < 0 || j < 0) {
    throw DomainError("b_coefficient: negative argument");
  }
  return make_rational(binomial(n, j), factorial(j));
}

namespace {

void require_moment_domain(std::int64_t n, std::int64_t k) {
  if (k < 1 || n < 1) {
    throw DomainError("moments need 1 <= k <= n");
  }
  if (k > n) {
    throw DomainError("moments need k <= n");
  }
}

}  // namespace

ExactRational first_moment(std::int64_t n, std::int64_t k) {
  require_moment_domain(n, k);
  return b_coefficient(n, k);
}

ExactRational second_moment(std::int64_t n, std::int64_t k) {
  require_moment_domain(n, k);
  const auto diag = a_antidiagonal(static_cast<int>(k));
  ExactRational total = 0;
  for (std::int64_t i = 0; i <= k; ++i) {
    total += ExactRational(diag[static_cast<std::size_t>(i)]) * b_coefficient(n, 2 * k - i);
  }
  return total;
}

bool check_square_identity(int l, int m) {
  if (l < 0 || m < 0) {
    throw DomainError("check_square_identity: negative argument");
  }
  ExactInt lhs = 0;
  for (int n = 0; n <= std::min(l, m); ++n) {
    const std::array<std::int64_t, 4> parts{n, n, l - n, m - n};
    lhs += multinomial(l + m, parts);
  }
  ExactInt rhs = binomial(l + m, l);
  rhs *= rhs;
  return lhs == rhs;
}

std::vector<ExactInt> shell_numerator(const MomentTriangle& table, int n) {
  if (n < 0 || n > table.n_max()) {
    throw DomainError("shell_numerator: N outside the table");
  }
  const int degree = 2 * n;
  if (table.j_max() < degree) {
    throw DomainError("shell_numerator: table needs j_max >= 2N");
  }
  // (1-w)^(2N+1) coefficients.
  std::vector<ExactInt> out(static_cast<std::size_t>(degree) + 1);
  for (int d = 0; d <= degree; ++d) {
    ExactInt acc = 0;
    for (int j = 0; j <= d; ++j) {
      ExactInt c = binomial(degree + 1, d - j);
      if ((d - j) % 2 != 0) {
        c = -c;
      }
      acc += c * table.a(n, j);
    }
    out[static_cast<std::size_t>(d)] = acc;
  }
  return out;
}

}  // namespace ulam
