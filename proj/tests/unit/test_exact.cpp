#include "doctest.h"

#include "ulam/exact.hpp"

#include <vector>

using namespace ulam;

namespace {

// Pascal triangle in exact arithmetic, built row by row.
ExactInt pascal(int n, int k) {
  std::vector<ExactInt> row{ExactInt(1)};
  for (int r = 1; r <= n; ++r) {
    std::vector<ExactInt> next(static_cast<std::size_t>(r) + 1, ExactInt(1));
    for (int i = 1; i < r; ++i) {
      next[static_cast<std::size_t>(i)] = row[static_cast<std::size_t>(i - 1)] + row[static_cast<std::size_t>(i)];
    }
    row = std::move(next);
  }
  if (k < 0 || k > n) {
    return 0;
  }
  return row[static_cast<std::size_t>(k)];
}

std::vector<ExactRational> bell_args(const ExactRational& z, int r) {
  std::vector<ExactRational> x;
  for (int i = 0; i < r; ++i) {
    x.push_back(-ExactRational(factorial(i)) * z);
  }
  return x;
}

}  // namespace

TEST_CASE("binomial spot values and zero convention") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(3, 4) == 0);
  CHECK(binomial(3, -1) == 0);
  CHECK(binomial(40, 20) == ExactInt("137846528820"));
  CHECK_THROWS_AS(binomial(-1, 0), DomainError);
}

TEST_CASE("binomial agrees with the Pascal triangle") {
  for (int n = 0; n <= 60; n += 3) {
    for (int k = -1; k <= n + 1; ++k) {
      CHECK(binomial(n, k) == pascal(n, k));
    }
  }
}

TEST_CASE("binomial handles thousands of digits") {
  const ExactInt big = binomial(10000, 5000);
  CHECK(big.get_str().size() > 3000);
  CHECK(binomial(10000, 5000) == binomial(9999, 4999) + binomial(9999, 5000));
}

TEST_CASE("multinomial") {
  const std::vector<std::int64_t> a{1, 1, 0, 0};
  const std::vector<std::int64_t> b{2, 1, 1};
  const std::vector<std::int64_t> c{0, 0, 1, 1};
  const std::vector<std::int64_t> bad{1, 2};
  const std::vector<std::int64_t> neg{3, -1};
  CHECK(multinomial(2, a) == 2);
  CHECK(multinomial(4, b) == 12);
  CHECK(multinomial(2, c) == 2);
  CHECK(multinomial(4, bad) == 0);
  CHECK(multinomial(2, neg) == 0);
}

TEST_CASE("falling factorial") {
  CHECK(falling_factorial(make_rational(-1, 2), 2) == make_rational(3, 4));
  CHECK(falling_factorial(make_rational(7, 3), 0) == 1);
  CHECK(falling_factorial(ExactRational(-3), 2) == 12);
}

TEST_CASE("Pochhammer at -1/2 gives central factorial ratios") {
  for (int n = 0; n <= 20; ++n) {
    ExactRational lhs = falling_factorial(make_rational(-1, 2), n);
    ExactInt four_n;
    mpz_ui_pow_ui(four_n.get_mpz_t(), 4, static_cast<unsigned long>(n));
    lhs *= ExactRational(four_n * factorial(n));
    if (n % 2 != 0) {
      lhs = -lhs;
    }
    CHECK(lhs == ExactRational(factorial(2 * n)));
  }
}

TEST_CASE("Pochhammer at a negative integer") {
  for (int n = 1; n <= 8; ++n) {
    for (int k = 0; k <= 8; ++k) {
      ExactRational rhs = make_rational(factorial(n + k - 1), factorial(n - 1));
      if (k % 2 != 0) {
        rhs = -rhs;
      }
      CHECK(falling_factorial(ExactRational(-n), k) == rhs);
    }
  }
}

TEST_CASE("Bell polynomial spot values") {
  CHECK(bell_polynomial(0, std::vector<ExactRational>{}) == 1);
  const auto x1 = bell_args(ExactRational(2), 1);
  CHECK(bell_polynomial(1, x1) == 2);
  const auto x3 = bell_args(make_rational(1, 2), 3);
  CHECK(bell_polynomial(3, x3) == make_rational(1, 16));
}

TEST_CASE("Bell specialization reproduces falling factorial over r!") {
  const std::vector<ExactRational> zs{ExactRational(-2), make_rational(-1, 2), ExactRational(0), make_rational(1, 2),
                                      ExactRational(3)};
  for (const auto& z : zs) {
    for (int r = 0; r <= 8; ++r) {
      const auto x = bell_args(z, r);
      CHECK(bell_polynomial(r, x) == falling_factorial(z, r) / ExactRational(factorial(r)));
    }
  }
}

TEST_CASE("Bell polynomial rejects short argument lists") {
  const std::vector<ExactRational> x{ExactRational(1)};
  CHECK_THROWS_AS(bell_polynomial(3, x), DomainError);
}

TEST_CASE("elementary symmetric value from equal power sums") {
  CHECK(elementary_from_power_sums(1, ExactRational(5)) == 5);
  CHECK(elementary_from_power_sums(2, ExactRational(3)) == 3);
  CHECK(elementary_from_power_sums(4, ExactRational(3)) == 0);
  for (int z = 0; z <= 9; ++z) {
    for (int r = 0; r <= 9; ++r) {
      CHECK(elementary_from_power_sums(r, ExactRational(z)) == ExactRational(binomial(z, r)));
    }
  }
}

TEST_CASE("rational formatting and parsing") {
  CHECK(to_string(make_rational(6, 4)) == "3/2");
  CHECK(to_string(ExactRational(4)) == "4/1");
  CHECK(to_string(make_rational(-2, 6)) == "-1/3");
  CHECK(parse_rational("19/6") == make_rational(19, 6));
  CHECK(parse_rational("-7") == -7);
  CHECK_THROWS(make_rational(1, 0));
}

TEST_CASE("to_double and log_of survive huge magnitudes") {
  const ExactRational q(factorial(1000));
  CHECK(log_of(q) == doctest::Approx(5912.128178488163).epsilon(1e-12));
  CHECK(to_double(make_rational(1, 3)) == doctest::Approx(1.0 / 3.0));
}
