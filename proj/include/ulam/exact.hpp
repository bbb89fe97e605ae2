// Exact integer and rational scalars plus the elementary combinatorics
// (binomials, multinomials, falling factorials, Bell polynomials) that the
// moment formulas are built from.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ulam {

using ExactInt = mpz_class;
using ExactRational = mpq_class;

/// Raised when an operation is called outside its stated domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative method did not reach its tolerance within its budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Serializes as "p/q" with q > 0, also when q == 1.
std::string to_string(const ExactRational& q);
std::string to_string(const ExactInt& z);

/// Parses "p/q" or "p" and canonicalizes.
ExactRational parse_rational(const std::string& text);

/// Exact rational from numerator/denominator, reduced.
ExactRational make_rational(const ExactInt& num, const ExactInt& den);

/// Nearest double. Handles magnitudes beyond the mpq -> double path by
/// working on mantissa/exponent pairs.
double to_double(const ExactRational& q);

/// Natural log of a positive rational; accurate for values with thousands of
/// digits.
double log_of(const ExactRational& q);

ExactInt factorial(std::int64_t n);

/// C(n, k). Zero when k < 0 or k > n. Throws DomainError for n < 0.
ExactInt binomial(std::int64_t n, std::int64_t k);

/// n! / prod(p_i!) when every p_i >= 0 and the parts sum to n, else 0.
ExactInt multinomial(std::int64_t n, std::span<const std::int64_t> parts);

/// (z)_n = z (z-1) ... (z-n+1); empty product is 1.
ExactRational falling_factorial(const ExactRational& z, std::int64_t n);

/// Complete exponential Bell polynomial B_r(x_1..x_r) via
/// B_r = sum_{s<r} C(r-1, s) x_{s+1} B_{r-1-s}, B_0 = 1.
ExactRational complete_bell(std::int64_t r, std::span<const ExactRational> x);

/// (-1)^r / r! * B_r(x). With x_i = -(i-1)! z this is (z)_r / r!, which makes
/// it the coefficient that turns power sums into elementary symmetric
/// functions (Newton's identities).
ExactRational bell_polynomial(std::int64_t r, std::span<const ExactRational> x);

/// e_r of 0/1 variables whose power sums all equal `indicator_sum`,
/// computed through bell_polynomial. Equals C(Z, r).
ExactRational elementary_from_power_sums(std::int64_t r, const ExactRational& indicator_sum);

}  // namespace ulam
