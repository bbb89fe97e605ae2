#include "ulam/exact.hpp"

#include <cmath>
#include <numeric>

namespace ulam {

std::string to_string(const ExactInt& z) { return z.get_str(); }

std::string to_string(const ExactRational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

ExactRational parse_rational(const std::string& text) {
  ExactRational q;
  if (q.set_str(text, 10) != 0) {
    throw DomainError("not a rational: " + text);
  }
  if (q.get_den() == 0) {
    throw DomainError("zero denominator: " + text);
  }
  q.canonicalize();
  return q;
}

ExactRational make_rational(const ExactInt& num, const ExactInt& den) {
  if (den == 0) {
    throw DomainError("zero denominator");
  }
  ExactRational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

// value = mantissa * 2^exp with 0.5 <= |mantissa| < 1
struct Split {
  double mantissa;
  long exp;
};

Split split(const ExactInt& z) {
  long e = 0;
  const double m = mpz_get_d_2exp(&e, z.get_mpz_t());
  return {m, e};
}

}  // namespace

double to_double(const ExactRational& q) {
  if (q == 0) {
    return 0.0;
  }
  const Split n = split(q.get_num());
  const Split d = split(q.get_den());
  return std::ldexp(n.mantissa / d.mantissa, static_cast<int>(n.exp - d.exp));
}

double log_of(const ExactRational& q) {
  if (q <= 0) {
    throw DomainError("log of non-positive rational");
  }
  const Split n = split(q.get_num());
  const Split d = split(q.get_den());
  return std::log(n.mantissa / d.mantissa) + static_cast<double>(n.exp - d.exp) * std::log(2.0);
}

ExactInt factorial(std::int64_t n) {
  if (n < 0) {
    throw DomainError("factorial of negative number");
  }
  ExactInt out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

ExactInt binomial(std::int64_t n, std::int64_t k) {
  if (n < 0) {
    throw DomainError("binomial: n must be non-negative");
  }
  if (k < 0 || k > n) {
    return 0;
  }
  ExactInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

ExactInt multinomial(std::int64_t n, std::span<const std::int64_t> parts) {
  if (parts.empty()) {
    throw DomainError("multinomial: parts must be nonempty");
  }
  if (n < 0) {
    throw DomainError("multinomial: n must be non-negative");
  }
  std::int64_t total = 0;
  for (const auto p : parts) {
    if (p < 0) {
      return 0;
    }
    total += p;
  }
  if (total != n) {
    return 0;
  }
  // Product of binomials avoids the large intermediate n!.
  ExactInt out = 1;
  std::int64_t used = 0;
  for (const auto p : parts) {
    used += p;
    out *= binomial(used, p);
  }
  return out;
}

ExactRational falling_factorial(const ExactRational& z, std::int64_t n) {
  if (n < 0) {
    throw DomainError("falling_factorial: n must be non-negative");
  }
  ExactRational out = 1;
  for (std::int64_t k = 0; k < n; ++k) {
    out *= z - k;
  }
  return out;
}

ExactRational complete_bell(std::int64_t r, std::span<const ExactRational> x) {
  if (r < 0) {
    throw DomainError("bell: r must be non-negative");
  }
  if (static_cast<std::int64_t>(x.size()) < r) {
    throw DomainError("bell: need at least r arguments");
  }
  std::vector<ExactRational> b(static_cast<std::size_t>(r) + 1);
  b[0] = 1;
  for (std::int64_t m = 1; m <= r; ++m) {
    ExactRational acc = 0;
    for (std::int64_t s = 0; s < m; ++s) {
      acc += ExactRational(binomial(m - 1, s)) * x[static_cast<std::size_t>(s)] *
             b[static_cast<std::size_t>(m - 1 - s)];
    }
    b[static_cast<std::size_t>(m)] = acc;
  }
  return b[static_cast<std::size_t>(r)];
}

ExactRational bell_polynomial(std::int64_t r, std::span<const ExactRational> x) {
  ExactRational out = complete_bell(r, x) / ExactRational(factorial(r));
  if (r % 2 != 0) {
    out = -out;
  }
  return out;
}

ExactRational elementary_from_power_sums(std::int64_t r, const ExactRational& indicator_sum) {
  if (r < 0) {
    throw DomainError("elementary_from_power_sums: r must be non-negative");
  }
  // Newton: x_s = -(s-1)! p_s, and every p_s equals Z for 0/1 variables.
  std::vector<ExactRational> args;
  args.reserve(static_cast<std::size_t>(r));
  for (std::int64_t s = 1; s <= r; ++s) {
    args.emplace_back(-ExactRational(factorial(s - 1)) * indicator_sum);
  }
  return bell_polynomial(r, args);
}

}  // namespace ulam
