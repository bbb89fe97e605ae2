#include "ulam/genfun.hpp"

#include "ulam/elliptic.hpp"
#include "ulam/exact.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace ulam {

namespace {

constexpr double kContourTol = 1e-12;
constexpr int kContourCap = 1 << 18;

Complex pairwise_sum(const std::vector<Complex>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 8) {
    Complex s{0.0, 0.0};
    for (std::size_t i = lo; i < hi; ++i) {
      s += v[i];
    }
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

Complex trapezoid(const std::function<Complex(Complex)>& f, const ContourSpec& spec, int n) {
  std::vector<Complex> vals(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Complex e = std::polar(1.0, 2.0 * std::numbers::pi * i / n);
    const Complex xi = spec.center + spec.radius * e;
    // dxi / (2 pi i xi) = (radius e / xi) dtheta / 2 pi
    vals[static_cast<std::size_t>(i)] = f(xi) * (spec.radius * e / xi);
  }
  return pairwise_sum(vals, 0, vals.size()) / static_cast<double>(n);
}

void check_spec(const ContourSpec& spec) {
  if (!(spec.radius > 0.0)) {
    throw DomainError("ContourSpec: radius must be positive");
  }
  if (spec.nodes < 8 || (spec.nodes & (spec.nodes - 1)) != 0) {
    throw DomainError("ContourSpec: nodes must be a power of two >= 8");
  }
}

}  // namespace

Complex principal_sqrt(Complex z) {
  if (z.imag() == 0.0) {
    if (z.real() >= 0.0) {
      return {std::sqrt(z.real()), 0.0};
    }
    return {0.0, std::sqrt(-z.real())};
  }
  return std::sqrt(z);
}

Complex kappa1(Complex x, Complex y) {
  if (!(std::abs(x) + std::abs(y) < 1.0)) {
    throw DomainError("kappa1: needs |x| + |y| < 1");
  }
  return 1.0 / (1.0 - x - y);
}

Complex kappa2(Complex x, Complex y) {
  if (!(std::abs(x) < 0.25 && std::abs(y) < 0.25)) {
    throw DomainError("kappa2: needs |x|, |y| < 1/4");
  }
  const Complex s = 1.0 - x - y;
  return 1.0 / principal_sqrt(s * s - 4.0 * x * y);
}

Complex kappa(Complex w, Complex x, Complex y) {
  if (!(std::abs(x) < 0.25 && std::abs(y) < 0.25)) {
    throw DomainError("kappa: needs |x|, |y| < 1/4");
  }
  const Complex s = 1.0 - x - y;
  const Complex den = principal_sqrt(s * s - 4.0 * x * y) - w;
  if (std::abs(den) < 1e-12) {
    throw DomainError("kappa: pole (sqrt(...) = w)");
  }
  return 1.0 / den;
}

Complex diagonal_extract(const std::function<Complex(Complex)>& f, const ContourSpec& spec) {
  check_spec(spec);
  int n = spec.nodes;
  Complex prev = trapezoid(f, spec, n);
  while (n < kContourCap) {
    n *= 2;
    const Complex cur = trapezoid(f, spec, n);
    if (std::abs(cur - prev) < kContourTol * std::max(1.0, std::abs(cur))) {
      return cur;
    }
    prev = cur;
  }
  throw ConvergenceError("diagonal_extract: no convergence within 2^18 nodes");
}

Complex diagonal_extract2(const std::function<Complex(Complex, Complex)>& f, const ContourSpec& spec) {
  return diagonal_extract(
      [&](Complex xi) { return diagonal_extract([&](Complex zeta) { return f(xi, zeta); }, spec); }, spec);
}

AlphaSeries alpha_series(double w, double x, int n_max, double tol, int n_cap) {
  if (!(x >= 0.0 && x < 0.25 && w >= 0.0 && 4.0 * x + w * w < 1.0)) {
    throw DomainError("alpha_series: needs 0 <= x < 1/4, w >= 0, 4x + w^2 < 1");
  }
  if (n_max < 0 || n_cap < 1) {
    throw DomainError("alpha_series: bad truncation");
  }
  AlphaSeries out;
  out.truncation.j_max = -1;
  if (x == 0.0) {
    out.value = 1.0 / (1.0 - w);
    out.shells = {out.value};
    return out;
  }
  const int cap = n_max > 0 ? n_max : n_cap;
  const auto dim = static_cast<std::size_t>(cap) + 1;
  // Scaled kernel T(l,m) x^{l+m} and scaled resolvent F(L,M) x^{L+M}.
  std::vector<double> t(dim * dim);
  std::vector<double> f(dim * dim);
  auto at = [dim](std::vector<double>& v, int l, int m) -> double& {
    return v[static_cast<std::size_t>(l) * dim + static_cast<std::size_t>(m)];
  };
  for (int l = 0; l <= cap; ++l) {
    at(t, l, 0) = (l == 0) ? 1.0 : at(t, l - 1, 0) * x;
    for (int m = 1; m <= cap; ++m) {
      const double r = static_cast<double>(l + m) / m;
      at(t, l, m) = at(t, l, m - 1) * r * r * x;
    }
  }

  double sum = 0.0;
  double prev_shell = 0.0;
  for (int n = 0; n <= cap; ++n) {
    for (int m = 0; m <= n; ++m) {
      double acc = 0.0;
      for (int l = 0; l <= n; ++l) {
        for (int mm = (l == 0 ? 1 : 0); mm <= m; ++mm) {
          acc += at(t, l, mm) * at(f, n - l, m - mm);
        }
      }
      const double v = (at(t, n, m) + w * acc) / (1.0 - w);
      at(f, n, m) = v;
      at(f, m, n) = v;
    }
    const double shell = at(f, n, n);
    sum += shell;
    out.shells.push_back(shell);
    out.truncation.n_max = n;
    if (n >= 1) {
      if (shell == 0.0) {
        out.truncation.tail_bound = 0.0;
      } else {
        const double rho = shell / prev_shell;
        out.truncation.tail_bound =
            rho < 1.0 ? shell * rho / (1.0 - rho) : std::numeric_limits<double>::infinity();
      }
      if (n_max == 0 && n >= 4 && out.truncation.tail_bound < tol) {
        break;
      }
    }
    prev_shell = shell;
  }
  if (!std::isfinite(out.truncation.tail_bound)) {
    throw ConvergenceError("alpha_series: shells are not decaying");
  }
  out.value = sum;
  return out;
}

double alpha_contour(double w, double x, const ContourSpec& spec) {
  if (!(x >= 0.0 && x < 0.25 && w >= 0.0 && w < std::sqrt(1.0 - 4.0 * x))) {
    throw DomainError("alpha_contour: needs 0 <= x < 1/4, 0 <= w < sqrt(1 - 4x)");
  }
  const Complex v = diagonal_extract(
      [&](Complex xi) { return 1.0 / (principal_sqrt(q1_eval(x, xi) / (xi * xi)) - w); }, spec);
  if (std::abs(v.imag()) >= 1e-10) {
    throw ConvergenceError("alpha_contour: imaginary residue above 1e-10");
  }
  return v.real();
}

}  // namespace ulam
