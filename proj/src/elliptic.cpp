#include "ulam/elliptic.hpp"

#include "ulam/exact.hpp"
#include "ulam/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace ulam {

namespace {

constexpr double kQuadTol = 1e-13;

void require_x(double x, const char* who) {
  if (!(x > 0.0 && x <= kEllipticMaxX)) {
    throw DomainError(std::string(who) + ": needs 0 < x <= 0.24");
  }
}

void require_xw(double x, double w, const char* who) {
  require_x(x, who);
  if (!(w >= 0.0 && 4.0 * x + w * w < 1.0)) {
    throw DomainError(std::string(who) + ": needs w >= 0 and 4x + w^2 < 1");
  }
}

// Q2'(rho) = x^2 prod_{sigma != rho} (rho - sigma).
double q2_derivative_at(double x, const std::array<double, 4>& r, std::size_t i) {
  double p = x * x;
  for (std::size_t j = 0; j < 4; ++j) {
    if (j != i) {
      p *= r[i] - r[j];
    }
  }
  return p;
}

// (c1 - a1, a2 - c2) without cancellation; both vanish exactly at w = 0.
std::array<double, 2> root_gaps(double x, double w) {
  const double s = std::sqrt(4.0 * x * x + w * w);
  const double u = std::sqrt(1.0 + 4.0 * x);
  const double v = std::sqrt(1.0 - 4.0 * x);
  const double excess = w * w / (s + 2.0 * x);  // s - 2x
  const double root_p = std::sqrt(1.0 + w * w + 2.0 * s);
  const double root_m = std::sqrt(std::max(0.0, 1.0 + w * w - 2.0 * s));
  const double p0 = 1.0 + 2.0 * x + u;
  const double p = 1.0 + s + root_p;
  const double dp = excess + (w * w + 2.0 * excess) / (root_p + u);
  const double m0 = 1.0 - 2.0 * x + v;
  const double m = 1.0 - s + root_m;
  const double dm = excess + (2.0 * excess - w * w) / (v + root_m);
  return {2.0 * x * dp / (p * p0), 2.0 * x * dm / (m * m0)};
}

}  // namespace

Complex q1_eval(double x, Complex xi) {
  const Complex a = xi - x * (xi * xi + 1.0);
  return a * a - 4.0 * x * x * xi * xi;
}

Complex q2_eval(double x, double w, Complex xi) { return q1_eval(x, xi) - w * w * xi * xi; }

QuarticRootSet q1_roots(double x) {
  require_x(x, "q1_roots");
  const double u = std::sqrt(1.0 + 4.0 * x);
  const double v = std::sqrt(1.0 - 4.0 * x);
  // (1 + 2x - u)/2x = 4x/(1 + u)^2, and likewise for c2; d_i = 1/c_j.
  const double c1 = 4.0 * x / ((1.0 + u) * (1.0 + u));
  const double c2 = 4.0 * x / ((1.0 + v) * (1.0 + v));
  QuarticRootSet r;
  r.x = x;
  r.roots = {c1, c2, 1.0 / c2, 1.0 / c1};
  return r;
}

QuarticRootSet q2_roots(double x, double w) {
  require_x(x, "q2_roots");
  if (!(w >= 0.0 && w * w <= 1.0 - 4.0 * x)) {
    throw DomainError("q2_roots: needs 0 <= w <= sqrt(1 - 4x)");
  }
  const double s = std::sqrt(4.0 * x * x + w * w);
  const double a1 = 2.0 * x / (1.0 + s + std::sqrt(1.0 + w * w + 2.0 * s));
  const double a2 = 2.0 * x / (1.0 - s + std::sqrt(std::max(0.0, 1.0 + w * w - 2.0 * s)));
  QuarticRootSet r;
  r.x = x;
  r.w = w;
  r.has_w = true;
  r.roots = {a1, a2, 1.0 / a2, 1.0 / a1};
  return r;
}

Complex g_tilde(double x, Complex xi) {
  const auto [c1, c2, d1, d2] = q1_roots(x).roots;
  if (xi.imag() == 0.0 && ((xi.real() >= c1 && xi.real() <= c2) || (xi.real() >= d1 && xi.real() <= d2))) {
    throw DomainError("g_tilde: point lies on a branch cut");
  }
  return x * principal_sqrt(xi - c1) * principal_sqrt(xi - c2) * principal_sqrt(d1 - xi) * principal_sqrt(d2 - xi);
}

Complex g_tilde_limit(double x, double r, bool from_above, double eps) {
  if (!(eps > 0.0)) {
    throw DomainError("g_tilde_limit: eps must be positive");
  }
  const double h = from_above ? eps : -eps;
  // Cancels the O(h) and O(h^2) terms of the offset expansion.
  return (8.0 * g_tilde(x, Complex(r, h)) - 6.0 * g_tilde(x, Complex(r, 2.0 * h)) + g_tilde(x, Complex(r, 4.0 * h))) / 3.0;
}

double a1_closed(double x, double w) {
  require_xw(x, w, "a1_closed");
  const auto r = q2_roots(x, w).roots;
  const double a1 = r[0];
  const double a2 = r[1];
  return 2.0 * w * a1 * a2 * a2 / (x * x * (a2 - a1) * (1.0 - a2 * a2) * (1.0 - a1 * a2));
}

double a1_residue(double x, double w) {
  require_xw(x, w, "a1_residue");
  const auto r = q2_roots(x, w).roots;
  double total = 0.0;
  for (std::size_t j = 0; j < 2; ++j) {
    const double num = (g_tilde(x, Complex(r[j], 0.0)) + w * r[j]).real();
    total += num / q2_derivative_at(x, r, j);
  }
  return total;
}

double a1_residue_simplified(double x, double w) {
  require_xw(x, w, "a1_residue_simplified");
  const auto r = q2_roots(x, w).roots;
  return 2.0 * w * r[1] / q2_derivative_at(x, r, 1);
}

A1TwoPoleForms a1_two_pole_forms(double x, double w) {
  require_xw(x, w, "a1_two_pole_forms");
  const auto r = q2_roots(x, w).roots;
  const double a1 = r[0];
  const double a2 = r[1];
  A1TwoPoleForms f;
  f.a1_pole_term = 2.0 * w * a1 / q2_derivative_at(x, r, 0);
  f.residue_sum = f.a1_pole_term + 2.0 * w * a2 / q2_derivative_at(x, r, 1);
  f.inversive_closed = 2.0 * w * a1 * a2 * (1.0 + a1 * a2) /
                       (x * x * (1.0 - a1 * a2) * (1.0 - a1 * a1) * (1.0 - a2 * a2));
  return f;
}

double a2_quadrature(double x, double w) {
  require_xw(x, w, "a2_quadrature");
  const auto [c1, c2, d1, d2] = q1_roots(x).roots;
  const auto roots = q2_roots(x, w).roots;
  const double b1 = roots[2];
  const double b2 = roots[3];
  const double len = c2 - c1;
  const auto [gap_lo, gap_hi] = root_gaps(x, w);
  // With r = c1 + len sin^2: sqrt(-Q1) dr = 2 x len^2 sin^2 cos^2 sqrt((d1-r)(d2-r)) dtheta.
  auto integrand = [&](double theta) {
    const double s2 = std::sin(theta) * std::sin(theta);
    const double co2 = 1.0 - s2;
    const double r = c1 + len * s2;
    const double neg_q2 = x * x * (gap_lo + len * s2) * (gap_hi + len * co2) * (b1 - r) * (b2 - r);
    return 2.0 * x * len * len * s2 * co2 * std::sqrt((d1 - r) * (d2 - r)) / neg_q2;
  };
  const QuadratureResult q = integrate_doubling(integrand, 0.0, 0.5 * std::numbers::pi, kQuadTol);
  return q.value / std::numbers::pi;
}

double a2_quadrature_l_interval(double x, double w) {
  require_xw(x, w, "a2_quadrature_l_interval");
  const double u = std::sqrt(1.0 + 4.0 * x);
  const double v = std::sqrt(1.0 - 4.0 * x);
  const double lo = -1.0 / u;
  const double hi = -v;
  const double len = hi - lo;
  // r = lo + len sin^2; the radicand factors (r - lo) and (hi - r) cancel the Jacobian.
  auto integrand = [&](double theta) {
    const double s2 = std::sin(theta) * std::sin(theta);
    const double r = lo + len * s2;
    const double z = (1.0 + r) / (1.0 - r);
    const double ratio = (q1_eval(x, Complex(z, 0.0)) / q2_eval(x, w, Complex(z, 0.0))).real();
    const double rest = (1.0 + 4.0 * x) * (1.0 / u - r) * (v - r) / (v * v);
    return 2.0 * ratio / std::sqrt(rest);
  };
  const QuadratureResult q = integrate_doubling(integrand, 0.0, 0.5 * std::numbers::pi, kQuadTol);
  return 2.0 * q.value / (std::numbers::pi * v);
}

double alpha_closed(double w, double x) {
  require_xw(x, w, "alpha_closed");
  const double a1 = (w == 0.0) ? 0.0 : a1_closed(x, w);
  return a1 + a2_quadrature(x, w);
}

double elliptic_K(double k) {
  if (!(std::abs(k) < 1.0)) {
    throw DomainError("elliptic_K: needs |k| < 1");
  }
  double a = 1.0;
  double b = std::sqrt((1.0 - k) * (1.0 + k));
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return 0.5 * std::numbers::pi / a;
}

double elliptic_Pi(double k, double lambda) {
  if (!(std::abs(k) < 1.0)) {
    throw DomainError("elliptic_Pi: needs |k| < 1");
  }
  if (!(std::abs(lambda) < 1.0)) {
    throw DomainError("elliptic_Pi: needs |lambda| < 1");
  }
  auto integrand = [&](double theta) {
    const double s = std::sin(theta);
    return 1.0 / (std::sqrt(1.0 - k * k * s * s) * (1.0 - lambda * s));
  };
  return integrate_doubling(integrand, 0.0, 0.5 * std::numbers::pi, kQuadTol, 16, 1 << 16).value;
}

double moebius_L(double z) {
  if (z == -1.0) {
    return std::numeric_limits<double>::infinity();
  }
  return (z - 1.0) / (z + 1.0);
}

double moebius_Lambda(double k, double z) {
  if (!(k > 0.0 && k < 1.0)) {
    throw DomainError("moebius_Lambda: needs 0 < k < 1");
  }
  const double q = 1.0 / std::sqrt(k);
  if (z == -q) {
    return std::numeric_limits<double>::infinity();
  }
  return (q + 1.0) * (z - q) / ((q - 1.0) * (z + q));
}

double involution_J(double k) {
  if (!(k > 0.0 && k < 1.0)) {
    throw DomainError("involution_J: needs 0 < k < 1");
  }
  const double r = (1.0 - std::sqrt(k)) / (1.0 + std::sqrt(k));
  return r * r;
}

double EllipticReduction::phi(double z) const {
  return (moebius[0] * z + moebius[1]) / (moebius[2] * z + moebius[3]);
}

double EllipticReduction::phi_inverse(double s) const {
  return (moebius[3] * s - moebius[1]) / (moebius[0] - moebius[2] * s);
}

Complex QuarticPartialFractions::eval(Complex z) const {
  Complex v = 1.0;
  for (std::size_t i = 0; i < 4; ++i) {
    v += coefficients[i] / (z - poles[i]);
  }
  return v;
}

QuarticPartialFractions q_ratio_partial_fractions(double x, double w) {
  require_xw(x, w, "q_ratio_partial_fractions");
  if (!(w > 0.0)) {
    throw DomainError("q_ratio_partial_fractions: needs w > 0");
  }
  QuarticPartialFractions pf;
  pf.poles = q2_roots(x, w).roots;
  // Q1/Q2 = 1 + w^2 z^2 / Q2(z).
  for (std::size_t i = 0; i < 4; ++i) {
    const double rho = pf.poles[i];
    pf.coefficients[i] = w * w * rho * rho / q2_derivative_at(x, pf.poles, i);
  }
  return pf;
}

EllipticReduction legendre_reduce(double x, double w) {
  require_xw(x, w, "legendre_reduce");
  if (!(w > 0.0)) {
    throw DomainError("legendre_reduce: needs w > 0");
  }
  using Mat = std::array<double, 4>;  // (a, b, c, d)
  auto mul = [](const Mat& p, const Mat& q) -> Mat {
    return {p[0] * q[0] + p[1] * q[2], p[0] * q[1] + p[1] * q[3], p[2] * q[0] + p[3] * q[2],
            p[2] * q[1] + p[3] * q[3]};
  };
  EllipticReduction red;
  red.x = x;
  red.w = w;
  red.modulus_k1 = std::sqrt(1.0 - 16.0 * x * x);
  red.modulus_k = involution_J(red.modulus_k1);
  const double v = std::sqrt(1.0 - 4.0 * x);
  const double q = 1.0 / std::sqrt(red.modulus_k1);

  // Phi(z) = -Lambda(k1; -L(z)/sqrt(1 - 4x)).
  const Mat l_map{1.0, -1.0, 1.0, 1.0};
  const Mat rescale{-1.0 / v, 0.0, 0.0, 1.0};
  const Mat lambda_map{q + 1.0, -(q + 1.0) * q, q - 1.0, (q - 1.0) * q};
  const Mat negate{-1.0, 0.0, 0.0, 1.0};
  Mat m = mul(negate, mul(lambda_map, mul(rescale, l_map)));
  const double det = m[0] * m[3] - m[1] * m[2];
  if (!(det > 0.0)) {
    throw std::logic_error("legendre_reduce: orientation-reversing map");
  }
  const double scale = 1.0 / std::sqrt(det);
  for (auto& e : m) {
    e *= scale;
  }
  red.moebius = m;

  const auto croots = q1_roots(x).roots;
  const std::array<double, 4> targets{-1.0, 1.0, 1.0 / red.modulus_k, -1.0 / red.modulus_k};
  double prod = 1.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double image = red.phi(croots[i]);
    if (std::abs(image - targets[i]) > 1e-8 * std::max(1.0, std::abs(targets[i]))) {
      throw ConvergenceError("legendre_reduce: root images miss their targets");
    }
    prod *= m[3] + m[2] * croots[i];
  }
  red.xi_constant = -(x * x / (red.modulus_k * red.modulus_k)) * prod;

  const QuarticPartialFractions pf = q_ratio_partial_fractions(x, w);
  red.pf_constant = 1.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double rho = pf.poles[i];
    const double den = m[2] * rho + m[3];
    red.pf_constant -= pf.coefficients[i] * m[2] / den;
    red.pf_terms.push_back({red.phi(rho), pf.coefficients[i] / (den * den)});
  }
  for (const auto& t : red.pf_terms) {
    if (!(std::abs(t.pole_image) > 1.0)) {
      throw ConvergenceError("legendre_reduce: pole image inside [-1, 1]");
    }
  }
  return red;
}

PiCombination a2_pi_combination(double x, double w) {
  const EllipticReduction red = legendre_reduce(x, w);
  if (!(red.xi_constant > 0.0)) {
    throw std::logic_error("a2_pi_combination: non-positive Xi");
  }
  const double pre = 1.0 / (std::numbers::pi * std::sqrt(red.xi_constant));
  PiCombination out;
  out.modulus_k = red.modulus_k;
  out.k_coefficient = 2.0 * red.pf_constant * pre;
  out.value = out.k_coefficient * elliptic_K(red.modulus_k);
  // int_{-1}^{1} ds / ((s - sigma) sqrt(...)) = -(1/sigma) [Pi(k; 1/sigma) + Pi(k; -1/sigma)].
  for (const auto& t : red.pf_terms) {
    const double lambda = 1.0 / t.pole_image;
    const PiTerm term{-t.coefficient * lambda * pre, lambda};
    out.terms.push_back(term);
    out.value += term.coefficient * (elliptic_Pi(red.modulus_k, lambda) + elliptic_Pi(red.modulus_k, -lambda));
  }
  return out;
}

}  // namespace ulam
