#include "doctest.h"

#include "ulam/elliptic.hpp"
#include "ulam/exact.hpp"
#include "ulam/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace ulam;

namespace {

struct XW {
  double x;
  double w;
};

std::vector<XW> root_grid() {
  std::vector<XW> g;
  for (double x : {0.02, 0.05, 0.1, 0.15, 0.2}) {
    for (double w : {0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6}) {
      if (4.0 * x + w * w < 1.0) {
        g.push_back({x, w});
      }
    }
  }
  return g;
}

// Simpson's rule on the sin-substituted integrand; deliberately not Gauss.
double simpson_K(double k) {
  const int n = 2000;
  const double h = 0.5 * std::numbers::pi / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = i * h;
    const double f = 1.0 / std::sqrt(1.0 - k * k * std::sin(t) * std::sin(t));
    s += f * ((i == 0 || i == n) ? 1.0 : (i % 2 != 0 ? 4.0 : 2.0));
  }
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("Gauss-Legendre rules") {
  for (int n : {1, 2, 5, 16, 64}) {
    const auto& r = gauss_legendre(n);
    double wsum = 0.0;
    for (double w : r.weights) {
      wsum += w;
    }
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
  }
  // Exact for polynomials of degree 2n - 1.
  const double v = integrate_fixed([](double t) { return std::pow(t, 9) + 3.0 * t * t; }, 0.0, 2.0, 5);
  CHECK(v == doctest::Approx(1024.0 / 10.0 + 8.0).epsilon(1e-14));
  CHECK(integrate_doubling([](double t) { return std::exp(t); }, 0.0, 1.0, 1e-14).value ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
}

TEST_CASE("quartic evaluation") {
  for (double x : {0.05, 0.1, 0.2}) {
    CHECK(std::abs(q1_eval(x, 0.0) - x * x) < 1e-16);
    const Complex xi(0.3, -0.7);
    CHECK(std::abs(q2_eval(x, 0.0, xi) - q1_eval(x, xi)) == 0.0);
    CHECK(std::abs((q2_eval(x, 0.4, xi) - q1_eval(x, xi)) + 0.16 * xi * xi) < 1e-15);
  }
}

TEST_CASE("roots of Q1") {
  const auto r = q1_roots(0.1).roots;
  CHECK(r[0] == doctest::Approx(0.0839202).epsilon(1e-6));
  CHECK(r[1] == doctest::Approx(0.1270166).epsilon(1e-6));
  CHECK(r[2] == doctest::Approx(7.8729833).epsilon(1e-7));
  CHECK(r[3] == doctest::Approx(11.9160798).epsilon(1e-7));
  // The textbook quadratic-formula expressions.
  const double x = 0.1;
  CHECK(r[0] == doctest::Approx((1 + 2 * x - std::sqrt(1 + 4 * x)) / (2 * x)).epsilon(1e-14));
  CHECK(r[3] == doctest::Approx((1 + 2 * x + std::sqrt(1 + 4 * x)) / (2 * x)).epsilon(1e-14));
  for (double xx : {0.02, 0.05, 0.1, 0.15, 0.2, 0.24}) {
    const auto q = q1_roots(xx).roots;
    for (double root : q) {
      CHECK(std::abs(q1_eval(xx, root)) < 1e-11 * std::max(1.0, std::pow(xx * root * root, 2)));
    }
    CHECK(std::abs(q[0] * q[3] - 1.0) < 1e-12);
    CHECK(std::abs(q[1] * q[2] - 1.0) < 1e-12);
    CHECK(q[1] < q[2]);
  }
  CHECK_THROWS_AS(q1_roots(0.25), DomainError);
  CHECK_THROWS_AS(q1_roots(0.241), DomainError);
  CHECK_THROWS_AS(q1_roots(0.0), DomainError);
}

TEST_CASE("roots of Q2 on the grid") {
  for (const auto& p : root_grid()) {
    const auto a = q2_roots(p.x, p.w).roots;
    const auto c = q1_roots(p.x).roots;
    for (double root : a) {
      CHECK(std::abs(q2_eval(p.x, p.w, root)) < 1e-11 * std::max(1.0, std::pow(p.x * root * root, 2)));
    }
    CHECK(std::abs(a[0] * a[3] - 1.0) < 1e-12);
    CHECK(std::abs(a[1] * a[2] - 1.0) < 1e-12);
    const std::vector<double> chain{0.0, a[0], c[0], c[1], a[1], 1.0, a[2], c[2], c[3], a[3]};
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      CHECK(chain[i] < chain[i + 1]);
    }
  }
  for (double x : {0.02, 0.1, 0.2}) {
    const auto a = q2_roots(x, 0.0).roots;
    const auto c = q1_roots(x).roots;
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(std::abs(a[i] - c[i]) < 1e-12 * std::max(1.0, c[i]));
    }
  }
  CHECK_THROWS_AS(q2_roots(0.1, 0.8), DomainError);
}

TEST_CASE("g_tilde continues sqrt(Q1)") {
  for (double x : {0.05, 0.1, 0.2}) {
    CHECK(g_tilde(x, 1.0).real() > 0.0);
    CHECK(g_tilde(x, 1.0).imag() == 0.0);
  }
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> u(-15.0, 15.0);
  for (int i = 0; i < 1000; ++i) {
    const Complex xi(u(gen), u(gen));
    const Complex g = g_tilde(0.1, xi);
    const Complex q = q1_eval(0.1, xi);
    CHECK(std::abs(g * g - q) < 1e-11 * std::abs(q));
  }
  const auto c = q1_roots(0.1).roots;
  CHECK_THROWS_AS(g_tilde(0.1, 0.5 * (c[0] + c[1])), DomainError);
  CHECK_THROWS_AS(g_tilde(0.1, 0.5 * (c[2] + c[3])), DomainError);
  // Outside the cuts on the real line the sign is fixed.
  CHECK(g_tilde(0.1, 0.5 * c[0]).real() < 0.0);
  CHECK(g_tilde(0.1, 2.0 * c[3]).real() < 0.0);
  CHECK(g_tilde(0.1, -3.0).real() < 0.0);
}

TEST_CASE("g_tilde jumps across the cut (c1, c2)") {
  const double eps = 1e-6;
  for (double x : {0.02, 0.05, 0.1, 0.15, 0.2}) {
    const auto c = q1_roots(x).roots;
    for (double t : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const double r = c[0] + t * (c[1] - c[0]);
      const double root = std::sqrt(-q1_eval(x, r).real());
      const Complex above = g_tilde_limit(x, r, true, eps);
      const Complex below = g_tilde_limit(x, r, false, eps);
      // A bare offset only matches the imaginary part to O(eps^2), too coarse on the narrow x = 0.02 cut.
      if (x >= 0.05) {
        CHECK(std::abs(g_tilde(x, Complex(r, eps)).imag() - root) < 1e-9);
      }
      CHECK(std::abs(above - Complex(0.0, root)) < 1e-9);
      CHECK(std::abs(below - Complex(0.0, -root)) < 1e-9);
      CHECK(std::abs((below - above) - Complex(0.0, -2.0 * root)) < 2e-9);
    }
  }
}

TEST_CASE("A1 expressions agree") {
  for (const auto& p : root_grid()) {
    const double closed = a1_closed(p.x, p.w);
    const double res = a1_residue(p.x, p.w);
    const double simp = a1_residue_simplified(p.x, p.w);
    CHECK(closed > 0.0);
    CHECK(std::abs(closed - res) < 1e-11 * std::abs(closed));
    CHECK(std::abs(closed - simp) < 1e-11 * std::abs(closed));
    CHECK(std::abs(res - simp) < 1e-11 * std::abs(closed));
  }
  CHECK(a1_closed(0.1, 1e-9) < 1e-7);
  CHECK(a1_closed(0.1, 0.0) == 0.0);
  CHECK(a1_closed(0.05, 0.5) > 0.0);
}

TEST_CASE("two-pole A1 forms exceed the true A1 by the a1 pole term") {
  for (const auto& p : root_grid()) {
    const A1TwoPoleForms f = a1_two_pole_forms(p.x, p.w);
    const double truth = a1_closed(p.x, p.w);
    CHECK(std::abs(f.residue_sum - f.inversive_closed) < 1e-11 * std::abs(truth));
    CHECK(std::abs(f.residue_sum - (truth + f.a1_pole_term)) < 1e-11 * std::abs(truth));
    CHECK(f.a1_pole_term < 0.0);
  }
}

TEST_CASE("A2 quadrature") {
  for (double x : {0.05, 0.1, 0.15}) {
    CHECK(std::abs(a2_quadrature(x, 0.0) - 2.0 / std::numbers::pi * elliptic_K(4.0 * x)) < 1e-10);
  }
  CHECK(std::abs(a2_quadrature(0.1, 0.0) - 1.04405634128953) < 1e-12);
  for (const auto& p : root_grid()) {
    CHECK(std::abs(a2_quadrature(p.x, p.w) - a2_quadrature_l_interval(p.x, p.w)) < 1e-11);
  }
  // Integrand sqrt(-Q1)/(-Q2) is positive on (c1, c2).
  const auto c = q1_roots(0.1).roots;
  for (int i = 1; i < 1000; ++i) {
    const double r = c[0] + (c[1] - c[0]) * i / 1000.0;
    CHECK(-q1_eval(0.1, r).real() > 0.0);
    CHECK(-q2_eval(0.1, 0.2, r).real() > 0.0);
  }
  CHECK(std::abs(a2_quadrature(0.1, 0.2) - (alpha_contour(0.2, 0.1) - a1_closed(0.1, 0.2))) < 1e-9);
}

TEST_CASE("alpha_closed") {
  CHECK(std::abs(alpha_closed(0.0, 0.1) - 2.0 / std::numbers::pi * elliptic_K(0.4)) < 1e-12);
  CHECK(std::abs(alpha_closed(0.2, 0.1) - alpha_contour(0.2, 0.1)) < 1e-9);
  CHECK(std::abs(alpha_closed(0.2, 0.1) - alpha_series(0.2, 0.1).value) < 1e-9);
  double last = 0.0;
  for (double w : {0.1, 0.2, 0.3, 0.35, 0.39}) {
    const double v = alpha_closed(w, 0.15);
    CHECK(std::isfinite(v));
    CHECK(v > last);
    last = v;
  }
  CHECK_THROWS_AS(alpha_closed(0.1, 0.245), DomainError);
  CHECK_THROWS_AS(alpha_closed(0.6, 0.2), DomainError);
}

TEST_CASE("elliptic K") {
  CHECK(elliptic_K(0.0) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
  CHECK(std::abs(elliptic_K(0.4) - simpson_K(0.4)) < 1e-12);
  CHECK(std::abs(elliptic_K(0.7) - std::comp_ellint_1(0.7)) < 1e-13 * elliptic_K(0.7));
  double series = 0.0;
  double term = 1.0;
  for (int n = 0; n < 60; ++n) {
    series += term;
    const double r = (2.0 * n + 1.0) / (2.0 * n + 2.0);
    term *= r * r * 0.09;
  }
  CHECK(std::abs(2.0 / std::numbers::pi * elliptic_K(0.3) - series) < 1e-12);
  CHECK_THROWS_AS(elliptic_K(1.0), DomainError);
}

TEST_CASE("elliptic Pi with a linear factor") {
  for (double k : {0.0, 0.3, 0.8}) {
    CHECK(std::abs(elliptic_Pi(k, 0.0) - elliptic_K(k)) < 1e-13);
  }
  // int_0^{pi/2} dtheta / (1 - l sin theta) in closed form.
  const double l = 0.5;
  const double want = 2.0 / std::sqrt(1.0 - l * l) * (std::numbers::pi / 4.0 + std::asin(l) / 2.0);
  CHECK(std::abs(elliptic_Pi(0.0, l) - want) < 1e-11);
  CHECK(std::abs(elliptic_Pi(0.4, 0.3) + elliptic_Pi(0.4, -0.3) - 2.0 * std::comp_ellint_3(0.4, 0.09)) < 1e-11);
  CHECK_THROWS_AS(elliptic_Pi(0.4, 1.0), DomainError);
  CHECK_THROWS_AS(elliptic_Pi(1.2, 0.1), DomainError);
}

TEST_CASE("Moebius maps") {
  CHECK(moebius_L(1.0) == 0.0);
  CHECK(std::isinf(moebius_L(-1.0)));
  for (double z : {0.3, 2.0, 7.5}) {
    CHECK(std::abs(moebius_L(1.0 / z) + moebius_L(z)) < 1e-15);
  }
  for (double k : {0.2, 0.37, 0.9}) {
    CHECK(std::abs(moebius_Lambda(k, 1.0 / k) - 1.0) < 1e-13);
    CHECK(std::abs(moebius_Lambda(k, 1.0) + 1.0) < 1e-13);
    CHECK(std::abs(moebius_Lambda(k, -1.0) + 1.0 / involution_J(k)) < 1e-10 / involution_J(k));
    CHECK(std::abs(moebius_Lambda(k, -1.0 / k) - 1.0 / involution_J(k)) < 1e-10 / involution_J(k));
  }
  const double fixed = (std::sqrt(2.0) - 1.0) * (std::sqrt(2.0) - 1.0);
  CHECK(std::abs(involution_J(fixed) - fixed) < 1e-15);
  CHECK(std::abs(involution_J(involution_J(0.37)) - 0.37) < 1e-13);
}

TEST_CASE("Legendre reduction") {
  for (const auto& p : root_grid()) {
    const EllipticReduction red = legendre_reduce(p.x, p.w);
    const double k1 = std::sqrt(1.0 - 16.0 * p.x * p.x);
    CHECK(std::abs(red.modulus_k1 - k1) < 1e-15);
    CHECK(std::abs(red.modulus_k - involution_J(k1)) < 1e-15);
    CHECK(red.modulus_k > 0.0);
    CHECK(red.modulus_k < 1.0);
    const auto& m = red.moebius;
    CHECK(std::abs(m[0] * m[3] - m[1] * m[2] - 1.0) < 1e-12);
    const auto c = q1_roots(p.x).roots;
    const std::vector<double> targets{-1.0, 1.0, 1.0 / red.modulus_k, -1.0 / red.modulus_k};
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(std::abs(red.phi(c[i]) - targets[i]) < 1e-10 * std::max(1.0, std::abs(targets[i])));
      CHECK(std::abs(red.phi_inverse(red.phi(c[i])) - c[i]) < 1e-10 * c[i]);
    }
    CHECK(red.xi_constant > 0.0);
    REQUIRE(red.pf_terms.size() == 4);
    for (const auto& t : red.pf_terms) {
      CHECK(std::abs(t.pole_image) > 1.0);
    }
  }
  const double x = 0.1;
  const double r = (1.0 - std::pow(1.0 - 16.0 * x * x, 0.25)) / (1.0 + std::pow(1.0 - 16.0 * x * x, 0.25));
  CHECK(std::abs(legendre_reduce(x, 0.2).modulus_k - r * r) < 1e-15);
  CHECK_THROWS_AS(legendre_reduce(0.1, 0.0), DomainError);
}

TEST_CASE("partial fractions of Q1/Q2") {
  std::mt19937_64 gen(2718);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (const auto& p : std::vector<XW>{{0.1, 0.2}, {0.05, 0.4}, {0.2, 0.3}}) {
    const QuarticPartialFractions pf = q_ratio_partial_fractions(p.x, p.w);
    for (int i = 0; i < 1000; ++i) {
      const Complex z(u(gen), u(gen));
      const Complex direct = q1_eval(p.x, z) / q2_eval(p.x, p.w, z);
      CHECK(std::abs(pf.eval(z) - direct) < 1e-10 * std::abs(direct));
    }
  }
}

TEST_CASE("A2 as a K and Pi combination") {
  const std::vector<XW> pts{{0.1, 0.2}, {0.05, 0.4}, {0.02, 0.1}, {0.15, 0.3}, {0.2, 0.1}, {0.1, 0.5}};
  for (const auto& p : pts) {
    const PiCombination pc = a2_pi_combination(p.x, p.w);
    CHECK(std::abs(pc.value - a2_quadrature(p.x, p.w)) < 1e-8);
    CHECK(pc.terms.size() <= 4);
    double rebuilt = pc.k_coefficient * elliptic_K(pc.modulus_k);
    for (const auto& t : pc.terms) {
      CHECK(std::abs(t.lambda) < 1.0);
      rebuilt += t.coefficient * (elliptic_Pi(pc.modulus_k, t.lambda) + elliptic_Pi(pc.modulus_k, -t.lambda));
    }
    CHECK(std::abs(rebuilt - pc.value) < 1e-13);
  }
}
