// Closed-form route to alpha(w, x^2) = A1 + A2: the quartics Q1, Q2 and their
// roots, the residue term A1, the branch-cut integral A2, complete elliptic
// integrals, and the Moebius reduction of A2 to Legendre normal form.
#pragma once

#include "ulam/genfun.hpp"

#include <array>
#include <vector>

namespace ulam {

/// Near x = 1/4 the roots c2, d1 collide; everything here rejects x > 0.24.
inline constexpr double kEllipticMaxX = 0.24;

/// Q1(x; xi) = (xi - x (xi^2 + 1))^2 - 4 x^2 xi^2.
Complex q1_eval(double x, Complex xi);
/// Q2(x, w; xi) = Q1(x; xi) - w^2 xi^2.
Complex q2_eval(double x, double w, Complex xi);

/// (c1, c2, d1, d2) for Q1, or (a1, a2, b1, b2) for Q2, ascending.
struct QuarticRootSet {
  double x = 0.0;
  double w = 0.0;
  bool has_w = false;
  std::array<double, 4> roots{};
};

QuarticRootSet q1_roots(double x);
QuarticRootSet q2_roots(double x, double w);

/// x sqrt(xi - c1) sqrt(xi - c2) sqrt(d1 - xi) sqrt(d2 - xi), principal roots.
/// The analytic continuation of sqrt(Q1) off the cuts [c1,c2] u [d1,d2];
/// real points on a cut are rejected.
Complex g_tilde(double x, Complex xi);

/// One-sided boundary value of g_tilde at a real point r, from offsets
/// r +- i eps, 2i eps, 4i eps (two Richardson levels, error O(eps^3)).
Complex g_tilde_limit(double x, double r, bool from_above, double eps = 1e-6);

/// A1 = 2 w a1 a2^2 / (x^2 (a2 - a1) (1 - a2^2) (1 - a1 a2)).
double a1_closed(double x, double w);
/// sum over j of (g_tilde(a_j) + w a_j) / Q2'(a_j), g_tilde evaluated numerically.
double a1_residue(double x, double w);
/// 2 w a2 / (x^2 (a2 - a1) (a2 - b1) (a2 - b2)): only the a2 pole survives
/// because g_tilde(a1) = -w a1.
double a1_residue_simplified(double x, double w);

/// The two-pole variants that assume g_tilde(a_j) = +w a_j for both roots.
struct A1TwoPoleForms {
  double residue_sum = 0.0;      // sum_j 2 w a_j / Q2'(a_j)
  double inversive_closed = 0.0;  // 2w a1 a2 (1 + a1 a2) / (x^2 (1 - a1 a2)(1 - a1^2)(1 - a2^2))
  double a1_pole_term = 0.0;      // 2 w a1 / Q2'(a1)
};
A1TwoPoleForms a1_two_pole_forms(double x, double w);

/// (1/pi) int_{c1}^{c2} sqrt(-Q1) / (-Q2) dr, with r = c1 + (c2 - c1) sin^2(theta)
/// and Gauss-Legendre node doubling.
double a2_quadrature(double x, double w);
/// The same integral after z -> L(z) = (z - 1)/(z + 1), over [-1/sqrt(1+4x), -sqrt(1-4x)].
double a2_quadrature_l_interval(double x, double w);

double alpha_closed(double w, double x);

/// K(k) = int_0^1 dt / sqrt((1 - t^2)(1 - k^2 t^2)) by the AGM.
double elliptic_K(double k);
/// int_0^1 dt / (sqrt((1 - t^2)(1 - k^2 t^2)) (1 - lambda t)); note the
/// linear factor 1 - lambda t.
double elliptic_Pi(double k, double lambda);

/// (z - 1)/(z + 1); infinity at z = -1.
double moebius_L(double z);
/// (q + 1)(z - q) / ((q - 1)(z + q)), q = k^{-1/2}; infinity at z = -q.
double moebius_Lambda(double k, double z);
/// ((1 - sqrt k)/(1 + sqrt k))^2.
double involution_J(double k);

struct PoleTerm {
  double pole_image = 0.0;  // Phi(rho) for a root rho of Q2
  double coefficient = 0.0;
};

struct EllipticReduction {
  double x = 0.0;
  double w = 0.0;
  /// Phi(z) = (A z + B) / (C z + D), normalized to A D - B C = 1.
  std::array<double, 4> moebius{};
  double modulus_k1 = 0.0;  // modulus after the L stage, sqrt(1 - 16 x^2)
  double modulus_k = 0.0;   // J(modulus_k1)
  double xi_constant = 0.0;
  double pf_constant = 0.0;
  std::vector<PoleTerm> pf_terms;

  double phi(double z) const;
  double phi_inverse(double s) const;
};

/// Builds Phi with Phi(c1, c2, d1, d2) = (-1, 1, 1/k, -1/k) and carries the
/// partial fractions of Q1/Q2 through Phi^{-1}. Needs w > 0.
EllipticReduction legendre_reduce(double x, double w);

/// Partial fractions of Q1/Q2 over the roots of Q2: 1 + sum coef/(z - rho).
struct QuarticPartialFractions {
  std::array<double, 4> poles{};
  std::array<double, 4> coefficients{};
  Complex eval(Complex z) const;
};
QuarticPartialFractions q_ratio_partial_fractions(double x, double w);

struct PiTerm {
  double coefficient = 0.0;  // multiplies Pi(k; lambda) + Pi(k; -lambda)
  double lambda = 0.0;
};

struct PiCombination {
  double value = 0.0;
  double modulus_k = 0.0;
  double k_coefficient = 0.0;  // multiplies K(k)
  std::vector<PiTerm> terms;
};

/// A2 = k_coefficient K(k) + sum c_i (Pi(k; l_i) + Pi(k; -l_i)).
PiCombination a2_pi_combination(double x, double w);

}  // namespace ulam
