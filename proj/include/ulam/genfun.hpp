// Generating functions kappa^(1), kappa^(2), kappa and alpha(w, x^2), with
// three independent routes to alpha: the coefficient series, the unit-circle
// contour integral, and (in elliptic.hpp) the residue/branch-cut closed form.
#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace ulam {

using Complex = std::complex<double>;

/// exp(log(z)/2) on the principal branch. On the negative real axis the
/// upper-half-plane limit is taken, so a signed-zero imaginary part does not
/// flip the result.
Complex principal_sqrt(Complex z);

/// 1 / (1 - x - y); needs |x| + |y| < 1.
Complex kappa1(Complex x, Complex y);
/// 1 / sqrt((1 - x - y)^2 - 4xy); needs |x|, |y| < 1/4.
Complex kappa2(Complex x, Complex y);
/// kappa2 / (1 - w kappa2). DomainError near the pole.
Complex kappa(Complex w, Complex x, Complex y);

struct ContourSpec {
  int nodes = 8;  // starting node count, a power of two >= 8
  Complex center{0.0, 0.0};
  double radius = 1.0;
};

/// (1/2 pi i) \oint f(xi) dxi / xi by the trapezoid rule, doubling the nodes
/// until two passes agree to 1e-12 (cap 2^18 nodes).
Complex diagonal_extract(const std::function<Complex(Complex)>& f, const ContourSpec& spec = {});

/// Same over the torus |xi| = |zeta| = radius (nested extraction).
Complex diagonal_extract2(const std::function<Complex(Complex, Complex)>& f, const ContourSpec& spec = {});

struct SeriesTruncation {
  int n_max = 0;
  int j_max = -1;  // -1: j summed to infinity in closed form per shell
  double tail_bound = 0.0;
};

struct AlphaSeries {
  double value = 0.0;
  SeriesTruncation truncation;
  std::vector<double> shells;  // S_0 .. S_{n_max}
};

/// sum_N S_N with S_N = x^{2N} sum_j A(N,j) w^j, the j-sum done exactly by
/// the resolvent recurrence F = T + w T*F. With n_max = 0 shells are added
/// until the geometric tail estimate drops below `tol` (at most `n_cap`).
AlphaSeries alpha_series(double w, double x, int n_max = 0, double tol = 1e-13, int n_cap = 400);

/// (1/2 pi i) \oint dxi / (xi (sqrt(Q1(x; xi) / xi^2) - w)) on the unit circle.
double alpha_contour(double w, double x, const ContourSpec& spec = {});

}  // namespace ulam
