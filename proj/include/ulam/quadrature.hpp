// Gauss-Legendre rules on [-1, 1] and a node-doubling integrator.
#pragma once

#include <functional>
#include <vector>

namespace ulam {

struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule by Newton iteration on P_n; cached, safe to call concurrently.
const GaussLegendreRule& gauss_legendre(int n);

double integrate_fixed(const std::function<double(double)>& f, double a, double b, int n);

struct QuadratureResult {
  double value = 0.0;
  double change = 0.0;  // |I_n - I_{n/2}| at the last doubling
  int nodes = 0;
};

/// Doubles the node count from `n_start` until successive values differ by
/// less than tol * max(1, |I|). Throws ConvergenceError past `n_cap`.
QuadratureResult integrate_doubling(const std::function<double(double)>& f, double a, double b, double tol,
                                    int n_start = 16, int n_cap = 4096);

}  // namespace ulam
