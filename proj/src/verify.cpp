#include "ulam/verify.hpp"

#include "ulam/bounds.hpp"
#include "ulam/elliptic.hpp"
#include "ulam/exact.hpp"
#include "ulam/genfun.hpp"
#include "ulam/moments.hpp"
#include "ulam/perm.hpp"
#include "ulam/walk.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

namespace ulam {

namespace {

struct XW {
  double x;
  double w;
};

std::vector<XW> alpha_grid() {
  std::vector<XW> g;
  for (double x : {0.02, 0.05, 0.1, 0.15, 0.2}) {
    for (double w : {0.0, 0.1, 0.3, 0.5}) {
      if (4.0 * x + w * w < 1.0) {
        g.push_back({x, w});
      }
    }
  }
  return g;
}

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

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

// Tallies failures and keeps the first few messages.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) {
      ++failures_;
      if (first_.size() < 3) {
        first_.push_back(what);
      }
    }
  }
  bool ok() const { return failures_ == 0; }
  std::string summary(const std::string& extra) const {
    std::ostringstream os;
    os << checks_ << " checks";
    if (!extra.empty()) {
      os << ", " << extra;
    }
    if (failures_ > 0) {
      os << "; " << failures_ << " failed:";
      for (const auto& f : first_) {
        os << " [" << f << "]";
      }
    }
    return os.str();
  }

 private:
  int checks_ = 0;
  int failures_ = 0;
  std::vector<std::string> first_;
};

CheckResult second_moment_identity(int workers) {
  Tally t;
  for (int n = 1; n <= 7; ++n) {
    for (int k = 1; k <= n; ++k) {
      const ExactRational brute = moment(z_distribution(n, k, workers), 2);
      const ExactRational formula = second_moment(n, k);
      t.expect(brute == formula, "n=" + std::to_string(n) + " k=" + std::to_string(k) + ": " + to_string(formula) +
                                     " vs " + to_string(brute));
    }
  }
  return {1, "exact second-moment identity", t.ok(), t.summary("n <= 7, exact"), 0.0};
}

CheckResult walk_characterization(int workers) {
  Tally t;
  for (int N = 0; N <= 6; ++N) {
    const WalkEnumeration e = enumerate_walks(N, workers);
    const int j_top = N <= 4 ? 4 : 2;
    for (int j = 0; j <= j_top; ++j) {
      const ExactInt walk = a_from_walk_exact(e, j);
      const ExactInt table = a_array(N, j);
      t.expect(walk == table, "N=" + std::to_string(N) + " j=" + std::to_string(j));
    }
  }
  return {2, "walk characterization of A(N,j)", t.ok(), t.summary("exhaustive paths, N <= 6"), 0.0};
}

CheckResult spot_values(int) {
  Tally t;
  t.expect(a_array(1, 0) == 4, "A(1,0)");
  t.expect(a_array(1, 1) == 10, "A(1,1)");
  t.expect(a_array(1, 2) == 18, "A(1,2)");
  t.expect(a_array(2, 0) == 36, "A(2,0)");
  for (int j = 0; j <= 10; ++j) {
    t.expect(a_array(0, j) == 1, "A(0," + std::to_string(j) + ")");
  }
  t.expect(second_moment(3, 2) == ExactRational(19, 6), "E[Z^2](3,2)");
  t.expect(second_moment(4, 2) == ExactRational(67, 6), "E[Z^2](4,2)");
  return {3, "spot values", t.ok(), t.summary(""), 0.0};
}

CheckResult alpha_three_routes(int) {
  Tally t;
  double worst = 0.0;
  const auto grid = alpha_grid();
  for (const auto& p : grid) {
    const double s = alpha_series(p.w, p.x).value;
    const double c = alpha_contour(p.w, p.x);
    const double k = alpha_closed(p.w, p.x);
    const double d1 = std::abs(s - c);
    const double d2 = std::abs(c - k);
    worst = std::max({worst, d1, d2});
    t.expect(d1 < 1e-9 && d2 < 1e-9, "x=" + sci(p.x) + " w=" + sci(p.w));
  }
  return {4, "series/contour/closed alpha agreement", t.ok(),
          t.summary(std::to_string(grid.size()) + " grid points, max diff " + sci(worst)), 0.0};
}

CheckResult polya_elliptic(int) {
  Tally t;
  double worst = 0.0;
  for (double x : {0.05, 0.1, 0.15}) {
    const double d = std::abs(a2_quadrature(x, 0.0) - 2.0 / std::numbers::pi * elliptic_K(4.0 * x));
    worst = std::max(worst, d);
    t.expect(d < 1e-10, "A2(" + sci(x) + ",0)");
  }
  for (double k : {0.0, 0.2, 0.4, 0.6, 0.8}) {
    const double series = 0.5 * std::numbers::pi * polya_series(k, 400);
    t.expect(std::abs(elliptic_K(k) - series) < 1e-12, "K(" + sci(k) + ") vs series");
  }
  return {5, "Polya/elliptic consistency", t.ok(), t.summary("max |A2 - (2/pi)K| " + sci(worst)), 0.0};
}

CheckResult quartic_roots(int) {
  Tally t;
  double worst_res = 0.0;
  const auto grid = root_grid();
  for (const auto& p : grid) {
    const auto a = q2_roots(p.x, p.w).roots;
    const auto c = q1_roots(p.x).roots;
    for (double r : a) {
      const double res = std::abs(q2_eval(p.x, p.w, r));
      worst_res = std::max(worst_res, res);
      t.expect(res < 1e-11, "Q2 residual at x=" + sci(p.x) + " w=" + sci(p.w));
    }
    for (double r : c) {
      const double res = std::abs(q1_eval(p.x, r));
      worst_res = std::max(worst_res, res);
      t.expect(res < 1e-11, "Q1 residual at x=" + sci(p.x));
    }
    t.expect(std::abs(a[0] * a[3] - 1.0) < 1e-12 && std::abs(a[1] * a[2] - 1.0) < 1e-12, "a-root inversion");
    t.expect(std::abs(c[0] * c[3] - 1.0) < 1e-12 && std::abs(c[1] * c[2] - 1.0) < 1e-12, "c-root inversion");
    const std::vector<double> chain{0.0, a[0], c[0], c[1], a[1], 1.0, a[2], c[2], c[3], a[3]};
    t.expect(std::is_sorted(chain.begin(), chain.end(), std::less_equal<>()) &&
                 std::adjacent_find(chain.begin(), chain.end()) == chain.end(),
             "ordering at x=" + sci(p.x) + " w=" + sci(p.w));
  }
  for (double x : {0.02, 0.05, 0.1, 0.15, 0.2}) {
    const auto a = q2_roots(x, 0.0).roots;
    const auto c = q1_roots(x).roots;
    for (std::size_t i = 0; i < 4; ++i) {
      t.expect(std::abs(a[i] - c[i]) < 1e-12 * std::max(1.0, c[i]), "w -> 0 degeneration");
    }
  }
  return {6, "quartic-root suite", t.ok(), t.summary("max residual " + sci(worst_res)), 0.0};
}

CheckResult a1_equivalence(int) {
  Tally t;
  double worst = 0.0;
  for (const auto& p : root_grid()) {
    const double closed = a1_closed(p.x, p.w);
    const double res = a1_residue(p.x, p.w);
    const double simp = a1_residue_simplified(p.x, p.w);
    const double scale = std::abs(closed);
    const double d = std::max({std::abs(closed - res), std::abs(closed - simp), std::abs(res - simp)}) / scale;
    worst = std::max(worst, d);
    t.expect(d < 1e-11, "A1 forms at x=" + sci(p.x) + " w=" + sci(p.w));
    // The two-pole printed forms agree with each other and differ by exactly the a1 pole term.
    const A1TwoPoleForms f = a1_two_pole_forms(p.x, p.w);
    t.expect(std::abs(f.residue_sum - f.inversive_closed) < 1e-11 * scale, "two-pole forms agree");
    t.expect(std::abs(f.residue_sum - (closed + f.a1_pole_term)) < 1e-11 * scale, "two-pole excess is the a1 term");
  }
  return {7, "residue-formula equivalence for A1", t.ok(), t.summary("max relative spread " + sci(worst)), 0.0};
}

CheckResult pi_combination(int) {
  Tally t;
  double worst = 0.0;
  const std::vector<XW> pts{{0.1, 0.2}, {0.05, 0.4}, {0.02, 0.1}, {0.15, 0.3}, {0.2, 0.1}, {0.1, 0.5}};
  for (const auto& p : pts) {
    const PiCombination pc = a2_pi_combination(p.x, p.w);
    const double d = std::abs(pc.value - a2_quadrature(p.x, p.w));
    worst = std::max(worst, d);
    t.expect(d < 1e-8, "Pi combination at x=" + sci(p.x) + " w=" + sci(p.w));
    t.expect(pc.terms.size() <= 4, "term count");
    for (const auto& term : pc.terms) {
      t.expect(std::abs(term.lambda) < 1.0, "|lambda| < 1");
    }
  }
  std::mt19937_64 gen(2718);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const QuarticPartialFractions pf = q_ratio_partial_fractions(0.1, 0.2);
  double worst_pf = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Complex z(u(gen), u(gen));
    const Complex direct = q1_eval(0.1, z) / q2_eval(0.1, 0.2, z);
    const double r = std::abs(pf.eval(z) - direct) / std::abs(direct);
    worst_pf = std::max(worst_pf, r);
    t.expect(r < 1e-10, "partial fractions");
  }
  return {8, "A2 as K and Pi terms", t.ok(),
          t.summary("6 points, max diff " + sci(worst) + ", partial-fraction residual " + sci(worst_pf)), 0.0};
}

CheckResult branch_phase(int) {
  Tally t;
  const double eps = 1e-6;
  double worst = 0.0;
  for (double x : {0.02, 0.05, 0.1, 0.15, 0.2}) {
    const auto c = q1_roots(x).roots;
    for (double s : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const double r = c[0] + s * (c[1] - c[0]);
      const double root = std::sqrt(-q1_eval(x, r).real());
      const double up = std::abs(g_tilde_limit(x, r, true, eps) - Complex(0.0, root));
      const double down = std::abs(g_tilde_limit(x, r, false, eps) - Complex(0.0, -root));
      worst = std::max({worst, up, down});
      t.expect(up < 1e-9 && down < 1e-9, "x=" + sci(x) + " r=" + sci(r));
    }
  }
  return {9, "branch phases on (c1, c2)", t.ok(), t.summary("eps 1e-6, max error " + sci(worst)), 0.0};
}

CheckResult bonferroni(int workers) {
  Tally t;
  for (int n = 1; n <= 7; ++n) {
    for (int k = 1; k <= n; ++k) {
      const ZDistribution d = z_distribution(n, k, workers);
      const int full = static_cast<int>(binomial(n, k).get_si());
      for (int r = 1; r <= 3; ++r) {
        const ExactRational p = prob_at_least(d, ExactInt(r));
        for (int R = r - 1; R <= full; ++R) {
          const ExactRational s = bonferroni_partial_sum(d, r, R);
          const bool lower = R < r || (R - r) % 2 == 1;
          t.expect(lower ? s <= p : s >= p, "n=" + std::to_string(n) + " k=" + std::to_string(k) +
                                                " r=" + std::to_string(r) + " R=" + std::to_string(R));
        }
        if (n <= 6) {
          t.expect(bonferroni_partial_sum(d, r, full) == p, "closure n=" + std::to_string(n));
        }
      }
    }
  }
  return {10, "Bonferroni bracketing", t.ok(), t.summary("n <= 7, r <= 3, exact"), 0.0};
}

CheckResult chebyshev(int) {
  Tally t;
  double tightest = 1e300;
  for (int N = 1; N <= 10; ++N) {
    for (int j = 0; j <= 6; ++j) {
      const ChebyshevBound b = chebyshev_a_bound(N, j);
      const double a = to_double(ExactRational(a_array(N, j)));
      tightest = std::min(tightest, b.bound / a);
      t.expect(b.bound >= a * (1.0 - 1e-9), "N=" + std::to_string(N) + " j=" + std::to_string(j));
    }
  }
  return {11, "Chebyshev bound validity", t.ok(), t.summary("N <= 10, j <= 6, min bound/A " + sci(tightest)), 0.0};
}

CheckResult monte_carlo(int workers) {
  Tally t;
  const double exact = to_double(ExactRational(a_array(3, 1)));
  const int seeds = 50;
  const std::uint64_t samples = 100000;
  double z_sum = 0.0;
  double z_max = 0.0;
  for (int s = 0; s < seeds; ++s) {
    const McEstimate e = a_monte_carlo(3, 1, samples, static_cast<std::uint64_t>(s), workers);
    const double z = (e.estimate - exact) / e.stderr_;
    z_sum += z;
    z_max = std::max(z_max, std::abs(z));
    t.expect(std::abs(z) <= 4.0, "seed " + std::to_string(s) + " z=" + sci(z));
    const McEstimate again = a_monte_carlo(3, 1, samples, static_cast<std::uint64_t>(s), workers == 1 ? 3 : 1);
    t.expect(e.estimate == again.estimate && e.stderr_ == again.stderr_, "seed " + std::to_string(s) + " rerun");
  }
  const double z_bar = z_sum / seeds;
  t.expect(std::abs(z_bar) < 0.5, "mean z " + sci(z_bar));
  return {12, "Monte Carlo calibration", t.ok(),
          t.summary("50 seeds x 1e5, max |z| " + sci(z_max) + ", mean z " + sci(z_bar)), 0.0};
}

using CheckFn = CheckResult (*)(int);

constexpr CheckFn kChecks[kCriterionCount] = {
    second_moment_identity, walk_characterization, spot_values, alpha_three_routes, polya_elliptic, quartic_roots,
    a1_equivalence,         pi_combination,        branch_phase, bonferroni,        chebyshev,      monte_carlo};

// Criteria with a runtime budget, in seconds.
const std::map<int, double> kBudget{{1, 60.0}, {2, 120.0}, {4, 30.0}};

}  // namespace

CheckResult run_criterion(int id, int workers) {
  if (id < 1 || id > kCriterionCount) {
    throw DomainError("run_criterion: unknown criterion " + std::to_string(id));
  }
  const auto start = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    r = kChecks[id - 1](workers);
  } catch (const std::exception& e) {
    r.id = id;
    r.name = "criterion " + std::to_string(id);
    r.passed = false;
    r.detail = std::string("threw: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (auto it = kBudget.find(id); it != kBudget.end() && r.seconds >= it->second) {
    r.passed = false;
    r.detail += "; over the " + std::to_string(static_cast<int>(it->second)) + " s budget";
  }
  return r;
}

std::vector<std::string> suite_names() { return {"all", "exact", "perm", "walk", "genfun", "elliptic", "bounds"}; }

std::vector<int> suite_criteria(const std::string& suite) {
  static const std::map<std::string, std::vector<int>> suites{
      {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}},
      {"exact", {1, 3}},
      {"perm", {1, 10}},
      {"walk", {2, 12}},
      {"genfun", {4, 5}},
      {"elliptic", {5, 6, 7, 8, 9}},
      {"bounds", {10, 11}},
  };
  const auto it = suites.find(suite);
  if (it == suites.end()) {
    throw DomainError("unknown suite: " + suite);
  }
  return it->second;
}

std::vector<CheckResult> run_suite(const std::string& suite, int workers) {
  std::vector<CheckResult> out;
  for (int id : suite_criteria(suite)) {
    out.push_back(run_criterion(id, workers));
  }
  return out;
}

std::string format_result(const CheckResult& r) {
  char head[64];
  std::snprintf(head, sizeof head, "%s %2d ", r.passed ? "PASS" : "FAIL", r.id);
  char tail[32];
  std::snprintf(tail, sizeof tail, " [%.2f s]", r.seconds);
  return head + r.name + ": " + r.detail + tail;
}

}  // namespace ulam
