#include "ulam/bounds.hpp"

#include "ulam/elliptic.hpp"
#include "ulam/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace ulam {

ExactRational bonferroni_partial_sum(const ZDistribution& dist, int r, int R) {
  if (r < 1) {
    throw DomainError("bonferroni: r must be >= 1");
  }
  ExactRational sum = 0;
  for (int s = r; s <= R; ++s) {
    ExactRational term = ExactRational(binomial(s - 1, r - 1)) * factorial_moment(dist, s);
    if ((s - r) % 2 != 0) {
      term = -term;
    }
    sum += term;
  }
  return sum;
}

BonferroniBracket bonferroni_bracket(int n, int k, int r, int R_lower, int R_upper, int workers) {
  if (r < 1) {
    throw DomainError("bonferroni_bracket: r must be >= 1");
  }
  if (R_lower < r - 1 || (R_lower >= r && (R_lower - r) % 2 != 1)) {
    throw DomainError("bonferroni_bracket: R_lower needs R - r odd");
  }
  if (R_upper < r || (R_upper - r) % 2 != 0) {
    throw DomainError("bonferroni_bracket: R_upper needs R - r even");
  }
  const ZDistribution dist = z_distribution(n, k, workers);
  BonferroniBracket b;
  b.n = n;
  b.k = k;
  b.r = r;
  b.R_lower = R_lower;
  b.R_upper = R_upper;
  b.lower = bonferroni_partial_sum(dist, r, R_lower);
  b.upper = bonferroni_partial_sum(dist, r, R_upper);
  b.exact = prob_at_least(dist, ExactInt(r));
  return b;
}

StirlingEstimate stirling_log_first_moment(std::int64_t n, std::int64_t k) {
  if (k < 2 || 2 * k > n) {
    throw DomainError("stirling_log_first_moment: needs 2 <= k <= n/2");
  }
  const double nd = static_cast<double>(n);
  const double root = std::sqrt(nd);
  const double x = static_cast<double>(k) / root;
  const double t = x / root;
  StirlingEstimate e;
  // n ln(e^t (1 - t)) = n (t + log1p(-t)).
  e.delta = x * root * std::log1p(-t) - nd * (t + std::log1p(-t)) + 0.5 * x * x;
  e.approx_log = -2.0 * x * root * std::log(x / std::numbers::e) - 0.5 * x * x + e.delta -
                 std::log(2.0 * std::numbers::pi * x * root * std::sqrt(1.0 - t));
  return e;
}

std::vector<RatioRow> ratio_table(const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs) {
  std::vector<RatioRow> rows;
  rows.reserve(pairs.size());
  for (const auto& [n, k] : pairs) {
    if (n > 1000000 || k > 60) {
      throw DomainError("ratio_table: needs n <= 10^6 and k <= 60");
    }
    const ExactRational mean = first_moment(n, k);
    RatioRow row;
    row.n = n;
    row.k = k;
    row.exact = second_moment(n, k) / (mean * mean);
    row.ratio = to_double(row.exact);
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

constexpr double kXMin = 1e-4;
constexpr double kFracMin = 1e-4;
constexpr double kFracMax = 0.999;

// Search coordinates: p[0] = log x, p[1] = logit of w / sqrt(1 - 4x).
struct Objective {
  int n;
  int j;

  double operator()(const std::vector<double>& p) const {
    const double x = std::exp(p[0]);
    if (!(x >= kXMin && x <= kEllipticMaxX)) {
      return std::numeric_limits<double>::infinity();
    }
    double w = 0.0;
    if (j > 0) {
      const double frac = 1.0 / (1.0 + std::exp(-p[1]));
      if (!(frac >= kFracMin && frac <= kFracMax)) {
        return std::numeric_limits<double>::infinity();
      }
      w = frac * std::sqrt(1.0 - 4.0 * x);
    }
    try {
      const double a = alpha_closed(w, x);
      double log_f = std::log(a) - 2.0 * n * std::log(x);
      if (j > 0) {
        log_f -= j * std::log(w);
      }
      return log_f;
    } catch (const std::exception&) {
      return std::numeric_limits<double>::infinity();
    }
  }
};

struct Vertex {
  std::vector<double> p;
  double f;
};

// Fixed-budget Nelder-Mead; returns false if it stopped on the budget.
bool nelder_mead(const Objective& obj, std::vector<Vertex>& simplex, int max_iter, double tol) {
  const std::size_t dim = simplex.front().p.size();
  auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
  for (int iter = 0; iter < max_iter; ++iter) {
    std::sort(simplex.begin(), simplex.end(), by_value);
    double size = 0.0;
    for (std::size_t i = 1; i < simplex.size(); ++i) {
      for (std::size_t d = 0; d < dim; ++d) {
        size = std::max(size, std::abs(simplex[i].p[d] - simplex[0].p[d]));
      }
    }
    if (size < tol) {
      return true;
    }
    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i + 1 < simplex.size(); ++i) {
      for (std::size_t d = 0; d < dim; ++d) {
        centroid[d] += simplex[i].p[d] / static_cast<double>(dim);
      }
    }
    auto along = [&](double t) {
      std::vector<double> q(dim);
      for (std::size_t d = 0; d < dim; ++d) {
        q[d] = centroid[d] + t * (simplex.back().p[d] - centroid[d]);
      }
      return Vertex{q, obj(q)};
    };
    const Vertex refl = along(-1.0);
    if (refl.f < simplex.front().f) {
      const Vertex exp = along(-2.0);
      simplex.back() = exp.f < refl.f ? exp : refl;
      continue;
    }
    if (refl.f < simplex[simplex.size() - 2].f) {
      simplex.back() = refl;
      continue;
    }
    const Vertex con = refl.f < simplex.back().f ? along(-0.5) : along(0.5);
    if (con.f < std::min(refl.f, simplex.back().f)) {
      simplex.back() = con;
      continue;
    }
    for (std::size_t i = 1; i < simplex.size(); ++i) {
      for (std::size_t d = 0; d < dim; ++d) {
        simplex[i].p[d] = simplex[0].p[d] + 0.5 * (simplex[i].p[d] - simplex[0].p[d]);
      }
      simplex[i].f = obj(simplex[i].p);
    }
  }
  return false;
}

}  // namespace

ChebyshevBound chebyshev_a_bound(int N, int j) {
  if (N < 1 || j < 0) {
    throw DomainError("chebyshev_a_bound: needs N >= 1, j >= 0");
  }
  const Objective obj{N, j};
  const int grid = 40;
  const std::size_t dim = j > 0 ? 2 : 1;
  Vertex best{std::vector<double>(dim, 0.0), std::numeric_limits<double>::infinity()};
  const double lx0 = std::log(kXMin);
  const double lx1 = std::log(kEllipticMaxX);
  for (int a = 0; a < grid; ++a) {
    const double lx = lx0 + (lx1 - lx0) * a / (grid - 1);
    const int b_count = j > 0 ? grid : 1;
    for (int b = 0; b < b_count; ++b) {
      std::vector<double> p{lx};
      if (j > 0) {
        const double lf = std::log(kFracMin) + (std::log(kFracMax) - std::log(kFracMin)) * b / (grid - 1);
        const double frac = std::exp(lf);
        p.push_back(std::log(frac / (1.0 - frac)));
      }
      const double f = obj(p);
      if (f < best.f) {
        best = {p, f};
      }
    }
  }
  if (!std::isfinite(best.f)) {
    throw ConvergenceError("chebyshev_a_bound: no finite grid value");
  }
  std::vector<Vertex> simplex{best};
  for (std::size_t d = 0; d < dim; ++d) {
    Vertex v = best;
    v.p[d] += 0.1;
    v.f = obj(v.p);
    simplex.push_back(v);
  }
  const bool converged = nelder_mead(obj, simplex, 200, 1e-10);
  const Vertex& top = *std::min_element(simplex.begin(), simplex.end(),
                                        [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  const Vertex& pick = top.f <= best.f ? top : best;
  ChebyshevBound out;
  out.polished = converged && top.f <= best.f;
  out.bound = std::exp(pick.f);
  out.x_star = std::exp(pick.p[0]);
  out.w_star = j > 0 ? std::sqrt(1.0 - 4.0 * out.x_star) / (1.0 + std::exp(-pick.p[1])) : 0.0;
  return out;
}

}  // namespace ulam
