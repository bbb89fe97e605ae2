// ulam: command-line front end. Every verb writes one table (CSV with a
// header, or JSON) to stdout or --out.
#include "ulam/bounds.hpp"
#include "ulam/elliptic.hpp"
#include "ulam/exact.hpp"
#include "ulam/genfun.hpp"
#include "ulam/moments.hpp"
#include "ulam/perm.hpp"
#include "ulam/verify.hpp"
#include "ulam/walk.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::ordered_json;
using ulam::DomainError;

constexpr int kExitDomain = 1;
constexpr int kExitVerify = 2;
constexpr int kExitUsage = 64;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string q = "\"";
  for (char c : s) {
    q += c;
    if (c == '"') {
      q += '"';
    }
  }
  return q + "\"";
}

// Cells are json values: strings print verbatim (exact numbers travel as
// strings), floats at 17 significant digits.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<json>> rows;
  json extra;  // merged into the JSON document only

  void add(std::vector<json> row) { rows.push_back(std::move(row)); }

  void write(std::ostream& out, const std::string& format) const {
    if (format == "json") {
      json doc = json::object();
      doc["columns"] = header;
      json items = json::array();
      for (const auto& r : rows) {
        json o = json::object();
        for (std::size_t i = 0; i < header.size(); ++i) {
          o[header[i]] = r[i];
        }
        items.push_back(std::move(o));
      }
      doc["rows"] = std::move(items);
      if (extra.is_object()) {
        doc.update(extra);
      }
      out << doc.dump(2) << '\n';
      return;
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
      out << (i ? "," : "") << header[i];
    }
    out << '\n';
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        out << (i ? "," : "");
        const json& c = r[i];
        if (c.is_string()) {
          out << csv_field(c.get<std::string>());
        } else if (c.is_number_float()) {
          out << fmt17(c.get<double>());
        } else if (c.is_boolean()) {
          out << (c.get<bool>() ? "true" : "false");
        } else if (c.is_null()) {
          // empty cell
        } else {
          out << c.dump();
        }
      }
      out << '\n';
    }
  }
};

struct Common {
  std::string format = "csv";
  std::string out_path;
  int workers = 1;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", c.out_path, "output file (default stdout)");
  sub->add_option("--workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
}

void emit(const Table& t, const Common& c) {
  if (c.out_path.empty()) {
    t.write(std::cout, c.format);
    return;
  }
  std::ofstream f(c.out_path, std::ios::binary);
  if (!f) {
    throw DomainError("cannot open " + c.out_path);
  }
  t.write(f, c.format);
}

json exact(const ulam::ExactInt& z) { return z.get_str(); }
json exact(const ulam::ExactRational& q) { return ulam::to_string(q); }

// table
struct TableArgs {
  bool a = false;
  bool z = false;
  int nmax = 6;
  int jmax = 4;
  int n = 0;
  int k = 0;
};

Table run_table(const TableArgs& a, const Common& c) {
  Table t;
  if (a.a == a.z) {
    throw CLI::ValidationError("table", "exactly one of --A, --Z");
  }
  if (a.a) {
    if (a.nmax < 0 || a.jmax < 0) {
      throw DomainError("table: --nmax and --jmax must be >= 0");
    }
    const auto tri = ulam::MomentTriangle::build(a.nmax, a.jmax);
    t.header = {"N", "j", "A"};
    for (int N = 0; N <= a.nmax; ++N) {
      for (int j = 0; j <= a.jmax; ++j) {
        t.add({N, j, exact(tri.a(N, j))});
      }
    }
    return t;
  }
  const auto dist = ulam::z_distribution(a.n, a.k, c.workers);
  t.header = {"z", "count"};
  for (const auto& [z, count] : dist.counts) {
    t.add({exact(z), exact(count)});
  }
  return t;
}

// mc
struct McArgs {
  int N = 0;
  int j = 0;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
};

Table run_mc(const McArgs& a, const Common& c) {
  const ulam::McEstimate e = ulam::a_monte_carlo(a.N, a.j, a.samples, a.seed, c.workers);
  const ulam::ExactInt truth = ulam::a_array(a.N, a.j);
  const double z = (e.estimate - ulam::to_double(ulam::ExactRational(truth))) / e.stderr_;
  Table t;
  t.header = {"N", "j", "estimate", "stderr", "exact", "zscore"};
  t.add({a.N, a.j, e.estimate, e.stderr_, exact(truth), z});
  t.extra = {{"samples", a.samples}, {"seed", a.seed}};
  return t;
}

// genfun
struct GenfunArgs {
  double w = 0.0;
  double x = 0.1;
  int nmax = 0;
};

Table run_genfun(const GenfunArgs& a) {
  const ulam::AlphaSeries s = ulam::alpha_series(a.w, a.x, a.nmax);
  const double contour = ulam::alpha_contour(a.w, a.x);
  const double closed = ulam::alpha_closed(a.w, a.x);
  const double diff = std::max({std::abs(s.value - contour), std::abs(contour - closed), std::abs(s.value - closed)});
  Table t;
  t.header = {"w", "x", "alpha_series", "alpha_contour", "alpha_closed", "max_diff"};
  t.add({a.w, a.x, s.value, contour, closed, diff});
  t.extra = {{"series_shells", s.truncation.n_max}, {"series_tail_bound", s.truncation.tail_bound}};
  return t;
}

// elliptic
struct EllipticArgs {
  double x = 0.1;
  double w = 0.2;
};

Table run_elliptic(const EllipticArgs& a) {
  const double a1 = a.w == 0.0 ? 0.0 : ulam::a1_closed(a.x, a.w);
  const double ref = ulam::a2_quadrature(a.x, a.w);
  Table t;
  t.header = {"x", "w", "a1", "a2", "alpha", "method", "residual"};
  t.add({a.x, a.w, a1, ref, a1 + ref, "quadrature", 0.0});
  const double l = ulam::a2_quadrature_l_interval(a.x, a.w);
  t.add({a.x, a.w, a1, l, a1 + l, "l_interval", std::abs(l - ref)});
  if (a.w > 0.0) {
    const ulam::PiCombination pc = ulam::a2_pi_combination(a.x, a.w);
    t.add({a.x, a.w, a1, pc.value, a1 + pc.value, "pi_combination", std::abs(pc.value - ref)});
    const ulam::EllipticReduction red = ulam::legendre_reduce(a.x, a.w);
    json poles = json::array();
    for (const auto& p : red.pf_terms) {
      poles.push_back({{"pole_image", p.pole_image}, {"coefficient", p.coefficient}});
    }
    json pis = json::array();
    for (const auto& p : pc.terms) {
      pis.push_back({{"coefficient", p.coefficient}, {"lambda", p.lambda}});
    }
    t.extra["reduction"] = {{"moebius", red.moebius},
                            {"modulus_k1", red.modulus_k1},
                            {"modulus_k", red.modulus_k},
                            {"xi_constant", red.xi_constant},
                            {"pf_constant", red.pf_constant},
                            {"pf_terms", poles},
                            {"k_coefficient", pc.k_coefficient},
                            {"pi_terms", pis}};
  }
  return t;
}

// bounds
struct BoundsArgs {
  bool bonferroni = false;
  bool chebyshev = false;
  bool ratio = false;
  bool stirling = false;
  std::vector<std::int64_t> n;
  std::vector<std::int64_t> k;
  int r = 1;
  std::optional<int> R;
  std::optional<int> N;
  std::optional<int> j;
  int nmax = 3;
  int jmax = 3;
};

std::int64_t single(const std::vector<std::int64_t>& v, const char* flag) {
  if (v.size() != 1) {
    throw CLI::ValidationError(flag, "expects exactly one value here");
  }
  return v.front();
}

Table run_bounds(const BoundsArgs& a, const Common& c) {
  const int modes = int(a.bonferroni) + int(a.chebyshev) + int(a.ratio) + int(a.stirling);
  if (modes != 1) {
    throw CLI::ValidationError("bounds", "exactly one of --bonferroni, --chebyshev, --ratio, --stirling");
  }
  Table t;
  if (a.bonferroni) {
    const int n = static_cast<int>(single(a.n, "--n"));
    const int k = static_cast<int>(single(a.k, "--k"));
    const auto dist = ulam::z_distribution(n, k, c.workers);
    const ulam::ExactRational p = ulam::prob_at_least(dist, ulam::ExactInt(a.r));
    const int full = static_cast<int>(ulam::binomial(n, k).get_si());
    const int R_max = a.R.value_or(full);
    if (a.r < 1 || R_max < a.r) {
      throw DomainError("bounds: needs 1 <= r <= R");
    }
    t.header = {"n", "k", "r", "R", "lower", "upper", "exact"};
    // Row R pairs the partial sums at R and R - 1; whichever has R' - r odd is the lower bound.
    for (int R = a.r; R <= R_max; ++R) {
      const bool r_is_upper = (R - a.r) % 2 == 0;
      const ulam::ExactRational here = ulam::bonferroni_partial_sum(dist, a.r, R);
      const ulam::ExactRational prev = ulam::bonferroni_partial_sum(dist, a.r, R - 1);
      const auto& lower = r_is_upper ? prev : here;
      const auto& upper = r_is_upper ? here : prev;
      t.add({n, k, a.r, R, exact(lower), exact(upper), exact(p)});
    }
    return t;
  }
  if (a.chebyshev) {
    t.header = {"N", "j", "bound", "x_star", "w_star", "exact_A"};
    std::vector<std::pair<int, int>> cells;
    if (a.N || a.j) {
      if (!(a.N && a.j)) {
        throw CLI::ValidationError("bounds", "--N and --j go together");
      }
      cells.emplace_back(*a.N, *a.j);
    } else {
      for (int N = 1; N <= a.nmax; ++N) {
        for (int j = 0; j <= a.jmax; ++j) {
          cells.emplace_back(N, j);
        }
      }
    }
    for (auto [N, j] : cells) {
      const ulam::ChebyshevBound b = ulam::chebyshev_a_bound(N, j);
      t.add({N, j, b.bound, b.x_star, b.w_star, exact(ulam::a_array(N, j))});
    }
    return t;
  }
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  for (auto n : a.n) {
    for (auto k : a.k) {
      pairs.emplace_back(n, k);
    }
  }
  if (pairs.empty()) {
    throw CLI::ValidationError("bounds", "--n and --k are required");
  }
  if (a.ratio) {
    t.header = {"n", "k", "ratio", "exact"};
    for (const auto& row : ulam::ratio_table(pairs)) {
      t.add({row.n, row.k, row.ratio, exact(row.exact)});
    }
    return t;
  }
  t.header = {"n", "k", "approx_log", "delta", "exact_log", "rel_error"};
  for (auto [n, k] : pairs) {
    const ulam::StirlingEstimate e = ulam::stirling_log_first_moment(n, k);
    const double ex = ulam::log_of(ulam::first_moment(n, k));
    t.add({n, k, e.approx_log, e.delta, ex, std::abs(e.approx_log - ex) / std::abs(ex)});
  }
  return t;
}

// polya
struct PolyaArgs {
  double x = 0.5;
  int nmax = 200;
};

Table run_polya(const PolyaArgs& a) {
  const double series = ulam::polya_series(a.x, a.nmax);
  const double closed = 2.0 / std::numbers::pi * ulam::elliptic_K(a.x);
  Table t;
  t.header = {"z", "terms", "series", "two_over_pi_K", "diff"};
  t.add({a.x, a.nmax, series, closed, std::abs(series - closed)});
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and numeric second moments of increasing-subsequence counts"};
  app.require_subcommand(1);

  Common common;

  TableArgs ta;
  auto* table = app.add_subcommand("table", "exact A(N,j) table or the distribution of Z");
  table->add_flag("--A", ta.a, "A(N,j) for N <= nmax, j <= jmax");
  table->add_flag("--Z", ta.z, "distribution of Z_{n,k} by enumeration");
  table->add_option("--nmax", ta.nmax);
  table->add_option("--jmax", ta.jmax);
  table->add_option("--n", ta.n);
  table->add_option("--k", ta.k);
  add_common(table, common);

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run invariant suites; exit 2 on any failure");
  verify->add_option("--suite", suite)->check(CLI::IsMember(ulam::suite_names()));
  add_common(verify, common);

  McArgs ma;
  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of A(N,j) from random walks");
  mc->add_option("--N,--n", ma.N)->required();
  mc->add_option("--j,--k", ma.j)->required();
  mc->add_option("--samples", ma.samples)->check(CLI::PositiveNumber);
  mc->add_option("--seed", ma.seed)->required();
  add_common(mc, common);

  GenfunArgs ga;
  auto* genfun = app.add_subcommand("genfun", "alpha(w, x^2) by series, contour and closed form");
  genfun->add_option("--w", ga.w)->required();
  genfun->add_option("--x", ga.x)->required();
  genfun->add_option("--nmax", ga.nmax, "fixed series truncation (0: adaptive)");
  add_common(genfun, common);

  EllipticArgs ea;
  auto* elliptic = app.add_subcommand("elliptic", "A1 and A2 by each closed-form route");
  elliptic->add_option("--x", ea.x)->required();
  elliptic->add_option("--w", ea.w)->required();
  add_common(elliptic, common);

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "Bonferroni brackets, Chebyshev bound, ratios, Stirling");
  bounds->add_flag("--bonferroni", ba.bonferroni);
  bounds->add_flag("--chebyshev", ba.chebyshev);
  bounds->add_flag("--ratio", ba.ratio);
  bounds->add_flag("--stirling", ba.stirling);
  bounds->add_option("--n", ba.n);
  bounds->add_option("--k", ba.k);
  bounds->add_option("--r", ba.r);
  bounds->add_option("--R", ba.R);
  bounds->add_option("--N", ba.N);
  bounds->add_option("--j", ba.j);
  bounds->add_option("--nmax", ba.nmax);
  bounds->add_option("--jmax", ba.jmax);
  add_common(bounds, common);

  PolyaArgs pa;
  auto* polya = app.add_subcommand("polya", "return-probability series against (2/pi) K(z)");
  polya->add_option("--x", pa.x, "argument z")->required();
  polya->add_option("--nmax", pa.nmax, "number of terms");
  add_common(polya, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  }

  try {
    if (table->parsed()) {
      emit(run_table(ta, common), common);
    } else if (verify->parsed()) {
      Table t;
      t.header = {"id", "criterion", "passed", "seconds", "detail"};
      bool ok = true;
      for (const auto& r : ulam::run_suite(suite, common.workers)) {
        std::cerr << ulam::format_result(r) << '\n';
        t.add({r.id, r.name, r.passed, r.seconds, r.detail});
        ok = ok && r.passed;
      }
      emit(t, common);
      return ok ? 0 : kExitVerify;
    } else if (mc->parsed()) {
      emit(run_mc(ma, common), common);
    } else if (genfun->parsed()) {
      emit(run_genfun(ga), common);
    } else if (elliptic->parsed()) {
      emit(run_elliptic(ea), common);
    } else if (bounds->parsed()) {
      emit(run_bounds(ba, common), common);
    } else if (polya->parsed()) {
      emit(run_polya(pa), common);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return 0;
}
