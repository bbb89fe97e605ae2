#include "ulam/walk.hpp"

#include "ulam/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

namespace ulam {

namespace {

constexpr int kDx[4] = {1, 0, -1, 0};
constexpr int kDy[4] = {0, 1, 0, -1};

template <typename Fn>
void run_workers(int workers, Fn fn) {
  if (workers <= 1) {
    fn(0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back(fn, w);
  }
  for (auto& t : pool) {
    t.join();
  }
}

ExactInt from_u64(std::uint64_t v) { return ExactInt(std::to_string(v), 10); }

ExactInt pow16(int n) {
  ExactInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 16, static_cast<unsigned long>(n));
  return p;
}

}  // namespace

WalkPath::WalkPath(std::vector<Step> steps) : steps_(std::move(steps)) {
  if (steps_.size() % 2 != 0) {
    throw DomainError("WalkPath: length must be even");
  }
}

WalkPath WalkPath::from_code(int half_length, std::uint64_t code) {
  if (half_length < 0 || half_length > 31) {
    throw DomainError("WalkPath::from_code: half length out of range");
  }
  std::vector<Step> steps(static_cast<std::size_t>(2 * half_length));
  for (auto& s : steps) {
    s = static_cast<Step>(code & 3U);
    code >>= 2;
  }
  return WalkPath(std::move(steps));
}

WalkStats walk_stats(const WalkPath& path) {
  WalkStats st;
  int u = 0;
  int v = 0;
  for (const Step s : path.steps()) {
    u += kDx[static_cast<int>(s)];
    v += kDy[static_cast<int>(s)];
    if (u == 0) {
      ++st.tau;
    }
  }
  st.returned = (u == 0 && v == 0);
  return st;
}

ExactInt q_statistic(const WalkStats& stats, int j) {
  if (j < 0) {
    throw DomainError("q_statistic: negative j");
  }
  return binomial(stats.tau + j - 1, j);
}

ExactInt WalkEnumeration::returning() const {
  ExactInt r = 0;
  for (const auto& c : returning_by_tau) {
    r += c;
  }
  return r;
}

WalkEnumeration enumerate_walks(int half_length, int workers) {
  if (half_length < 0 || half_length > kWalkEnumerationGuard) {
    throw DomainError("walk enumeration needs 0 <= N <= " + std::to_string(kWalkEnumerationGuard));
  }
  const int len = 2 * half_length;
  const std::uint64_t total = std::uint64_t{1} << (2 * len);
  const int w = static_cast<int>(std::clamp<std::uint64_t>(static_cast<std::uint64_t>(std::max(workers, 1)), 1, total));

  struct Partial {
    std::vector<std::uint64_t> by_tau;
    std::uint64_t x_zero = 0;
    std::uint64_t y_zero = 0;
  };
  std::vector<Partial> parts(static_cast<std::size_t>(w));
  for (auto& p : parts) {
    p.by_tau.assign(static_cast<std::size_t>(len) + 2, 0);
  }

  run_workers(w, [&](int worker) {
    Partial& p = parts[static_cast<std::size_t>(worker)];
    const std::uint64_t lo = total * static_cast<std::uint64_t>(worker) / static_cast<std::uint64_t>(w);
    const std::uint64_t hi = total * static_cast<std::uint64_t>(worker + 1) / static_cast<std::uint64_t>(w);
    for (std::uint64_t code = lo; code < hi; ++code) {
      std::uint64_t c = code;
      int u = 0;
      int v = 0;
      int tau = 1;
      for (int t = 0; t < len; ++t) {
        const auto s = static_cast<int>(c & 3U);
        c >>= 2;
        u += kDx[s];
        v += kDy[s];
        tau += (u == 0) ? 1 : 0;
      }
      if (u == 0 && v == 0) {
        ++p.by_tau[static_cast<std::size_t>(tau)];
      }
      p.x_zero += (u + v == 0) ? 1 : 0;
      p.y_zero += (u - v == 0) ? 1 : 0;
    }
  });

  WalkEnumeration e;
  e.half_length = half_length;
  e.total_paths = from_u64(total);
  e.returning_by_tau.assign(static_cast<std::size_t>(len) + 2, ExactInt(0));
  e.x_zero = 0;
  e.y_zero = 0;
  for (const auto& p : parts) {
    for (std::size_t t = 0; t < p.by_tau.size(); ++t) {
      e.returning_by_tau[t] += from_u64(p.by_tau[t]);
    }
    e.x_zero += from_u64(p.x_zero);
    e.y_zero += from_u64(p.y_zero);
  }
  return e;
}

ExactRational mean_q_times_return(const WalkEnumeration& e, int j) {
  if (j < 0) {
    throw DomainError("mean_q_times_return: negative j");
  }
  ExactInt acc = 0;
  for (std::size_t tau = 1; tau < e.returning_by_tau.size(); ++tau) {
    acc += e.returning_by_tau[tau] * binomial(static_cast<std::int64_t>(tau) + j - 1, j);
  }
  return make_rational(acc, e.total_paths);
}

ExactInt a_from_walk_exact(const WalkEnumeration& e, int j) {
  const ExactRational scaled = mean_q_times_return(e, j) * ExactRational(pow16(e.half_length));
  if (scaled.get_den() != 1) {
    throw std::logic_error("a_from_walk_exact: non-integral result");
  }
  return scaled.get_num();
}

ExactInt a_from_walk_exact(int half_length, int j, int workers) {
  return a_from_walk_exact(enumerate_walks(half_length, workers), j);
}

ExactRational return_probability(const WalkEnumeration& e) { return make_rational(e.returning(), e.total_paths); }

WalkPath sample_path(int half_length, std::uint64_t seed, std::uint64_t index) {
  if (half_length < 0) {
    throw DomainError("sample_path: negative N");
  }
  const Philox4x32 rng(seed);
  const int len = 2 * half_length;
  std::vector<Step> steps(static_cast<std::size_t>(len));
  Philox4x32::Block block{};
  for (int t = 0; t < len; ++t) {
    // 64 two-bit steps per 128-bit block.
    if (t % 64 == 0) {
      block = rng(index, static_cast<std::uint64_t>(t / 64));
    }
    const int bit = 2 * (t % 64);
    steps[static_cast<std::size_t>(t)] = static_cast<Step>((block[static_cast<std::size_t>(bit / 32)] >> (bit % 32)) & 3U);
  }
  return WalkPath(std::move(steps));
}

McEstimate a_monte_carlo(int half_length, int j, std::uint64_t samples, std::uint64_t seed, int workers) {
  if (half_length < 0 || j < 0) {
    throw DomainError("a_monte_carlo: negative argument");
  }
  if (samples < 1) {
    throw DomainError("a_monte_carlo: samples must be >= 1");
  }
  const int len = 2 * half_length;
  std::vector<ExactInt> q_by_tau(static_cast<std::size_t>(len) + 2);
  for (int tau = 1; tau <= len + 1; ++tau) {
    q_by_tau[static_cast<std::size_t>(tau)] = binomial(tau + j - 1, j);
  }

  const int w = static_cast<int>(std::clamp<std::uint64_t>(static_cast<std::uint64_t>(std::max(workers, 1)), 1, samples));
  // Per worker: returning-path counts by tau; Q is a function of tau only.
  std::vector<std::vector<std::uint64_t>> hist(static_cast<std::size_t>(w),
                                               std::vector<std::uint64_t>(static_cast<std::size_t>(len) + 2, 0));
  run_workers(w, [&](int worker) {
    auto& h = hist[static_cast<std::size_t>(worker)];
    const std::uint64_t lo = samples / static_cast<std::uint64_t>(w) * static_cast<std::uint64_t>(worker) +
                             std::min<std::uint64_t>(static_cast<std::uint64_t>(worker), samples % static_cast<std::uint64_t>(w));
    const std::uint64_t count =
        samples / static_cast<std::uint64_t>(w) + (static_cast<std::uint64_t>(worker) < samples % static_cast<std::uint64_t>(w) ? 1 : 0);
    for (std::uint64_t i = lo; i < lo + count; ++i) {
      const WalkStats st = walk_stats(sample_path(half_length, seed, i));
      if (st.returned) {
        ++h[static_cast<std::size_t>(st.tau)];
      }
    }
  });

  ExactInt sum = 0;
  ExactInt sum_sq = 0;
  for (const auto& h : hist) {
    for (std::size_t tau = 1; tau < h.size(); ++tau) {
      const ExactInt c = from_u64(h[tau]);
      sum += c * q_by_tau[tau];
      sum_sq += c * q_by_tau[tau] * q_by_tau[tau];
    }
  }
  const ExactInt n = from_u64(samples);
  const ExactInt scale = pow16(half_length);
  McEstimate out;
  out.estimate = to_double(make_rational(sum * scale, n));
  if (samples > 1) {
    // Unbiased sample variance of Q R, then the standard error of the mean.
    const ExactRational var = make_rational(sum_sq * n - sum * sum, n * n * (n - 1));
    out.stderr_ = std::sqrt(to_double(var)) * to_double(ExactRational(scale));
  }
  return out;
}

double polya_series(double z, int n_terms) {
  if (!(std::abs(z) < 1.0)) {
    throw DomainError("polya_series: needs |z| < 1");
  }
  if (n_terms < 0) {
    throw DomainError("polya_series: negative term count");
  }
  const double z2 = z * z;
  double term = 1.0;
  double sum = 0.0;
  for (int n = 0; n < n_terms; ++n) {
    sum += term;
    const double r = (2.0 * n + 1.0) / (2.0 * n + 2.0);
    term *= r * r * z2;
  }
  return sum;
}

}  // namespace ulam
