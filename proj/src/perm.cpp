#include "ulam/perm.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <string>
#include <thread>

namespace ulam {

Permutation::Permutation(std::vector<int> values) : values_(std::move(values)) {
  const int n = size();
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (const int v : values_) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) {
      throw DomainError("Permutation: values must be a bijection on 1..n");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

Permutation Permutation::reversed() const {
  std::vector<int> v(values_.rbegin(), values_.rend());
  return Permutation(std::move(v));
}

Permutation Permutation::complemented() const {
  std::vector<int> v(values_);
  const int n = size();
  for (auto& x : v) {
    x = n + 1 - x;
  }
  return Permutation(std::move(v));
}

namespace {

// ends[i][len] = number of increasing subsequences of length len ending at i.
// Every partial count is bounded by C(n, len), so Count only has to hold
// C(n, k).
template <typename Count, typename Less>
Count count_monotone(const std::vector<int>& v, int k, Less less) {
  const std::size_t n = v.size();
  std::vector<Count> prev(n, Count(1));
  std::vector<Count> cur(n);
  for (int len = 2; len <= k; ++len) {
    for (std::size_t i = 0; i < n; ++i) {
      Count acc(0);
      for (std::size_t p = 0; p < i; ++p) {
        if (less(v[p], v[i])) {
          acc += prev[p];
        }
      }
      cur[i] = acc;
    }
    std::swap(prev, cur);
  }
  Count total(0);
  for (const auto& c : prev) {
    total += c;
  }
  return total;
}

void require_k(int n, int k) {
  if (k < 1 || k > n) {
    throw DomainError("subsequence length must satisfy 1 <= k <= n");
  }
}

bool fits_u64(int n, int k) { return binomial(n, k) < ExactInt("4611686018427387904"); }

template <typename Less>
ExactInt count_exact(const std::vector<int>& v, int k, Less less) {
  const int n = static_cast<int>(v.size());
  require_k(n, k);
  if (fits_u64(n, k)) {
    const std::uint64_t c = count_monotone<std::uint64_t>(v, k, less);
    return ExactInt(std::to_string(c), 10);
  }
  return count_monotone<ExactInt>(v, k, less);
}

}  // namespace

ExactInt count_increasing(const Permutation& pi, int k) {
  return count_exact(pi.values(), k, std::less<int>{});
}

ExactInt count_decreasing(const Permutation& pi, int k) {
  return count_exact(pi.values(), k, std::greater<int>{});
}

int lis_length(const Permutation& pi) {
  if (pi.size() < 1) {
    throw DomainError("lis_length: empty permutation");
  }
  std::vector<int> piles;
  for (const int v : pi.values()) {
    auto it = std::lower_bound(piles.begin(), piles.end(), v);
    if (it == piles.end()) {
      piles.push_back(v);
    } else {
      *it = v;
    }
  }
  return static_cast<int>(piles.size());
}

ExactInt ZDistribution::total() const {
  ExactInt t = 0;
  for (const auto& [z, c] : counts) {
    t += c;
  }
  return t;
}

namespace {

void require_guard(int n) {
  if (n < 1 || n > kEnumerationGuard) {
    throw DomainError("exhaustive enumeration needs 1 <= n <= " + std::to_string(kEnumerationGuard));
  }
}

// Lexicographic unranking via the factorial number system.
std::vector<int> unrank(int n, std::uint64_t rank) {
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<std::uint64_t> fact(static_cast<std::size_t>(n) + 1, 1);
  for (int i = 1; i <= n; ++i) {
    fact[static_cast<std::size_t>(i)] = fact[static_cast<std::size_t>(i - 1)] * static_cast<std::uint64_t>(i);
  }
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = n; i >= 1; --i) {
    const std::uint64_t f = fact[static_cast<std::size_t>(i - 1)];
    const auto idx = static_cast<std::size_t>(rank / f);
    rank %= f;
    out.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return out;
}

std::uint64_t factorial_u64(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) {
    f *= static_cast<std::uint64_t>(i);
  }
  return f;
}

// Counts per worker, merged in worker order.
using Histogram = std::map<std::uint64_t, std::uint64_t>;

}  // namespace

void enumerate_permutations(int n, int workers,
                            const std::function<void(int worker, const std::vector<int>& perm)>& visit) {
  require_guard(n);
  const std::uint64_t total = factorial_u64(n);
  const auto w = static_cast<std::uint64_t>(std::clamp<std::uint64_t>(static_cast<std::uint64_t>(std::max(workers, 1)), 1, total));
  auto run = [&](int worker) {
    const std::uint64_t lo = total * static_cast<std::uint64_t>(worker) / w;
    const std::uint64_t hi = total * static_cast<std::uint64_t>(worker + 1) / w;
    if (lo >= hi) {
      return;
    }
    std::vector<int> perm = unrank(n, lo);
    for (std::uint64_t r = lo; r < hi; ++r) {
      visit(worker, perm);
      std::next_permutation(perm.begin(), perm.end());
    }
  };
  if (w == 1) {
    run(0);
    return;
  }
  std::vector<std::thread> pool;
  for (std::uint64_t i = 0; i < w; ++i) {
    pool.emplace_back(run, static_cast<int>(i));
  }
  for (auto& t : pool) {
    t.join();
  }
}

ZDistribution z_distribution(int n, int k, int workers) {
  require_guard(n);
  require_k(n, k);
  const int w = std::max(workers, 1);
  std::vector<Histogram> partial(static_cast<std::size_t>(w));
  enumerate_permutations(n, w, [&](int worker, const std::vector<int>& perm) {
    const std::uint64_t z = count_monotone<std::uint64_t>(perm, k, std::less<int>{});
    ++partial[static_cast<std::size_t>(worker)][z];
  });
  ZDistribution dist;
  dist.n = n;
  dist.k = k;
  for (const auto& h : partial) {
    for (const auto& [z, c] : h) {
      dist.counts[ExactInt(std::to_string(z), 10)] += ExactInt(std::to_string(c), 10);
    }
  }
  return dist;
}

ExactRational moment(const ZDistribution& dist, int p) {
  if (p < 0) {
    throw DomainError("moment: p must be non-negative");
  }
  ExactInt acc = 0;
  for (const auto& [z, c] : dist.counts) {
    ExactInt zp;
    mpz_pow_ui(zp.get_mpz_t(), z.get_mpz_t(), static_cast<unsigned long>(p));
    acc += zp * c;
  }
  return make_rational(acc, dist.total());
}

ExactRational factorial_moment(const ZDistribution& dist, int s) {
  if (s < 0) {
    throw DomainError("factorial_moment: s must be non-negative");
  }
  ExactInt acc = 0;
  for (const auto& [z, c] : dist.counts) {
    ExactInt choose;
    mpz_bin_ui(choose.get_mpz_t(), z.get_mpz_t(), static_cast<unsigned long>(s));
    acc += choose * c;
  }
  return make_rational(acc, dist.total());
}

ExactRational factorial_moment(int n, int k, int s, int workers) {
  return factorial_moment(z_distribution(n, k, workers), s);
}

ExactRational prob_at_least(const ZDistribution& dist, const ExactInt& r) {
  ExactInt acc = 0;
  for (const auto& [z, c] : dist.counts) {
    if (z >= r) {
      acc += c;
    }
  }
  return make_rational(acc, dist.total());
}

ExactRational prob_at_least(int n, int k, int r, int workers) {
  return prob_at_least(z_distribution(n, k, workers), ExactInt(r));
}

ExactRational mixed_moment(int n, int k, int l, int workers) {
  require_guard(n);
  require_k(n, k);
  require_k(n, l);
  const int w = std::max(workers, 1);
  std::vector<std::uint64_t> acc(static_cast<std::size_t>(w), 0);
  enumerate_permutations(n, w, [&](int worker, const std::vector<int>& perm) {
    const std::uint64_t zk = count_monotone<std::uint64_t>(perm, k, std::less<int>{});
    const std::uint64_t zl = count_monotone<std::uint64_t>(perm, l, std::less<int>{});
    // zk, zl <= C(9,4) = 126 and 9! * 126^2 < 2^64.
    acc[static_cast<std::size_t>(worker)] += zk * zl;
  });
  ExactInt total = 0;
  for (const auto a : acc) {
    total += ExactInt(std::to_string(a), 10);
  }
  return make_rational(total, factorial(n));
}

void write_csv(std::ostream& out, const ZDistribution& dist) {
  out << "z,count\n";
  for (const auto& [z, c] : dist.counts) {
    out << z.get_str() << ',' << c.get_str() << '\n';
  }
}

}  // namespace ulam
