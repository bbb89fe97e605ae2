#include "doctest.h"

#include "ulam/moments.hpp"
#include "ulam/perm.hpp"

#include <fstream>
#include <functional>
#include <sstream>

using namespace ulam;

namespace {

// Literal double composition sum over (l_0..l_j), (m_0..m_j).
void compositions(int total, int parts, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& f) {
  if (parts == 1) {
    cur.push_back(total);
    f(cur);
    cur.pop_back();
    return;
  }
  for (int first = 0; first <= total; ++first) {
    cur.push_back(first);
    compositions(total - first, parts - 1, cur, f);
    cur.pop_back();
  }
}

ExactInt k_array_direct(int l, int m, int j) {
  std::vector<std::vector<int>> ls;
  std::vector<std::vector<int>> ms;
  std::vector<int> cur;
  compositions(l, j + 1, cur, [&](const std::vector<int>& c) { ls.push_back(c); });
  compositions(m, j + 1, cur, [&](const std::vector<int>& c) { ms.push_back(c); });
  ExactInt total = 0;
  for (const auto& a : ls) {
    for (const auto& b : ms) {
      ExactInt p = 1;
      for (std::size_t r = 0; r < a.size(); ++r) {
        const ExactInt c = binomial(a[r] + b[r], a[r]);
        p *= c * c;
      }
      total += p;
    }
  }
  return total;
}

ExactInt a_array_direct(int n, int j) { return k_array_direct(n, n, j); }

}  // namespace

TEST_CASE("b_coefficient") {
  CHECK(b_coefficient(3, 2) == make_rational(3, 2));
  CHECK(b_coefficient(3, 4) == 0);
  CHECK(b_coefficient(4, 3) == make_rational(2, 3));
}

TEST_CASE("k_array spot values") {
  for (int j = 0; j <= 5; ++j) {
    CHECK(k_array(0, 0, j) == 1);
  }
  CHECK(k_array(1, 1, 1) == 10);
  CHECK(k_array(1, 1, 2) == 18);
  CHECK(k_array(3, 1, 2) == k_array_direct(3, 1, 2));
  CHECK(k_array(1, 3, 2) == k_array(3, 1, 2));
}

TEST_CASE("a_array spot values") {
  CHECK(a_array(0, 5) == 1);
  CHECK(a_array(1, 0) == 4);
  CHECK(a_array(2, 0) == 36);
  CHECK(a_array(1, 1) == 10);
}

TEST_CASE("a_array matches literal composition enumeration") {
  const MomentTriangle tri = MomentTriangle::build(6, 4);
  for (int n = 0; n <= 6; ++n) {
    for (int j = 0; j <= 4; ++j) {
      CHECK(tri.a(n, j) == a_array_direct(n, j));
      CHECK(a_array(n, j) == tri.a(n, j));
    }
  }
}

TEST_CASE("K layers match literal enumeration off the diagonal") {
  const MomentTriangle tri = MomentTriangle::build(4, 3, true);
  REQUIRE(tri.layers().size() == 4);
  for (int j = 0; j <= 3; ++j) {
    for (int l = 0; l <= 4; ++l) {
      for (int m = 0; m <= 4; ++m) {
        CHECK(tri.layers()[static_cast<std::size_t>(j)].at(l, m) == k_array_direct(l, m, j));
      }
    }
  }
}

TEST_CASE("triangle invariants") {
  const MomentTriangle tri = MomentTriangle::build(8, 10);
  for (int j = 0; j <= 10; ++j) {
    CHECK(tri.a(0, j) == 1);
  }
  for (int n = 0; n <= 8; ++n) {
    const ExactInt c = binomial(2 * n, n);
    CHECK(tri.a(n, 0) == c * c);
    for (int j = 0; j <= 10; ++j) {
      CHECK(tri.a(n, j) > 0);
      if (n >= 1 && j < 10) {
        CHECK(tri.a(n, j) <= tri.a(n, j + 1));
      }
    }
  }
}

TEST_CASE("golden table") {
  std::ifstream in(std::string(ULAM_GOLDEN_DIR) + "/table_A_6_4.csv");
  REQUIRE(in.good());
  const MomentTriangle golden = MomentTriangle::read_csv(in);
  CHECK(golden.n_max() == 6);
  CHECK(golden.j_max() == 4);
  const MomentTriangle tri = MomentTriangle::build(6, 4);
  std::ostringstream a;
  std::ostringstream b;
  tri.write_csv(a);
  golden.write_csv(b);
  CHECK(a.str() == b.str());
}

TEST_CASE("CSV round trip and malformed input") {
  const MomentTriangle tri = MomentTriangle::build(3, 5);
  std::stringstream ss;
  tri.write_csv(ss);
  const MomentTriangle back = MomentTriangle::read_csv(ss);
  for (int n = 0; n <= 3; ++n) {
    for (int j = 0; j <= 5; ++j) {
      CHECK(back.a(n, j) == tri.a(n, j));
    }
  }
  std::stringstream bad("N,j,B\n0,0,1\n");
  CHECK_THROWS_AS(MomentTriangle::read_csv(bad), DomainError);
  std::stringstream sparse("N,j,A\n0,0,1\n1,1,10\n");
  CHECK_THROWS_AS(MomentTriangle::read_csv(sparse), DomainError);
}

TEST_CASE("first and second moments") {
  CHECK(first_moment(4, 2) == 3);
  CHECK(first_moment(3, 2) == make_rational(3, 2));
  CHECK(first_moment(3, 3) == make_rational(1, 6));
  CHECK(second_moment(2, 1) == 4);
  CHECK(second_moment(3, 2) == make_rational(19, 6));
  CHECK(second_moment(4, 2) == make_rational(67, 6));
  CHECK_THROWS_AS(second_moment(2, 3), DomainError);
  CHECK_THROWS_AS(first_moment(2, 3), DomainError);
  CHECK_THROWS_AS(second_moment(3, 0), DomainError);
}

TEST_CASE("second moment equals brute force over S_n") {
  for (int n = 1; n <= 7; ++n) {
    for (int k = 1; k <= n; ++k) {
      const ZDistribution d = z_distribution(n, k, 2);
      CHECK(moment(d, 1) == first_moment(n, k));
      CHECK(moment(d, 2) == second_moment(n, k));
    }
  }
}

TEST_CASE("square identity") {
  CHECK(check_square_identity(1, 1));
  CHECK(check_square_identity(0, 7));
  CHECK(check_square_identity(3, 2));
  for (int l = 0; l <= 12; ++l) {
    for (int m = 0; l + m <= 12; ++m) {
      CHECK(check_square_identity(l, m));
    }
  }
}

TEST_CASE("shell numerator has degree at most 2N") {
  // Columns j <= 2N fix P_N; the next columns must follow from it.
  const MomentTriangle tri = MomentTriangle::build(5, 14);
  for (int n = 0; n <= 5; ++n) {
    const auto p = shell_numerator(tri, n);
    REQUIRE(p.size() == static_cast<std::size_t>(2 * n + 1));
    // Expand P_N(w) (1-w)^-(2N+1) up to w^14.
    for (int j = 0; j <= 14; ++j) {
      ExactInt acc = 0;
      for (int d = 0; d <= std::min(j, 2 * n); ++d) {
        acc += p[static_cast<std::size_t>(d)] * binomial(j - d + 2 * n, 2 * n);
      }
      CHECK(acc == tri.a(n, j));
    }
  }
}
