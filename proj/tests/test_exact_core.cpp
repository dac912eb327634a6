#include <doctest.h>

#include <functional>
#include <random>

#include "tsk/linalg.hpp"
#include "tsk/lp.hpp"

using namespace tsk;
using Halfspace = LinearConstraint<Rational>;

namespace {

QVector vec(std::initializer_list<long> xs) {
  QVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (long x : xs) v(i++) = Rational(x);
  return v;
}

QMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  QMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (long x : row) m(r, c++) = Rational(x);
    ++r;
  }
  return m;
}

// Minimum over all feasible basic solutions; nullopt when none exists.
std::optional<Rational> brute_force_min(const std::vector<Halfspace>& cons, const QVector& c) {
  const Eigen::Index n = c.size();
  const std::size_t m = cons.size();
  std::optional<Rational> best;
  std::vector<std::size_t> pick(static_cast<std::size_t>(n));
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == static_cast<std::size_t>(n)) {
      QMatrix a(n, n);
      QVector b(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        a.row(i) = cons[pick[static_cast<std::size_t>(i)]].normal.transpose();
        b(i) = cons[pick[static_cast<std::size_t>(i)]].rhs;
      }
      if (rank(a) < n) return;
      const QVector x = solve_linear(a, b)->particular;
      for (const auto& h : cons)
        if (h.normal.dot(x) < h.rhs) return;
      const Rational v = c.dot(x);
      if (!best || v < *best) best = v;
      return;
    }
    for (std::size_t i = start; i < m; ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace

TEST_CASE("solve_linear identity") {
  const auto s = solve_linear<Rational>(mat({{1, 0}, {0, 1}}), vec({1, 2}));
  REQUIRE(s);
  CHECK(s->particular == vec({1, 2}));
  CHECK(s->nullspace_basis.empty());
}

TEST_CASE("solve_linear single equation has a one dimensional kernel") {
  const auto s = solve_linear<Rational>(mat({{1, 1}}), vec({2}));
  REQUIRE(s);
  CHECK(s->particular == vec({2, 0}));
  REQUIRE(s->nullspace_basis.size() == 1);
  CHECK(s->nullspace_basis[0] == vec({1, -1}));
}

TEST_CASE("solve_linear inconsistent rows") {
  CHECK_FALSE(solve_linear<Rational>(mat({{1, 0}, {1, 0}}), vec({0, 1})));
  CHECK_THROWS_AS(solve_linear<Rational>(mat({{1, 0}}), vec({0, 1})), std::invalid_argument);
}

TEST_CASE("solve_linear substitution property") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index rows = 1 + trial % 4, cols = 1 + (trial / 4) % 4;
    QMatrix a(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = d(rng);
    QVector x(cols);
    for (Eigen::Index j = 0; j < cols; ++j) x(j) = Rational(d(rng), 1 + std::abs(d(rng)));
    const QVector b = a * x;
    const auto s = solve_linear(a, b);
    REQUIRE(s);
    CHECK(a * s->particular == b);
    for (const auto& k : s->nullspace_basis) CHECK(is_zero(a * k));
    CHECK(static_cast<Eigen::Index>(s->nullspace_basis.size()) == cols - rank(a));
  }
}

TEST_CASE("lp_solve small programs") {
  std::vector<Halfspace> ge3{{vec({1}), Rational(3)}};
  auto r = lp_solve(ge3, vec({1}), Sense::minimize);
  CHECK(r.status == LPStatus::optimal);
  CHECK(*r.value == 3);

  std::vector<Halfspace> le3{{vec({-1}), Rational(-3)}};
  r = lp_solve(le3, vec({1}), Sense::minimize);
  CHECK(r.status == LPStatus::unbounded);
  CHECK_FALSE(r.point);

  std::vector<Halfspace> simplex{{vec({1, 1}), Rational(1)}, {vec({1, 0}), Rational(0)}, {vec({0, 1}), Rational(0)}};
  r = lp_solve(simplex, vec({1, 1}), Sense::minimize);
  CHECK(r.status == LPStatus::optimal);
  CHECK(*r.value == 1);

  std::vector<Halfspace> none;
  CHECK(lp_solve(none, vec({0, 0}), Sense::minimize).status == LPStatus::optimal);
  CHECK(lp_solve(none, vec({1, 0}), Sense::maximize).status == LPStatus::unbounded);

  std::vector<Halfspace> empty{{vec({1}), Rational(1)}, {vec({-1}), Rational(0)}};
  CHECK(lp_solve(empty, vec({1}), Sense::minimize).status == LPStatus::infeasible);
}

TEST_CASE("lp_solve with equalities") {
  std::vector<Halfspace> ineq{{vec({1, 0}), Rational(0)}, {vec({0, 1}), Rational(0)}};
  std::vector<Halfspace> eq{{vec({1, 1}), Rational(2)}};
  const auto r = lp_solve(ineq, vec({1, -1}), Sense::minimize, eq);
  REQUIRE(r.status == LPStatus::optimal);
  CHECK(*r.point == vec({0, 2}));
}

TEST_CASE("lp_solve agrees with exhaustive vertex enumeration") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-4, 4);
  int feasible = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const Eigen::Index n = 1 + trial % 4;
    std::vector<Halfspace> cons;
    for (Eigen::Index i = 0; i < n; ++i) {
      cons.push_back({unit<Rational>(n, i), Rational(-5)});
      cons.push_back({QVector(-unit<Rational>(n, i)), Rational(-5)});
    }
    const int extra = static_cast<int>(10 - 2 * n) > 0 ? static_cast<int>(10 - 2 * n) : 1;
    for (int k = 0; k < extra; ++k) {
      QVector a(n);
      for (Eigen::Index j = 0; j < n; ++j) a(j) = d(rng);
      cons.push_back({a, Rational(d(rng))});
    }
    QVector c(n);
    for (Eigen::Index j = 0; j < n; ++j) c(j) = d(rng);
    const auto r = lp_solve(cons, c, Sense::minimize);
    const auto oracle = brute_force_min(cons, c);
    if (!oracle) {
      CHECK(r.status == LPStatus::infeasible);
      continue;
    }
    ++feasible;
    REQUIRE(r.status == LPStatus::optimal);
    CHECK(*r.value == *oracle);
    for (const auto& h : cons) CHECK(h.normal.dot(*r.point) >= h.rhs);
  }
  CHECK(feasible > 20);
}

TEST_CASE("VertexSimplex matches lp_solve under warm starts") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Index n = 2 + trial % 3;
    std::vector<Halfspace> cons;
    for (Eigen::Index i = 0; i < n; ++i) cons.push_back({unit<Rational>(n, i), Rational(0)});
    for (int k = 0; k < 6; ++k) {
      QVector a(n);
      for (Eigen::Index j = 0; j < n; ++j) a(j) = std::abs(d(rng)) + (j == 0 ? 1 : 0);
      cons.push_back({a, Rational(std::abs(d(rng)))});
    }
    QMatrix a(static_cast<Eigen::Index>(cons.size()), n);
    QVector b(static_cast<Eigen::Index>(cons.size()));
    for (std::size_t i = 0; i < cons.size(); ++i) {
      a.row(static_cast<Eigen::Index>(i)) = cons[i].normal.transpose();
      b(static_cast<Eigen::Index>(i)) = cons[i].rhs;
    }
    VertexSimplex<Rational> walker(a, b, QVector::Constant(n, Rational(10)));
    for (int k = 0; k < 8; ++k) {
      QVector c(n);
      for (Eigen::Index j = 0; j < n; ++j) c(j) = d(rng);
      const auto expect = lp_solve(cons, c, Sense::minimize);
      const auto got = walker.minimize(c);
      CHECK(got.status == expect.status);
      if (expect.status == LPStatus::optimal) CHECK(*got.value == *expect.value);
    }
  }
}

TEST_CASE("rational serialization round trip") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> d(-100000, 100000);
  for (int i = 0; i < 500; ++i) {
    const long den = d(rng);
    const Rational q(d(rng), den == 0 ? 1 : den);
    CHECK(parse_rational(to_string(q)) == q);
  }
  CHECK(to_string(Rational(4, 2)) == "2");
  CHECK(to_string(Rational(-1, 2)) == "-1/2");
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-1.5") == Rational(-3, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK(to_decimal(Rational(1, 3)) == "0.3333");
}
