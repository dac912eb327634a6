#include <doctest.h>

#include <algorithm>
#include <set>

#include "tsk/configurations.hpp"

using namespace tsk;

namespace {

GroundSet ground(int n, int offset = 1) {
  std::vector<std::string> l;
  for (int i = 0; i < n; ++i) l.push_back(std::to_string(i + offset));
  return GroundSet(l);
}

QVector vec(std::initializer_list<long> xs) {
  QVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (long x : xs) v(i++) = Rational(x);
  return v;
}

using Partition = std::pair<std::vector<int>, std::vector<int>>;

std::set<Partition> partitions(const std::vector<ConfigSplit>& splits) {
  std::set<Partition> out;
  for (const auto& s : splits) {
    auto k = std::minmax(s.plus, s.minus);
    out.emplace(k.first, k.second);
  }
  return out;
}

}  // namespace

TEST_CASE("configuration sizes") {
  CHECK(build_configuration(ConfigKind::A, ground(3)).size() == 6);
  const auto abar4 = build_configuration(ConfigKind::A_bar, ground(4));
  CHECK(abar4.size() == 6);
  CHECK(abar4.affine_dim() == 3);
  CHECK(config_edges(abar4).size() == 12);  // octahedron
  const auto c2 = build_configuration(ConfigKind::C_cube, ground(2));
  CHECK(c2.dim() == 3);
  CHECK(c2.size() == 8);
  CHECK(c2.ground.label(2) == "{1,2}");
  CHECK(build_configuration(ConfigKind::hypersimplex, ground(5), std::nullopt, 3).size() == 10);
  CHECK_THROWS_AS(build_configuration(ConfigKind::B_bar, ground(2), ground(2)), std::invalid_argument);
  CHECK_THROWS_AS(build_configuration(ConfigKind::hypersimplex, ground(3), std::nullopt, 4), std::invalid_argument);
  const auto bd = build_configuration(ConfigKind::B_directed, ground(2));
  CHECK(bd.ground.label(2) == "1_r");
  CHECK(bd.size() == 4 + 4);
}

TEST_CASE("config_edges examples") {
  CHECK(config_edges(build_configuration(ConfigKind::A_bar, ground(3))).size() == 3);
  CHECK(config_edges(build_configuration(ConfigKind::B_bar, ground(2), ground(2, 3))).size() == 4);
}

TEST_CASE("B_bar edges are pairs sharing a coordinate") {
  const auto c = build_configuration(ConfigKind::B_bar, ground(3), ground(2, 4));
  std::set<std::pair<int, int>> expect;
  for (int p = 0; p < 6; ++p)
    for (int q = p + 1; q < 6; ++q)
      if (p / 2 == q / 2 || p % 2 == q % 2) expect.emplace(p, q);
  const auto got = config_edges(c);
  CHECK(std::set<std::pair<int, int>>(got.begin(), got.end()) == expect);
}

TEST_CASE("split census matches brute force") {
  const auto a3 = build_configuration(ConfigKind::A, ground(3));
  const auto a4 = build_configuration(ConfigKind::A, ground(4));
  const auto b22 = build_configuration(ConfigKind::B_bar, ground(2), ground(2, 3));
  CHECK(enumerate_splits(a3).size() == 6);
  CHECK(enumerate_splits(a4).size() == 25);
  CHECK(enumerate_splits(b22).size() == 2);
  for (const auto* c : {&a3, &a4, &b22}) CHECK(partitions(enumerate_splits(*c)) == partitions(enumerate_splits(*c, true)));
  const auto abar4 = build_configuration(ConfigKind::A_bar, ground(4));
  CHECK(partitions(enumerate_splits(abar4)) == partitions(enumerate_splits(abar4, true)));
  const auto b32 = build_configuration(ConfigKind::B_bar, ground(3), ground(2, 4));
  CHECK(partitions(enumerate_splits(b32)) == partitions(enumerate_splits(b32, true)));
  const auto bbd = build_configuration(ConfigKind::B_bar_directed, ground(3));
  CHECK(partitions(enumerate_splits(bbd)) == partitions(enumerate_splits(bbd, true)));
}

TEST_CASE("directed partial splits of B(X) against brute force") {
  for (int n : {2, 3}) {
    const auto b = build_configuration(ConfigKind::B_directed, ground(n));
    const auto closed = enumerate_splits(b);
    const auto brute = partitions(enumerate_splits(b, true));
    CHECK(partitions(closed) == brute);
    CHECK(brute.size() == static_cast<std::size_t>(((1 << n) - 1) * ((1 << n) - 1)));
    // Directed partial splits are a proper subfamily.
    std::vector<ConfigSplit> disjoint;
    for (const auto& s : closed)
      if (!(s.tag->a & s.tag->b)) disjoint.push_back(s);
    CHECK(partitions(disjoint).size() < brute.size());
  }
}

TEST_CASE("splits_compatible examples") {
  const auto a3 = build_configuration(ConfigKind::A, ground(3));
  const auto s12 = partial_split_split(a3, 1, 2);
  const auto s1_23 = partial_split_split(a3, 1, 6);
  const auto s23 = partial_split_split(a3, 2, 4);
  for (auto m : {CompatibilityMethod::geometric, CompatibilityMethod::combinatorial}) {
    CHECK(splits_compatible(a3, s12, s1_23, m));
    CHECK_FALSE(splits_compatible(a3, s12, s23, m));
  }
  // The hyperplanes of {1|2} and {2|3} meet inside conv A at (2/3,2/3,2/3).
  const QVector meet = vec({2, 2, 2}) / Rational(3);
  CHECK(s12.normal.dot(meet) == 0);
  CHECK(s23.normal.dot(meet) == 0);
  const auto b22 = build_configuration(ConfigKind::B_bar, ground(2), ground(2, 3));
  const auto diag = enumerate_splits(b22);
  REQUIRE(diag.size() == 2);
  for (auto m : {CompatibilityMethod::geometric, CompatibilityMethod::combinatorial})
    CHECK_FALSE(splits_compatible(b22, diag[0], diag[1], m));
  CHECK_THROWS_AS(splits_compatible(a3, make_split(a3, s12.normal, Rational(0)), s23, CompatibilityMethod::combinatorial),
                  std::invalid_argument);
}

TEST_CASE("combinatorial and geometric compatibility agree") {
  const auto a4 = build_configuration(ConfigKind::A, ground(4));
  const auto b32 = build_configuration(ConfigKind::B_bar, ground(3), ground(2, 4));
  const auto b3d = build_configuration(ConfigKind::B_directed, ground(3));
  for (const auto* c : {&a4, &b32, &b3d}) {
    const auto splits = enumerate_splits(*c);
    int pairs = 0;
    for (std::size_t i = 0; i < splits.size(); ++i)
      for (std::size_t j = i + 1; j < splits.size(); ++j) {
        ++pairs;
        CHECK(splits_compatible(*c, splits[i], splits[j], CompatibilityMethod::geometric) ==
              splits_compatible(*c, splits[i], splits[j], CompatibilityMethod::combinatorial));
      }
    if (c == &a4) CHECK(pairs == 300);
  }
}

TEST_CASE("split_weight examples") {
  const auto a3 = build_configuration(ConfigKind::A, ground(3));
  const auto s = partial_split_split(a3, 1, 6);
  CHECK(split_weight(a3, s).values == vec({2, 0, 0, 0, 0, 0}));
  const auto w = split_weight(a3, partial_split_split(a3, 1, 2)).values;
  for (int i : partial_split_split(a3, 1, 2).minus) CHECK(w(i) == 0);
  const auto b22 = build_configuration(ConfigKind::B_bar, ground(2), ground(2, 3));
  CHECK(split_weight(b22, bbar_split(b22, 1, 2)).values == vec({1, 0, 0, 0}));
}
