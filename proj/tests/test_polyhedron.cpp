#include <doctest.h>

#include "tsk/polyhedron.hpp"

using namespace tsk;

namespace {

QVector vec(std::initializer_list<Rational> xs) {
  QVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

GroundSet ground(int n) {
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  return GroundSet(labels);
}

HPolyhedron unit_square() {
  return {ground(2),
          {{vec({1, 0}), 0}, {vec({0, 1}), 0}, {vec({-1, 0}), -1}, {vec({0, -1}), -1}},
          {}};
}

// Envelope of the metric D(1,2) = 1 over A(X).
HPolyhedron two_point_envelope() {
  return {ground(2), {{vec({2, 0}), 0}, {vec({1, 1}), 1}, {vec({0, 2}), 0}}, {}};
}

}  // namespace

TEST_CASE("GroundSet rejects duplicates") {
  CHECK_THROWS_AS(GroundSet({"a", "b", "a"}), std::invalid_argument);
  const GroundSet g({"x", "y"});
  CHECK(g.index("y") == 1);
  CHECK_FALSE(g.find("z"));
}

TEST_CASE("dd_convert unit square") {
  const auto v = dd_convert(unit_square());
  CHECK(v.vertices.size() == 4);
  CHECK(v.rays.empty());
  CHECK(v.vertices.front() == vec({0, 0}));
  CHECK(v.vertices.back() == vec({1, 1}));
}

TEST_CASE("dd_convert unbounded corner") {
  const HPolyhedron p{ground(2), {{vec({1, 0}), 0}, {vec({0, 1}), 0}, {vec({1, 1}), 1}}, {}};
  const auto v = dd_convert(p);
  REQUIRE(v.vertices.size() == 2);
  CHECK(v.vertices[0] == vec({0, 1}));
  CHECK(v.vertices[1] == vec({1, 0}));
  REQUIRE(v.rays.size() == 2);
  CHECK(v.rays[0] == vec({0, 1}));
  CHECK(v.rays[1] == vec({1, 0}));
}

TEST_CASE("dd_convert two point envelope") {
  const auto v = dd_convert(two_point_envelope());
  REQUIRE(v.vertices.size() == 2);
  CHECK(v.vertices[0] == vec({0, 1}));
  CHECK(v.vertices[1] == vec({1, 0}));
  CHECK(v.rays.size() == 2);
}

TEST_CASE("dd_convert empty, lines, equalities and cap") {
  const HPolyhedron empty{ground(1), {{vec({1}), 1}, {vec({-1}), 0}}, {}};
  CHECK(dd_convert(empty).empty());
  const HPolyhedron halfplane{ground(2), {{vec({1, 0}), 0}}, {}};
  const auto h = dd_convert(halfplane);
  CHECK(h.vertices.size() == 1);
  CHECK(h.lines.size() == 1);
  CHECK(h.rays == std::vector<QVector>{vec({1, 0})});
  const HPolyhedron segment{ground(2), {{vec({1, 0}), 0}, {vec({0, 1}), 0}}, {{vec({1, 1}), 2}}};
  CHECK(dd_convert(segment).vertices == std::vector<QVector>{vec({0, 2}), vec({2, 0})});
  CHECK_THROWS_AS(dd_convert(segment, 1), EnumerationCapExceeded);
}

TEST_CASE("face lattice of the unit square and a triangle") {
  const auto sq = unit_square();
  CHECK(face_lattice(sq, dd_convert(sq)).histogram() == std::vector<int>{4, 4, 1});
  // conv{2e_x}: a triangle inside Σx = 2.
  const HPolyhedron tri{ground(3), {{vec({1, 0, 0}), 0}, {vec({0, 1, 0}), 0}, {vec({0, 0, 1}), 0}}, {{vec({1, 1, 1}), 2}}};
  const auto fl = face_lattice(tri, dd_convert(tri));
  CHECK(fl.histogram() == std::vector<int>{3, 3, 1});
  CHECK(fl.contains(0, fl.faces.size() - 1));
  CHECK_FALSE(fl.contains(fl.faces.size() - 1, 0));
}

TEST_CASE("bounded faces") {
  const auto env = bounded_faces(two_point_envelope());
  CHECK(env.vertices.size() == 2);
  REQUIRE(env.edges.size() == 1);
  CHECK(env.edges[0].difference == vec({1, -1}));
  CHECK(env.dimension() == 1);

  const auto sq = bounded_faces(unit_square());
  CHECK(sq.faces.size() == 9);
  CHECK(sq.dimension() == 2);

  const HPolyhedron halfplane{ground(2), {{vec({1, 0}), 0}}, {}};
  CHECK(bounded_faces(halfplane).empty());
}

TEST_CASE("minimal elements") {
  const auto p = two_point_envelope();
  CHECK(is_minimal_element(p, vec({1, 0})));
  CHECK_FALSE(is_minimal_element(p, vec({1, 1})));
  CHECK(is_minimal_element(p, vec({Rational(1, 2), Rational(1, 2)})));
  CHECK_THROWS_AS(is_minimal_element(p, vec({0, 0})), std::domain_error);
}

TEST_CASE("bounded from below") {
  CHECK(is_bounded_from_below(two_point_envelope()));
  const HPolyhedron p{ground(2), {{vec({1, 1}), 0}}, {}};
  CHECK_FALSE(is_bounded_from_below(p));
  CHECK(is_bounded_from_below(unit_square()));
  CHECK(is_bounded_from_below(two_point_envelope(), 0));
  CHECK_FALSE(is_bounded_from_below(p, 0));
}

TEST_CASE("relint point") {
  CHECK(*relint_point(unit_square()) == vec({Rational(1, 2), Rational(1, 2)}));
  const HPolyhedron pt{ground(2), {}, {{vec({1, 0}), 3}, {vec({0, 1}), -1}}};
  CHECK(*relint_point(pt) == vec({3, -1}));
  const HPolyhedron empty{ground(1), {{vec({1}), 1}, {vec({-1}), 0}}, {}};
  CHECK_FALSE(relint_point(empty));
}

TEST_CASE("canonical form") {
  const auto c = unit_square().canonical();
  CHECK(c.inequalities.size() == 4);
  // Redundant and scaled rows collapse.
  const HPolyhedron p{ground(2), {{vec({2, 0}), 0}, {vec({0, 2}), 0}, {vec({1, 1}), -1}, {vec({3, 3}), 3}}, {}};
  const auto q = p.canonical();
  REQUIRE(q.inequalities.size() == 3);
  CHECK(q.inequalities[2].normal == vec({1, 1}));
  CHECK(q.inequalities[2].rhs == 1);
  // Implicit equalities are exposed.
  const HPolyhedron s{ground(2), {{vec({1, 1}), 2}, {vec({-1, -1}), -2}, {vec({1, 0}), 0}, {vec({0, 1}), 0}}, {}};
  const auto t = s.canonical();
  CHECK(t.equalities.size() == 1);
  CHECK(t.inequalities.size() == 2);
  const HPolyhedron empty{ground(1), {{vec({1}), 1}, {vec({-1}), 0}}, {}};
  const auto e = empty.canonical();
  REQUIRE(e.inequalities.size() == 1);
  CHECK(is_zero(e.inequalities[0].normal));
  CHECK(e.inequalities[0].rhs == 1);
}

TEST_CASE("convex hull round trip") {
  const std::vector<QVector> pts{vec({0, 0}), vec({2, 0}), vec({0, 2}), vec({1, 1}), vec({2, 2})};
  const auto h = convex_hull(ground(2), pts);
  CHECK(h.inequalities.size() == 4);
  CHECK(h.equalities.empty());
  const auto v = dd_convert(h);
  CHECK(v.vertices == std::vector<QVector>{vec({0, 0}), vec({0, 2}), vec({2, 0}), vec({2, 2})});
  // Points spanning a lower dimensional set.
  const auto seg = convex_hull(ground(2), {vec({0, 1}), vec({1, 0})});
  CHECK(seg.equalities.size() == 1);
  CHECK(seg.inequalities.size() == 2);
}

TEST_CASE("H to V to H round trip reproduces vertices") {
  const HPolyhedron p{ground(3),
                      {{vec({1, 0, 0}), 0}, {vec({0, 1, 0}), 0}, {vec({0, 0, 1}), 0}, {vec({-1, -1, -1}), -3},
                       {vec({1, 1, 0}), 1}, {vec({-1, 0, 0}), -2}},
                      {}};
  const auto v = dd_convert(p);
  const auto h = convex_hull(p.ground, v.vertices, v.rays);
  CHECK(dd_convert(h).vertices == v.vertices);
  CHECK(h.canonical().inequalities == p.canonical().inequalities);
}
