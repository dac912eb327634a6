#include <algorithm>
#include <set>

#include <boost/dynamic_bitset.hpp>

#include "tsk/linalg.hpp"
#include "tsk/polyhedron.hpp"

namespace tsk {

namespace {

using Bits = boost::dynamic_bitset<>;

Integer dot(const ZVector& a, const ZVector& b) {
  Integer s = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != 0 && b(i) != 0) s += a(i) * b(i);
  return s;
}

ZVector combine(const Integer& p, const ZVector& u, const Integer& q, const ZVector& v) {
  ZVector out(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) out(i) = p * u(i) + q * v(i);
  return primitive(out);
}

struct Generator {
  ZVector v;
  Bits zero;  // processed inequalities tight on v
};

struct ConeGenerators {
  std::vector<ZVector> lines;
  std::vector<ZVector> rays;
};

/// Generators of {y : ⟨h,y⟩ = 0 for h in eq, ⟨h,y⟩ ≥ 0 for h in ineq}.
/// Rays are extreme modulo the returned lines.
ConeGenerators dd_cone(const std::vector<ZVector>& eq, const std::vector<ZVector>& ineq, Eigen::Index dim) {
  std::vector<ZVector> lines;
  for (Eigen::Index i = 0; i < dim; ++i) {
    ZVector e = ZVector::Constant(dim, Integer(0));
    e(i) = 1;
    lines.push_back(std::move(e));
  }
  std::vector<Generator> rays;
  const std::size_t m = ineq.size();

  // Projects every generator onto h⊥ using a line with ⟨h,ℓ⟩ ≠ 0 and
  // returns that line (removed from `lines`), or nullopt.
  auto eliminate_line = [&](const ZVector& h, std::size_t bit, bool mark) -> std::optional<ZVector> {
    std::size_t pick = lines.size();
    Integer s;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      s = dot(h, lines[i]);
      if (s != 0) {
        pick = i;
        break;
      }
    }
    if (pick == lines.size()) return std::nullopt;
    ZVector l = lines[pick];
    lines.erase(lines.begin() + static_cast<std::ptrdiff_t>(pick));
    if (s < 0) {
      l = -l;
      s = -s;
    }
    for (auto& other : lines) {
      const Integer t = dot(h, other);
      if (t != 0) other = combine(s, other, Integer(-t), l);
    }
    for (auto& r : rays) {
      const Integer t = dot(h, r.v);
      if (t != 0) r.v = combine(s, r.v, Integer(-t), l);
      if (mark) r.zero.set(bit);
    }
    return l;
  };

  for (const auto& h : eq) {
    if (eliminate_line(h, 0, false)) continue;
    // No rays exist while equalities are processed; all lines are in h⊥.
  }
  const Eigen::Index eq_rank = [&] {
    std::vector<QVector> rows;
    for (const auto& h : eq) rows.push_back(to_rational(h));
    return rows.empty() ? Eigen::Index(0) : rank(rows, dim);
  }();

  for (std::size_t k = 0; k < m; ++k) {
    const ZVector& h = ineq[k];
    if (auto l = eliminate_line(h, k, true)) {
      Generator g{std::move(*l), Bits(m)};
      for (std::size_t j = 0; j < k; ++j) g.zero.set(j);
      rays.push_back(std::move(g));
      continue;
    }
    std::vector<Integer> val(rays.size());
    bool any_negative = false;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(h, rays[i].v);
      if (val[i] < 0) any_negative = true;
    }
    if (!any_negative) {
      for (std::size_t i = 0; i < rays.size(); ++i)
        if (val[i] == 0) rays[i].zero.set(k);
      continue;
    }
    const long needed = static_cast<long>(dim) - static_cast<long>(lines.size()) - 2 - static_cast<long>(eq_rank);
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (val[i] > 0) pos.push_back(i);
      else if (val[i] < 0) neg.push_back(i);
    }
    std::vector<Generator> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (val[i] < 0) continue;
      Generator g = rays[i];
      if (val[i] == 0) g.zero.set(k);
      next.push_back(std::move(g));
    }
    for (std::size_t p : pos) {
      for (std::size_t q : neg) {
        const Bits common = rays[p].zero & rays[q].zero;
        if (static_cast<long>(common.count()) < needed) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
          if (r != p && r != q && common.is_subset_of(rays[r].zero)) adjacent = false;
        if (!adjacent) continue;
        Generator g{combine(val[p], rays[q].v, Integer(-val[q]), rays[p].v), common};
        g.zero.set(k);
        next.push_back(std::move(g));
      }
    }
    rays = std::move(next);
  }
  ConeGenerators out;
  out.lines = std::move(lines);
  for (auto& r : rays) out.rays.push_back(std::move(r.v));
  return out;
}

ZVector integer_row(const QVector& a, const Rational& rhs_coeff) {
  // (rhs_coeff, a) scaled to a primitive integer vector.
  QVector q(a.size() + 1);
  q(0) = rhs_coeff;
  q.tail(a.size()) = a;
  return primitive(q);
}

/// Orthogonal projection onto the complement of span(lines).
class LinealityProjector {
 public:
  explicit LinealityProjector(const std::vector<QVector>& lines) {
    if (lines.empty()) return;
    basis_.resize(lines.front().size(), static_cast<Eigen::Index>(lines.size()));
    for (std::size_t i = 0; i < lines.size(); ++i) basis_.col(static_cast<Eigen::Index>(i)) = lines[i];
    gram_inv_ = inverse<Rational>(basis_.transpose() * basis_);
  }
  QVector operator()(const QVector& x) const {
    if (basis_.size() == 0) return x;
    return x - basis_ * (gram_inv_ * (basis_.transpose() * x));
  }

 private:
  QMatrix basis_;
  QMatrix gram_inv_;
};

/// Reduced echelon basis of span(lines), rows scaled to primitive integers.
std::vector<QVector> canonical_lines(const std::vector<ZVector>& lines, Eigen::Index dim) {
  if (lines.empty()) return {};
  QMatrix m(static_cast<Eigen::Index>(lines.size()), dim);
  for (std::size_t i = 0; i < lines.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = to_rational(lines[i]).transpose();
  const auto e = row_echelon(m);
  std::vector<QVector> out;
  for (std::size_t r = 0; r < e.pivots.size(); ++r)
    out.push_back(to_rational(primitive(QVector(e.reduced.row(static_cast<Eigen::Index>(r)).transpose()))));
  return out;
}

void sort_unique(std::vector<QVector>& v) {
  std::sort(v.begin(), v.end(), [](const QVector& a, const QVector& b) { return lex_less(a, b); });
  v.erase(std::unique(v.begin(), v.end(), [](const QVector& a, const QVector& b) { return a == b; }), v.end());
}

}  // namespace

VRepresentation dd_convert(const HPolyhedron& p, int cap) {
  const Eigen::Index n = p.dim();
  if (n > cap) throw EnumerationCapExceeded(n, cap);
  std::vector<ZVector> eq, ineq;
  for (const auto& e : p.equalities) eq.push_back(integer_row(e.normal, Rational(-e.rhs)));
  ZVector t_row = ZVector::Constant(n + 1, Integer(0));
  t_row(0) = 1;
  ineq.push_back(t_row);
  for (const auto& h : p.inequalities) ineq.push_back(integer_row(h.normal, Rational(-h.rhs)));

  const ConeGenerators cone = dd_cone(eq, ineq, n + 1);
  VRepresentation out;
  std::vector<QVector> raw_vertices, raw_rays;
  for (const auto& r : cone.rays) {
    if (r(0) > 0) {
      QVector x(n);
      for (Eigen::Index i = 0; i < n; ++i) x(i) = Rational(r(i + 1), r(0));
      raw_vertices.push_back(std::move(x));
    } else {
      raw_rays.push_back(to_rational(ZVector(r.tail(n))));
    }
  }
  if (raw_vertices.empty()) return out;
  std::vector<ZVector> lines;
  for (const auto& l : cone.lines) lines.push_back(l.tail(n));
  out.lines = canonical_lines(lines, n);
  const LinealityProjector project(out.lines);
  for (const auto& v : raw_vertices) out.vertices.push_back(project(v));
  for (const auto& r : raw_rays) out.rays.push_back(to_rational(primitive(project(r))));
  sort_unique(out.vertices);
  sort_unique(out.rays);
  return out;
}

HPolyhedron convex_hull(const GroundSet& ground, const std::vector<QVector>& points,
                        const std::vector<QVector>& rays, int cap) {
  const Eigen::Index n = ground.size();
  if (n > cap) throw EnumerationCapExceeded(n, cap);
  HPolyhedron out{ground, {}, {}};
  if (points.empty()) {
    out.inequalities.push_back({zeros<Rational>(n), Rational(1)});
    return out;
  }
  // Polar cone of valid (a, c): ⟨a,v⟩ - c ≥ 0, ⟨a,r⟩ ≥ 0; coordinates (c, a).
  std::vector<ZVector> rows;
  for (const auto& v : points) rows.push_back(integer_row(v, Rational(-1)));
  for (const auto& r : rays) rows.push_back(integer_row(r, Rational(0)));
  const ConeGenerators cone = dd_cone({}, rows, n + 1);

  std::vector<QVector> lines;
  for (const auto& l : cone.lines) lines.push_back(to_rational(l));
  const auto eq = canonical_lines(cone.lines, n + 1);
  for (const auto& l : eq) out.equalities.push_back({QVector(l.tail(n)), l(0)});
  const LinealityProjector project(eq);
  for (const auto& r : cone.rays) {
    const QVector g = to_rational(primitive(project(to_rational(r))));
    const QVector a = g.tail(n);
    bool touches = false;
    for (const auto& v : points)
      if (a.dot(v) == g(0)) {
        touches = true;
        break;
      }
    if (!touches) continue;  // the trivial inequality 0 ≥ -1
    out.inequalities.push_back({a, g(0)});
  }
  std::sort(out.inequalities.begin(), out.inequalities.end(), [](const Halfspace& x, const Halfspace& y) {
    if (x.normal != y.normal) return lex_less(x.normal, y.normal);
    return x.rhs < y.rhs;
  });
  return out;
}

}  // namespace tsk
