#include "tsk/polyhedron.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "tsk/linalg.hpp"

namespace tsk {

GroundSet::GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  std::vector<std::string> sorted = labels_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("GroundSet: duplicate label '" + *std::adjacent_find(sorted.begin(), sorted.end()) + "'");
}

std::optional<Eigen::Index> GroundSet::find(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<Eigen::Index>(it - labels_.begin());
}

Eigen::Index GroundSet::index(const std::string& label) const {
  if (auto i = find(label)) return *i;
  throw std::out_of_range("unknown label '" + label + "'");
}

bool HPolyhedron::contains(const QVector& x) const {
  if (x.size() != dim()) throw std::invalid_argument("HPolyhedron::contains: dimension mismatch");
  for (const auto& h : inequalities)
    if (h.normal.dot(x) < h.rhs) return false;
  for (const auto& e : equalities)
    if (e.normal.dot(x) != e.rhs) return false;
  return true;
}

LPResult<Rational> optimize(const HPolyhedron& p, const QVector& objective, Sense sense) {
  return lp_solve(p.inequalities, objective, sense, p.equalities);
}

bool HPolyhedron::is_empty() const {
  return optimize(*this, zeros<Rational>(dim()), Sense::minimize).status == LPStatus::infeasible;
}

namespace {

/// Indices of inequalities that hold with equality on all of P (P nonempty).
std::vector<bool> implicit_equalities(const HPolyhedron& p) {
  const std::size_t m = p.inequalities.size();
  const Eigen::Index n = p.dim();
  std::vector<bool> candidate(m, true);
  for (;;) {
    std::vector<std::size_t> cand;
    for (std::size_t i = 0; i < m; ++i)
      if (candidate[i]) cand.push_back(i);
    if (cand.empty()) break;
    const Eigen::Index k = static_cast<Eigen::Index>(cand.size());
    // Variables (x, t); maximize Σ t with a_i x - t_i ≥ b_i, 0 ≤ t ≤ 1.
    std::vector<Halfspace> ineq, eq;
    std::size_t c = 0;
    for (std::size_t i = 0; i < m; ++i) {
      QVector a = zeros<Rational>(n + k);
      a.head(n) = p.inequalities[i].normal;
      if (candidate[i]) a(n + static_cast<Eigen::Index>(c++)) = -1;
      ineq.push_back({a, p.inequalities[i].rhs});
    }
    for (Eigen::Index j = 0; j < k; ++j) {
      ineq.push_back({unit<Rational>(n + k, n + j), Rational(0)});
      ineq.push_back({QVector(-unit<Rational>(n + k, n + j)), Rational(-1)});
    }
    for (const auto& e : p.equalities) {
      QVector a = zeros<Rational>(n + k);
      a.head(n) = e.normal;
      eq.push_back({a, e.rhs});
    }
    QVector obj = zeros<Rational>(n + k);
    obj.tail(k).setConstant(Rational(1));
    const auto r = lp_solve(ineq, obj, Sense::maximize, eq);
    if (r.status != LPStatus::optimal) throw InvariantFailure("implicit_equalities: LP not optimal");
    if (*r.value == 0) break;
    for (Eigen::Index j = 0; j < k; ++j)
      if ((*r.point)(n + j) > 0) candidate[cand[static_cast<std::size_t>(j)]] = false;
  }
  return candidate;
}

Rational positive_scale(const QVector& a) {
  const ZVector z = primitive(a);
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != 0) return Rational(z(i)) / a(i);
  return Rational(1);
}

bool halfspace_less(const Halfspace& x, const Halfspace& y) {
  if (x.normal != y.normal) return lex_less(x.normal, y.normal);
  return x.rhs < y.rhs;
}

}  // namespace

HPolyhedron HPolyhedron::canonical() const {
  const Eigen::Index n = dim();
  HPolyhedron out{ground, {}, {}};
  if (is_empty()) {
    out.inequalities.push_back({zeros<Rational>(n), Rational(1)});
    return out;
  }
  const std::vector<bool> implicit = implicit_equalities(*this);
  std::vector<Halfspace> eq = equalities;
  std::vector<Halfspace> ineq;
  for (std::size_t i = 0; i < inequalities.size(); ++i)
    (implicit[i] ? eq : ineq).push_back(inequalities[i]);

  RowEchelon<Rational> e;
  if (!eq.empty()) {
    QMatrix m(static_cast<Eigen::Index>(eq.size()), n + 1);
    for (std::size_t i = 0; i < eq.size(); ++i) {
      m.row(static_cast<Eigen::Index>(i)).head(n) = eq[i].normal.transpose();
      m(static_cast<Eigen::Index>(i), n) = eq[i].rhs;
    }
    e = row_echelon(std::move(m));
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      const QVector row = e.reduced.row(static_cast<Eigen::Index>(r)).transpose();
      const Rational s = positive_scale(row.head(n));
      out.equalities.push_back({QVector(row.head(n) * s), Rational(row(n) * s)});
    }
  }

  std::map<QVector, Rational, bool (*)(const QVector&, const QVector&)> best(
      [](const QVector& a, const QVector& b) { return lex_less(a, b); });
  for (Halfspace h : ineq) {
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      const Eigen::Index p = e.pivots[r];
      if (h.normal(p) == 0) continue;
      const Rational f = h.normal(p);
      h.normal -= f * QVector(e.reduced.row(static_cast<Eigen::Index>(r)).head(n).transpose());
      h.rhs -= f * e.reduced(static_cast<Eigen::Index>(r), n);
    }
    if (is_zero(h.normal)) continue;
    const Rational s = positive_scale(h.normal);
    h.normal *= s;
    h.rhs *= s;
    auto [it, inserted] = best.emplace(h.normal, h.rhs);
    if (!inserted && h.rhs > it->second) it->second = h.rhs;
  }
  std::vector<Halfspace> rows;
  for (auto& [a, b] : best) rows.push_back({a, b});

  std::vector<bool> keep(rows.size(), true);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<Halfspace> others;
    for (std::size_t j = 0; j < rows.size(); ++j)
      if (j != i && keep[j]) others.push_back(rows[j]);
    const auto r = lp_solve(others, rows[i].normal, Sense::minimize, out.equalities);
    if (r.status == LPStatus::optimal && *r.value >= rows[i].rhs) keep[i] = false;
  }
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (keep[i]) out.inequalities.push_back(rows[i]);
  std::sort(out.inequalities.begin(), out.inequalities.end(), halfspace_less);
  return out;
}

bool is_minimal_element(const HPolyhedron& p, const QVector& x) {
  if (!p.contains(x)) throw std::domain_error("is_minimal_element: point " + to_string(x) + " not in polyhedron");
  const Eigen::Index n = p.dim();
  std::vector<Halfspace> ineq = p.inequalities;
  for (Eigen::Index i = 0; i < n; ++i) ineq.push_back({QVector(-unit<Rational>(n, i)), Rational(-x(i))});
  const QVector ones = QVector::Constant(n, Rational(1));
  if (p.equalities.empty()) {
    // P ∩ {y ⪯ x} is pointed (the rows -e_i alone have full rank) and x is feasible.
    QMatrix a(static_cast<Eigen::Index>(ineq.size()), n);
    QVector b(a.rows());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      a.row(i) = ineq[static_cast<std::size_t>(i)].normal.transpose();
      b(i) = ineq[static_cast<std::size_t>(i)].rhs;
    }
    VertexSimplex<Rational> walker(std::move(a), std::move(b), x);
    const auto r = walker.minimize(ones);
    return r.status == LPStatus::optimal && *r.value == x.sum();
  }
  const auto r = lp_solve(ineq, ones, Sense::minimize, p.equalities);
  if (r.status != LPStatus::optimal) return false;
  return *r.value == x.sum();
}

bool is_bounded_from_below(const HPolyhedron& p, int cap) {
  if (p.dim() > cap) {
    for (Eigen::Index i = 0; i < p.dim(); ++i) {
      const auto r = optimize(p, unit<Rational>(p.dim(), i), Sense::minimize);
      if (r.status == LPStatus::infeasible) return true;
      if (r.status == LPStatus::unbounded) return false;
    }
    return true;
  }
  const VRepresentation v = dd_convert(p, cap);
  if (v.empty()) return true;
  if (!v.lines.empty()) return false;
  return std::all_of(v.rays.begin(), v.rays.end(), [](const QVector& r) { return is_nonnegative(r); });
}

std::optional<QVector> relint_point(const HPolyhedron& p, int cap) {
  const VRepresentation v = dd_convert(p, cap);
  if (v.empty()) return std::nullopt;
  QVector x = zeros<Rational>(p.dim());
  for (const auto& u : v.vertices) x += u;
  x /= Rational(static_cast<long>(v.vertices.size()));
  for (const auto& r : v.rays) x += r;
  return x;
}

}  // namespace tsk
