#include "tsk/maps.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace tsk {

namespace {

std::string pair_witness(const char* name, const GroundSet& g, Eigen::Index i, Eigen::Index j) {
  return std::string(name) + "(" + g.label(i) + "," + g.label(j) + ")";
}

std::string quad_witness(const GroundSet& g, Eigen::Index x, Eigen::Index y, Eigen::Index u, Eigen::Index v) {
  return "x=" + g.label(x) + " y=" + g.label(y) + " u=" + g.label(u) + " v=" + g.label(v);
}

void check_distance(const GroundSet& g, const QMatrix& m, std::vector<Violation>& out) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    if (m(i, i) != 0) out.push_back({"zero diagonal", pair_witness("D", g, i, i) + " = " + to_string(m(i, i))});
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) < 0) out.push_back({"nonnegativity", pair_witness("D", g, i, j) + " = " + to_string(m(i, j))});
}

void check_triangle(const GroundSet& g, const QMatrix& m, std::vector<Violation>& out) {
  const Eigen::Index n = m.rows();
  for (Eigen::Index x = 0; x < n; ++x)
    for (Eigen::Index y = 0; y < n; ++y)
      for (Eigen::Index z = 0; z < n; ++z)
        if (m(x, z) > m(x, y) + m(y, z))
          out.push_back({"triangle inequality", pair_witness("D", g, x, z) + " > " + pair_witness("D", g, x, y) + " + " +
                                                    pair_witness("D", g, y, z)});
}

void check_four_point(const SymmetricMap& d, std::vector<Violation>& out) {
  const Eigen::Index n = d.size();
  for (Eigen::Index x = 0; x < n; ++x)
    for (Eigen::Index y = 0; y < n; ++y)
      for (Eigen::Index u = 0; u < n; ++u)
        for (Eigen::Index v = 0; v < n; ++v)
          if (d(x, y) + d(u, v) > std::max(d(x, u) + d(y, v), d(x, v) + d(y, u)))
            out.push_back({"four-point condition", quad_witness(d.ground, x, y, u, v)});
}

bool subset(std::uint64_t a, std::uint64_t b) { return (a & ~b) == 0; }

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("make_weight: ") + what);
}

/// (i, j) with a = e_i + e_j.
std::pair<Eigen::Index, Eigen::Index> pair_support(const QVector& a) {
  std::vector<Eigen::Index> s;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) == 2) return {i, i};
    if (a(i) == 1) s.push_back(i);
  }
  if (s.size() != 2) throw std::invalid_argument("make_weight: point is not of the form e_x + e_y");
  return {s[0], s[1]};
}

std::uint64_t support_mask(const QVector& a) {
  std::uint64_t m = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != 0) m |= std::uint64_t{1} << i;
  return m;
}

}  // namespace

SymmetricMap::SymmetricMap(GroundSet g)
    : ground(std::move(g)), values(QMatrix::Constant(ground.size(), ground.size(), Rational(0))) {}

void SymmetricMap::set(Eigen::Index i, Eigen::Index j, const Rational& v) {
  values(i, j) = v;
  values(j, i) = v;
}

DirectedMap::DirectedMap(GroundSet x, std::optional<GroundSet> y) : domain(std::move(x)), codomain(std::move(y)) {
  values = QMatrix::Constant(domain.size(), cod().size(), Rational(0));
}

Diversity::Diversity(GroundSet y) : ground(std::move(y)) {
  if (ground.size() > 20) throw std::invalid_argument("Diversity: ground set too large");
  values.assign(std::size_t{1} << ground.size(), Rational(0));
}

std::vector<Violation> validate(const SymmetricMap& d, MapKind kind) {
  std::vector<Violation> out;
  switch (kind) {
    case MapKind::symmetric:
      break;
    case MapKind::metric:
      check_distance(d.ground, d.values, out);
      check_triangle(d.ground, d.values, out);
      break;
    case MapKind::distance:
      check_distance(d.ground, d.values, out);
      break;
    case MapKind::four_point:
      check_four_point(d, out);
      break;
    default:
      throw std::invalid_argument("validate: kind does not apply to symmetric maps");
  }
  return out;
}

std::vector<Violation> validate(const DirectedMap& d, MapKind kind) {
  std::vector<Violation> out;
  if (kind == MapKind::directed) return out;
  if (kind != MapKind::directed_distance && kind != MapKind::directed_metric)
    throw std::invalid_argument("validate: kind does not apply to directed maps");
  if (!d.is_copy()) {
    out.push_back({"same ground", "directed distances need Y to be a copy of X"});
    return out;
  }
  check_distance(d.domain, d.values, out);
  if (kind == MapKind::directed_metric) check_triangle(d.domain, d.values, out);
  return out;
}

std::vector<Violation> validate(const Diversity& delta) {
  std::vector<Violation> out;
  const std::uint64_t full = delta.full();
  const GroundSet& g = delta.ground;
  for (std::uint64_t a = 0; a <= full; ++a)
    if (std::popcount(a) <= 1 && delta(a) != 0)
      out.push_back({"(D2)", "delta" + subset_label(g, a) + " = " + to_string(delta(a))});
  for (std::uint64_t a = 0; a <= full; ++a)
    for (std::uint64_t b = a; b <= full; ++b)
      if (subset(a, b) && delta(a) > delta(b))
        out.push_back({"monotonicity", "delta" + subset_label(g, a) + " > delta" + subset_label(g, b)});
  for (std::uint64_t a = 0; a <= full; ++a)
    for (std::uint64_t b = 1; b <= full; ++b)
      for (std::uint64_t c = 0; c <= full; ++c)
        if (delta(a | b) + delta(b | c) < delta(a | c))
          out.push_back({"(D1)", "A=" + subset_label(g, a) + " B=" + subset_label(g, b) + " C=" + subset_label(g, c)});
  return out;
}

std::pair<SymmetricMap, QVector> normalize_symmetric(const SymmetricMap& d) {
  const Eigen::Index n = d.size();
  QVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = d(i, i) / 2;
  SymmetricMap out(d.ground);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) out.set(i, j, d(i, j) - v(i) - v(j));
  return {out, v};
}

SymmetricMap positive_part(const SymmetricMap& d) {
  SymmetricMap out = d;
  for (auto& x : out.values.reshaped()) x = std::max(x, Rational(0));
  return out;
}

DirectedMap positive_part(const DirectedMap& d) {
  DirectedMap out = d;
  for (auto& x : out.values.reshaped()) x = std::max(x, Rational(0));
  return out;
}

SymmetricMap undirect(const DirectedMap& d) {
  if (!d.is_copy()) throw std::invalid_argument("undirect: needs a directed map on a copy of X");
  const Eigen::Index n = d.domain.size();
  std::vector<std::string> labels;
  for (const auto& l : d.domain.labels()) labels.push_back(l + "_l");
  for (const auto& l : d.domain.labels()) labels.push_back(l + "_r");
  SymmetricMap out{GroundSet(labels)};
  for (Eigen::Index x = 0; x < n; ++x)
    for (Eigen::Index y = 0; y < n; ++y) out.set(x, n + y, d.values(x, y));
  return out;
}

SymmetricMap diversity_to_sym(const Diversity& delta) {
  SymmetricMap out{nonempty_subsets(delta.ground)};
  const std::uint64_t full = delta.full();
  for (std::uint64_t a = 1; a <= full; ++a) {
    out.values(static_cast<Eigen::Index>(a - 1), static_cast<Eigen::Index>(a - 1)) = 2 * delta(a);
    for (std::uint64_t b = a + 1; b <= full; ++b)
      out.set(static_cast<Eigen::Index>(a - 1), static_cast<Eigen::Index>(b - 1), delta(a | b));
  }
  return out;
}

Diversity sym_to_diversity(const SymmetricMap& d, const GroundSet& y) {
  if (!(d.ground == nonempty_subsets(y))) throw std::invalid_argument("sym_to_diversity: ground is not P0(Y)");
  Diversity out(y);
  for (std::uint64_t a = 1; a <= out.full(); ++a)
    out(a) = d(static_cast<Eigen::Index>(a - 1), static_cast<Eigen::Index>(a - 1)) / 2;
  return out;
}

std::vector<Violation> check_A1_A3(const SymmetricMap& d, const GroundSet& y) {
  if (!(d.ground == nonempty_subsets(y))) throw std::invalid_argument("check_A1_A3: ground is not P0(Y)");
  std::vector<Violation> out;
  const Eigen::Index n = d.size();
  check_triangle(d.ground, d.values, out);
  for (auto& v : out) v.axiom = "(A1)";
  for (Eigen::Index x = 0; x < y.size(); ++x) {
    const Eigen::Index i = (Eigen::Index{1} << x) - 1;
    if (d(i, i) != 0) out.push_back({"(A2)", pair_witness("D", d.ground, i, i)});
  }
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Eigen::Index u = static_cast<Eigen::Index>(((i + 1) | (j + 1)) - 1);
      if (2 * d(i, j) != d(u, u)) out.push_back({"(A3)", pair_witness("D", d.ground, i, j)});
    }
  return out;
}

SymmetricMap diversity_distance(const Diversity& delta) {
  SymmetricMap out{nonempty_subsets(delta.ground)};
  const std::uint64_t full = delta.full();
  for (std::uint64_t a = 1; a <= full; ++a)
    for (std::uint64_t b = a + 1; b <= full; ++b)
      out.set(static_cast<Eigen::Index>(a - 1), static_cast<Eigen::Index>(b - 1),
              std::max(Rational(0), delta(a | b) - delta(a) - delta(b)));
  return out;
}

WeightFunction make_weight(const PointConfiguration& config, const SymmetricMap& d) {
  require(config.kind == ConfigKind::A || config.kind == ConfigKind::A_bar, "symmetric maps need A or A_bar");
  require(config.ground == d.ground, "ground set mismatch");
  QVector w(static_cast<Eigen::Index>(config.size()));
  for (std::size_t p = 0; p < config.size(); ++p) {
    const auto [i, j] = pair_support(config.point(p));
    w(static_cast<Eigen::Index>(p)) = -d(i, j);
  }
  return {w};
}

WeightFunction make_weight(const PointConfiguration& config, const DirectedMap& d) {
  const bool copy_kind = config.kind == ConfigKind::B_directed || config.kind == ConfigKind::B_bar_directed;
  const bool pair_kind = config.kind == ConfigKind::B || config.kind == ConfigKind::B_bar;
  require(copy_kind || pair_kind, "directed maps need a B-kind configuration");
  require(copy_kind == d.is_copy(), "directed map and configuration disagree on the codomain");
  require(config.x_size == d.domain.size() && config.dim() == d.domain.size() + d.cod().size(), "ground set mismatch");
  if (pair_kind)
    for (Eigen::Index i = 0; i < config.dim(); ++i)
      require(config.ground.label(i) == (i < config.x_size ? d.domain.label(i) : d.cod().label(i - config.x_size)),
              "ground set mismatch");
  QVector w(static_cast<Eigen::Index>(config.size()));
  for (std::size_t p = 0; p < config.size(); ++p) {
    const auto [i, j] = pair_support(config.point(p));
    const bool mixed = i < config.x_size && j >= config.x_size;
    w(static_cast<Eigen::Index>(p)) = mixed ? Rational(-d.values(i, j - config.x_size)) : Rational(0);
  }
  return {w};
}

WeightFunction make_weight(const PointConfiguration& config, const Diversity& delta) {
  require(config.ground == nonempty_subsets(delta.ground), "configuration ground is not P0(Y)");
  if (config.kind == ConfigKind::A) return make_weight(config, diversity_to_sym(delta));
  require(config.kind == ConfigKind::C_cube, "diversities need C_cube or A over P0(Y)");
  QVector w(static_cast<Eigen::Index>(config.size()));
  for (std::size_t p = 0; p < config.size(); ++p) {
    const QVector& a = config.point(p);
    std::uint64_t u = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i)
      if (a(i) != 0) u |= static_cast<std::uint64_t>(i + 1);
    w(static_cast<Eigen::Index>(p)) = -delta(u);
  }
  return {w};
}

WeightFunction make_weight(const PointConfiguration& config, const KDissimilarity& d) {
  require(config.kind == ConfigKind::hypersimplex && config.k == d.k, "k-dissimilarities need the hypersimplex");
  require(config.ground == d.ground, "ground set mismatch");
  QVector w(static_cast<Eigen::Index>(config.size()));
  for (std::size_t p = 0; p < config.size(); ++p) {
    const auto it = d.values.find(support_mask(config.point(p)));
    require(it != d.values.end(), "k-dissimilarity is not total");
    w(static_cast<Eigen::Index>(p)) = -it->second;
  }
  return {w};
}

}  // namespace tsk
