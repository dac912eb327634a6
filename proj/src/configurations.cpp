#include "tsk/configurations.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <tuple>
#include <map>
#include <set>
#include <stdexcept>

#include "tsk/linalg.hpp"

namespace tsk {

namespace {

bool has(std::uint64_t mask, Eigen::Index i) { return (mask >> i) & 1U; }

std::uint64_t full_mask(Eigen::Index n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

ConfigPoint make_point(const GroundSet& g, Eigen::Index i, Eigen::Index j) {
  QVector v = zeros<Rational>(g.size());
  v(i) += 1;
  v(j) += 1;
  return {g.label(i) + "+" + g.label(j), std::move(v)};
}

void check_disjoint(const GroundSet& x, const GroundSet& y) {
  for (const auto& l : y.labels())
    if (x.find(l)) throw std::invalid_argument("build_configuration: X and Y share the element '" + l + "'");
}

GroundSet directed_copy(const GroundSet& x) {
  std::vector<std::string> labels;
  for (const auto& l : x.labels()) labels.push_back(l + "_l");
  for (const auto& l : x.labels()) labels.push_back(l + "_r");
  return GroundSet(labels);
}

GroundSet concat(const GroundSet& x, const GroundSet& y) {
  std::vector<std::string> labels = x.labels();
  labels.insert(labels.end(), y.labels().begin(), y.labels().end());
  return GroundSet(labels);
}

}  // namespace

std::string to_string(ConfigKind kind) {
  switch (kind) {
    case ConfigKind::A: return "A";
    case ConfigKind::A_bar: return "A_bar";
    case ConfigKind::B: return "B";
    case ConfigKind::B_bar: return "B_bar";
    case ConfigKind::B_directed: return "B_directed";
    case ConfigKind::B_bar_directed: return "B_bar_directed";
    case ConfigKind::C_cube: return "C_cube";
    case ConfigKind::hypersimplex: return "hypersimplex";
  }
  return "?";
}

ConfigKind parse_config_kind(const std::string& name) {
  for (ConfigKind k : {ConfigKind::A, ConfigKind::A_bar, ConfigKind::B, ConfigKind::B_bar, ConfigKind::B_directed,
                       ConfigKind::B_bar_directed, ConfigKind::C_cube, ConfigKind::hypersimplex})
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown configuration kind '" + name + "'");
}

std::size_t PointConfiguration::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < points.size(); ++i)
    if (points[i].label == label) return i;
  throw std::out_of_range("unknown point '" + label + "'");
}

Eigen::Index PointConfiguration::affine_dim() const {
  if (points.empty()) return -1;
  std::vector<QVector> rows;
  for (std::size_t i = 1; i < points.size(); ++i) rows.push_back(points[i].coords - points[0].coords);
  return rows.empty() ? 0 : rank(rows, dim());
}

std::string subset_label(const GroundSet& base, std::uint64_t mask) {
  std::string out = "{";
  bool first = true;
  for (Eigen::Index i = 0; i < base.size(); ++i)
    if (has(mask, i)) {
      if (!first) out += ",";
      out += base.label(i);
      first = false;
    }
  return out + "}";
}

GroundSet nonempty_subsets(const GroundSet& base) {
  std::vector<std::string> labels;
  for (std::uint64_t m = 1; m <= full_mask(base.size()); ++m) labels.push_back(subset_label(base, m));
  return GroundSet(labels);
}

PointConfiguration build_configuration(ConfigKind kind, const GroundSet& x, const std::optional<GroundSet>& y, int k) {
  if (x.empty()) throw std::invalid_argument("build_configuration: empty ground set");
  PointConfiguration c;
  c.kind = kind;
  switch (kind) {
    case ConfigKind::A:
    case ConfigKind::A_bar:
      c.ground = x;
      for (Eigen::Index i = 0; i < x.size(); ++i)
        for (Eigen::Index j = i; j < x.size(); ++j)
          if (kind == ConfigKind::A || i != j) c.points.push_back(make_point(x, i, j));
      break;
    case ConfigKind::B:
    case ConfigKind::B_bar:
    case ConfigKind::B_directed:
    case ConfigKind::B_bar_directed: {
      const bool directed = kind == ConfigKind::B_directed || kind == ConfigKind::B_bar_directed;
      if (directed) {
        c.ground = directed_copy(x);
      } else {
        if (!y || y->empty()) throw std::invalid_argument("build_configuration: kind needs a nonempty Y");
        check_disjoint(x, *y);
        c.ground = concat(x, *y);
      }
      c.x_size = x.size();
      const bool doubled = kind == ConfigKind::B || kind == ConfigKind::B_directed;
      for (Eigen::Index i = 0; i < c.ground.size(); ++i)
        for (Eigen::Index j = i; j < c.ground.size(); ++j)
          if ((i == j && doubled) || (i < c.x_size && j >= c.x_size)) c.points.push_back(make_point(c.ground, i, j));
      break;
    }
    case ConfigKind::C_cube: {
      const GroundSet& base = y ? *y : x;
      const Eigen::Index n = (Eigen::Index{1} << base.size()) - 1;
      if (n > 15) throw EnumerationCapExceeded(n, 15);
      c.ground = nonempty_subsets(base);
      for (std::uint64_t fam = 0; fam <= full_mask(n); ++fam) {
        QVector v = zeros<Rational>(n);
        std::string label;
        for (Eigen::Index i = 0; i < n; ++i)
          if (has(fam, i)) {
            v(i) = 1;
            if (!label.empty()) label += "+";
            label += c.ground.label(i);
          }
        c.points.push_back({label.empty() ? "0" : label, std::move(v)});
      }
      break;
    }
    case ConfigKind::hypersimplex: {
      if (k < 2 || k > x.size()) throw std::invalid_argument("build_configuration: hypersimplex needs 2 <= k <= |X|");
      c.ground = x;
      c.k = k;
      for (std::uint64_t m = 0; m <= full_mask(x.size()); ++m) {
        if (std::popcount(m) != k) continue;
        QVector v = zeros<Rational>(x.size());
        std::string label;
        for (Eigen::Index i = 0; i < x.size(); ++i)
          if (has(m, i)) {
            v(i) = 1;
            if (!label.empty()) label += "+";
            label += x.label(i);
          }
        c.points.push_back({label, std::move(v)});
      }
      std::sort(c.points.begin(), c.points.end(),
                [](const ConfigPoint& a, const ConfigPoint& b) { return lex_less(b.coords, a.coords); });
      break;
    }
  }
  return c;
}

std::vector<std::pair<int, int>> config_edges(const PointConfiguration& config) {
  const Eigen::Index n = config.dim();
  const int count = static_cast<int>(config.size());
  std::vector<std::pair<int, int>> edges;
  // Variables (c, β, s): ⟨c,p⟩ = β = ⟨c,q⟩, ⟨c,r⟩ - β - s ≥ 0, s ≤ 1.
  const Eigen::Index nv = n + 2;
  for (int p = 0; p < count; ++p)
    for (int q = p + 1; q < count; ++q) {
      std::vector<Halfspace> ineq, eq;
      for (int idx : {p, q}) {
        QVector row = zeros<Rational>(nv);
        row.head(n) = config.point(static_cast<std::size_t>(idx));
        row(n) = -1;
        eq.push_back({row, Rational(0)});
      }
      for (int r = 0; r < count; ++r) {
        if (r == p || r == q) continue;
        QVector row = zeros<Rational>(nv);
        row.head(n) = config.point(static_cast<std::size_t>(r));
        row(n) = -1;
        row(n + 1) = -1;
        ineq.push_back({row, Rational(0)});
      }
      ineq.push_back({QVector(-unit<Rational>(nv, n + 1)), Rational(-1)});
      const auto res = lp_solve(ineq, unit<Rational>(nv, n + 1), Sense::maximize, eq);
      if (res.status == LPStatus::optimal && *res.value > 0) edges.emplace_back(p, q);
    }
  return edges;
}

bool ConfigSplit::same_partition(const ConfigSplit& other) const {
  return (plus == other.plus && minus == other.minus) || (plus == other.minus && minus == other.plus);
}

ConfigSplit make_split(const PointConfiguration& config, const QVector& normal, const Rational& rhs,
                       std::optional<SplitTag> tag) {
  ConfigSplit s{{}, {}, normal, rhs, tag};
  for (std::size_t i = 0; i < config.size(); ++i) {
    const Rational v = normal.dot(config.point(i)) - rhs;
    if (v >= 0) s.plus.push_back(static_cast<int>(i));
    if (v <= 0) s.minus.push_back(static_cast<int>(i));
  }
  return s;
}

ConfigSplit partial_split_split(const PointConfiguration& config, std::uint64_t a, std::uint64_t b) {
  QVector l = zeros<Rational>(config.dim());
  for (Eigen::Index i = 0; i < config.dim(); ++i) {
    if (has(a, i)) l(i) = 1;
    if (has(b, i)) l(i) = -1;
  }
  return make_split(config, l, Rational(0), SplitTag{SplitTag::Kind::partial_split, a, b});
}

ConfigSplit bbar_split(const PointConfiguration& config, std::uint64_t a, std::uint64_t b) {
  QVector l = zeros<Rational>(config.dim());
  for (Eigen::Index i = 0; i < config.x_size; ++i)
    if (has(a, i)) l(i) = 1;
  for (Eigen::Index j = config.x_size; j < config.dim(); ++j)
    if (has(b, j - config.x_size)) l(j) = -1;
  return make_split(config, l, Rational(0), SplitTag{SplitTag::Kind::bbar_pair, a, b});
}

ConfigSplit directed_split(const PointConfiguration& config, std::uint64_t a, std::uint64_t b) {
  ConfigSplit s = bbar_split(config, a, b);
  if (config.kind == ConfigKind::B_directed || config.kind == ConfigKind::B) s.tag->kind = SplitTag::Kind::directed;
  return s;
}

bool is_split(const PointConfiguration& config, const ConfigSplit& s, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> side(config.size(), 0);
  for (std::size_t i = 0; i < config.size(); ++i) {
    const Rational v = s.normal.dot(config.point(i)) - s.rhs;
    side[i] = v > 0 ? 1 : (v < 0 ? -1 : 0);
  }
  if (std::find(side.begin(), side.end(), 1) == side.end() || std::find(side.begin(), side.end(), -1) == side.end())
    return false;
  for (auto [p, q] : edges)
    if (side[static_cast<std::size_t>(p)] * side[static_cast<std::size_t>(q)] < 0) return false;
  return true;
}

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > (std::uint64_t{1} << 40)) return r;
  }
  return r;
}

std::vector<ConfigSplit> brute_force_splits(const PointConfiguration& config) {
  const std::size_t count = config.size();
  const Eigen::Index n = config.dim();
  const Eigen::Index d = config.affine_dim();
  if (d < 1) return {};
  if (binomial(count, static_cast<std::uint64_t>(d)) > kBruteForceGuard)
    throw EnumerationCapExceeded(static_cast<long>(count), static_cast<long>(d));
  // Local affine coordinates.
  QMatrix basis(n, d);
  Eigen::Index filled = 0;
  for (std::size_t i = 1; i < count && filled < d; ++i) {
    QMatrix trial = basis.leftCols(filled + 1);
    trial.col(filled) = config.point(i) - config.point(0);
    if (rank(trial) == filled + 1) {
      basis.col(filled) = trial.col(filled);
      ++filled;
    }
  }
  const QMatrix gram_inv = inverse<Rational>(basis.transpose() * basis);
  std::vector<QVector> local;
  for (std::size_t i = 0; i < count; ++i) local.push_back(gram_inv * (basis.transpose() * (config.point(i) - config.point(0))));

  const auto edges = config_edges(config);
  std::vector<ConfigSplit> out;
  std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
  std::vector<std::size_t> pick(static_cast<std::size_t>(d));
  auto visit = [&] {
    QMatrix m(d, d + 1);
    for (Eigen::Index r = 0; r < d; ++r) {
      m.row(r).head(d) = local[pick[static_cast<std::size_t>(r)]].transpose();
      m(r, d) = -1;
    }
    const auto kernel = nullspace<Rational>(m);
    if (kernel.size() != 1) return;
    const QVector lc = kernel[0];
    std::vector<Rational> s(count);
    for (std::size_t i = 0; i < count; ++i) s[i] = lc.head(d).dot(local[i]) - lc(d);
    // Orient so the first point off the hyperplane is on the plus side.
    for (std::size_t i = 0; i < count; ++i)
      if (s[i] != 0) {
        if (s[i] < 0)
          for (auto& v : s) v = -v;
        break;
      }
    // Ambient (l, c) with ⟨l,p⟩ - c = s(p) for every point.
    QMatrix a(static_cast<Eigen::Index>(count), n + 1);
    QVector rhs(static_cast<Eigen::Index>(count));
    for (std::size_t i = 0; i < count; ++i) {
      a.row(static_cast<Eigen::Index>(i)).head(n) = config.point(i).transpose();
      a(static_cast<Eigen::Index>(i), n) = -1;
      rhs(static_cast<Eigen::Index>(i)) = s[i];
    }
    const auto sol = solve_linear(a, rhs);
    if (!sol) throw InvariantFailure("brute_force_splits: affine functional not representable");
    const QVector g = to_rational(primitive(sol->particular));
    ConfigSplit split = make_split(config, QVector(g.head(n)), g(n));
    if (!is_split(config, split, edges)) return;
    auto key = std::minmax(split.plus, split.minus);
    if (!seen.emplace(key.first, key.second).second) return;
    out.push_back(std::move(split));
  };
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == static_cast<std::size_t>(d)) {
      visit();
      return;
    }
    for (std::size_t i = start; i < count; ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  std::sort(out.begin(), out.end(), [](const ConfigSplit& x, const ConfigSplit& y) {
    return std::tie(x.plus, x.minus) < std::tie(y.plus, y.minus);
  });
  return out;
}

}  // namespace

std::vector<ConfigSplit> enumerate_splits(const PointConfiguration& config, bool brute_force) {
  if (brute_force) return brute_force_splits(config);
  std::vector<ConfigSplit> out;
  switch (config.kind) {
    case ConfigKind::A: {
      const Eigen::Index n = config.dim();
      for (std::uint64_t a = 1; a <= full_mask(n); ++a)
        for (std::uint64_t b = 1; b <= full_mask(n); ++b) {
          if (a & b) continue;
          if (!(std::countr_zero(a | b) == std::countr_zero(a))) continue;
          out.push_back(partial_split_split(config, a, b));
        }
      return out;
    }
    case ConfigKind::A_bar: {
      const Eigen::Index n = config.dim();
      for (std::uint64_t a = 1; a < full_mask(n); ++a) {
        const std::uint64_t b = full_mask(n) & ~a;
        if (!(a & 1U) || std::popcount(a) < 2 || std::popcount(b) < 2) continue;
        out.push_back(partial_split_split(config, a, b));
      }
      return out;
    }
    case ConfigKind::B_bar:
    case ConfigKind::B_bar_directed: {
      const Eigen::Index nx = config.x_size, ny = config.dim() - config.x_size;
      for (std::uint64_t a = 1; a < full_mask(nx); ++a) {
        if (!(a & 1U)) continue;
        for (std::uint64_t b = 1; b < full_mask(ny); ++b) out.push_back(bbar_split(config, a, b));
      }
      return out;
    }
    case ConfigKind::B_directed: {
      const Eigen::Index nx = config.x_size;
      for (std::uint64_t a = 1; a <= full_mask(nx); ++a)
        for (std::uint64_t b = 1; b <= full_mask(nx); ++b) out.push_back(directed_split(config, a, b));
      return out;
    }
    default:
      return brute_force_splits(config);
  }
}

namespace {

bool subset(std::uint64_t a, std::uint64_t b) { return (a & ~b) == 0; }

bool combinatorial_compatible(const PointConfiguration& config, const SplitTag& s, const SplitTag& t) {
  if (s.kind != t.kind) throw std::invalid_argument("splits_compatible: mixed split tags");
  const std::uint64_t a = s.a, b = s.b, c = t.a, d = t.b;
  switch (s.kind) {
    case SplitTag::Kind::partial_split:
      return (subset(a, c) && subset(d, b)) || (subset(a, d) && subset(c, b)) || (subset(c, a) && subset(b, d)) ||
             (subset(d, a) && subset(b, c));
    case SplitTag::Kind::bbar_pair: {
      const std::uint64_t fx = full_mask(config.x_size), fy = full_mask(config.dim() - config.x_size);
      return (subset(a, c) && subset(d, b)) || ((a & c) == 0 && (b | d) == fy) || (subset(c, a) && subset(b, d)) ||
             ((a | c) == fx && (b & d) == 0);
    }
    case SplitTag::Kind::directed:
      return (subset(a, c) && subset(d, b)) || (subset(c, a) && subset(b, d));
  }
  return false;
}

bool geometric_compatible(const PointConfiguration& config, const ConfigSplit& s, const ConfigSplit& t) {
  const Eigen::Index count = static_cast<Eigen::Index>(config.size());
  // Variables (λ, t): maximize t with λ ≥ t, Σλ = 1, λ on both hyperplanes.
  std::vector<Halfspace> ineq, eq;
  for (Eigen::Index i = 0; i < count; ++i) {
    QVector row = zeros<Rational>(count + 1);
    row(i) = 1;
    row(count) = -1;
    ineq.push_back({row, Rational(0)});
  }
  QVector sum = QVector::Constant(count + 1, Rational(1));
  sum(count) = 0;
  eq.push_back({sum, Rational(1)});
  for (const ConfigSplit* split : {&s, &t}) {
    QVector row = zeros<Rational>(count + 1);
    for (Eigen::Index i = 0; i < count; ++i) row(i) = split->normal.dot(config.point(static_cast<std::size_t>(i))) - split->rhs;
    eq.push_back({row, Rational(0)});
  }
  const auto r = lp_solve(ineq, unit<Rational>(count + 1, count), Sense::maximize, eq);
  if (r.status == LPStatus::infeasible) return true;
  if (r.status != LPStatus::optimal) throw InvariantFailure("geometric_compatible: unbounded LP");
  return *r.value <= 0;
}

}  // namespace

bool splits_compatible(const PointConfiguration& config, const ConfigSplit& s, const ConfigSplit& t,
                       CompatibilityMethod method) {
  if (s.same_partition(t)) return true;
  if (method == CompatibilityMethod::combinatorial) {
    if (!s.tag || !t.tag) throw std::invalid_argument("splits_compatible: combinatorial method needs tagged splits");
    return combinatorial_compatible(config, *s.tag, *t.tag);
  }
  return geometric_compatible(config, s, t);
}

WeightFunction split_weight(const PointConfiguration& config, const ConfigSplit& s) {
  QVector w(static_cast<Eigen::Index>(config.size()));
  for (std::size_t i = 0; i < config.size(); ++i) {
    const Rational v = s.normal.dot(config.point(i)) - s.rhs;
    w(static_cast<Eigen::Index>(i)) = v > 0 ? v : Rational(0);
  }
  return {w};
}

}  // namespace tsk
