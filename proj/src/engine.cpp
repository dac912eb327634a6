#include "tsk/engine.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "tsk/linalg.hpp"

namespace tsk {

namespace {

QMatrix point_matrix(const PointConfiguration& config) {
  QMatrix m(static_cast<Eigen::Index>(config.size()), config.dim());
  for (std::size_t p = 0; p < config.size(); ++p) m.row(static_cast<Eigen::Index>(p)) = config.point(p).transpose();
  return m;
}

std::vector<int> tight_points(const PointConfiguration& config, const WeightFunction& w,
                              const std::vector<QVector>& xs) {
  std::vector<int> out;
  for (std::size_t p = 0; p < config.size(); ++p) {
    const Rational target = -w.values(static_cast<Eigen::Index>(p));
    if (std::all_of(xs.begin(), xs.end(), [&](const QVector& x) { return config.point(p).dot(x) == target; }))
      out.push_back(static_cast<int>(p));
  }
  return out;
}

bool includes(const std::vector<int>& big, const std::vector<int>& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

HPolyhedron envelope(const PointConfiguration& config, const WeightFunction& w) {
  if (w.values.size() != static_cast<Eigen::Index>(config.size()))
    throw std::invalid_argument("envelope: weight is not total on the configuration");
  HPolyhedron e{config.ground, {}, {}};
  for (std::size_t p = 0; p < config.size(); ++p)
    e.inequalities.push_back({config.point(p), Rational(-w.values(static_cast<Eigen::Index>(p)))});
  return e;
}

TightSpan tight_span(const PointConfiguration& config, const WeightFunction& w, int cap) {
  TightSpan ts;
  ts.envelope = envelope(config, w);
  ts.lineality = nullspace<Rational>(point_matrix(config));
  HPolyhedron section = ts.envelope;
  for (const auto& l : ts.lineality) section.equalities.push_back({to_rational(primitive(l)), Rational(0)});
  const VRepresentation v = dd_convert(section, cap);
  ts.complex = bounded_faces(section, v);
  ts.dimension = ts.complex.dimension();
  for (const auto& face : ts.complex.faces) {
    std::vector<QVector> xs;
    for (int id : face) xs.push_back(ts.complex.vertices[static_cast<std::size_t>(id)]);
    ts.tight_sets.push_back(tight_points(config, w, xs));
  }
  const bool from_below = ts.lineality.empty() &&
                          std::all_of(v.rays.begin(), v.rays.end(), [](const QVector& r) { return is_nonnegative(r); });
  if (from_below)
    for (const auto& x : ts.complex.vertices)
      if (!is_minimal_element(ts.envelope, x))
        throw InvariantFailure("tight_span: bounded-face vertex " + to_string(x) + " is not a minimal element");
  return ts;
}

WeightFunction shift_weight(const PointConfiguration& config, const WeightFunction& w, const QVector& v) {
  WeightFunction out = w;
  for (std::size_t p = 0; p < config.size(); ++p) out.values(static_cast<Eigen::Index>(p)) += config.point(p).dot(v);
  return out;
}

std::vector<std::size_t> RegularSubdivision::maximal() const {
  std::vector<std::size_t> out;
  const int top = cell_dims.empty() ? -1 : *std::max_element(cell_dims.begin(), cell_dims.end());
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cell_dims[i] == top) out.push_back(i);
  return out;
}

RegularSubdivision regular_subdivision(const PointConfiguration& config, const WeightFunction& w, int cap) {
  const Eigen::Index n = config.dim();
  std::vector<std::string> labels{"height"};
  for (const auto& l : config.ground.labels()) labels.push_back("x" + l);
  const GroundSet lifted_ground(labels);
  std::vector<QVector> lifted;
  for (std::size_t p = 0; p < config.size(); ++p) {
    QVector q(n + 1);
    q(0) = w.values(static_cast<Eigen::Index>(p));
    q.tail(n) = config.point(p);
    lifted.push_back(std::move(q));
  }
  const QVector up = unit<Rational>(n + 1, 0);
  const HPolyhedron hull = convex_hull(lifted_ground, lifted, {up}, cap);
  const FaceLattice lattice = face_lattice(hull, VRepresentation{lifted, {up}, {}});

  const HPolyhedron base = convex_hull(config.ground, [&] {
    std::vector<QVector> pts;
    for (std::size_t p = 0; p < config.size(); ++p) pts.push_back(config.point(p));
    return pts;
  }(), {}, cap);
  std::vector<std::vector<int>> boundary;
  for (const auto& h : base.inequalities) {
    std::vector<int> tight;
    for (std::size_t p = 0; p < config.size(); ++p)
      if (h.normal.dot(config.point(p)) == h.rhs) tight.push_back(static_cast<int>(p));
    boundary.push_back(std::move(tight));
  }

  RegularSubdivision out;
  for (const Face& f : lattice.faces) {
    if (!f.ray_ids.empty()) continue;
    out.cells.push_back(f.vertex_ids);
    out.cell_dims.push_back(f.dim);
    out.interior.push_back(
        std::none_of(boundary.begin(), boundary.end(), [&](const std::vector<int>& b) { return includes(b, f.vertex_ids); }));
  }
  return out;
}

DualityReport verify_duality(const PointConfiguration& config, const WeightFunction& w, int cap) {
  DualityReport r;
  const TightSpan ts = tight_span(config, w, cap);
  const RegularSubdivision sub = regular_subdivision(config, w, cap);
  const int d = static_cast<int>(config.affine_dim());
  const auto& faces = ts.complex.faces;
  std::map<std::vector<int>, std::size_t> cell_index;
  std::vector<std::size_t> interior_cells;
  for (std::size_t j = 0; j < sub.cells.size(); ++j)
    if (sub.interior[j]) {
      cell_index.emplace(sub.cells[j], j);
      interior_cells.push_back(j);
    }
  auto fail = [&](std::string why) {
    r.ok = false;
    r.message = std::move(why);
    return r;
  };
  std::set<std::size_t> used;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const auto it = cell_index.find(ts.tight_sets[i]);
    if (it == cell_index.end()) return fail("bounded face " + std::to_string(i) + " has no interior cell");
    if (!used.insert(it->second).second) return fail("two bounded faces share cell " + std::to_string(it->second));
    if (ts.complex.face_dims[i] + sub.cell_dims[it->second] != d)
      return fail("dimensions do not add up for bounded face " + std::to_string(i));
    r.matched.emplace_back(i, it->second);
  }
  if (used.size() != interior_cells.size()) return fail("interior cells without a bounded face");
  for (const auto& [i, j] : r.matched)
    for (const auto& [k, l] : r.matched)
      if (includes(faces[k], faces[i]) != includes(sub.cells[j], sub.cells[l]))
        return fail("inclusion not reversed between faces " + std::to_string(i) + " and " + std::to_string(k));
  for (std::size_t i = 0; i < faces.size(); ++i) {
    bool maximal = true;
    for (std::size_t k = 0; k < faces.size(); ++k)
      if (k != i && includes(faces[k], faces[i])) maximal = false;
    r.maximal_span_faces += maximal ? 1 : 0;
    r.span_vertices += ts.complex.face_dims[i] == 0 ? 1 : 0;
  }
  for (std::size_t j : interior_cells) {
    bool minimal = true;
    for (std::size_t l : interior_cells)
      if (l != j && includes(sub.cells[j], sub.cells[l])) minimal = false;
    r.minimal_interior_cells += minimal ? 1 : 0;
  }
  r.maximal_cells = sub.maximal().size();
  if (r.maximal_span_faces != r.minimal_interior_cells || r.span_vertices != r.maximal_cells)
    return fail("face counts differ");
  r.ok = true;
  r.message = "anti-isomorphism on " + std::to_string(r.matched.size()) + " faces";
  return r;
}

std::optional<ExtractedTree> is_tree(const TightSpan& ts) {
  const BoundedComplex& c = ts.complex;
  if (c.empty() || c.dimension() >= 2) return std::nullopt;
  const std::size_t nv = c.vertices.size();
  if (c.edges.size() + 1 != nv) throw InvariantFailure("is_tree: 1-complex has a cycle or is disconnected");
  std::vector<std::size_t> parent(nv);
  for (std::size_t i = 0; i < nv; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : c.edges) {
    const auto a = find(static_cast<std::size_t>(e.a)), b = find(static_cast<std::size_t>(e.b));
    if (a == b) throw InvariantFailure("is_tree: 1-complex has a cycle");
    parent[a] = b;
  }
  ExtractedTree t{c.vertices, c.edges, {}};
  for (const auto& e : c.edges) t.lengths.push_back(max_norm(e.difference));
  return t;
}

namespace {

/// Partial split {A,B} with l = t(1_A - 1_B); lowest element of A ∪ B in A.
std::optional<ConfigSplit> partial_split_from_direction(const PointConfiguration& config, const QVector& d) {
  std::optional<Rational> pos;
  std::uint64_t a = 0, b = 0;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (d(i) == 0) continue;
    const Rational m = abs(d(i));
    if (pos && m != *pos) return std::nullopt;
    pos = m;
    (d(i) > 0 ? a : b) |= std::uint64_t{1} << i;
  }
  if (!a || !b) return std::nullopt;
  if (std::countr_zero(b) < std::countr_zero(a)) std::swap(a, b);
  return partial_split_split(config, a, b);
}

}  // namespace

std::optional<SplitDecomposition> split_decomposition(const PointConfiguration& config, const WeightFunction& w,
                                                      int cap) {
  const TightSpan ts = tight_span(config, w, cap);
  if (ts.complex.empty()) return std::nullopt;
  std::vector<std::vector<int>> cells;
  for (std::size_t i = 0; i < ts.complex.faces.size(); ++i)
    if (ts.complex.face_dims[i] == 0) cells.push_back(ts.tight_sets[i]);

  const bool a_kind = config.kind == ConfigKind::A || config.kind == ConfigKind::A_bar;
  std::vector<ConfigSplit> closed;
  if (!a_kind && (config.kind == ConfigKind::B_bar || config.kind == ConfigKind::B_bar_directed ||
                  config.kind == ConfigKind::B_directed))
    closed = enumerate_splits(config);

  std::vector<ConfigSplit> splits;
  for (const auto& e : ts.complex.edges) {
    const QVector d = to_rational(primitive(e.difference));
    std::optional<ConfigSplit> s;
    if (a_kind) {
      s = partial_split_from_direction(config, d);
    } else {
      const ConfigSplit raw = make_split(config, d, Rational(0));
      if (closed.empty()) s = raw;
      for (const auto& c : closed)
        if (c.same_partition(raw)) s = c;
    }
    if (!s) return std::nullopt;
    if (std::none_of(splits.begin(), splits.end(), [&](const ConfigSplit& t) { return t.same_partition(*s); }))
      splits.push_back(*s);
  }
  std::sort(splits.begin(), splits.end(), [](const ConfigSplit& x, const ConfigSplit& y) {
    if (x.tag && y.tag) return std::tie(x.tag->a, x.tag->b) < std::tie(y.tag->a, y.tag->b);
    return std::tie(x.plus, x.minus) < std::tie(y.plus, y.minus);
  });

  // Σ_w refines each split, the splits are compatible, and Σ_w is their common refinement.
  for (const auto& cell : cells)
    for (const auto& s : splits)
      if (!includes(s.plus, cell) && !includes(s.minus, cell)) return std::nullopt;
  const bool tagged = std::all_of(splits.begin(), splits.end(), [](const ConfigSplit& s) { return s.tag.has_value(); });
  const auto method = tagged ? CompatibilityMethod::combinatorial : CompatibilityMethod::geometric;
  for (std::size_t i = 0; i < splits.size(); ++i)
    for (std::size_t j = i + 1; j < splits.size(); ++j)
      if (!splits_compatible(config, splits[i], splits[j], method)) return std::nullopt;
  std::vector<int> all(config.size());
  for (std::size_t p = 0; p < config.size(); ++p) all[p] = static_cast<int>(p);
  for (const auto& cell : cells) {
    std::vector<int> meet = all;
    for (const auto& s : splits) meet = intersect(meet, includes(s.plus, cell) ? s.plus : s.minus);
    if (meet != cell) return std::nullopt;
  }

  const Eigen::Index m = static_cast<Eigen::Index>(splits.size()), n = config.dim();
  const Eigen::Index rows = static_cast<Eigen::Index>(config.size());
  QMatrix a(rows, m + n + 1);
  for (Eigen::Index k = 0; k < m; ++k) a.col(k) = split_weight(config, splits[static_cast<std::size_t>(k)]).values;
  a.middleCols(m, n) = point_matrix(config);
  a.col(m + n) = QVector::Constant(rows, Rational(1));
  const auto sol = solve_linear(a, w.values);
  if (!sol) throw InvariantFailure("split_decomposition: weight is not a combination of the refining splits");
  for (const auto& k : sol->nullspace_basis)
    if (!is_zero(k.head(m))) throw InvariantFailure("split_decomposition: split weights are not unique");
  SplitDecomposition out{splits, {}, sol->particular.segment(m, n), sol->particular(m + n)};
  for (Eigen::Index k = 0; k < m; ++k) {
    if (sol->particular(k) <= 0) throw InvariantFailure("split_decomposition: nonpositive split weight");
    out.alpha.push_back(sol->particular(k));
  }
  return out;
}

PointConfiguration configuration_for(const SymmetricMap& d) { return build_configuration(ConfigKind::A, d.ground); }

PointConfiguration configuration_for(const DirectedMap& d, bool bar) {
  if (d.is_copy()) return build_configuration(bar ? ConfigKind::B_bar_directed : ConfigKind::B_directed, d.domain);
  return build_configuration(bar ? ConfigKind::B_bar : ConfigKind::B, d.domain, d.codomain);
}

PointConfiguration configuration_for(const Diversity& delta, bool bar) {
  if (bar) return build_configuration(ConfigKind::A, nonempty_subsets(delta.ground));
  return build_configuration(ConfigKind::C_cube, delta.ground);
}

PointConfiguration configuration_for(const KDissimilarity& d) {
  return build_configuration(ConfigKind::hypersimplex, d.ground, std::nullopt, d.k);
}

TightSpan tight_span_of(const SymmetricMap& d, int cap) {
  const auto config = configuration_for(d);
  TightSpan ts = tight_span(config, make_weight(config, d), cap);
  ts.name = "T_D";
  return ts;
}

TightSpan tight_span_of(const DirectedMap& d, bool bar, int cap) {
  const auto config = configuration_for(d, bar);
  TightSpan ts = tight_span(config, make_weight(config, d), cap);
  ts.name = bar ? "Theta_D" : "T_D";
  return ts;
}

TightSpan tight_span_of(const Diversity& delta, bool bar, int cap) {
  const auto config = configuration_for(delta, bar);
  TightSpan ts = tight_span(config, make_weight(config, delta), cap);
  ts.name = bar ? "Tbar(delta)" : "T(delta)";
  return ts;
}

TightSpan tight_span_of(const KDissimilarity& d, int cap) {
  const auto config = configuration_for(d);
  TightSpan ts = tight_span(config, make_weight(config, d), cap);
  ts.name = "T_D^" + std::to_string(d.k);
  return ts;
}

}  // namespace tsk
