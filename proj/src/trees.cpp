#include "tsk/trees.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "tsk/linalg.hpp"

namespace tsk {

namespace {

bool subset(Mask a, Mask b) { return (a & ~b) == 0; }

Mask full_mask(const GroundSet& g) { return (Mask{1} << g.size()) - 1; }

/// Undirected adjacency: neighbour, edge index.
using Adjacency = std::vector<std::vector<std::pair<int, int>>>;

template <typename Edges>
Adjacency adjacency(int n, const Edges& edges, int (*from)(const typename Edges::value_type&),
                    int (*to)(const typename Edges::value_type&)) {
  Adjacency adj(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const int u = from(edges[i]), v = to(edges[i]);
    if (u < 0 || v < 0 || u >= n || v >= n) throw std::invalid_argument("tree: edge endpoint out of range");
    adj[static_cast<std::size_t>(u)].emplace_back(v, static_cast<int>(i));
    adj[static_cast<std::size_t>(v)].emplace_back(u, static_cast<int>(i));
  }
  return adj;
}

Adjacency adjacency(const WeightedTree& t) {
  return adjacency<std::vector<WeightedTree::Edge>>(
      t.num_vertices, t.edges, [](const WeightedTree::Edge& e) { return e.u; },
      [](const WeightedTree::Edge& e) { return e.v; });
}

Adjacency adjacency(const OrientedTree& t) {
  return adjacency<std::vector<OrientedTree::Arc>>(
      t.num_vertices, t.arcs, [](const OrientedTree::Arc& e) { return e.from; },
      [](const OrientedTree::Arc& e) { return e.to; });
}

/// Vertices reachable from `start` inside `allowed` without using edge `skip`.
std::vector<bool> reach(const Adjacency& adj, int start, const std::vector<bool>& allowed, int skip = -1) {
  std::vector<bool> seen(adj.size(), false);
  std::deque<int> queue{start};
  seen[static_cast<std::size_t>(start)] = true;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (auto [v, e] : adj[static_cast<std::size_t>(u)])
      if (e != skip && allowed[static_cast<std::size_t>(v)] && !seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = true;
        queue.push_back(v);
      }
  }
  return seen;
}

void check_shape(int n, std::size_t num_edges, const Adjacency& adj, const GroundSet& ground,
                 const std::vector<std::vector<int>>& subtrees) {
  if (n < 1 || num_edges + 1 != static_cast<std::size_t>(n))
    throw std::invalid_argument("tree: needs exactly |V| - 1 edges");
  const std::vector<bool> all(static_cast<std::size_t>(n), true);
  const auto seen = reach(adj, 0, all);
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw std::invalid_argument("tree: not connected");
  if (subtrees.size() != static_cast<std::size_t>(ground.size()))
    throw std::invalid_argument("tree: one subtree per ground element required");
  for (std::size_t x = 0; x < subtrees.size(); ++x) {
    const auto& f = subtrees[x];
    if (f.empty()) throw std::invalid_argument("tree: empty subtree for " + ground.label(static_cast<Eigen::Index>(x)));
    std::vector<bool> in(static_cast<std::size_t>(n), false);
    for (int v : f) {
      if (v < 0 || v >= n) throw std::invalid_argument("tree: subtree vertex out of range");
      in[static_cast<std::size_t>(v)] = true;
    }
    const auto r = reach(adj, f.front(), in);
    for (int v : f)
      if (!r[static_cast<std::size_t>(v)])
        throw std::invalid_argument("tree: subtree of " + ground.label(static_cast<Eigen::Index>(x)) + " is not connected");
  }
}

/// Side vectors σ ∈ {0,1}^m avoiding one forbidden quadrant per pair; the
/// vertices of the tree cut out by the splits.
struct SideTree {
  std::vector<std::vector<bool>> vertices;
  struct Edge {
    int u, v, split;
  };
  std::vector<Edge> edges;
};

using Quadrant = std::optional<std::pair<bool, bool>>;

SideTree side_tree(std::size_t m, const std::vector<std::vector<Quadrant>>& forbidden) {
  std::vector<std::vector<bool>> current{{}};
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<std::vector<bool>> next;
    for (const auto& s : current)
      for (bool side : {false, true}) {
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i) {
          const auto& q = forbidden[i][k];
          if (q && q->first == s[i] && q->second == side) ok = false;
        }
        if (!ok) continue;
        auto t = s;
        t.push_back(side);
        next.push_back(std::move(t));
      }
    current = std::move(next);
  }
  std::sort(current.begin(), current.end(), [](const std::vector<bool>& a, const std::vector<bool>& b) {
    const auto ca = std::count(a.begin(), a.end(), true), cb = std::count(b.begin(), b.end(), true);
    if (ca != cb) return ca < cb;
    return a < b;
  });
  SideTree t{current, {}};
  for (std::size_t i = 0; i < current.size(); ++i)
    for (std::size_t j = i + 1; j < current.size(); ++j) {
      int diff = -1, count = 0;
      for (std::size_t k = 0; k < m; ++k)
        if (current[i][k] != current[j][k]) {
          diff = static_cast<int>(k);
          ++count;
        }
      if (count == 1) t.edges.push_back({static_cast<int>(i), static_cast<int>(j), diff});
    }
  if (t.edges.size() + 1 != t.vertices.size())
    throw InvariantFailure("side_tree: side vectors do not form a tree");
  return t;
}

/// Identical splits merged, weights added.
WeightedSplitSystem merged(const WeightedSplitSystem& s) {
  if (s.splits.size() != s.alpha.size()) throw std::invalid_argument("split system: one weight per split required");
  std::map<Split, Rational> acc;
  const Mask full = full_mask(s.ground);
  for (std::size_t i = 0; i < s.splits.size(); ++i) {
    Split sp = s.splits[i];
    if (!sp.a || !sp.b || (sp.a & sp.b) || !subset(sp.a | sp.b, full))
      throw std::invalid_argument("split system: sides must be disjoint nonempty subsets of the ground set");
    if (s.alpha[i] <= 0) throw std::invalid_argument("split system: weights must be positive");
    if (s.kind == SplitKind::partial && sp.b < sp.a) std::swap(sp.a, sp.b);
    acc[sp] += s.alpha[i];
  }
  WeightedSplitSystem out{s.ground, s.kind, {}, {}};
  for (auto& [sp, a] : acc) {
    out.splits.push_back(sp);
    out.alpha.push_back(a);
  }
  return out;
}

void require_compatible(const WeightedSplitSystem& s) {
  const Mask full = full_mask(s.ground);
  for (std::size_t i = 0; i < s.splits.size(); ++i)
    for (std::size_t j = i + 1; j < s.splits.size(); ++j)
      if (!splits_compatible(s.kind, full, s.splits[i], s.splits[j]))
        throw std::invalid_argument("incompatible splits " + split_label(s.ground, s.kind, s.splits[i]) + " and " +
                                    split_label(s.ground, s.kind, s.splits[j]));
}

}  // namespace

WeightedTree WeightedTree::leaf_labelled(int num_vertices, std::vector<Edge> edges, GroundSet ground,
                                         const std::vector<int>& leaves) {
  WeightedTree t{num_vertices, std::move(edges), std::move(ground), {}};
  for (int v : leaves) t.subtrees.push_back({v});
  check_tree(t);
  return t;
}

void check_tree(const WeightedTree& t) {
  check_shape(t.num_vertices, t.edges.size(), adjacency(t), t.ground, t.subtrees);
  for (const auto& e : t.edges)
    if (e.length < 0) throw std::invalid_argument("tree: negative edge length");
}

void check_tree(const OrientedTree& t) {
  check_shape(t.num_vertices, t.arcs.size(), adjacency(t), t.ground, t.subtrees);
  for (const auto& e : t.arcs)
    if (e.length < 0) throw std::invalid_argument("tree: negative arc length");
}

bool OrientedTree::is_directed_path() const {
  std::vector<int> in(static_cast<std::size_t>(num_vertices), 0), out(static_cast<std::size_t>(num_vertices), 0);
  for (const auto& a : arcs) {
    ++out[static_cast<std::size_t>(a.from)];
    ++in[static_cast<std::size_t>(a.to)];
  }
  for (int v = 0; v < num_vertices; ++v)
    if (in[static_cast<std::size_t>(v)] > 1 || out[static_cast<std::size_t>(v)] > 1) return false;
  return true;
}

bool OrientedTree::subtree_is_directed_path(std::size_t x) const {
  std::set<int> f(subtrees[x].begin(), subtrees[x].end());
  std::map<int, int> in, out;
  for (const auto& a : arcs)
    if (f.count(a.from) && f.count(a.to)) {
      if (++out[a.from] > 1 || ++in[a.to] > 1) return false;
    }
  return true;
}

SymmetricMap distance_from_tree(const WeightedTree& t) {
  check_tree(t);
  const auto adj = adjacency(t);
  const auto n = static_cast<std::size_t>(t.num_vertices);
  std::vector<std::vector<Rational>> dist(n, std::vector<Rational>(n));
  for (std::size_t s = 0; s < n; ++s) {
    std::function<void(int, int)> dfs = [&](int u, int parent) {
      for (auto [v, e] : adj[static_cast<std::size_t>(u)])
        if (v != parent) {
          dist[s][static_cast<std::size_t>(v)] = dist[s][static_cast<std::size_t>(u)] + t.edges[static_cast<std::size_t>(e)].length;
          dfs(v, u);
        }
    };
    dfs(static_cast<int>(s), -1);
  }
  SymmetricMap d(t.ground);
  for (Eigen::Index x = 0; x < t.ground.size(); ++x)
    for (Eigen::Index y = x + 1; y < t.ground.size(); ++y) {
      std::optional<Rational> best;
      for (int u : t.subtrees[static_cast<std::size_t>(x)])
        for (int v : t.subtrees[static_cast<std::size_t>(y)]) {
          const Rational& c = dist[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
          if (!best || c < *best) best = c;
        }
      d.set(x, y, *best);
    }
  return d;
}

DirectedMap oriented_distance(const OrientedTree& t) {
  check_tree(t);
  const auto adj = adjacency(t);
  const auto n = static_cast<std::size_t>(t.num_vertices);
  std::vector<std::vector<Rational>> fwd(n, std::vector<Rational>(n));
  for (std::size_t s = 0; s < n; ++s) {
    std::function<void(int, int)> dfs = [&](int u, int parent) {
      for (auto [v, e] : adj[static_cast<std::size_t>(u)])
        if (v != parent) {
          const auto& arc = t.arcs[static_cast<std::size_t>(e)];
          fwd[s][static_cast<std::size_t>(v)] = fwd[s][static_cast<std::size_t>(u)] + (arc.from == u ? arc.length : Rational(0));
          dfs(v, u);
        }
    };
    dfs(static_cast<int>(s), -1);
  }
  DirectedMap d(t.ground);
  for (Eigen::Index x = 0; x < t.ground.size(); ++x)
    for (Eigen::Index y = 0; y < t.ground.size(); ++y) {
      if (x == y) continue;
      std::optional<Rational> best;
      for (int u : t.subtrees[static_cast<std::size_t>(x)])
        for (int v : t.subtrees[static_cast<std::size_t>(y)]) {
          const Rational& c = fwd[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
          if (!best || c < *best) best = c;
        }
      d.values(x, y) = *best;
    }
  return d;
}

SymmetricMap distance_from_splits(const WeightedSplitSystem& s) {
  SymmetricMap d(s.ground);
  for (std::size_t k = 0; k < s.splits.size(); ++k)
    for (Eigen::Index i = 0; i < s.ground.size(); ++i)
      for (Eigen::Index j = i + 1; j < s.ground.size(); ++j) {
        const bool ia = (s.splits[k].a >> i) & 1U, ib = (s.splits[k].b >> i) & 1U;
        const bool ja = (s.splits[k].a >> j) & 1U, jb = (s.splits[k].b >> j) & 1U;
        if ((ia && jb) || (ib && ja)) d.set(i, j, d(i, j) + s.alpha[k]);
      }
  return d;
}

DirectedMap directed_distance_from_splits(const WeightedSplitSystem& s) {
  DirectedMap d(s.ground);
  for (std::size_t k = 0; k < s.splits.size(); ++k)
    for (Eigen::Index i = 0; i < s.ground.size(); ++i)
      for (Eigen::Index j = 0; j < s.ground.size(); ++j)
        if (((s.splits[k].a >> i) & 1U) && ((s.splits[k].b >> j) & 1U)) d.values(i, j) += s.alpha[k];
  return d;
}

Diversity diversity_from_splits(const WeightedSplitSystem& s) {
  Diversity d(s.ground);
  for (Mask m = 0; m <= d.full(); ++m)
    for (std::size_t k = 0; k < s.splits.size(); ++k)
      if ((m & s.splits[k].a) && (m & s.splits[k].b)) d(m) += s.alpha[k];
  return d;
}

bool splits_compatible(SplitKind kind, Mask full, const Split& s, const Split& t) {
  const Mask a = s.a, b = s.b, c = t.a, d = t.b;
  if (kind == SplitKind::partial)
    return (subset(a, c) && subset(d, b)) || (subset(a, d) && subset(c, b)) || (subset(c, a) && subset(b, d)) ||
           (subset(d, a) && subset(b, c));
  return (subset(a, c) && subset(d, b)) || ((a & c) == 0 && (b | d) == full) || (subset(c, a) && subset(b, d)) ||
         ((a | c) == full && (b & d) == 0);
}

bool compatible(const WeightedSplitSystem& s) {
  const Mask full = full_mask(s.ground);
  for (std::size_t i = 0; i < s.splits.size(); ++i)
    for (std::size_t j = i + 1; j < s.splits.size(); ++j)
      if (!splits_compatible(s.kind, full, s.splits[i], s.splits[j])) return false;
  return true;
}

bool strongly_compatible(const std::vector<Split>& splits) {
  std::vector<Split> order = splits;
  std::sort(order.begin(), order.end(), [](const Split& x, const Split& y) {
    const int ax = std::popcount(x.a), ay = std::popcount(y.a);
    if (ax != ay) return ax < ay;
    const int bx = std::popcount(x.b), by = std::popcount(y.b);
    if (bx != by) return bx > by;
    return x < y;
  });
  for (std::size_t i = 0; i + 1 < order.size(); ++i)
    if (!subset(order[i].a, order[i + 1].a) || !subset(order[i + 1].b, order[i].b)) return false;
  return true;
}

OrientedTree realisation_from_splits(const WeightedSplitSystem& input) {
  if (input.kind != SplitKind::directed) throw std::invalid_argument("realisation_from_splits: needs directed splits");
  const WeightedSplitSystem s = merged(input);
  require_compatible(s);
  const Mask full = full_mask(s.ground);
  const std::size_t m = s.splits.size();
  // Sides: false = tail, true = head. First matching condition decides the empty quadrant.
  std::vector<std::vector<Quadrant>> forbidden(m, std::vector<Quadrant>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const Mask a = s.splits[i].a, b = s.splits[i].b, c = s.splits[j].a, d = s.splits[j].b;
      if (subset(a, c) && subset(d, b)) forbidden[i][j] = std::pair{false, true};
      else if ((a & c) == 0 && (b | d) == full) forbidden[i][j] = std::pair{false, false};
      else if (subset(c, a) && subset(b, d)) forbidden[i][j] = std::pair{true, false};
      else forbidden[i][j] = std::pair{true, true};
    }
  const SideTree st = side_tree(m, forbidden);
  OrientedTree t;
  t.num_vertices = static_cast<int>(st.vertices.size());
  t.ground = s.ground;
  for (const auto& e : st.edges) {
    const bool u_head = st.vertices[static_cast<std::size_t>(e.u)][static_cast<std::size_t>(e.split)];
    t.arcs.push_back({u_head ? e.v : e.u, u_head ? e.u : e.v, s.alpha[static_cast<std::size_t>(e.split)]});
  }
  for (Eigen::Index x = 0; x < s.ground.size(); ++x) {
    std::vector<int> f;
    for (std::size_t v = 0; v < st.vertices.size(); ++v) {
      bool ok = true;
      for (std::size_t k = 0; k < m && ok; ++k) {
        if ((s.splits[k].a >> x) & 1U) ok = !st.vertices[v][k];
        else if ((s.splits[k].b >> x) & 1U) ok = st.vertices[v][k];
      }
      if (ok) f.push_back(static_cast<int>(v));
    }
    t.subtrees.push_back(std::move(f));
  }
  check_tree(t);
  for (std::size_t x = 0; x < t.subtrees.size(); ++x)
    if (!t.subtree_is_directed_path(x)) throw InvariantFailure("realisation_from_splits: subtree is not a directed path");
  if (!(oriented_distance(t) == directed_distance_from_splits(s)))
    throw InvariantFailure("realisation_from_splits: realisation does not reproduce the directed distance");
  return t;
}

WeightedSplitSystem splits_from_realisation(const OrientedTree& t) {
  check_tree(t);
  const auto adj = adjacency(t);
  const std::vector<bool> all(static_cast<std::size_t>(t.num_vertices), true);
  WeightedSplitSystem s{t.ground, SplitKind::directed, {}, {}};
  for (std::size_t e = 0; e < t.arcs.size(); ++e) {
    const auto tail = reach(adj, t.arcs[e].from, all, static_cast<int>(e));
    Split sp;
    for (std::size_t x = 0; x < t.subtrees.size(); ++x) {
      const auto& f = t.subtrees[x];
      if (std::all_of(f.begin(), f.end(), [&](int v) { return tail[static_cast<std::size_t>(v)]; })) sp.a |= Mask{1} << x;
      if (std::none_of(f.begin(), f.end(), [&](int v) { return tail[static_cast<std::size_t>(v)]; })) sp.b |= Mask{1} << x;
    }
    if (!sp.a || !sp.b || t.arcs[e].length == 0) continue;
    s.splits.push_back(sp);
    s.alpha.push_back(t.arcs[e].length);
  }
  if (!(directed_distance_from_splits(s) == oriented_distance(t)))
    throw InvariantFailure("splits_from_realisation: per-arc splits do not sum to the distance");
  return s;
}

WeightedTree tree_from_splits(const WeightedSplitSystem& input) {
  if (input.kind != SplitKind::partial) throw std::invalid_argument("tree_from_splits: needs undirected splits");
  const WeightedSplitSystem s = merged(input);
  const Mask full = full_mask(s.ground);
  for (const auto& sp : s.splits)
    if ((sp.a | sp.b) != full) throw std::invalid_argument("tree_from_splits: needs full splits");
  require_compatible(s);
  const std::size_t m = s.splits.size();
  std::vector<std::vector<Quadrant>> forbidden(m, std::vector<Quadrant>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (bool p : {false, true})
        for (bool q : {false, true}) {
          const Mask si = p ? s.splits[i].b : s.splits[i].a, sj = q ? s.splits[j].b : s.splits[j].a;
          if (!forbidden[i][j] && (si & sj) == 0) forbidden[i][j] = std::pair{p, q};
        }
  const SideTree st = side_tree(m, forbidden);
  std::vector<WeightedTree::Edge> edges;
  for (const auto& e : st.edges) edges.push_back({e.u, e.v, s.alpha[static_cast<std::size_t>(e.split)]});
  std::vector<int> leaves;
  for (Eigen::Index y = 0; y < s.ground.size(); ++y) {
    std::vector<bool> sigma;
    for (const auto& sp : s.splits) sigma.push_back((sp.b >> y) & 1U);
    const auto it = std::find(st.vertices.begin(), st.vertices.end(), sigma);
    if (it == st.vertices.end()) throw InvariantFailure("tree_from_splits: leaf has no vertex");
    leaves.push_back(static_cast<int>(it - st.vertices.begin()));
  }
  return WeightedTree::leaf_labelled(static_cast<int>(st.vertices.size()), edges, s.ground, leaves);
}

Diversity phylogenetic_diversity(const WeightedTree& t) {
  check_tree(t);
  for (const auto& f : t.subtrees)
    if (f.size() != 1) throw std::invalid_argument("phylogenetic_diversity: elements must sit at single vertices");
  const auto adj = adjacency(t);
  Diversity d(t.ground);
  for (Mask m = 1; m <= d.full(); ++m) {
    if (std::popcount(m) < 2) continue;
    const int root = t.subtrees[static_cast<std::size_t>(std::countr_zero(m))][0];
    std::vector<int> parent(static_cast<std::size_t>(t.num_vertices), -1), via(static_cast<std::size_t>(t.num_vertices), -1);
    std::function<void(int, int)> dfs = [&](int u, int p) {
      for (auto [v, e] : adj[static_cast<std::size_t>(u)])
        if (v != p) {
          parent[static_cast<std::size_t>(v)] = u;
          via[static_cast<std::size_t>(v)] = e;
          dfs(v, u);
        }
    };
    dfs(root, -1);
    std::set<int> used;
    for (Eigen::Index x = 0; x < t.ground.size(); ++x) {
      if (!((m >> x) & 1U)) continue;
      for (int v = t.subtrees[static_cast<std::size_t>(x)][0]; v != root; v = parent[static_cast<std::size_t>(v)])
        used.insert(via[static_cast<std::size_t>(v)]);
    }
    for (int e : used) d(m) += t.edges[static_cast<std::size_t>(e)].length;
  }
  return d;
}

std::optional<DiversityTree> reconstruct_diversity_tree(const Diversity& delta, int cap) {
  const auto d = diversity_distance(delta);
  const auto config = configuration_for(d);
  const auto dec = split_decomposition(config, make_weight(config, d), cap);
  if (!dec) return std::nullopt;
  const Mask full = delta.full();
  const Mask n = full;  // |𝒫⁰(Y)|
  auto union_of = [](Mask family) {
    Mask u = 0;
    for (Mask i = 0; family >> i; ++i)
      if ((family >> i) & 1U) u |= i + 1;
    return u;
  };
  auto powerset_family = [&](Mask a) {
    Mask f = 0;
    for (Mask i = 0; i < n; ++i)
      if (subset(i + 1, a)) f |= Mask{1} << i;
    return f;
  };
  WeightedSplitSystem s{delta.ground, SplitKind::partial, {}, {}};
  for (std::size_t k = 0; k < dec->splits.size(); ++k) {
    const SplitTag& tag = *dec->splits[k].tag;
    const Mask a = union_of(tag.a), b = union_of(tag.b);
    if (powerset_family(a) != tag.a || powerset_family(b) != tag.b || (a | b) != full) return std::nullopt;
    s.splits.push_back({a, b});
    s.alpha.push_back(dec->alpha[k]);
  }
  DiversityTree out{tree_from_splits(s), s};
  if (!(phylogenetic_diversity(out.tree) == delta))
    throw InvariantFailure("reconstruct_diversity_tree: rebuilt tree does not reproduce the diversity");
  return out;
}

TightSpanEqualReport verify_tightspan_equal(const WeightedSplitSystem& s) {
  const Mask full = full_mask(s.ground);
  for (const auto& sp : s.splits)
    if (s.kind != SplitKind::partial || (sp.a | sp.b) != full || (sp.a & sp.b) || !sp.a || !sp.b)
      throw std::invalid_argument("verify_tightspan_equal: needs full splits");
  const Eigen::Index ny = s.ground.size();
  if (ny > 4) throw EnumerationCapExceeded((Eigen::Index{1} << ny) - 1, 15);
  const Diversity delta = diversity_from_splits(s);
  const auto cube = configuration_for(delta, false);
  const auto bar = configuration_for(delta, true);
  const HPolyhedron p = envelope(cube, make_weight(cube, delta));
  const HPolyhedron pbar = envelope(bar, make_weight(bar, delta));
  TightSpanEqualReport r;

  // P ⊆ P̄: every row of P̄ is, up to positive scaling, a row of P.
  auto scaled = [](const Halfspace& h) {
    const ZVector z = primitive(h.normal);
    Rational factor;
    for (Eigen::Index i = 0; i < z.size(); ++i)
      if (z(i) != 0) {
        factor = Rational(z(i)) / h.normal(i);
        break;
      }
    return std::pair{to_string(to_rational(z)), to_string(Rational(h.rhs * factor))};
  };
  std::set<std::pair<std::string, std::string>> rows;
  for (const auto& h : p.inequalities) rows.insert(scaled(h));
  for (const auto& h : pbar.inequalities)
    if (!rows.count(scaled(h))) {
      r.message = "row of Pbar missing from P";
      return r;
    }

  if (ny <= 3) {
    r.method = "vertices";
    const auto vp = dd_convert(p), vb = dd_convert(pbar);
    r.checked = vp.vertices.size() + vp.rays.size();
    r.equal = vp.vertices == vb.vertices && vp.rays == vb.rays && vp.lines == vb.lines;
    r.message = r.equal ? "vertex and ray sets agree" : "vertex or ray sets differ";
    return r;
  }

  // P̄ ⊆ P: minimise every cube row over P̄, families visited in Gray-code order.
  r.method = "lp";
  const Eigen::Index n = bar.dim();
  QMatrix a(static_cast<Eigen::Index>(pbar.inequalities.size()), n);
  QVector b(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    a.row(i) = pbar.inequalities[static_cast<std::size_t>(i)].normal.transpose();
    b(i) = pbar.inequalities[static_cast<std::size_t>(i)].rhs;
  }
  VertexSimplex<Rational> walker(a, b, QVector::Constant(n, delta(full)));
  for (Mask i = 0; i < (Mask{1} << n); ++i) {
    const Mask family = i ^ (i >> 1);
    QVector c = zeros<Rational>(n);
    Mask u = 0;
    for (Eigen::Index k = 0; k < n; ++k)
      if ((family >> k) & 1U) {
        c(k) = 1;
        u |= static_cast<Mask>(k + 1);
      }
    const auto res = walker.minimize(c);
    ++r.checked;
    if (res.status != LPStatus::optimal || *res.value < delta(u)) {
      r.message = "cube inequality for family " + std::to_string(family) + " fails on Pbar";
      return r;
    }
  }
  r.equal = true;
  r.message = "all " + std::to_string(r.checked) + " cube inequalities valid on Pbar";
  return r;
}

std::string split_label(const GroundSet& g, SplitKind kind, const Split& s) {
  if (kind == SplitKind::directed) return "(" + subset_label(g, s.a) + "," + subset_label(g, s.b) + ")";
  return subset_label(g, s.a) + "|" + subset_label(g, s.b);
}

}  // namespace tsk
