#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include <boost/dynamic_bitset.hpp>

#include "tsk/linalg.hpp"
#include "tsk/polyhedron.hpp"

namespace tsk {

namespace {

using Bits = boost::dynamic_bitset<>;

/// Generator/inequality incidence; generators are vertices then rays.
class Incidence {
 public:
  Incidence(const HPolyhedron& p, const VRepresentation& v)
      : v_(v), nv_(v.vertices.size()), ng_(v.vertices.size() + v.rays.size()) {
    const std::size_t m = p.inequalities.size();
    gen_.assign(ng_, Bits(m));
    ineq_.assign(m, Bits(ng_));
    for (std::size_t i = 0; i < m; ++i) {
      const auto& h = p.inequalities[i];
      for (std::size_t g = 0; g < ng_; ++g) {
        const bool tight = g < nv_ ? h.normal.dot(v.vertices[g]) == h.rhs : h.normal.dot(v.rays[g - nv_]) == 0;
        if (tight) {
          gen_[g].set(i);
          ineq_[i].set(g);
        }
      }
    }
  }

  std::size_t num_vertices() const { return nv_; }
  std::size_t num_generators() const { return ng_; }
  std::size_t num_inequalities() const { return ineq_.size(); }

  Bits active(const Bits& gens) const {
    Bits a(ineq_.size());
    a.set();
    for (auto g = gens.find_first(); g != Bits::npos; g = gens.find_next(g)) a &= gen_[g];
    return a;
  }

  Bits closure(const Bits& gens) const { return generators_of(active(gens)); }

  Bits generators_of(const Bits& act) const {
    Bits g(ng_);
    g.set();
    for (auto i = act.find_first(); i != Bits::npos; i = act.find_next(i)) g &= ineq_[i];
    return g;
  }

  const Bits& tight_generators(std::size_t i) const { return ineq_[i]; }

  bool has_vertex(const Bits& gens) const {
    const auto g = gens.find_first();
    return g != Bits::npos && g < nv_;
  }

  bool has_ray(const Bits& gens) const {
    const auto g = gens.find_next(nv_ == 0 ? 0 : nv_ - 1);
    if (nv_ == 0) return gens.any();
    return g != Bits::npos;
  }

  /// Dimension of the face without its lineality space.
  int dim(const Bits& gens) const {
    std::vector<QVector> rows;
    const QVector* base = nullptr;
    for (auto g = gens.find_first(); g != Bits::npos; g = gens.find_next(g)) {
      if (g < nv_) {
        if (!base) base = &v_.vertices[g];
        else rows.push_back(v_.vertices[g] - *base);
      } else {
        rows.push_back(v_.rays[g - nv_]);
      }
    }
    if (rows.empty()) return 0;
    return static_cast<int>(rank(rows, rows.front().size()));
  }

  std::vector<int> ids(const Bits& gens, bool vertices) const {
    std::vector<int> out;
    for (auto g = gens.find_first(); g != Bits::npos; g = gens.find_next(g)) {
      if (vertices && g < nv_) out.push_back(static_cast<int>(g));
      if (!vertices && g >= nv_) out.push_back(static_cast<int>(g - nv_));
    }
    return out;
  }

 private:
  const VRepresentation& v_;
  std::size_t nv_;
  std::size_t ng_;
  std::vector<Bits> gen_;
  std::vector<Bits> ineq_;
};

std::vector<int> to_ids(const Bits& b) {
  std::vector<int> out;
  for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) out.push_back(static_cast<int>(i));
  return out;
}

}  // namespace

bool FaceLattice::contains(std::size_t i, std::size_t j) const {
  const Face& big = faces[i];
  const Face& small = faces[j];
  return std::includes(big.vertex_ids.begin(), big.vertex_ids.end(), small.vertex_ids.begin(), small.vertex_ids.end()) &&
         std::includes(big.ray_ids.begin(), big.ray_ids.end(), small.ray_ids.begin(), small.ray_ids.end());
}

std::vector<int> FaceLattice::histogram() const {
  std::vector<int> h;
  for (const auto& f : faces) {
    if (static_cast<int>(h.size()) <= f.dim) h.resize(static_cast<std::size_t>(f.dim) + 1, 0);
    ++h[static_cast<std::size_t>(f.dim)];
  }
  return h;
}

FaceLattice face_lattice(const HPolyhedron& p, const VRepresentation& v) {
  FaceLattice out;
  if (v.empty()) return out;
  const Incidence inc(p, v);
  const int lineality = static_cast<int>(v.lines.size());
  Bits all(inc.num_generators());
  all.set();
  std::set<Bits> seen;
  std::deque<Bits> queue;
  const Bits top = inc.closure(all);
  seen.insert(top);
  queue.push_back(top);
  while (!queue.empty()) {
    const Bits g = queue.front();
    queue.pop_front();
    const Bits act = inc.active(g);
    for (std::size_t i = 0; i < inc.num_inequalities(); ++i) {
      if (act.test(i)) continue;
      const Bits sub = g & inc.tight_generators(i);
      if (!inc.has_vertex(sub)) continue;
      const Bits face = inc.closure(sub);
      if (seen.insert(face).second) queue.push_back(face);
    }
  }
  for (const Bits& g : seen) {
    Face f;
    f.active = to_ids(inc.active(g));
    f.dim = inc.dim(g) + lineality;
    f.vertex_ids = inc.ids(g, true);
    f.ray_ids = inc.ids(g, false);
    out.faces.push_back(std::move(f));
  }
  std::sort(out.faces.begin(), out.faces.end(), [](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim > b.dim;
    if (a.vertex_ids != b.vertex_ids) return a.vertex_ids < b.vertex_ids;
    return a.ray_ids < b.ray_ids;
  });
  return out;
}

int BoundedComplex::dimension() const {
  int d = -1;
  for (int x : face_dims) d = std::max(d, x);
  return d;
}

BoundedComplex bounded_faces(const HPolyhedron& p, const VRepresentation& v) {
  BoundedComplex out;
  if (v.empty() || !v.lines.empty()) return out;
  out.vertices = v.vertices;
  const Incidence inc(p, v);
  const std::size_t nv = inc.num_vertices();
  std::map<std::vector<int>, int> faces;  // vertex ids -> dim
  std::vector<Bits> layer;
  for (std::size_t i = 0; i < nv; ++i) {
    Bits b(inc.num_generators());
    b.set(i);
    faces.emplace(std::vector<int>{static_cast<int>(i)}, 0);
    layer.push_back(std::move(b));
  }
  for (int k = 0; !layer.empty(); ++k) {
    std::set<Bits> next;
    for (const Bits& f : layer) {
      for (std::size_t u = 0; u < nv; ++u) {
        if (f.test(u)) continue;
        Bits g = f;
        g.set(u);
        const Bits c = inc.closure(g);
        if (inc.has_ray(c) || next.count(c)) continue;
        if (inc.dim(c) != k + 1) continue;
        next.insert(c);
      }
    }
    layer.assign(next.begin(), next.end());
    for (const Bits& f : layer) faces.emplace(inc.ids(f, true), k + 1);
  }
  std::vector<std::pair<int, std::vector<int>>> sorted;
  for (auto& [ids, d] : faces) sorted.emplace_back(d, ids);
  std::sort(sorted.begin(), sorted.end());
  for (auto& [d, ids] : sorted) {
    if (d == 1) out.edges.push_back({ids[0], ids[1], QVector(v.vertices[static_cast<std::size_t>(ids[1])] - v.vertices[static_cast<std::size_t>(ids[0])])});
    out.faces.push_back(std::move(ids));
    out.face_dims.push_back(d);
  }
  return out;
}

BoundedComplex bounded_faces(const HPolyhedron& p, int cap) { return bounded_faces(p, dd_convert(p, cap)); }

}  // namespace tsk
