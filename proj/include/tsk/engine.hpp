#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsk/maps.hpp"

namespace tsk {

/// ⟨a,x⟩ ≥ -w(a), one row per point in configuration order.
HPolyhedron envelope(const PointConfiguration& config, const WeightFunction& w);

struct TightSpan {
  std::string name;       // which named object this is, e.g. "T_D"
  HPolyhedron envelope;   // without the section equalities
  std::vector<QVector> lineality;  // basis of {x : ⟨a,x⟩ = 0 for all a}
  BoundedComplex complex;          // bounded faces of envelope ∩ lineality^⊥
  std::vector<std::vector<int>> tight_sets;  // per complex face: points tight on all its vertices
  int dimension = -1;
};

/// Bounded faces of the envelope, taken in the section orthogonal to its
/// lineality. When the envelope has no lines and every ray is nonnegative,
/// each complex vertex is checked to be a minimal element.
TightSpan tight_span(const PointConfiguration& config, const WeightFunction& w, int cap = kDefaultCap);

/// w′(a) = w(a) + ⟨a,v⟩; then T_w = T_{w′} + v.
WeightFunction shift_weight(const PointConfiguration& config, const WeightFunction& w, const QVector& v);

struct RegularSubdivision {
  std::vector<std::vector<int>> cells;  // point ids, by decreasing dimension
  std::vector<int> cell_dims;
  std::vector<bool> interior;

  std::vector<std::size_t> maximal() const;
};

/// Lower faces of conv{(w(a), a)} + cone{(1,0)}, projected.
RegularSubdivision regular_subdivision(const PointConfiguration& config, const WeightFunction& w,
                                       int cap = kDefaultCap);

struct DualityReport {
  bool ok = false;
  std::string message;
  std::vector<std::pair<std::size_t, std::size_t>> matched;  // (complex face, subdivision cell)
  std::size_t maximal_span_faces = 0;
  std::size_t minimal_interior_cells = 0;
  std::size_t span_vertices = 0;
  std::size_t maximal_cells = 0;
};

/// Bounded faces ↔ interior cells, dimension and inclusion reversing.
DualityReport verify_duality(const PointConfiguration& config, const WeightFunction& w, int cap = kDefaultCap);

struct ExtractedTree {
  std::vector<QVector> vertices;
  std::vector<ComplexEdge> edges;
  std::vector<Rational> lengths;  // max-norm of the edge vector
};

/// Absent when some bounded face has dimension ≥ 2. Throws InvariantFailure
/// on a cyclic or disconnected 1-complex.
std::optional<ExtractedTree> is_tree(const TightSpan& ts);

struct SplitDecomposition {
  std::vector<ConfigSplit> splits;
  std::vector<Rational> alpha;
  QVector affine_linear;  // u in ⟨u,a⟩ + c
  Rational affine_constant;
};

/// w = Σ α(T) w_T + ⟨u,·⟩ + c over the compatible splits refined by Σ_w, when
/// Σ_w is their common refinement; absent otherwise.
std::optional<SplitDecomposition> split_decomposition(const PointConfiguration& config, const WeightFunction& w,
                                                      int cap = kDefaultCap);

/// T_D via A(X).
TightSpan tight_span_of(const SymmetricMap& d, int cap = kDefaultCap);
/// Θ_D via B̄ (bar = true) or T_D via B.
TightSpan tight_span_of(const DirectedMap& d, bool bar, int cap = kDefaultCap);
/// T(δ) via the cube (bar = false) or T̄(δ) via A(𝒫⁰(Y)) and D_δ.
TightSpan tight_span_of(const Diversity& delta, bool bar, int cap = kDefaultCap);
/// Tight-span over the hypersimplex.
TightSpan tight_span_of(const KDissimilarity& d, int cap = kDefaultCap);

PointConfiguration configuration_for(const SymmetricMap& d);
PointConfiguration configuration_for(const DirectedMap& d, bool bar);
PointConfiguration configuration_for(const Diversity& delta, bool bar);
PointConfiguration configuration_for(const KDissimilarity& d);

}  // namespace tsk
