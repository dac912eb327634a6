#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsk/errors.hpp"
#include "tsk/lp.hpp"
#include "tsk/rational.hpp"

namespace tsk {

/// Ordered finite set of coordinate labels.
class GroundSet {
 public:
  GroundSet() = default;
  explicit GroundSet(std::vector<std::string> labels);

  Eigen::Index size() const { return static_cast<Eigen::Index>(labels_.size()); }
  bool empty() const { return labels_.empty(); }
  const std::string& label(Eigen::Index i) const { return labels_[static_cast<std::size_t>(i)]; }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Throws std::out_of_range for unknown labels.
  Eigen::Index index(const std::string& label) const;
  std::optional<Eigen::Index> find(const std::string& label) const;

  friend bool operator==(const GroundSet&, const GroundSet&) = default;

 private:
  std::vector<std::string> labels_;
};

using Halfspace = LinearConstraint<Rational>;

/// {x : ⟨a,x⟩ ≥ rhs for every inequality, ⟨e,x⟩ = rhs for every equality}.
struct HPolyhedron {
  GroundSet ground;
  std::vector<Halfspace> inequalities;
  std::vector<Halfspace> equalities;

  Eigen::Index dim() const { return ground.size(); }
  bool contains(const QVector& x) const;
  bool is_empty() const;
  /// Implicit equalities made explicit and in reduced echelon form, normals
  /// reduced modulo equalities and scaled positively to primitive integers,
  /// redundant rows removed, rows sorted. The empty set becomes {0 ≥ 1}.
  HPolyhedron canonical() const;
};

/// P = conv(vertices) + cone(rays) + span(lines). With lines present the
/// vertices and rays are taken in the section orthogonal to the lines.
struct VRepresentation {
  std::vector<QVector> vertices;
  std::vector<QVector> rays;
  std::vector<QVector> lines;

  bool empty() const { return vertices.empty(); }
};

inline constexpr int kDefaultCap = 16;

/// Exact double description; vertices and rays sorted lexicographically,
/// rays primitive integer. Throws EnumerationCapExceeded when dim > cap.
VRepresentation dd_convert(const HPolyhedron& p, int cap = kDefaultCap);

/// H-representation of conv(points) + cone(rays); facets only, affine hull
/// as equalities.
HPolyhedron convex_hull(const GroundSet& ground, const std::vector<QVector>& points,
                        const std::vector<QVector>& rays = {}, int cap = kDefaultCap);

struct Face {
  std::vector<int> active;  // inequality indices tight on the face
  int dim = 0;
  std::vector<int> vertex_ids;
  std::vector<int> ray_ids;
};

struct FaceLattice {
  std::vector<Face> faces;  // nonempty faces, by decreasing dimension

  /// Face j is a subface of face i.
  bool contains(std::size_t i, std::size_t j) const;
  /// Number of faces per dimension, index = dimension.
  std::vector<int> histogram() const;
};

FaceLattice face_lattice(const HPolyhedron& p, const VRepresentation& v);

struct ComplexEdge {
  int a = 0;
  int b = 0;
  QVector difference;  // vertices[b] - vertices[a]
};

/// Faces without rays; empty when P contains a line.
struct BoundedComplex {
  std::vector<QVector> vertices;
  std::vector<std::vector<int>> faces;  // sorted vertex-id sets
  std::vector<int> face_dims;
  std::vector<ComplexEdge> edges;

  int dimension() const;
  bool empty() const { return vertices.empty(); }
};

BoundedComplex bounded_faces(const HPolyhedron& p, const VRepresentation& v);
BoundedComplex bounded_faces(const HPolyhedron& p, int cap = kDefaultCap);

/// No y ∈ P with y ⪯ x, y ≠ x. Throws std::domain_error if x ∉ P.
bool is_minimal_element(const HPolyhedron& p, const QVector& x);

/// Every ray nonnegative and no lines; decided by LP above the cap.
bool is_bounded_from_below(const HPolyhedron& p, int cap = kDefaultCap);

/// Vertex barycenter plus the sum of the rays.
std::optional<QVector> relint_point(const HPolyhedron& p, int cap = kDefaultCap);

/// Minimize or maximize over P.
LPResult<Rational> optimize(const HPolyhedron& p, const QVector& objective, Sense sense);

}  // namespace tsk
