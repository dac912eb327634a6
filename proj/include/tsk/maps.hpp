#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsk/configurations.hpp"

namespace tsk {

/// Values on unordered pairs {x,y}, diagonal included; stored as a symmetric matrix.
struct SymmetricMap {
  GroundSet ground;
  QMatrix values;

  SymmetricMap() = default;
  explicit SymmetricMap(GroundSet g);

  Eigen::Index size() const { return ground.size(); }
  const Rational& operator()(Eigen::Index i, Eigen::Index j) const { return values(i, j); }
  void set(Eigen::Index i, Eigen::Index j, const Rational& v);
  friend bool operator==(const SymmetricMap& a, const SymmetricMap& b) {
    return a.ground == b.ground && a.values == b.values;
  }
};

/// D : X × Y → ℚ. Without a codomain, Y is a disjoint copy of X.
struct DirectedMap {
  GroundSet domain;
  std::optional<GroundSet> codomain;
  QMatrix values;  // rows index X, columns index Y

  DirectedMap() = default;
  explicit DirectedMap(GroundSet x, std::optional<GroundSet> y = std::nullopt);

  bool is_copy() const { return !codomain.has_value(); }
  const GroundSet& cod() const { return codomain ? *codomain : domain; }
  friend bool operator==(const DirectedMap& a, const DirectedMap& b) {
    return a.domain == b.domain && a.codomain == b.codomain && a.values == b.values;
  }
};

/// δ : 𝒫(Y) → ℚ, values indexed by bitmask over the ground.
struct Diversity {
  GroundSet ground;
  std::vector<Rational> values;

  Diversity() = default;
  explicit Diversity(GroundSet y);

  std::uint64_t full() const { return (std::uint64_t{1} << ground.size()) - 1; }
  const Rational& operator()(std::uint64_t mask) const { return values[mask]; }
  Rational& operator()(std::uint64_t mask) { return values[mask]; }
  friend bool operator==(const Diversity&, const Diversity&) = default;
};

/// D on the k-subsets of X, keyed by bitmask.
struct KDissimilarity {
  GroundSet ground;
  int k = 2;
  std::map<std::uint64_t, Rational> values;
};

enum class MapKind { symmetric, distance, metric, four_point, directed, directed_distance, directed_metric, diversity };

struct Violation {
  std::string axiom;
  std::string witness;
};

std::vector<Violation> validate(const SymmetricMap& d, MapKind kind);
std::vector<Violation> validate(const DirectedMap& d, MapKind kind);
/// (D1), (D2) and monotonicity.
std::vector<Violation> validate(const Diversity& delta);

/// D′(x,y) = D(x,y) - ½(D(x,x)+D(y,y)); shift v(x) = ½D(x,x).
std::pair<SymmetricMap, QVector> normalize_symmetric(const SymmetricMap& d);
SymmetricMap positive_part(const SymmetricMap& d);
DirectedMap positive_part(const DirectedMap& d);
/// Distance on X_l ∪ X_r: D(x,y) between x_l and y_r, zero within a copy.
SymmetricMap undirect(const DirectedMap& d);

/// D_δ on 𝒫⁰(Y): 2δ(A) on the diagonal, δ(A∪B) elsewhere.
SymmetricMap diversity_to_sym(const Diversity& delta);
/// δ(D)(A) = ½D(A,A); `y` is the base set whose nonempty subsets index D.
Diversity sym_to_diversity(const SymmetricMap& d, const GroundSet& y);
/// (A1)-(A3) for D on 𝒫⁰(y).
std::vector<Violation> check_A1_A3(const SymmetricMap& d, const GroundSet& y);

/// d_δ(A,B) = max(0, δ(A∪B) - δ(A) - δ(B)), zero diagonal.
SymmetricMap diversity_distance(const Diversity& delta);

/// Weights with the envelope convention ⟨a,x⟩ ≥ -w(a). Throws std::invalid_argument
/// when the configuration kind does not fit the map.
WeightFunction make_weight(const PointConfiguration& config, const SymmetricMap& d);
WeightFunction make_weight(const PointConfiguration& config, const DirectedMap& d);
/// Cube: w(Σ_{A∈𝒜} e_A) = -δ(∪𝒜). A over 𝒫⁰(Y): through D_δ.
WeightFunction make_weight(const PointConfiguration& config, const Diversity& delta);
WeightFunction make_weight(const PointConfiguration& config, const KDissimilarity& d);

}  // namespace tsk
