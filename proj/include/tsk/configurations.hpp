#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tsk/polyhedron.hpp"

namespace tsk {

enum class ConfigKind { A, A_bar, B, B_bar, B_directed, B_bar_directed, C_cube, hypersimplex };

std::string to_string(ConfigKind kind);
ConfigKind parse_config_kind(const std::string& name);

struct ConfigPoint {
  std::string label;
  QVector coords;
};

/// Finite set of nonnegative integer points in ℚ^ground.
struct PointConfiguration {
  ConfigKind kind = ConfigKind::A;
  GroundSet ground;
  std::vector<ConfigPoint> points;
  Eigen::Index x_size = 0;  // B-kinds: coordinates [0, x_size) are X, the rest Y
  int k = 0;                // hypersimplex parameter

  std::size_t size() const { return points.size(); }
  Eigen::Index dim() const { return ground.size(); }
  std::size_t index_of(const std::string& label) const;
  const QVector& point(std::size_t i) const { return points[i].coords; }
  /// Dimension of the affine hull.
  Eigen::Index affine_dim() const;
};

/// B-kinds need disjoint X and Y; the directed kinds build Y as a copy of X
/// with coordinates "x_l", "x_r". C_cube takes Y and uses the nonempty
/// subsets of Y as coordinates. Throws std::invalid_argument on bad input.
PointConfiguration build_configuration(ConfigKind kind, const GroundSet& x,
                                       const std::optional<GroundSet>& y = std::nullopt, int k = 0);

/// Label of the subset of `base` with bitmask `mask`, e.g. "{1,3}".
std::string subset_label(const GroundSet& base, std::uint64_t mask);
/// Ground set of the nonempty subsets of `base`, ordered by bitmask.
GroundSet nonempty_subsets(const GroundSet& base);

/// Pairs of point indices forming a face of size 2.
std::vector<std::pair<int, int>> config_edges(const PointConfiguration& config);

/// Combinatorial description of a split. Masks index X (partial, directed)
/// or X and Y separately (bbar_pair; for directed copies both index X).
struct SplitTag {
  enum class Kind { partial_split, bbar_pair, directed };
  Kind kind = Kind::partial_split;
  std::uint64_t a = 0;
  std::uint64_t b = 0;

  friend bool operator==(const SplitTag&, const SplitTag&) = default;
};

struct ConfigSplit {
  std::vector<int> plus;   // points with ⟨normal,a⟩ ≥ rhs
  std::vector<int> minus;  // points with ⟨normal,a⟩ ≤ rhs
  QVector normal;
  Rational rhs;
  std::optional<SplitTag> tag;

  /// Same unordered pair of sides.
  bool same_partition(const ConfigSplit& other) const;
};

/// Rational weight per configuration point, in point order.
struct WeightFunction {
  QVector values;
};

ConfigSplit make_split(const PointConfiguration& config, const QVector& normal, const Rational& rhs,
                       std::optional<SplitTag> tag = std::nullopt);
/// Split of A(X) or Ā(X) from the partial split {A,B}; the A side is plus.
ConfigSplit partial_split_split(const PointConfiguration& config, std::uint64_t a, std::uint64_t b);
/// Split of B̄(X,Y) (or B̄(X) for copies) given by Σ_A f = Σ_B f.
ConfigSplit bbar_split(const PointConfiguration& config, std::uint64_t a, std::uint64_t b);
/// Split of B(X) or B̄(X) induced by the directed partial split (A,B).
ConfigSplit directed_split(const PointConfiguration& config, std::uint64_t a, std::uint64_t b);

inline constexpr std::size_t kBruteForceGuard = 200000;

/// Closed forms for A, Ā, B̄ and B̄(X); for B(X) every 1_{A_l} - 1_{B_r} with
/// A, B nonempty (A ∩ B = ∅ gives the directed partial splits);
/// otherwise (or when `brute_force`) a hyperplane search over point subsets,
/// refused above kBruteForceGuard candidate subsets.
std::vector<ConfigSplit> enumerate_splits(const PointConfiguration& config, bool brute_force = false);

enum class CompatibilityMethod { geometric, combinatorial };

bool splits_compatible(const PointConfiguration& config, const ConfigSplit& s, const ConfigSplit& t,
                       CompatibilityMethod method);

/// w_T(a) = max(0, ⟨l,a⟩ - c).
WeightFunction split_weight(const PointConfiguration& config, const ConfigSplit& s);

/// Hyperplane meets the relative interior and cuts no edge.
bool is_split(const PointConfiguration& config, const ConfigSplit& s,
              const std::vector<std::pair<int, int>>& edges);

}  // namespace tsk
