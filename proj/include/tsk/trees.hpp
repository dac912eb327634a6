#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tsk/engine.hpp"

namespace tsk {

using Mask = std::uint64_t;

/// Undirected tree with a subtree F_x (vertex set) per ground element.
struct WeightedTree {
  struct Edge {
    int u = 0;
    int v = 0;
    Rational length;
  };
  int num_vertices = 1;
  std::vector<Edge> edges;
  GroundSet ground;
  std::vector<std::vector<int>> subtrees;

  /// Leaf-labelled: element i sits at vertex leaves[i].
  static WeightedTree leaf_labelled(int num_vertices, std::vector<Edge> edges, GroundSet ground,
                                    const std::vector<int>& leaves);
};

/// Oriented tree Γ with arc lengths and a subtree per ground element.
struct OrientedTree {
  struct Arc {
    int from = 0;
    int to = 0;
    Rational length;
  };
  int num_vertices = 1;
  std::vector<Arc> arcs;
  GroundSet ground;
  std::vector<std::vector<int>> subtrees;

  /// Γ is a single directed path.
  bool is_directed_path() const;
  /// F_x induces a directed path of Γ.
  bool subtree_is_directed_path(std::size_t x) const;
};

enum class SplitKind { partial, directed };

struct Split {
  Mask a = 0;
  Mask b = 0;
  friend auto operator<=>(const Split&, const Split&) = default;
};

struct WeightedSplitSystem {
  GroundSet ground;
  SplitKind kind = SplitKind::partial;
  std::vector<Split> splits;
  std::vector<Rational> alpha;
};

/// Throws std::invalid_argument unless the tree is connected and acyclic and
/// every subtree is nonempty and connected.
void check_tree(const WeightedTree& t);
void check_tree(const OrientedTree& t);

/// D(x,y) = shortest path length between F_x and F_y.
SymmetricMap distance_from_tree(const WeightedTree& t);
/// D(x,y) = min over u ∈ F_x, v ∈ F_y of the length of forward arcs on the path u → v.
DirectedMap oriented_distance(const OrientedTree& t);

/// Σ α(S) d_S for partial splits, Σ α(S) D_S for directed ones.
SymmetricMap distance_from_splits(const WeightedSplitSystem& s);
DirectedMap directed_distance_from_splits(const WeightedSplitSystem& s);
/// δ(A) = Σ α(S) [S splits A].
Diversity diversity_from_splits(const WeightedSplitSystem& s);

bool splits_compatible(SplitKind kind, Mask full, const Split& s, const Split& t);
bool compatible(const WeightedSplitSystem& s);
/// Chain A₁ ⊆ A₂ ⊆ … with B₁ ⊇ B₂ ⊇ …, found by sorting on |A|.
bool strongly_compatible(const std::vector<Split>& splits);

/// Realisation of Σ α(S) D_S with every F_x a directed path. Throws
/// std::invalid_argument naming a violating pair when S is incompatible.
OrientedTree realisation_from_splits(const WeightedSplitSystem& s);
/// One directed partial split per arc; arcs whose split has an empty side are dropped.
WeightedSplitSystem splits_from_realisation(const OrientedTree& t);

/// Leaf-labelled tree from compatible full splits.
WeightedTree tree_from_splits(const WeightedSplitSystem& s);

/// δ_T(A) = length of the smallest subtree meeting every F_x, x ∈ A.
Diversity phylogenetic_diversity(const WeightedTree& t);

struct DiversityTree {
  WeightedTree tree;
  WeightedSplitSystem splits;
};

/// Absent when T_{d_δ} is not a tree or some recovered split of 𝒫⁰(Y) does not
/// come from a full split of Y.
std::optional<DiversityTree> reconstruct_diversity_tree(const Diversity& delta, int cap = 31);

struct TightSpanEqualReport {
  bool equal = false;
  std::string method;   // "vertices" or "lp"
  std::string message;
  std::size_t checked = 0;
};

/// P(δ) = P̄(δ) for δ = δ_(S,α). |Y| ≤ 3 compares both V-representations;
/// |Y| = 4 checks every cube inequality against P̄ by exact LP.
TightSpanEqualReport verify_tightspan_equal(const WeightedSplitSystem& s);

std::string split_label(const GroundSet& g, SplitKind kind, const Split& s);

}  // namespace tsk
