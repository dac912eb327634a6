#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "tsk/engine.hpp"
#include "tsk/trees.hpp"

namespace tsk {

/// Malformed input; the message names the line or field.
class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

enum class InputKind { metric, distance, symmetric, directed, diversity, kdiss, splitsystem };
InputKind parse_input_kind(const std::string& name);
std::string to_string(InputKind kind);

using MapValue = std::variant<SymmetricMap, DirectedMap, Diversity, KDissimilarity, WeightedSplitSystem>;

/// JSON for every kind (first non-blank character '{'); PHYLIP square or
/// lower-triangular text for metric, distance and symmetric. Validation runs
/// on the parsed value and throws ValidationError listing every violation.
MapValue parse_input(std::string_view text, InputKind kind);
MapValue read_input(const std::string& path, InputKind kind);

/// Sorted keys, two-space indent, trailing newline.
std::string dump(const nlohmann::json& j);

nlohmann::json to_json(const Rational& q);
/// Label → rational string.
nlohmann::json to_json(const GroundSet& g, const QVector& v);
nlohmann::json to_json(const HPolyhedron& p);
/// Vertices re-sorted lexicographically; faces refer to the sorted order.
nlohmann::json to_json(const TightSpan& ts);
nlohmann::json to_json(const PointConfiguration& config, const RegularSubdivision& s);
nlohmann::json to_json(const PointConfiguration& config, const std::vector<ConfigSplit>& splits);
nlohmann::json to_json(const PointConfiguration& config, const SplitDecomposition& d);
nlohmann::json to_json(const WeightedSplitSystem& s);
nlohmann::json to_json(const WeightedTree& t);
nlohmann::json to_json(const OrientedTree& t);

/// Tag-based label such as "{1}|{2,3}" or "({1},{2})"; "s<index>" when untagged.
std::string config_split_label(const PointConfiguration& config, const ConfigSplit& s, std::size_t index);

/// 1-dimensional (or smaller) complex as an undirected graph. Throws
/// ValidationError for higher dimensions.
std::string to_dot(const TightSpan& ts, bool approx = false);
std::string to_dot(const WeightedTree& t, bool approx = false);
std::string to_dot(const OrientedTree& t, bool approx = false);

/// Rooted at the vertex of the first ground element, or its neighbour when
/// that vertex is a leaf; children ordered by smallest ground index below them.
std::string to_newick(const WeightedTree& t);

}  // namespace tsk
