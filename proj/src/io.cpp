#include "tsk/io.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <tuple>

namespace tsk {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw ParseError("parse error at " + where + ": " + what);
}

void check_label(const std::string& l, const std::string& where) {
  if (l.empty() || l.find_first_of(",{}()|: \t\r\n\"") != std::string::npos)
    parse_fail(where, "bad label '" + l + "'");
}

Rational rational_field(const json& v, const std::string& where) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number()) return parse_rational(v.dump());
  } catch (const std::invalid_argument& e) {
    parse_fail(where, e.what());
  }
  parse_fail(where, "expected a rational");
}

GroundSet ground_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) parse_fail(std::string("field '") + key + "'", "expected an array of labels");
  std::vector<std::string> labels;
  for (const auto& l : j[key]) {
    if (!l.is_string()) parse_fail(std::string("field '") + key + "'", "labels must be strings");
    check_label(l.get<std::string>(), std::string("field '") + key + "'");
    labels.push_back(l.get<std::string>());
  }
  if (labels.size() > 62) parse_fail(std::string("field '") + key + "'", "too many labels");
  try {
    return GroundSet(labels);
  } catch (const std::invalid_argument& e) {
    parse_fail(std::string("field '") + key + "'", e.what());
  }
}

/// "{a,b}" → bitmask over g.
Mask subset_key(const GroundSet& g, std::string_view key, const std::string& where) {
  const std::string k = trim(key);
  if (k.size() < 2 || k.front() != '{' || k.back() != '}') parse_fail(where, "expected {..} in '" + k + "'");
  Mask m = 0;
  const std::string body = k.substr(1, k.size() - 2);
  if (trim(body).empty()) return 0;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto i = g.find(trim(item));
    if (!i) parse_fail(where, "unknown label '" + trim(item) + "'");
    if ((m >> *i) & 1U) parse_fail(where, "repeated label '" + trim(item) + "'");
    m |= Mask{1} << *i;
  }
  return m;
}

/// "(x,y)" → index pair.
std::pair<Eigen::Index, Eigen::Index> ordered_key(const GroundSet& x, const GroundSet& y, std::string_view key,
                                                  const std::string& where) {
  const std::string k = trim(key);
  const auto comma = k.find(',');
  if (k.size() < 5 || k.front() != '(' || k.back() != ')' || comma == std::string::npos)
    parse_fail(where, "expected (x,y) in '" + k + "'");
  const auto i = x.find(trim(k.substr(1, comma - 1)));
  const auto j = y.find(trim(k.substr(comma + 1, k.size() - comma - 2)));
  if (!i || !j) parse_fail(where, "unknown label in '" + k + "'");
  return {*i, *j};
}

void throw_violations(const std::vector<Violation>& v, InputKind kind) {
  if (v.empty()) return;
  std::string msg = "validation failed for kind " + to_string(kind) + ":";
  for (const auto& x : v) msg += "\n  " + x.axiom + ": " + x.witness;
  throw ValidationError(msg);
}

MapKind symmetric_kind(InputKind kind) {
  switch (kind) {
    case InputKind::metric: return MapKind::metric;
    case InputKind::distance: return MapKind::distance;
    default: return MapKind::symmetric;
  }
}

/// Entries read from a full matrix; asymmetric pairs are named.
SymmetricMap from_square(const GroundSet& g, const std::vector<std::vector<Rational>>& rows) {
  SymmetricMap d(g);
  for (Eigen::Index i = 0; i < g.size(); ++i)
    for (Eigen::Index j = 0; j < g.size(); ++j) {
      const Rational& a = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      const Rational& b = rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      if (a != b)
        throw ValidationError("symmetry violated: D(" + g.label(i) + "," + g.label(j) + ") = " + to_string(a) +
                              " but D(" + g.label(j) + "," + g.label(i) + ") = " + to_string(b));
      d.values(i, j) = a;
    }
  return d;
}

std::vector<std::vector<Rational>> matrix_field(const json& m, Eigen::Index rows, Eigen::Index cols) {
  if (!m.is_array() || static_cast<Eigen::Index>(m.size()) != rows) parse_fail("field 'matrix'", "wrong number of rows");
  std::vector<std::vector<Rational>> out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const std::string where = "field 'matrix' row " + std::to_string(i + 1);
    if (!m[i].is_array() || static_cast<Eigen::Index>(m[i].size()) != cols) parse_fail(where, "wrong number of entries");
    out.emplace_back();
    for (const auto& v : m[i]) out.back().push_back(rational_field(v, where));
  }
  return out;
}

SymmetricMap parse_phylip(std::string_view text) {
  std::vector<std::pair<int, std::string>> lines;
  std::stringstream ss{std::string(text)};
  std::string line;
  for (int no = 1; std::getline(ss, line); ++no)
    if (!trim(line).empty()) lines.emplace_back(no, trim(line));
  if (lines.empty()) parse_fail("line 1", "empty input");
  long n = 0;
  try {
    std::size_t used = 0;
    n = std::stol(lines[0].second, &used);
    if (used != lines[0].second.size() || n < 1) throw std::invalid_argument("");
  } catch (const std::exception&) {
    parse_fail("line " + std::to_string(lines[0].first), "expected the number of taxa");
  }
  if (static_cast<long>(lines.size()) != n + 1)
    parse_fail("line " + std::to_string(lines.back().first), "expected " + std::to_string(n) + " matrix rows");
  std::vector<std::string> labels;
  std::vector<std::vector<Rational>> rows;
  int shape = -1;  // entries in row 0: n (square), 0 (strict lower), 1 (lower with diagonal)
  for (long i = 0; i < n; ++i) {
    const auto& [no, l] = lines[static_cast<std::size_t>(i + 1)];
    const std::string where = "line " + std::to_string(no);
    std::stringstream row(l);
    std::string label, tok;
    row >> label;
    check_label(label, where);
    labels.push_back(label);
    rows.emplace_back();
    while (row >> tok) {
      try {
        rows.back().push_back(parse_rational(tok));
      } catch (const std::invalid_argument& e) {
        parse_fail(where, e.what());
      }
    }
    const long got = static_cast<long>(rows.back().size());
    if (i == 0) {
      if (got != n && got != 0 && got != 1) parse_fail(where, "row length fits neither square nor lower-triangular");
      shape = static_cast<int>(got == n ? n : got);
    }
    const long want = shape == n ? n : i + shape;
    if (got != want) parse_fail(where, "expected " + std::to_string(want) + " entries, found " + std::to_string(got));
  }
  GroundSet g;
  try {
    g = GroundSet(labels);
  } catch (const std::invalid_argument& e) {
    parse_fail("labels", e.what());
  }
  if (shape == n) return from_square(g, rows);
  SymmetricMap d(g);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < i + shape; ++j) d.set(i, j, rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  return d;
}

SymmetricMap parse_symmetric_json(const json& j) {
  const GroundSet g = ground_field(j, "ground");
  if (j.contains("matrix")) return from_square(g, matrix_field(j["matrix"], g.size(), g.size()));
  if (!j.contains("values") || !j["values"].is_object()) parse_fail("field 'values'", "expected an object or a 'matrix'");
  SymmetricMap d(g);
  std::vector<std::vector<bool>> seen(static_cast<std::size_t>(g.size()), std::vector<bool>(static_cast<std::size_t>(g.size())));
  for (const auto& [key, v] : j["values"].items()) {
    const std::string where = "field 'values' key " + key;
    const Mask m = subset_key(g, key, where);
    const int c = std::popcount(m);
    if (c != 1 && c != 2) parse_fail(where, "expected a pair or a singleton");
    const auto i = std::countr_zero(m), k = 63 - std::countl_zero(m);
    d.set(i, k, rational_field(v, where));
    seen[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = true;
  }
  for (Eigen::Index i = 0; i < g.size(); ++i)
    for (Eigen::Index k = i + 1; k < g.size(); ++k)
      if (!seen[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)])
        parse_fail("field 'values'", "missing pair {" + g.label(i) + "," + g.label(k) + "}");
  return d;
}

DirectedMap parse_directed_json(const json& j) {
  const GroundSet x = ground_field(j, "domain");
  std::optional<GroundSet> y;
  if (j.contains("codomain")) y = ground_field(j, "codomain");
  DirectedMap d(x, y);
  const GroundSet& cod = d.cod();
  if (j.contains("matrix")) {
    const auto rows = matrix_field(j["matrix"], x.size(), cod.size());
    for (Eigen::Index r = 0; r < x.size(); ++r)
      for (Eigen::Index c = 0; c < cod.size(); ++c)
        d.values(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    return d;
  }
  if (!j.contains("values") || !j["values"].is_object()) parse_fail("field 'values'", "expected an object or a 'matrix'");
  std::vector<std::vector<bool>> seen(static_cast<std::size_t>(x.size()), std::vector<bool>(static_cast<std::size_t>(cod.size())));
  for (const auto& [key, v] : j["values"].items()) {
    const std::string where = "field 'values' key " + key;
    const auto [r, c] = ordered_key(x, cod, key, where);
    d.values(r, c) = rational_field(v, where);
    seen[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = true;
  }
  for (Eigen::Index r = 0; r < x.size(); ++r)
    for (Eigen::Index c = 0; c < cod.size(); ++c)
      if (!seen[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] && !(d.is_copy() && r == c))
        parse_fail("field 'values'", "missing pair (" + x.label(r) + "," + cod.label(c) + ")");
  return d;
}

Diversity parse_diversity_json(const json& j) {
  const GroundSet g = ground_field(j, "ground");
  if (g.size() > 6) parse_fail("field 'ground'", "diversities are limited to 6 elements");
  if (!j.contains("values") || !j["values"].is_object()) parse_fail("field 'values'", "expected an object");
  bool fill = false;
  if (j.contains("complete")) {
    if (!j["complete"].is_boolean()) parse_fail("field 'complete'", "expected a boolean");
    fill = !j["complete"].get<bool>();
  }
  Diversity delta(g);
  std::vector<bool> seen(delta.values.size());
  for (const auto& [key, v] : j["values"].items()) {
    const std::string where = "field 'values' key " + key;
    const Mask m = subset_key(g, key, where);
    delta(m) = rational_field(v, where);
    seen[m] = true;
  }
  for (Mask m = 1; m <= delta.full(); ++m) {
    if (seen[m] || std::popcount(m) < 2) continue;
    if (!fill) parse_fail("field 'values'", "missing subset " + subset_label(g, m) + " (set \"complete\": false to fill)");
    for (Eigen::Index i = 0; i < g.size(); ++i)
      if ((m >> i) & 1U) delta(m) = std::max(delta(m), delta(m & ~(Mask{1} << i)));
  }
  return delta;
}

KDissimilarity parse_kdiss_json(const json& j) {
  KDissimilarity d;
  d.ground = ground_field(j, "ground");
  if (!j.contains("k") || !j["k"].is_number_integer()) parse_fail("field 'k'", "expected an integer");
  d.k = j["k"].get<int>();
  if (d.k < 1 || d.k > d.ground.size()) parse_fail("field 'k'", "out of range");
  if (!j.contains("values") || !j["values"].is_object()) parse_fail("field 'values'", "expected an object");
  for (const auto& [key, v] : j["values"].items()) {
    const std::string where = "field 'values' key " + key;
    const Mask m = subset_key(d.ground, key, where);
    if (std::popcount(m) != d.k) parse_fail(where, "expected a " + std::to_string(d.k) + "-subset");
    d.values[m] = rational_field(v, where);
  }
  const Mask full = (Mask{1} << d.ground.size()) - 1;
  for (Mask m = 1; m <= full; ++m)
    if (std::popcount(m) == d.k && !d.values.count(m))
      parse_fail("field 'values'", "missing subset " + subset_label(d.ground, m));
  return d;
}

WeightedSplitSystem parse_splitsystem_json(const json& j) {
  WeightedSplitSystem s;
  s.ground = ground_field(j, "ground");
  const std::string kind = j.value("split_kind", std::string("partial"));
  if (kind == "directed") s.kind = SplitKind::directed;
  else if (kind != "partial") parse_fail("field 'split_kind'", "expected partial or directed");
  if (!j.contains("splits") || !j["splits"].is_object()) parse_fail("field 'splits'", "expected an object");
  for (const auto& [key, v] : j["splits"].items()) {
    const std::string where = "field 'splits' key " + key;
    const std::string k = trim(key);
    std::string left, right;
    if (s.kind == SplitKind::partial) {
      const auto bar = k.find('|');
      if (bar == std::string::npos) parse_fail(where, "expected {A}|{B}");
      left = k.substr(0, bar);
      right = k.substr(bar + 1);
    } else {
      const auto mid = k.find("},{");
      if (k.size() < 7 || k.front() != '(' || k.back() != ')' || mid == std::string::npos) parse_fail(where, "expected ({A},{B})");
      left = k.substr(1, mid);
      right = k.substr(mid + 2, k.size() - mid - 3);
    }
    const Split sp{subset_key(s.ground, left, where), subset_key(s.ground, right, where)};
    if (!sp.a || !sp.b || (sp.a & sp.b)) parse_fail(where, "sides must be disjoint and nonempty");
    s.splits.push_back(sp);
    s.alpha.push_back(rational_field(v, where));
    if (s.alpha.back() <= 0) throw ValidationError("split weights must be positive: " + key);
  }
  return s;
}

}  // namespace

InputKind parse_input_kind(const std::string& name) {
  static const std::map<std::string, InputKind> kinds{
      {"metric", InputKind::metric},     {"distance", InputKind::distance}, {"symmetric", InputKind::symmetric},
      {"directed", InputKind::directed}, {"diversity", InputKind::diversity}, {"kdiss", InputKind::kdiss},
      {"splitsystem", InputKind::splitsystem}};
  const auto it = kinds.find(name);
  if (it == kinds.end()) throw ValidationError("unknown input kind '" + name + "'");
  return it->second;
}

std::string to_string(InputKind kind) {
  switch (kind) {
    case InputKind::metric: return "metric";
    case InputKind::distance: return "distance";
    case InputKind::symmetric: return "symmetric";
    case InputKind::directed: return "directed";
    case InputKind::diversity: return "diversity";
    case InputKind::kdiss: return "kdiss";
    case InputKind::splitsystem: return "splitsystem";
  }
  return "?";
}

MapValue parse_input(std::string_view text, InputKind kind) {
  const std::string body = trim(text);
  const bool is_json = !body.empty() && body.front() == '{';
  if (!is_json) {
    if (kind != InputKind::metric && kind != InputKind::distance && kind != InputKind::symmetric)
      parse_fail("line 1", "kind " + to_string(kind) + " needs JSON input");
    SymmetricMap d = parse_phylip(body);
    throw_violations(validate(d, symmetric_kind(kind)), kind);
    return d;
  }
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error& e) {
    parse_fail("byte " + std::to_string(e.byte), "invalid JSON");
  }
  if (j.contains("kind") && j["kind"] != to_string(kind))
    throw ValidationError("input declares kind " + j["kind"].dump() + " but --kind is " + to_string(kind));
  switch (kind) {
    case InputKind::metric:
    case InputKind::distance:
    case InputKind::symmetric: {
      SymmetricMap d = parse_symmetric_json(j);
      throw_violations(validate(d, symmetric_kind(kind)), kind);
      return d;
    }
    case InputKind::directed: {
      DirectedMap d = parse_directed_json(j);
      throw_violations(validate(d, MapKind::directed), kind);
      return d;
    }
    case InputKind::diversity: {
      Diversity d = parse_diversity_json(j);
      throw_violations(validate(d), kind);
      return d;
    }
    case InputKind::kdiss: return parse_kdiss_json(j);
    case InputKind::splitsystem: return parse_splitsystem_json(j);
  }
  throw ValidationError("unsupported kind");
}

MapValue read_input(const std::string& path, InputKind kind) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read input file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_input(buf.str(), kind);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json to_json(const Rational& q) { return to_string(q); }

json to_json(const GroundSet& g, const QVector& v) {
  json out = json::object();
  for (Eigen::Index i = 0; i < g.size(); ++i) out[g.label(i)] = to_string(v(i));
  return out;
}

namespace {

json halfspaces(const GroundSet& g, const std::vector<Halfspace>& hs) {
  json out = json::array();
  for (const auto& h : hs) out.push_back({{"normal", to_json(g, h.normal)}, {"rhs", to_json(h.rhs)}});
  return out;
}

std::vector<std::string> labels_of(const PointConfiguration& config, const std::vector<int>& ids) {
  std::vector<std::string> out;
  for (int i : ids) out.push_back(config.points[static_cast<std::size_t>(i)].label);
  return out;
}

/// Sorted vertex order of a complex: order[k] = old id of the k-th vertex.
std::vector<int> canonical_order(const std::vector<QVector>& vs) {
  std::vector<int> order(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return lex_less(vs[static_cast<std::size_t>(a)], vs[static_cast<std::size_t>(b)]);
  });
  return order;
}

std::vector<int> inverse_of(const std::vector<int>& order) {
  std::vector<int> inv(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) inv[static_cast<std::size_t>(order[k])] = static_cast<int>(k);
  return inv;
}

std::string ground_of_copy(const std::string& label) {
  return label.size() > 2 ? label.substr(0, label.size() - 2) : label;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string length_attrs(const Rational& len, bool approx) {
  std::string out = "len=" + quote(to_string(len));
  out += ", label=" + quote(approx ? to_string(len) + " ~ " + to_decimal(len) : to_string(len));
  return out;
}

}  // namespace

json to_json(const HPolyhedron& p) {
  return {{"ground", p.ground.labels()},
          {"inequalities", halfspaces(p.ground, p.inequalities)},
          {"equalities", halfspaces(p.ground, p.equalities)}};
}

json to_json(const TightSpan& ts) {
  const GroundSet& g = ts.envelope.ground;
  const auto& c = ts.complex;
  const auto order = canonical_order(c.vertices);
  const auto inv = inverse_of(order);
  json vertices = json::array();
  for (int id : order) vertices.push_back(to_json(g, c.vertices[static_cast<std::size_t>(id)]));
  json faces = json::object();
  std::map<int, std::vector<std::vector<int>>> by_dim;
  for (std::size_t f = 0; f < c.faces.size(); ++f) {
    std::vector<int> ids;
    for (int v : c.faces[f]) ids.push_back(inv[static_cast<std::size_t>(v)]);
    std::sort(ids.begin(), ids.end());
    by_dim[c.face_dims[f]].push_back(ids);
  }
  for (auto& [d, fs] : by_dim) {
    std::sort(fs.begin(), fs.end());
    faces[std::to_string(d)] = fs;
  }
  json edges = json::array();
  std::vector<std::tuple<int, int, Rational>> es;
  for (const auto& e : c.edges) {
    int a = inv[static_cast<std::size_t>(e.a)], b = inv[static_cast<std::size_t>(e.b)];
    es.emplace_back(std::min(a, b), std::max(a, b), max_norm(e.difference));
  }
  std::sort(es.begin(), es.end());
  for (const auto& [a, b, len] : es) edges.push_back({{"a", a}, {"b", b}, {"len", to_json(len)}});
  json lines = json::array();
  for (const auto& l : ts.lineality) lines.push_back(to_json(g, l));
  return {{"kind", "tight_span"},
          {"name", ts.name},
          {"ground", g.labels()},
          {"dimension", c.empty() ? -1 : c.dimension()},
          {"vertices", vertices},
          {"faces_by_dim", faces},
          {"edges", edges},
          {"lineality", lines},
          {"envelope", to_json(ts.envelope)}};
}

json to_json(const PointConfiguration& config, const RegularSubdivision& s) {
  json cells = json::array();
  for (std::size_t i = 0; i < s.cells.size(); ++i)
    cells.push_back({{"points", labels_of(config, s.cells[i])}, {"dim", s.cell_dims[i]}, {"interior", bool(s.interior[i])}});
  std::vector<std::size_t> interior;
  for (std::size_t i = 0; i < s.cells.size(); ++i)
    if (s.interior[i]) interior.push_back(i);
  return {{"kind", "regular_subdivision"}, {"configuration", to_string(config.kind)}, {"cells", cells}, {"interior", interior}};
}

std::string config_split_label(const PointConfiguration& config, const ConfigSplit& s, std::size_t index) {
  if (!s.tag) return "s" + std::to_string(index);
  const SplitTag& t = *s.tag;
  switch (config.kind) {
    case ConfigKind::A:
    case ConfigKind::A_bar: return subset_label(config.ground, t.a) + "|" + subset_label(config.ground, t.b);
    case ConfigKind::B:
    case ConfigKind::B_bar: {
      std::vector<std::string> x, y;
      for (Eigen::Index i = 0; i < config.dim(); ++i) (i < config.x_size ? x : y).push_back(config.ground.label(i));
      const GroundSet gy(y);
      const GroundSet gx(x);
      return "(" + subset_label(gx, t.a) + "," + subset_label(t.kind == SplitTag::Kind::directed ? gx : gy, t.b) + ")";
    }
    case ConfigKind::B_directed:
    case ConfigKind::B_bar_directed: {
      std::vector<std::string> x;
      for (Eigen::Index i = 0; i < config.x_size; ++i) x.push_back(ground_of_copy(config.ground.label(i)));
      const GroundSet gx(x);
      return "(" + subset_label(gx, t.a) + "," + subset_label(gx, t.b) + ")";
    }
    default: return "s" + std::to_string(index);
  }
}

json to_json(const PointConfiguration& config, const std::vector<ConfigSplit>& splits) {
  json out = json::array();
  for (std::size_t i = 0; i < splits.size(); ++i) {
    const auto& s = splits[i];
    out.push_back({{"plus", labels_of(config, s.plus)},
                   {"minus", labels_of(config, s.minus)},
                   {"normal", to_json(config.ground, s.normal)},
                   {"rhs", to_json(s.rhs)},
                   {"tag", s.tag ? json(config_split_label(config, s, i)) : json(nullptr)}});
  }
  std::vector<std::string> points;
  for (const auto& p : config.points) points.push_back(p.label);
  return {{"kind", to_string(config.kind)}, {"ground", config.ground.labels()}, {"points", points}, {"splits", out}};
}

json to_json(const PointConfiguration& config, const SplitDecomposition& d) {
  json out = to_json(config, d.splits);
  json alpha = json::object();
  for (std::size_t i = 0; i < d.splits.size(); ++i) alpha[config_split_label(config, d.splits[i], i)] = to_json(d.alpha[i]);
  out["alpha"] = alpha;
  out["affine"] = {{"linear", to_json(config.ground, d.affine_linear)}, {"constant", to_json(d.affine_constant)}};
  return out;
}

json to_json(const WeightedSplitSystem& s) {
  json splits = json::array(), alpha = json::object();
  for (std::size_t i = 0; i < s.splits.size(); ++i) {
    const std::string l = split_label(s.ground, s.kind, s.splits[i]);
    splits.push_back(l);
    alpha[l] = to_json(s.alpha[i]);
  }
  return {{"ground", s.ground.labels()},
          {"split_kind", s.kind == SplitKind::partial ? "partial" : "directed"},
          {"splits", splits},
          {"alpha", alpha}};
}

json to_json(const WeightedTree& t) {
  json edges = json::array();
  for (const auto& e : t.edges) edges.push_back({{"u", e.u}, {"v", e.v}, {"len", to_json(e.length)}});
  json sub = json::object();
  for (Eigen::Index i = 0; i < t.ground.size(); ++i) sub[t.ground.label(i)] = t.subtrees[static_cast<std::size_t>(i)];
  return {{"kind", "tree"}, {"vertices", t.num_vertices}, {"edges", edges}, {"subtrees", sub}};
}

json to_json(const OrientedTree& t) {
  json arcs = json::array();
  for (const auto& a : t.arcs) arcs.push_back({{"from", a.from}, {"to", a.to}, {"len", to_json(a.length)}});
  json sub = json::object();
  for (Eigen::Index i = 0; i < t.ground.size(); ++i) sub[t.ground.label(i)] = t.subtrees[static_cast<std::size_t>(i)];
  return {{"kind", "oriented_tree"}, {"vertices", t.num_vertices}, {"arcs", arcs}, {"subtrees", sub}};
}

std::string to_dot(const TightSpan& ts, bool approx) {
  const auto& c = ts.complex;
  if (!c.empty() && c.dimension() > 1)
    throw ValidationError("dot output needs a tight span of dimension at most 1, got " + std::to_string(c.dimension()));
  const GroundSet& g = ts.envelope.ground;
  const auto order = canonical_order(c.vertices);
  const auto inv = inverse_of(order);
  std::string out = "graph " + quote(ts.name) + " {\n";
  for (std::size_t k = 0; k < order.size(); ++k) {
    const QVector& v = c.vertices[static_cast<std::size_t>(order[k])];
    std::string label = "(";
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (i) label += ", ";
      label += g.label(i) + "=" + to_string(v(i));
      if (approx && boost::multiprecision::denominator(v(i)) != 1) label += " ~ " + to_decimal(v(i));
    }
    out += "  v" + std::to_string(k) + " [label=" + quote(label + ")") + "];\n";
  }
  std::vector<std::tuple<int, int, Rational>> es;
  for (const auto& e : c.edges) {
    const int a = inv[static_cast<std::size_t>(e.a)], b = inv[static_cast<std::size_t>(e.b)];
    es.emplace_back(std::min(a, b), std::max(a, b), max_norm(e.difference));
  }
  std::sort(es.begin(), es.end());
  for (const auto& [a, b, len] : es)
    out += "  v" + std::to_string(a) + " -- v" + std::to_string(b) + " [" + length_attrs(len, approx) + "];\n";
  return out + "}\n";
}

namespace {

std::vector<std::string> vertex_names(const GroundSet& g, int n, const std::vector<std::vector<int>>& subtrees) {
  std::vector<std::string> names(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < g.size(); ++i)
    for (int v : subtrees[static_cast<std::size_t>(i)]) {
      auto& s = names[static_cast<std::size_t>(v)];
      s += (s.empty() ? "" : ",") + g.label(i);
    }
  return names;
}

}  // namespace

std::string to_dot(const WeightedTree& t, bool approx) {
  const auto names = vertex_names(t.ground, t.num_vertices, t.subtrees);
  std::string out = "graph \"tree\" {\n";
  for (int v = 0; v < t.num_vertices; ++v)
    out += "  v" + std::to_string(v) + " [label=" + quote(names[static_cast<std::size_t>(v)]) + "];\n";
  for (const auto& e : t.edges)
    out += "  v" + std::to_string(e.u) + " -- v" + std::to_string(e.v) + " [" + length_attrs(e.length, approx) + "];\n";
  return out + "}\n";
}

std::string to_dot(const OrientedTree& t, bool approx) {
  const auto names = vertex_names(t.ground, t.num_vertices, t.subtrees);
  std::string out = "digraph \"realisation\" {\n";
  for (int v = 0; v < t.num_vertices; ++v)
    out += "  v" + std::to_string(v) + " [label=" + quote(names[static_cast<std::size_t>(v)]) + "];\n";
  for (const auto& a : t.arcs)
    out += "  v" + std::to_string(a.from) + " -> v" + std::to_string(a.to) + " [" + length_attrs(a.length, approx) + "];\n";
  return out + "}\n";
}

std::string to_newick(const WeightedTree& t) {
  check_tree(t);
  const auto n = static_cast<std::size_t>(t.num_vertices);
  std::vector<std::vector<std::pair<int, const Rational*>>> adj(n);
  for (const auto& e : t.edges) {
    adj[static_cast<std::size_t>(e.u)].emplace_back(e.v, &e.length);
    adj[static_cast<std::size_t>(e.v)].emplace_back(e.u, &e.length);
  }
  std::vector<std::vector<Eigen::Index>> at(n);
  for (Eigen::Index i = 0; i < t.ground.size(); ++i)
    for (int v : t.subtrees[static_cast<std::size_t>(i)]) at[static_cast<std::size_t>(v)].push_back(i);
  int root = t.ground.empty() ? 0 : t.subtrees[0][0];
  if (adj[static_cast<std::size_t>(root)].size() == 1 && n > 2) root = adj[static_cast<std::size_t>(root)][0].first;

  // first[v]: smallest ground index in the subtree below v.
  std::function<Eigen::Index(int, int)> first = [&](int v, int p) {
    Eigen::Index m = t.ground.size();
    for (auto i : at[static_cast<std::size_t>(v)]) m = std::min(m, i);
    for (auto [u, len] : adj[static_cast<std::size_t>(v)])
      if (u != p) m = std::min(m, first(u, v));
    return m;
  };
  std::function<std::string(int, int)> write = [&](int v, int p) {
    std::vector<std::pair<Eigen::Index, std::string>> kids;
    const auto& here = at[static_cast<std::size_t>(v)];
    const bool leaf = std::none_of(adj[static_cast<std::size_t>(v)].begin(), adj[static_cast<std::size_t>(v)].end(),
                                   [&](const auto& x) { return x.first != p; });
    if (leaf && here.size() == 1) return t.ground.label(here[0]);
    std::string name;
    if (here.size() == 1) name = t.ground.label(here[0]);
    else
      for (auto i : here) kids.emplace_back(i, t.ground.label(i) + ":0");
    for (auto [u, len] : adj[static_cast<std::size_t>(v)])
      if (u != p) kids.emplace_back(first(u, v), write(u, v) + ":" + to_string(*len));
    std::sort(kids.begin(), kids.end());
    std::string out = "(";
    for (std::size_t k = 0; k < kids.size(); ++k) out += (k ? "," : "") + kids[k].second;
    return out + ")" + name;
  };
  return write(root, -1) + ";\n";
}

}  // namespace tsk
