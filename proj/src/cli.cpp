#include "tsk/cli.hpp"

#include <set>

namespace tsk {

using nlohmann::json;

namespace {

int cap_of(const JobSpec& job) { return job.cap.value_or(kDefaultCap); }

void require_format(const JobSpec& job, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (job.format == f) return;
  throw ValidationError("output format " + job.format + " is not available for " + job.command + " on kind " +
                        to_string(job.kind));
}

struct Instance {
  PointConfiguration config;
  WeightFunction weight;
};

Instance instance_of(const MapValue& value, bool bar) {
  return std::visit(
      [&](const auto& m) -> Instance {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, WeightedSplitSystem>) {
          throw ValidationError("split systems have no point configuration; use check-tree or verify");
        } else if constexpr (std::is_same_v<T, SymmetricMap> || std::is_same_v<T, KDissimilarity>) {
          auto c = configuration_for(m);
          auto w = make_weight(c, m);
          return {std::move(c), std::move(w)};
        } else {
          auto c = configuration_for(m, bar);
          auto w = make_weight(c, m);
          return {std::move(c), std::move(w)};
        }
      },
      value);
}

TightSpan span_of(const MapValue& value, bool bar, int cap) {
  return std::visit(
      [&](const auto& m) -> TightSpan {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, WeightedSplitSystem>) {
          throw ValidationError("split systems have no tight span input; use check-tree or verify");
        } else if constexpr (std::is_same_v<T, SymmetricMap> || std::is_same_v<T, KDissimilarity>) {
          return tight_span_of(m, cap);
        } else {
          return tight_span_of(m, bar, cap);
        }
      },
      value);
}

std::string not_a_tree(const JobSpec& job) {
  if (job.format == "json") return dump({{"tree", false}, {"result", "not a tree"}});
  return "not a tree\n";
}

/// Partial splits of X from A(X) tags.
WeightedSplitSystem partial_system(const PointConfiguration& config, const SplitDecomposition& dec) {
  WeightedSplitSystem s{config.ground, SplitKind::partial, {}, {}};
  for (std::size_t k = 0; k < dec.splits.size(); ++k) {
    const auto& tag = dec.splits[k].tag;
    if (!tag || tag->kind != SplitTag::Kind::partial_split) throw InvariantFailure("decomposition split without partial-split tag");
    s.splits.push_back({tag->a, tag->b});
    s.alpha.push_back(dec.alpha[k]);
  }
  return s;
}

/// Directed partial splits whose B̄(X) splits are the recovered ones; absent if one is unmatched.
std::optional<WeightedSplitSystem> directed_system(const PointConfiguration& config, const DirectedMap& d,
                                                   const SplitDecomposition& dec) {
  if (!d.is_copy()) return std::nullopt;
  const Mask full = (Mask{1} << d.domain.size()) - 1;
  WeightedSplitSystem s{d.domain, SplitKind::directed, {}, {}};
  for (std::size_t k = 0; k < dec.splits.size(); ++k) {
    bool found = false;
    for (Mask a = 1; a <= full && !found; ++a)
      for (Mask b = 1; b <= full && !found; ++b) {
        if (a & b) continue;
        if (directed_split(config, a, b).same_partition(dec.splits[k])) {
          s.splits.push_back({a, b});
          s.alpha.push_back(dec.alpha[k]);
          found = true;
        }
      }
    if (!found) return std::nullopt;
  }
  return s;
}

bool all_full(const WeightedSplitSystem& s) {
  const Mask full = (Mask{1} << s.ground.size()) - 1;
  return std::all_of(s.splits.begin(), s.splits.end(), [&](const Split& sp) { return (sp.a | sp.b) == full; });
}

bool decomposition_identity(const Instance& in, const SplitDecomposition& dec) {
  QVector sum = QVector::Constant(static_cast<Eigen::Index>(in.config.size()), dec.affine_constant);
  for (std::size_t p = 0; p < in.config.size(); ++p) sum(static_cast<Eigen::Index>(p)) += dec.affine_linear.dot(in.config.point(p));
  for (std::size_t k = 0; k < dec.splits.size(); ++k) sum += dec.alpha[k] * split_weight(in.config, dec.splits[k]).values;
  return sum == in.weight.values;
}

std::string check_tree_symmetric(const JobSpec& job, const SymmetricMap& d) {
  const TightSpan ts = tight_span_of(d, cap_of(job));
  if (!is_tree(ts)) return not_a_tree(job);
  const Instance in{configuration_for(d), {}};
  const auto dec = split_decomposition(in.config, make_weight(in.config, d), cap_of(job));
  if (!dec) throw InvariantFailure("tree-like tight span without a split decomposition");
  const WeightedSplitSystem s = partial_system(in.config, *dec);
  std::optional<WeightedTree> tree;
  if (all_full(s)) {
    tree = tree_from_splits(s);
    if (job.kind == InputKind::metric && !(distance_from_tree(*tree) == d))
      throw InvariantFailure("tree from splits does not reproduce the metric");
  }
  if (job.format == "newick") {
    if (!tree) throw ValidationError("newick needs a decomposition into full splits; use --out json or dot");
    return to_newick(*tree);
  }
  if (job.format == "dot") return tree ? to_dot(*tree, job.approx) : to_dot(ts, job.approx);
  json out = {{"tree", true}, {"split_system", to_json(s)}, {"tight_span", to_json(ts)}};
  out["alpha"] = out["split_system"]["alpha"];
  out["splits"] = out["split_system"]["splits"];
  if (tree) out["newick"] = to_newick(*tree);
  return dump(out);
}

std::string check_tree_directed(const JobSpec& job, const DirectedMap& d) {
  require_format(job, {"json", "dot"});
  const TightSpan ts = tight_span_of(d, true, cap_of(job));
  if (!is_tree(ts)) return not_a_tree(job);
  const auto config = configuration_for(d, true);
  const auto dec = split_decomposition(config, make_weight(config, d), cap_of(job));
  if (!dec) throw InvariantFailure("tree-like tight span without a split decomposition");
  std::optional<OrientedTree> real;
  if (const auto s = directed_system(config, d, *dec); s && compatible(*s)) real = realisation_from_splits(*s);
  if (job.format == "dot") return real ? to_dot(*real, job.approx) : to_dot(ts, job.approx);
  json out = to_json(config, *dec);
  out["tree"] = true;
  out["tight_span"] = to_json(ts);
  if (real) out["realisation"] = to_json(*real);
  return dump(out);
}

std::string check_tree_diversity(const JobSpec& job, const Diversity& delta) {
  const auto rec = reconstruct_diversity_tree(delta, job.cap.value_or(31));
  if (!rec) return not_a_tree(job);
  if (job.format == "newick") return to_newick(rec->tree);
  if (job.format == "dot") return to_dot(rec->tree, job.approx);
  json out = {{"tree", true}, {"split_system", to_json(rec->splits)}, {"newick", to_newick(rec->tree)}};
  out["alpha"] = out["split_system"]["alpha"];
  out["splits"] = out["split_system"]["splits"];
  return dump(out);
}

std::string check_tree_splits(const JobSpec& job, const WeightedSplitSystem& s) {
  if (!compatible(s)) return not_a_tree(job);
  if (s.kind == SplitKind::directed) {
    require_format(job, {"json", "dot"});
    const OrientedTree t = realisation_from_splits(s);
    if (job.format == "dot") return to_dot(t, job.approx);
    json out = {{"tree", true}, {"split_system", to_json(s)}, {"realisation", to_json(t)}};
    out["alpha"] = out["split_system"]["alpha"];
    out["splits"] = out["split_system"]["splits"];
    return dump(out);
  }
  if (!all_full(s)) throw ValidationError("check-tree on undirected split systems needs full splits");
  const WeightedTree t = tree_from_splits(s);
  if (job.format == "newick") return to_newick(t);
  if (job.format == "dot") return to_dot(t, job.approx);
  json out = {{"tree", true}, {"split_system", to_json(s)}, {"newick", to_newick(t)}};
  out["alpha"] = out["split_system"]["alpha"];
  out["splits"] = out["split_system"]["splits"];
  return dump(out);
}

std::string check_tree(const JobSpec& job, const MapValue& value) {
  return std::visit(
      [&](const auto& m) -> std::string {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, SymmetricMap>) return check_tree_symmetric(job, m);
        else if constexpr (std::is_same_v<T, DirectedMap>) return check_tree_directed(job, m);
        else if constexpr (std::is_same_v<T, Diversity>) return check_tree_diversity(job, m);
        else if constexpr (std::is_same_v<T, WeightedSplitSystem>) return check_tree_splits(job, m);
        else {
          require_format(job, {"json", "dot"});
          const TightSpan ts = tight_span_of(m, cap_of(job));
          if (!is_tree(ts)) return not_a_tree(job);
          if (job.format == "dot") return to_dot(ts, job.approx);
          return dump({{"tree", true}, {"tight_span", to_json(ts)}});
        }
      },
      value);
}

struct Check {
  std::string name;
  bool ok;
  std::string detail;
};

std::vector<Check> theorem_checks(const JobSpec& job, const MapValue& value) {
  std::vector<Check> out;
  const int cap = cap_of(job);
  auto tree_iff_decomposition = [&](const Instance& in, const TightSpan& ts) {
    const bool tree = is_tree(ts).has_value();
    const auto dec = split_decomposition(in.config, in.weight, cap);
    out.push_back({"tree iff split-decomposable", tree == dec.has_value(),
                   std::string(tree ? "tree" : "not a tree") + ", " + (dec ? "decomposable" : "not decomposable")});
    if (dec) out.push_back({"decomposition identity", decomposition_identity(in, *dec), "w = sum alpha w_T + affine"});
  };
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, SymmetricMap>) {
          const TightSpan ts = tight_span_of(m, cap);
          if (job.kind == InputKind::metric) {
            const bool tree = is_tree(ts).has_value();
            const bool fp = validate(m, MapKind::four_point).empty();
            out.push_back({"tree iff four-point condition", tree == fp,
                           std::string(tree ? "tree" : "not a tree") + ", four-point " + (fp ? "holds" : "fails")});
          }
          tree_iff_decomposition(instance_of(value, false), ts);
        } else if constexpr (std::is_same_v<T, DirectedMap>) {
          tree_iff_decomposition(instance_of(value, job.bar), tight_span_of(m, job.bar, cap));
        } else if constexpr (std::is_same_v<T, Diversity>) {
          const SymmetricMap dd = diversity_to_sym(m);
          out.push_back({"delta(D_delta) = delta", sym_to_diversity(dd, m.ground) == m, ""});
          const SymmetricMap dist = diversity_distance(m);
          out.push_back({"d_delta = positive part of normalized D_delta", positive_part(normalize_symmetric(dd).first) == dist, ""});
          bool zero = true;
          for (Mask a = 1; a <= m.full(); ++a)
            for (Mask b = 1; b <= m.full(); ++b)
              if ((a & b) && dist(static_cast<Eigen::Index>(a - 1), static_cast<Eigen::Index>(b - 1)) != 0) zero = false;
          out.push_back({"d_delta vanishes on meeting sets", zero, ""});
          const auto rec = reconstruct_diversity_tree(m, job.cap.value_or(31));
          out.push_back({"reconstructed tree reproduces delta", !rec || phylogenetic_diversity(rec->tree) == m,
                         rec ? "tree" : "no tree"});
        } else if constexpr (std::is_same_v<T, KDissimilarity>) {
          tree_iff_decomposition(instance_of(value, false), tight_span_of(m, cap));
        } else {
          if (m.kind == SplitKind::partial) {
            if (compatible(m) && all_full(m)) {
              const WeightedTree t = tree_from_splits(m);
              out.push_back({"tree distance = split distance", distance_from_tree(t) == distance_from_splits(m), ""});
              out.push_back({"phylogenetic diversity = split diversity", phylogenetic_diversity(t) == diversity_from_splits(m), ""});
            }
          } else {
            const DirectedMap d = directed_distance_from_splits(m);
            const TightSpan theta = tight_span_of(d, true, cap);
            const bool comp = compatible(m);
            out.push_back({"compatible implies Theta_D is a tree", !comp || is_tree(theta).has_value(),
                           comp ? "compatible" : "incompatible"});
            if (comp) {
              const OrientedTree t = realisation_from_splits(m);
              out.push_back({"realisation distance = split distance", oriented_distance(t) == d, ""});
              if (strongly_compatible(m.splits))
                out.push_back({"strongly compatible implies a path", t.is_directed_path() && is_tree(tight_span_of(d, false, cap)).has_value(), ""});
            }
          }
        }
      },
      value);
  return out;
}

std::string verify(const JobSpec& job, const MapValue& value, bool& ok) {
  require_format(job, {"json"});
  const bool splits = std::holds_alternative<WeightedSplitSystem>(value);
  const std::string check = job.check.empty() ? (splits ? "tight-span-equal" : "duality") : job.check;
  json out = {{"check", check}};
  if (check == "duality") {
    const Instance in = instance_of(value, job.bar);
    const DualityReport r = verify_duality(in.config, in.weight, cap_of(job));
    ok = r.ok;
    out["ok"] = r.ok;
    out["message"] = r.message;
    out["maximal_span_faces"] = r.maximal_span_faces;
    out["minimal_interior_cells"] = r.minimal_interior_cells;
    out["span_vertices"] = r.span_vertices;
    out["maximal_cells"] = r.maximal_cells;
    out["subdivision"] = to_json(in.config, regular_subdivision(in.config, in.weight, cap_of(job)));
  } else if (check == "tight-span-equal") {
    if (!splits) throw ValidationError("tight-span-equal needs --kind splitsystem");
    const TightSpanEqualReport r = verify_tightspan_equal(std::get<WeightedSplitSystem>(value));
    ok = r.equal;
    out["ok"] = r.equal;
    out["method"] = r.method;
    out["message"] = r.message;
    out["checked"] = r.checked;
  } else if (check == "theorem") {
    ok = true;
    json list = json::array();
    for (const auto& c : theorem_checks(job, value)) {
      ok = ok && c.ok;
      list.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    }
    out["ok"] = ok;
    out["checks"] = list;
  } else {
    throw ValidationError("unknown check '" + check + "'; expected duality, tight-span-equal or theorem");
  }
  return dump(out);
}

std::string execute(const JobSpec& job, bool& ok) {
  static const std::set<std::string> commands{"compute", "check-tree", "splits", "decompose", "verify"};
  static const std::set<std::string> formats{"json", "dot", "newick"};
  if (!commands.count(job.command)) throw ValidationError("unknown command '" + job.command + "'");
  if (!formats.count(job.format)) throw ValidationError("unknown output format '" + job.format + "'");
  if (job.cap && *job.cap < 1) throw ValidationError("--cap must be positive");
  const MapValue value = read_input(job.input_path, job.kind);
  ok = true;
  if (job.command == "compute") {
    require_format(job, {"json", "dot"});
    const TightSpan ts = span_of(value, job.bar, cap_of(job));
    return job.format == "json" ? dump(to_json(ts)) : to_dot(ts, job.approx);
  }
  if (job.command == "check-tree") return check_tree(job, value);
  if (job.command == "splits") {
    require_format(job, {"json"});
    const Instance in = instance_of(value, job.bar);
    const auto splits = enumerate_splits(in.config);
    json out = to_json(in.config, splits);
    json pairs = json::array();
    for (std::size_t i = 0; i < splits.size(); ++i)
      for (std::size_t k = i + 1; k < splits.size(); ++k)
        if (splits_compatible(in.config, splits[i], splits[k], job.method)) pairs.push_back({i, k});
    out["compatible"] = pairs;
    out["method"] = job.method == CompatibilityMethod::geometric ? "geometric" : "combinatorial";
    return dump(out);
  }
  if (job.command == "decompose") {
    require_format(job, {"json"});
    const Instance in = instance_of(value, job.bar);
    const auto dec = split_decomposition(in.config, in.weight, cap_of(job));
    if (!dec) return dump({{"decomposable", false}, {"kind", to_string(in.config.kind)}});
    json out = to_json(in.config, *dec);
    out["decomposable"] = true;
    return dump(out);
  }
  return verify(job, value, ok);
}

}  // namespace

int report_error(std::exception_ptr error, std::ostream& err) {
  try {
    std::rethrow_exception(error);
  } catch (const EnumerationCapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return exit_cap;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return exit_validation;
  } catch (const InvariantFailure& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_invariant;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_validation;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_validation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_invariant;
  } catch (...) {
    err << "internal error: unknown exception\n";
    return exit_invariant;
  }
}

int run(const JobSpec& job, std::ostream& out, std::ostream& err) {
  try {
    bool ok = true;
    const std::string artifact = execute(job, ok);
    out << artifact;
    if (!ok) {
      err << "error: verification failed\n";
      return exit_invariant;
    }
    return exit_ok;
  } catch (...) {
    return report_error(std::current_exception(), err);
  }
}

}  // namespace tsk
