#pragma once

// Seed documents (JSON) and machine-readable reports.
//
// A seed document looks like
//
//   {
//     "variables": [
//       {"name": "x1", "frozen": false, "degree": 1},
//       {"name": "x2", "frozen": true, "degree": 1}
//     ],
//     "arrows": [{"from": "x2", "to": "x1", "mult": 1}],
//     "metadata": {}
//   }
//
// with "matrix" (rows = variables, columns = mutable variables, both in
// document order) accepted in place of "arrows". A variable whose value is
// not its own initial variable carries "value" (a Laurent polynomial in the
// document's names) and "initial_degree".

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "segre/error.hpp"
#include "segre/explorer.hpp"
#include "segre/glue.hpp"
#include "segre/seed.hpp"
#include "segre/theorem.hpp"

namespace segre {

using Json = nlohmann::ordered_json;

/// Well-formed JSON that does not follow the document schema.
class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& what) : Error("seed document: " + what) {}
};

struct SeedDocument {
  Seed seed;
  Json metadata = Json::object();
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text,
                                                       std::size_t offset) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

template <typename T>
T field(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(where + " is missing \"" + key + "\"");
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw SchemaError(where + " has a malformed \"" + key + "\"");
  }
}

}  // namespace detail

inline SeedDocument seed_from_json(const Json& doc) {
  if (!doc.is_object()) throw SchemaError("top level must be an object");
  auto vars_it = doc.find("variables");
  if (vars_it == doc.end() || !vars_it->is_array())
    throw SchemaError("\"variables\" must be a list");
  const bool has_matrix = doc.contains("matrix");
  const bool has_arrows = doc.contains("arrows");
  if (has_matrix == has_arrows)
    throw SchemaError("exactly one of \"matrix\" and \"arrows\" is required");

  std::vector<std::string> names;
  std::vector<bool> frozen;
  GradingVector grading;
  for (std::size_t i = 0; i < vars_it->size(); ++i) {
    const auto& v = (*vars_it)[i];
    const std::string where = "variable #" + std::to_string(i);
    if (!v.is_object()) throw SchemaError(where + " must be an object");
    auto name = detail::field<std::string>(v, "name", where);
    if (!is_identifier(name)) throw SchemaError("invalid variable name '" + name + "'");
    names.push_back(std::move(name));
    frozen.push_back(detail::field<bool>(v, "frozen", where));
    grading.push_back(detail::field<Exponent>(v, "degree", where));
  }
  UniversePtr u;
  try {
    u = Universe::make(names);
  } catch (const Error& e) {
    throw SchemaError(e.what());
  }
  const std::uint32_t n = static_cast<std::uint32_t>(names.size());

  ExchangeMatrix b;
  if (has_arrows) {
    const auto& arrows = doc.at("arrows");
    if (!arrows.is_array()) throw SchemaError("\"arrows\" must be a list");
    std::vector<QuiverVertex> vertices;
    for (std::uint32_t i = 0; i < n; ++i) vertices.push_back({VariableId{i}, frozen[i]});
    std::vector<Arrow> list;
    for (std::size_t i = 0; i < arrows.size(); ++i) {
      const auto& a = arrows[i];
      const std::string where = "arrow #" + std::to_string(i);
      if (!a.is_object()) throw SchemaError(where + " must be an object");
      auto from = u->find(detail::field<std::string>(a, "from", where));
      auto to = u->find(detail::field<std::string>(a, "to", where));
      if (!from || !to) throw SchemaError(where + " names an unknown variable");
      Exponent mult = a.contains("mult") ? detail::field<Exponent>(a, "mult", where) : 1;
      list.push_back({*from, *to, mult});
    }
    try {
      b = quiver_to_matrix(vertices, list);
    } catch (const SchemaError&) {
      throw;
    } catch (const Error& e) {
      throw SchemaError(e.what());
    }
  } else {
    const auto& m = doc.at("matrix");
    std::vector<VariableId> rows;
    std::vector<VariableId> cols;
    for (std::uint32_t i = 0; i < n; ++i) {
      rows.push_back(VariableId{i});
      if (!frozen[i]) cols.push_back(VariableId{i});
    }
    if (!m.is_array() || m.size() != n)
      throw SchemaError("\"matrix\" must have one row per variable");
    std::vector<Exponent> entries;
    for (std::size_t r = 0; r < n; ++r) {
      if (!m[r].is_array() || m[r].size() != cols.size())
        throw SchemaError("matrix row " + std::to_string(r) +
                          " must have one entry per mutable variable");
      for (const auto& e : m[r]) {
        if (!e.is_number_integer()) throw SchemaError("matrix entries must be integers");
        entries.push_back(e.get<Exponent>());
      }
    }
    b = ExchangeMatrix(rows, cols, std::move(entries));
  }

  GradingVector initial = grading;
  std::vector<LaurentPoly> values;
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto& v = (*vars_it)[i];
    const std::string where = "variable '" + names[i] + "'";
    if (v.contains("value")) {
      auto text = detail::field<std::string>(v, "value", where);
      try {
        values.push_back(parse_laurent(u, text));
      } catch (const ParseError& e) {
        throw SchemaError(where + " value: " + e.what());
      }
      initial[i] = detail::field<Exponent>(v, "initial_degree", where);
    } else {
      if (v.contains("initial_degree") &&
          detail::field<Exponent>(v, "initial_degree", where) != grading[i])
        throw SchemaError(where + " has initial_degree but no value");
      values.push_back(LaurentPoly::variable(u, VariableId{i}));
    }
  }

  Seed seed(u, std::move(initial), std::move(frozen), std::move(values), std::move(b),
            std::move(grading));
  auto violations = validate_seed(seed);
  if (!violations.empty()) {
    std::vector<std::string> messages;
    for (const auto& v : violations) messages.push_back(v.message);
    throw InvalidSeed(std::move(messages));
  }
  Json metadata = doc.contains("metadata") ? doc.at("metadata") : Json::object();
  return {std::move(seed), std::move(metadata)};
}

inline SeedDocument parse_document(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("syntax error", line, col);
  }
  return seed_from_json(doc);
}

inline Seed parse_seed(std::string_view text) { return parse_document(text).seed; }

inline Json seed_to_json(const Seed& s, const Json& metadata = Json::object()) {
  Json vars = Json::array();
  for (std::uint32_t i = 0; i < s.size(); ++i) {
    VariableId v{i};
    Json entry;
    entry["name"] = s.name(v);
    entry["frozen"] = s.is_frozen(v);
    entry["degree"] = s.degree(v);
    if (s.value(v) != LaurentPoly::variable(s.universe(), v)) {
      entry["value"] = s.value(v).to_string();
      entry["initial_degree"] = s.initial_degrees()[i];
    }
    vars.push_back(std::move(entry));
  }
  Json arrows = Json::array();
  for (const auto& a : matrix_to_quiver(s.matrix()))
    arrows.push_back({{"from", s.name(a.from)}, {"to", s.name(a.to)}, {"mult", a.multiplicity}});
  Json doc;
  doc["variables"] = std::move(vars);
  doc["arrows"] = std::move(arrows);
  doc["metadata"] = metadata;
  return doc;
}

inline std::string render_document(const SeedDocument& d) {
  return seed_to_json(d.seed, d.metadata).dump(2) + "\n";
}

inline std::string render_seed(const Seed& s) { return render_document({s, Json::object()}); }

inline Json glued_metadata(const GluedSeed& g) {
  Json provenance = Json::array();
  for (std::uint32_t i = 0; i < g.seed.size(); ++i) {
    const auto& p = g.provenance[i];
    Json entry;
    entry["name"] = g.seed.name(VariableId{i});
    entry["side"] = std::string(to_string(p.side));
    if (p.side == Side::left) entry["origin"] = g.left_universe->name(p.origin);
    if (p.side == Side::right) entry["origin"] = g.right_universe->name(p.origin);
    if (p.side == Side::proxy)
      entry["origin"] = Json::array({g.left_universe->name(g.left_glued),
                                     g.right_universe->name(g.right_glued)});
    provenance.push_back(std::move(entry));
  }
  Json meta;
  meta["glued"] = {{"z", g.seed.name(g.z)},
                   {"left", g.left_universe->name(g.left_glued)},
                   {"right", g.right_universe->name(g.right_glued)},
                   {"degree", g.glued_degree()}};
  meta["provenance"] = std::move(provenance);
  return meta;
}

inline std::string render_glued(const GluedSeed& g) {
  return render_document({g.seed, glued_metadata(g)});
}

// Reports. Every report carries the keys status, kappa, K, witnesses, bounds.

inline Json to_json(const TheoremReport& r) {
  Json witnesses = Json::array();
  for (const auto& w : r.witnesses)
    witnesses.push_back({{"sequence", w.sequence},
                         {"slot", w.slot},
                         {"expected", w.expected},
                         {"actual", w.actual}});
  Json out;
  out["check"] = "theorem";
  out["status"] = r.success ? "success" : "failure";
  out["kappa"] = nullptr;
  out["K"] = nullptr;
  out["witnesses"] = std::move(witnesses);
  out["bounds"] = {{"depth", r.depth}};
  out["map"] = std::string(to_string(r.map));
  out["glued_degree"] = r.glued_degree;
  out["sequences"] = r.sequences;
  out["checks"] = r.checks;
  return out;
}

inline Json to_json(const PairBounds& b) {
  auto glued = b.glued();
  return {{"max_nodes", b.max_nodes},
          {"max_depth", b.max_depth},
          {"glued_max_nodes", glued.max_nodes},
          {"glued_max_depth", glued.max_depth}};
}

inline Json to_json(const GraphCounts& c) {
  Json out;
  out["status"] = std::string(to_string(c.status));
  out["nodes"] = c.nodes;
  out["kappa"] = c.kappa ? Json(*c.kappa) : Json(nullptr);
  out["K"] = c.clusters ? Json(*c.clusters) : Json(nullptr);
  return out;
}

inline Json to_json(const CorollaryReport& r) {
  auto count = [](const std::optional<std::size_t>& v) {
    return v ? Json(*v) : Json(nullptr);
  };
  Json out;
  out["check"] = "corollary";
  out["status"] = std::string(to_string(r.status));
  out["kappa"] = {{"left", count(r.left.kappa)},
                  {"right", count(r.right.kappa)},
                  {"glued", count(r.glued.kappa)}};
  out["K"] = {{"left", count(r.left.clusters)},
              {"right", count(r.right.clusters)},
              {"glued", count(r.glued.clusters)}};
  Json witnesses = Json::array();
  if (r.status == CheckStatus::failure) {
    if (!r.kappa_identity) witnesses.push_back({{"message", "kappa identity fails"}});
    if (!r.cluster_identity) witnesses.push_back({{"message", "K identity fails"}});
  }
  out["witnesses"] = std::move(witnesses);
  out["bounds"] = to_json(r.bounds);
  out["graphs"] = {{"left", to_json(r.left)},
                   {"right", to_json(r.right)},
                   {"glued", to_json(r.glued)}};
  out["finite_type_consistent"] = r.finite_type_consistent;
  return out;
}

inline Json to_json(const CorrespondenceReport& r) {
  Json out;
  out["check"] = "correspondence";
  out["status"] = std::string(to_string(r.status));
  out["kappa"] = nullptr;
  out["K"] = {{"left", r.left_clusters}, {"right", r.right_clusters}, {"glued", r.glued_clusters}};
  Json witnesses = Json::array();
  for (const auto& p : r.problems) witnesses.push_back({{"message", p}});
  out["witnesses"] = std::move(witnesses);
  out["bounds"] = to_json(r.bounds);
  out["graphs"] = {{"left", std::string(to_string(r.left))},
                   {"right", std::string(to_string(r.right))},
                   {"glued", std::string(to_string(r.glued))}};
  out["variables_identified"] = r.variables_identified;
  out["clusters_bijective"] = r.clusters_bijective;
  return out;
}

inline Json to_json(const ExchangeGraph& g, bool include_graph = false) {
  Json out;
  out["check"] = "enumerate";
  out["status"] = std::string(to_string(g.status));
  out["kappa"] = g.exhausted() ? Json(kappa(g)) : Json(nullptr);
  out["K"] = g.exhausted() ? Json(cluster_count(g)) : Json(nullptr);
  out["witnesses"] = Json::array();
  out["bounds"] = {{"max_nodes", g.bounds.max_nodes}, {"max_depth", g.bounds.max_depth}};
  out["nodes"] = g.nodes.size();
  if (include_graph) {
    Json nodes = Json::array();
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      Json cluster = Json::array();
      for (const auto& v : g.nodes[i].key.values) cluster.push_back(v.to_string());
      nodes.push_back({{"id", i}, {"depth", g.nodes[i].depth}, {"cluster", std::move(cluster)}});
    }
    Json edges = Json::array();
    for (const auto& e : g.edges)
      edges.push_back({{"from", e.from},
                       {"vertex", g.nodes[e.from].seed.name(e.slot)},
                       {"to", e.to}});
    out["graph"] = {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
  }
  return out;
}

}  // namespace segre
