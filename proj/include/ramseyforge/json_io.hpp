#pragma once

// JSON serialization for structures and class specs, plus DOT export of
// Gaifman graphs.

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "ramseyforge/completion.hpp"
#include "ramseyforge/relstruct.hpp"

namespace ramseyforge {

using json = nlohmann::json;

// --- structures ----------------------------------------------------------------

inline json language_to_json(const Language& lang) {
  json out = json::array();
  for (int s = 0; s < lang.size(); ++s)
    out.push_back({{"name", lang.name(s)}, {"arity", lang.arity(s)}});
  return out;
}

inline Language language_from_json(const json& j) {
  if (!j.is_array()) throw InputError("language: expected an array of symbols");
  std::vector<Symbol> syms;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("name") || !e.contains("arity"))
      throw InputError("language symbol: need {\"name\", \"arity\"}");
    syms.push_back({e.at("name").get<std::string>(), e.at("arity").get<int>()});
  }
  return Language(std::move(syms));
}

inline json structure_to_json(const Structure& a) {
  json rels = json::object();
  for (int s = 0; s < a.lang().size(); ++s) {
    json tuples = json::array();
    for (const Tuple& t : a.tuples(s)) {
      json names = json::array();
      for (int v : t) names.push_back(a.vertex_name(v));
      tuples.push_back(std::move(names));
    }
    rels[a.lang().name(s)] = std::move(tuples);
  }
  json verts = json::array();
  for (int v = 0; v < a.size(); ++v) verts.push_back(a.vertex_name(v));
  return {{"language", language_to_json(a.lang())},
          {"vertices", std::move(verts)},
          {"relations", std::move(rels)}};
}

inline Structure structure_from_json(const json& j) {
  if (!j.is_object() || !j.contains("language") || !j.contains("vertices"))
    throw InputError("structure: need {\"language\", \"vertices\", \"relations\"}");
  Language lang = language_from_json(j.at("language"));
  std::vector<std::string> names;
  for (const auto& v : j.at("vertices")) names.push_back(v.get<std::string>());
  Structure a(lang, std::move(names));
  if (j.contains("relations")) {
    const json& rels = j.at("relations");
    if (!rels.is_object()) throw InputError("structure: relations must be an object");
    for (auto it = rels.begin(); it != rels.end(); ++it) {
      for (const auto& t : it.value()) {
        std::vector<std::string> tup;
        for (const auto& v : t) tup.push_back(v.get<std::string>());
        a.add_tuple(it.key(), tup);
      }
    }
  }
  return a;
}

// --- class specs ---------------------------------------------------------------

inline json rule_to_json(const CycleRule& rule) {
  json out;
  if (const auto* mr = std::get_if<MetricRule>(&rule)) {
    out["kind"] = "metric";
    out["S"] = mr->distances;
  } else if (const auto* ur = std::get_if<UltrametricRule>(&rule)) {
    out["kind"] = "ultrametric";
    out["elements"] = ur->elements;
    out["join"] = ur->join;
    out["meet"] = ur->meet;
  } else if (const auto* ef = std::get_if<ExplicitForbidden>(&rule)) {
    out["kind"] = "forbidden_cycles";
    json cycles = json::array();
    for (const auto& c : ef->cycles) cycles.push_back(structure_to_json(c));
    out["cycles"] = std::move(cycles);
  } else {
    const auto& fa = std::get<FreeAmalgTriangles>(rule);
    out["kind"] = "forbidden_triangles";
    json tris = json::array();
    for (const auto& t : fa.triangles) tris.push_back(structure_to_json(t));
    out["triangles"] = std::move(tris);
  }
  return out;
}

inline CycleRule rule_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw InputError("rule: need an object with \"kind\"");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "metric") {
    MetricRule r;
    r.distances = j.at("S").get<std::vector<int>>();
    return r;
  }
  if (kind == "ultrametric") {
    UltrametricRule r;
    r.elements = j.at("elements").get<std::vector<std::string>>();
    r.join = j.at("join").get<std::vector<std::vector<int>>>();
    r.meet = j.at("meet").get<std::vector<std::vector<int>>>();
    return r;
  }
  if (kind == "forbidden_cycles") {
    ExplicitForbidden r;
    if (j.contains("cycles"))
      for (const auto& c : j.at("cycles")) r.cycles.push_back(structure_from_json(c));
    return r;
  }
  if (kind == "forbidden_triangles") {
    FreeAmalgTriangles r;
    if (j.contains("triangles"))
      for (const auto& t : j.at("triangles"))
        r.triangles.push_back(structure_from_json(t));
    return r;
  }
  throw InputError("rule: unknown kind '" + kind + "'");
}

inline json spec_to_json(const ClassSpec& spec) {
  json vts = json::array();
  for (const auto& vt : spec.vertex_types()) vts.push_back(structure_to_json(vt));
  json letters = json::array();
  for (const auto& l : spec.letters()) letters.push_back(structure_to_json(l));
  return {{"language", language_to_json(spec.lang())},
          {"vertex_types", std::move(vts)},
          {"letters", std::move(letters)},
          {"rule", rule_to_json(spec.rule())}};
}

// Accepts either the full form {"language", "vertex_types", "letters", "rule"}
// or a builtin shortcut {"builtin": "rado" | "triangle_free" | "metric" |
// "ultrametric_chain", ...} ("metric" takes "S", "ultrametric_chain" takes "k").
inline ClassSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw InputError("spec: expected an object");
  if (j.contains("builtin")) {
    std::string b = j.at("builtin").get<std::string>();
    if (b == "rado") return rado_spec();
    if (b == "triangle_free") return triangle_free_spec();
    if (b == "metric") return metric_spec(j.at("S").get<std::vector<int>>());
    if (b == "ultrametric_chain")
      return ultrametric_chain_spec(j.at("k").get<int>());
    throw InputError("spec: unknown builtin '" + b + "'");
  }
  if (!j.contains("language") || !j.contains("vertex_types") ||
      !j.contains("letters") || !j.contains("rule"))
    throw InputError("spec: need {\"language\", \"vertex_types\", \"letters\", \"rule\"}");
  Language lang = language_from_json(j.at("language"));
  std::vector<Structure> vts, letters;
  for (const auto& v : j.at("vertex_types")) vts.push_back(structure_from_json(v));
  for (const auto& l : j.at("letters")) letters.push_back(structure_from_json(l));
  return ClassSpec(lang, std::move(vts), std::move(letters),
                   rule_from_json(j.at("rule")));
}

// --- DOT export ----------------------------------------------------------------

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace detail

// Gaifman graph of the structure: one undirected edge per adjacent pair,
// labelled with the symbol names witnessing the adjacency; unary relations
// and loops are appended to the vertex label.
inline std::string to_dot(const Structure& a, const std::string& name = "G") {
  std::ostringstream os;
  os << "graph \"" << detail::dot_escape(name) << "\" {\n";
  for (int v = 0; v < a.size(); ++v) {
    std::string label = a.vertex_name(v);
    for (int s = 0; s < a.lang().size(); ++s) {
      bool marked = a.lang().arity(s) == 1 ? a.has_tuple(s, {v})
                                           : a.has_tuple(s, {v, v});
      if (marked) label += " " + a.lang().name(s);
    }
    os << "  \"" << detail::dot_escape(a.vertex_name(v)) << "\" [label=\""
       << detail::dot_escape(label) << "\"];\n";
  }
  for (int u = 0; u < a.size(); ++u)
    for (int v = u + 1; v < a.size(); ++v) {
      std::string label;
      for (int s = 0; s < a.lang().size(); ++s) {
        if (a.lang().arity(s) != 2) continue;
        if (a.has_tuple(s, {u, v}) || a.has_tuple(s, {v, u})) {
          if (!label.empty()) label += ",";
          label += a.lang().name(s);
        }
      }
      if (label.empty()) continue;
      os << "  \"" << detail::dot_escape(a.vertex_name(u)) << "\" -- \""
         << detail::dot_escape(a.vertex_name(v)) << "\" [label=\""
         << detail::dot_escape(label) << "\"];\n";
    }
  os << "}\n";
  return os.str();
}

}  // namespace ramseyforge
