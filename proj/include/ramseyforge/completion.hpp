#pragma once

// Intensional descriptions of an infinite irreducible target class K
// (ClassSpec) and algorithms deciding or constructing completions of finite
// partial structures into it.

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "ramseyforge/relstruct.hpp"

namespace ramseyforge {

// --- cycle rules -------------------------------------------------------------

struct ExplicitForbidden {
  std::vector<Structure> cycles;  // induced cycles; canonical witnesses
};

struct MetricRule {
  std::vector<int> distances;  // S, sorted ascending, min >= 1
};

struct UltrametricRule {
  std::vector<std::string> elements;
  std::vector<std::vector<int>> join;  // element indices
  std::vector<std::vector<int>> meet;
};

struct FreeAmalgTriangles {
  std::vector<Structure> triangles;  // forbidden 3-vertex irreducible structures
};

using CycleRule = std::variant<ExplicitForbidden, MetricRule, UltrametricRule,
                               FreeAmalgTriangles>;

namespace detail {

inline void validate_metric(const MetricRule& r) {
  if (r.distances.empty()) throw SpecError("metric rule: S must be nonempty");
  for (size_t i = 0; i < r.distances.size(); ++i) {
    if (r.distances[i] < 1) throw SpecError("metric rule: min(S) must be >= 1");
    if (i > 0 && r.distances[i] <= r.distances[i - 1])
      throw SpecError("metric rule: S must be strictly increasing");
  }
}

inline void validate_lattice(const UltrametricRule& r) {
  int n = static_cast<int>(r.elements.size());
  if (n == 0) throw SpecError("ultrametric rule: empty lattice");
  auto check_table = [n](const std::vector<std::vector<int>>& t, const char* what) {
    if (static_cast<int>(t.size()) != n) throw SpecError(std::string(what) + ": bad table size");
    for (const auto& row : t) {
      if (static_cast<int>(row.size()) != n) throw SpecError(std::string(what) + ": bad row size");
      for (int v : row)
        if (v < 0 || v >= n) throw SpecError(std::string(what) + ": entry out of range");
    }
  };
  check_table(r.join, "join");
  check_table(r.meet, "meet");
  auto j = [&](int a, int b) { return r.join[a][b]; };
  auto m = [&](int a, int b) { return r.meet[a][b]; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (j(a, b) != j(b, a) || m(a, b) != m(b, a))
        throw SpecError("lattice: commutativity fails");
      if (j(a, m(a, b)) != a || m(a, j(a, b)) != a)
        throw SpecError("lattice: absorption fails");
      for (int c = 0; c < n; ++c) {
        if (j(a, j(b, c)) != j(j(a, b), c) || m(a, m(b, c)) != m(m(a, b), c))
          throw SpecError("lattice: associativity fails");
        if (m(a, j(b, c)) != j(m(a, b), m(a, c)))
          throw SpecError("lattice: distributivity fails");
      }
    }
}

}  // namespace detail

// Largest length of a potentially non-completable induced cycle for distance
// set S: the largest l >= 3 with max(S) > (l-1)*min(S); 0 if no such l.
inline int nonmetric_cycle_bound(const std::vector<int>& s_sorted) {
  MetricRule r{s_sorted};
  detail::validate_metric(r);
  int lo = s_sorted.front(), hi = s_sorted.back();
  int best = 0;
  for (int l = 3; hi > static_cast<std::int64_t>(l - 1) * lo; ++l) best = l;
  return best;
}

// --- class spec ---------------------------------------------------------------

// Intensional description of the infinite irreducible target K: the allowed
// vertex types and letters (the alphabet source) plus a cycle-completability
// rule. Never materialises K itself.
class ClassSpec {
 public:
  ClassSpec(Language lang, std::vector<Structure> vertex_types,
            std::vector<Structure> letters, CycleRule rule)
      : lang_(std::move(lang)),
        vertex_types_(std::move(vertex_types)),
        letters_(std::move(letters)),
        rule_(std::move(rule)) {
    if (vertex_types_.empty()) throw SpecError("spec needs at least one vertex type");
    if (letters_.empty()) throw SpecError("spec needs at least one letter");
    for (const auto& vt : vertex_types_)
      if (vt.size() != 1 || vt.lang() != lang_)
        throw SpecError("vertex types must be 1-vertex structures over the spec language");
    for (const auto& l : letters_) {
      if (!is_letter(l) || l.lang() != lang_)
        throw SpecError("letters must be structures on {0,1} over the spec language");
      if (!l.adjacent(0, 1))
        throw SpecError("letters must be irreducible (K is irreducible, so every "
                        "pair type carries at least one tuple)");
    }
    // letters closed under reversal, and their endpoint types allowed
    for (const auto& l : letters_) {
      if (!letter_allowed(reverse_letter(l)))
        throw SpecError("letter set not closed under reversal");
      for (int e = 0; e < 2; ++e)
        if (!vertex_allowed(vertex_type_of(l, e)))
          throw SpecError("letter endpoint type is not an allowed vertex type");
    }
    std::visit([](const auto& r) {
      using T = std::decay_t<decltype(r)>;
      if constexpr (std::is_same_v<T, MetricRule>) detail::validate_metric(r);
      else if constexpr (std::is_same_v<T, UltrametricRule>) detail::validate_lattice(r);
    }, rule_);
    if (const auto* ef = std::get_if<ExplicitForbidden>(&rule_)) {
      for (const auto& c : ef->cycles) {
        std::vector<int> seq(c.size());
        std::iota(seq.begin(), seq.end(), 0);
        if (!is_induced_cycle(c, Cycle{seq}))
          throw SpecError("explicit forbidden entries must be induced cycles "
                          "(vertex order is the cycle order)");
      }
    }
    // deterministic letter order: canonical byte string
    std::sort(letters_.begin(), letters_.end(),
              [](const Structure& a, const Structure& b) {
                return canonicalize(a) < canonicalize(b);
              });
    letters_.erase(std::unique(letters_.begin(), letters_.end()), letters_.end());
    cycle_length_bound_ = compute_bound();
  }

  const Language& lang() const { return lang_; }
  const std::vector<Structure>& vertex_types() const { return vertex_types_; }
  const std::vector<Structure>& letters() const { return letters_; }
  const CycleRule& rule() const { return rule_; }

  // Maximum length of a non-completable induced cycle; 0 when no cycle is
  // forbidden, kUnboundedCycles when no finite bound exists.
  static constexpr int kUnboundedCycles = std::numeric_limits<int>::max();
  int cycle_length_bound() const { return cycle_length_bound_; }

  // The cycle lengths worth checking inside a structure on n vertices.
  int cycle_bound_for(int n_vertices) const {
    return std::min(cycle_length_bound_, n_vertices);
  }

  bool vertex_allowed(const Structure& vt) const {
    for (const auto& t : vertex_types_)
      if (t == vt) return true;
    return false;
  }

  // The 2-vertex structure (vertices "0","1", as given orientation) is an
  // allowed letter.
  bool letter_allowed(const Structure& letter) const {
    for (const auto& l : letters_)
      if (l == letter) return true;
    return false;
  }

  int letter_index(const Structure& letter) const {
    for (size_t i = 0; i < letters_.size(); ++i)
      if (letters_[i] == letter) return static_cast<int>(i);
    return -1;
  }

  // For metric/ultrametric rules: the value index carried by a letter
  // (index into distances/elements), or -1.
  int letter_value(const Structure& letter) const {
    for (int s = 0; s < lang_.size(); ++s) {
      if (lang_.arity(s) != 2) continue;
      if (letter.has_tuple(s, {0, 1})) {
        int v = value_of_symbol(s);
        if (v >= 0) return v;
      }
    }
    return -1;
  }

  int value_of_symbol(int sym) const {
    if (const auto* mr = std::get_if<MetricRule>(&rule_)) {
      for (size_t i = 0; i < mr->distances.size(); ++i)
        if (lang_.name(sym) == "d" + std::to_string(mr->distances[i]))
          return static_cast<int>(i);
    } else if (const auto* ur = std::get_if<UltrametricRule>(&rule_)) {
      for (size_t i = 0; i < ur->elements.size(); ++i)
        if (lang_.name(sym) == "d_" + ur->elements[i]) return static_cast<int>(i);
    }
    return -1;
  }

  // Rule check for a 3-vertex irreducible structure whose pairs are allowed
  // letters. The finitary meaning of "embeds into K" at size 3.
  bool triangle_allowed(const Structure& tri) const {
    if (tri.size() != 3) throw InputError("triangle_allowed: need 3 vertices");
    if (const auto* mr = std::get_if<MetricRule>(&rule_)) {
      int a = pair_value(tri, 0, 1), b = pair_value(tri, 1, 2), c = pair_value(tri, 0, 2);
      if (a < 0 || b < 0 || c < 0) return false;
      int da = mr->distances[a], db = mr->distances[b], dc = mr->distances[c];
      return da <= db + dc && db <= da + dc && dc <= da + db;
    }
    if (const auto* ur = std::get_if<UltrametricRule>(&rule_)) {
      int a = pair_value(tri, 0, 1), b = pair_value(tri, 1, 2), c = pair_value(tri, 0, 2);
      if (a < 0 || b < 0 || c < 0) return false;
      auto leq = [&](int x, int y) { return ur->join[x][y] == y; };
      return leq(a, ur->join[b][c]) && leq(b, ur->join[a][c]) && leq(c, ur->join[a][b]);
    }
    if (const auto* fa = std::get_if<FreeAmalgTriangles>(&rule_)) {
      for (const auto& f : fa->triangles)
        if (isomorphic(tri, f)) return false;
      return true;
    }
    const auto& ef = std::get<ExplicitForbidden>(rule_);
    for (const auto& f : ef.cycles)
      if (f.size() == 3 && isomorphic(tri, f)) return false;
    return true;
  }

  // Every vertex, pair and triangle of an irreducible structure passes. For
  // irreducible structures the only induced cycles are triangles, so this is
  // the full finitary admissibility check.
  bool irreducible_allowed(const Structure& a) const {
    for (int v = 0; v < a.size(); ++v)
      if (!vertex_allowed(induced_relabelled(a, {v}))) return false;
    for (int u = 0; u < a.size(); ++u)
      for (int v = u + 1; v < a.size(); ++v)
        if (!letter_allowed(induced_relabelled(a, {u, v}))) return false;
    for (int u = 0; u < a.size(); ++u)
      for (int v = u + 1; v < a.size(); ++v)
        for (int w = v + 1; w < a.size(); ++w)
          if (!triangle_allowed(induced_relabelled(a, {u, v, w}))) return false;
    return true;
  }

 private:
  int pair_value(const Structure& tri, int u, int v) const {
    for (int s = 0; s < lang_.size(); ++s) {
      if (lang_.arity(s) != 2) continue;
      if (tri.has_tuple(s, {u, v}) || tri.has_tuple(s, {v, u})) {
        int val = value_of_symbol(s);
        if (val >= 0) return val;
      }
    }
    return -1;
  }

  int compute_bound() const {
    if (const auto* mr = std::get_if<MetricRule>(&rule_))
      return nonmetric_cycle_bound(mr->distances);
    if (const auto* ur = std::get_if<UltrametricRule>(&rule_)) {
      // With a single lattice element every triangle is satisfied; otherwise a
      // cycle with one long edge and an arbitrarily long path of strictly
      // shorter edges is non-completable, so no finite bound exists.
      return ur->elements.size() == 1 ? 0 : kUnboundedCycles;
    }
    if (const auto* fa = std::get_if<FreeAmalgTriangles>(&rule_))
      return fa->triangles.empty() ? 0 : 3;
    const auto& ef = std::get<ExplicitForbidden>(rule_);
    int b = 0;
    for (const auto& c : ef.cycles) b = std::max(b, c.size());
    return b;
  }

  Language lang_;
  std::vector<Structure> vertex_types_;
  std::vector<Structure> letters_;
  CycleRule rule_;
  int cycle_length_bound_ = 0;
};

// --- built-in specs ------------------------------------------------------------

namespace detail {

inline std::vector<Structure> symmetric_graph_letters(const Language& lang) {
  Structure edge = make_letter(lang);
  edge.add_tuple("edge", {"0", "1"});
  edge.add_tuple("edge", {"1", "0"});
  Structure nonedge = make_letter(lang);
  nonedge.add_tuple("nonedge", {"0", "1"});
  nonedge.add_tuple("nonedge", {"1", "0"});
  return {edge, nonedge};
}

}  // namespace detail

// The Rado graph, encoded irreducibly with an explicit nonedge letter.
inline ClassSpec rado_spec() {
  Language lang({{"edge", 2}, {"nonedge", 2}});
  return ClassSpec(lang, {make_vertex_type(lang)},
                   detail::symmetric_graph_letters(lang), ExplicitForbidden{});
}

// The generic triangle-free graph (all-edge triangle forbidden).
inline ClassSpec triangle_free_spec() {
  Language lang({{"edge", 2}, {"nonedge", 2}});
  Structure k3(lang, {"a", "b", "c"});
  for (auto [u, v] : {std::pair{0, 1}, {1, 2}, {0, 2}}) {
    k3.add_tuple(0, {u, v});
    k3.add_tuple(0, {v, u});
  }
  return ClassSpec(lang, {make_vertex_type(lang)},
                   detail::symmetric_graph_letters(lang), FreeAmalgTriangles{{k3}});
}

// The S-Urysohn class: one symmetric distance letter per element of S.
inline ClassSpec metric_spec(std::vector<int> s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  MetricRule rule{s};
  detail::validate_metric(rule);
  std::vector<Symbol> syms;
  for (int d : s) syms.push_back({"d" + std::to_string(d), 2});
  Language lang(syms);
  std::vector<Structure> letters;
  for (size_t i = 0; i < s.size(); ++i) {
    Structure l = make_letter(lang);
    l.add_tuple(static_cast<int>(i), {0, 1});
    l.add_tuple(static_cast<int>(i), {1, 0});
    letters.push_back(std::move(l));
  }
  return ClassSpec(lang, {make_vertex_type(lang)}, std::move(letters), std::move(rule));
}

inline ClassSpec ultrametric_spec(UltrametricRule rule) {
  detail::validate_lattice(rule);
  std::vector<Symbol> syms;
  for (const auto& e : rule.elements) syms.push_back({"d_" + e, 2});
  Language lang(syms);
  std::vector<Structure> letters;
  for (size_t i = 0; i < rule.elements.size(); ++i) {
    Structure l = make_letter(lang);
    l.add_tuple(static_cast<int>(i), {0, 1});
    l.add_tuple(static_cast<int>(i), {1, 0});
    letters.push_back(std::move(l));
  }
  return ClassSpec(lang, {make_vertex_type(lang)}, std::move(letters), std::move(rule));
}

// Chain lattice 1 < 2 < ... < k (join = max, meet = min); distributive.
inline ClassSpec ultrametric_chain_spec(int k) {
  if (k < 1) throw InputError("ultrametric_chain_spec: need at least one level");
  UltrametricRule r;
  for (int i = 1; i <= k; ++i) r.elements.push_back(std::to_string(i));
  r.join.assign(k, std::vector<int>(k));
  r.meet.assign(k, std::vector<int>(k));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      r.join[a][b] = std::max(a, b);
      r.meet[a][b] = std::min(a, b);
    }
  return ultrametric_spec(std::move(r));
}

// --- alphabet -------------------------------------------------------------------

// Sigma: the spec's letters filtered by its own pair admissibility (endpoint
// types allowed). Throws SpecError when empty; a nonempty irreducible K needs
// at least one letter.
inline std::vector<Structure> alphabet(const ClassSpec& spec) {
  std::vector<Structure> out;
  for (const auto& l : spec.letters()) {
    if (spec.vertex_allowed(vertex_type_of(l, 0)) &&
        spec.vertex_allowed(vertex_type_of(l, 1)))
      out.push_back(l);
  }
  if (out.empty()) throw SpecError("alphabet: spec admits no letters");
  return out;
}

// --- completion results -----------------------------------------------------------

struct Completed {
  Structure result;
  std::vector<int> witness;  // injective homomorphism-embedding (identity on input)
};
struct BadPair {
  Structure substructure;  // the <=2-vertex irreducible witness, original names
};
struct BadCycle {
  Cycle cycle;             // indices into the input structure
  Structure substructure;  // the induced cycle, original names
};
struct SearchExhausted {};

using CompletionResult = std::variant<Completed, BadPair, BadCycle, SearchExhausted>;

inline bool completed(const CompletionResult& r) {
  return std::holds_alternative<Completed>(r);
}

// --- cycle completability ------------------------------------------------------

namespace detail {

// Letters assignable to an unrelated pair (u,v) given the endpoint vertex
// types already present; letter tuples on the endpoints must match exactly.
inline std::vector<int> compatible_letters(const ClassSpec& spec, const Structure& a,
                                           int u, int v) {
  std::vector<int> out;
  Structure tu = induced_relabelled(a, {u});
  Structure tv = induced_relabelled(a, {v});
  const auto& letters = spec.letters();
  for (size_t i = 0; i < letters.size(); ++i) {
    if (vertex_type_of(letters[i], 0) == tu && vertex_type_of(letters[i], 1) == tv)
      out.push_back(static_cast<int>(i));
  }
  return out;
}

// Place a letter's binary tuples onto the pair (u,v) of `a` (0 -> u, 1 -> v).
// Unary tuples and loops are already fixed by the endpoint types.
inline void place_letter(Structure& a, const Structure& letter, int u, int v) {
  std::array<int, 2> to{u, v};
  for (int s = 0; s < letter.lang().size(); ++s) {
    if (letter.lang().arity(s) != 2) continue;
    for (const Tuple& t : letter.tuples(s)) {
      if (t[0] == t[1]) continue;  // loop, part of the vertex type
      a.add_tuple(s, {to[t[0]], to[t[1]]});
    }
  }
}

// Backtracking letter assignment over the non-adjacent pairs of `a`.
// Deterministic: pairs in lexicographic order, letters in canonical order.
// Returns the completed structure, or nullopt when the space is exhausted.
inline std::optional<Structure> assign_letters(const Structure& a, const ClassSpec& spec) {
  std::vector<std::pair<int, int>> gaps;
  for (int u = 0; u < a.size(); ++u)
    for (int v = u + 1; v < a.size(); ++v)
      if (!a.adjacent(u, v)) gaps.emplace_back(u, v);

  // triangles already complete in the input must pass the rule
  for (int u = 0; u < a.size(); ++u)
    for (int v = u + 1; v < a.size(); ++v)
      for (int w = v + 1; w < a.size(); ++w)
        if (a.adjacent(u, v) && a.adjacent(v, w) && a.adjacent(u, w) &&
            !spec.triangle_allowed(induced_relabelled(a, {u, v, w})))
          return std::nullopt;

  Structure cur = a;
  auto triangles_ok = [&](int u, int v) {
    for (int w = 0; w < cur.size(); ++w) {
      if (w == u || w == v) continue;
      if (!cur.adjacent(u, w) || !cur.adjacent(v, w)) continue;
      if (!spec.triangle_allowed(induced_relabelled(cur, {u, v, w}))) return false;
    }
    return true;
  };

  auto rec = [&](auto&& self, size_t i) -> std::optional<Structure> {
    if (i == gaps.size()) return cur;
    auto [u, v] = gaps[i];
    for (int li : compatible_letters(spec, cur, u, v)) {
      Structure saved = cur;
      place_letter(cur, spec.letters()[li], u, v);
      if (triangles_ok(u, v)) {
        if (auto r = self(self, i + 1)) return r;
      }
      cur = std::move(saved);
    }
    return std::nullopt;
  };
  return rec(rec, 0);
}

}  // namespace detail

// True iff some assignment of allowed letters to the non-adjacent pairs of the
// cycle yields an irreducible structure passing the spec's rule.
inline bool cycle_has_completion(const Structure& host, const Cycle& c,
                                 const ClassSpec& spec) {
  if (host.lang() != spec.lang()) throw InputError("cycle_has_completion: language mismatch");
  if (!is_induced_cycle(host, c))
    throw InputError("cycle_has_completion: sequence is not an induced cycle");
  Structure sub = induced(host, c.vertices);
  // explicit forbidden cycles are exactly the non-completable ones
  if (const auto* ef = std::get_if<ExplicitForbidden>(&spec.rule())) {
    for (const auto& f : ef->cycles)
      if (f.size() == sub.size() && !embeddings(f, sub).empty()) return false;
  }
  return detail::assign_letters(sub, spec).has_value();
}

// --- rule-specific fast paths -----------------------------------------------------

// Shortest-path completion for metric rules. Each missing distance becomes
// min(max(S), shortest path over present edges), repaired upward to the
// nearest value of S. Exact when S is an initial interval {1..delta}; for
// general S the caller falls back to search.
inline Structure shortest_path_completion(const Structure& a, const ClassSpec& spec) {
  const auto* mr = std::get_if<MetricRule>(&spec.rule());
  if (!mr) throw InputError("shortest_path_completion: spec rule is not metric");
  const auto& s = mr->distances;
  int n = a.size();
  const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::vector<std::int64_t>> d(n, std::vector<std::int64_t>(n, inf));
  std::vector<std::vector<bool>> fixed(n, std::vector<bool>(n, false));
  for (int u = 0; u < n; ++u) d[u][u] = 0;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      int val = -1;
      for (int sym = 0; sym < a.lang().size(); ++sym) {
        if (a.lang().arity(sym) != 2) continue;
        if (a.has_tuple(sym, {u, v}) || a.has_tuple(sym, {v, u})) {
          val = spec.value_of_symbol(sym);
          if (val < 0) throw InputError("shortest_path_completion: non-distance tuple");
        }
      }
      if (val >= 0) {
        d[u][v] = d[v][u] = s[val];
        fixed[u][v] = fixed[v][u] = true;
      }
    }
  for (int w = 0; w < n; ++w)
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        d[u][v] = std::min(d[u][v], d[u][w] + d[w][v]);

  Structure out = a;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (fixed[u][v]) continue;
      std::int64_t val = std::min<std::int64_t>(s.back(), d[u][v]);
      // repair upward to the nearest member of S
      int chosen = s.back();
      for (int cand : s)
        if (cand >= val) { chosen = cand; break; }
      int sym = a.lang().index_of("d" + std::to_string(chosen));
      out.add_tuple(sym, {u, v});
      out.add_tuple(sym, {v, u});
    }
  return out;
}

// Lattice-valued completion: each missing value becomes the meet over paths of
// the join of edge values, computed as a closure.
inline Structure ultrametric_completion(const Structure& a, const ClassSpec& spec) {
  const auto* ur = std::get_if<UltrametricRule>(&spec.rule());
  if (!ur) throw InputError("ultrametric_completion: spec rule is not ultrametric");
  int n = a.size();
  int m = static_cast<int>(ur->elements.size());
  // top of the lattice: join of everything
  int top = 0;
  for (int e = 0; e < m; ++e) top = ur->join[top][e];
  std::vector<std::vector<int>> d(n, std::vector<int>(n, top));
  std::vector<std::vector<bool>> fixed(n, std::vector<bool>(n, false));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      for (int sym = 0; sym < a.lang().size(); ++sym) {
        if (a.lang().arity(sym) != 2) continue;
        if (a.has_tuple(sym, {u, v}) || a.has_tuple(sym, {v, u})) {
          int val = spec.value_of_symbol(sym);
          if (val < 0) throw InputError("ultrametric_completion: non-lattice tuple");
          d[u][v] = d[v][u] = val;
          fixed[u][v] = fixed[v][u] = true;
        }
      }
    }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        if (u == v || fixed[u][v]) continue;
        for (int w = 0; w < n; ++w) {
          if (w == u || w == v) continue;
          int cand = ur->join[d[u][w]][d[w][v]];
          int met = ur->meet[d[u][v]][cand];
          if (met != d[u][v]) { d[u][v] = d[v][u] = met; changed = true; }
        }
      }
  }
  Structure out = a;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (fixed[u][v]) continue;
      int sym = a.lang().index_of("d_" + ur->elements[d[u][v]]);
      out.add_tuple(sym, {u, v});
      out.add_tuple(sym, {v, u});
    }
  return out;
}

// --- complete -------------------------------------------------------------------

namespace detail {

inline bool rule_valid_everywhere(const Structure& a, const ClassSpec& spec) {
  return spec.irreducible_allowed(a);
}

}  // namespace detail

// Completion of a finite partial structure to the class described by `spec`.
// Obstructions are legitimate answers; SearchExhausted is a spec-validity
// alarm (under the completion hypothesis it should be unreachable).
inline CompletionResult complete(const Structure& a, const ClassSpec& spec) {
  if (a.lang() != spec.lang()) throw InputError("complete: language mismatch");

  // irreducible substructures of size <= 2 must embed into K
  for (int v = 0; v < a.size(); ++v)
    if (!spec.vertex_allowed(induced_relabelled(a, {v})))
      return BadPair{induced(a, {v})};
  for (int u = 0; u < a.size(); ++u)
    for (int v = u + 1; v < a.size(); ++v)
      if (a.adjacent(u, v) && !spec.letter_allowed(induced_relabelled(a, {u, v})))
        return BadPair{induced(a, {u, v})};

  // every induced cycle up to the spec bound must have a completion
  int bound = spec.cycle_bound_for(a.size());
  if (bound >= 3) {
    for (const Cycle& c : induced_cycles(a, bound))
      if (!cycle_has_completion(a, c, spec))
        return BadCycle{c, induced(a, c.vertices)};
  }

  auto finish = [&](Structure result) -> CompletionResult {
    std::vector<int> witness(a.size());
    std::iota(witness.begin(), witness.end(), 0);
    return Completed{std::move(result), std::move(witness)};
  };

  if (const auto* mr = std::get_if<MetricRule>(&spec.rule())) {
    bool initial_interval =
        mr->distances.back() == static_cast<int>(mr->distances.size());
    if (initial_interval) {
      Structure r = shortest_path_completion(a, spec);
      if (detail::rule_valid_everywhere(r, spec)) return finish(std::move(r));
      // fall through to search; reaching here means the fast path failed on an
      // input it claims to handle, which the search either repairs or reports
    }
  } else if (std::holds_alternative<UltrametricRule>(spec.rule())) {
    Structure r = ultrametric_completion(a, spec);
    if (detail::rule_valid_everywhere(r, spec)) return finish(std::move(r));
  }

  if (auto r = detail::assign_letters(a, spec)) return finish(std::move(*r));
  return SearchExhausted{};
}

// --- hypothesis audit --------------------------------------------------------------

struct AuditTrial {
  int index = 0;
  int vertices = 0;
  std::string outcome;  // "completed", "obstructed", "FAILED"
  std::string detail;
};

struct AuditReport {
  int trials = 0;
  std::uint64_t seed = 0;
  int completed_count = 0;
  int obstructed_count = 0;
  int failure_count = 0;
  std::vector<AuditTrial> failures;
  std::vector<AuditTrial> all;  // per-trial outcomes, sorted by trial index
};

// Random partial structure: random allowed vertex types, each pair gets a
// compatible random letter with probability 1/2.
inline Structure random_partial_structure(const ClassSpec& spec, int n,
                                          std::mt19937_64& rng) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  Structure a(spec.lang(), std::move(names));
  std::uniform_int_distribution<size_t> vt_pick(0, spec.vertex_types().size() - 1);
  for (int i = 0; i < n; ++i) {
    const Structure& vt = spec.vertex_types()[vt_pick(rng)];
    for (int s = 0; s < vt.lang().size(); ++s)
      for (const Tuple& t : vt.tuples(s)) {
        Tuple m(t.size(), i);
        a.add_tuple(s, m);
      }
  }
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (rng() % 2 == 0) continue;
      auto opts = detail::compatible_letters(spec, a, u, v);
      if (opts.empty()) continue;
      std::uniform_int_distribution<size_t> pick(0, opts.size() - 1);
      detail::place_letter(a, spec.letters()[opts[pick(rng)]], u, v);
    }
  return a;
}

// Generates random partial structures; whenever all pairs and induced cycles
// pass, complete() must return Completed with a valid result. Counterexamples
// indicate either an implementation bug or a spec violating the completion
// hypothesis.
inline AuditReport hypothesis_audit(const ClassSpec& spec, int trials, int max_size,
                                    std::uint64_t seed) {
  AuditReport rep;
  rep.trials = trials;
  rep.seed = seed;
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(t));
    int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::max(1, max_size)));
    Structure a = random_partial_structure(spec, n, rng);

    bool hypothesis = true;
    int bound = spec.cycle_bound_for(a.size());
    if (bound >= 3) {
      for (const Cycle& c : induced_cycles(a, bound))
        if (!cycle_has_completion(a, c, spec)) { hypothesis = false; break; }
    }

    AuditTrial trial;
    trial.index = t;
    trial.vertices = n;
    CompletionResult r = complete(a, spec);
    if (!hypothesis) {
      trial.outcome = std::holds_alternative<BadCycle>(r) ? "obstructed" : "FAILED";
      if (trial.outcome == "FAILED")
        trial.detail = "input has a non-completable cycle but complete() did not report BadCycle";
    } else if (completed(r)) {
      const Structure& res = std::get<Completed>(r).result;
      bool ok = is_irreducible(res) && detail::rule_valid_everywhere(res, spec);
      if (ok) {
        // the identity must be a homomorphism-embedding of the input
        std::vector<int> id(a.size());
        std::iota(id.begin(), id.end(), 0);
        ok = is_homomorphism_embedding(id, a, res);
      }
      trial.outcome = ok ? "completed" : "FAILED";
      if (!ok) trial.detail = "completion produced an invalid structure";
    } else {
      trial.outcome = "FAILED";
      trial.detail = std::holds_alternative<SearchExhausted>(r)
                         ? "search exhausted on an input satisfying the hypothesis"
                         : "obstruction reported on an input satisfying the hypothesis";
    }

    if (trial.outcome == "completed") ++rep.completed_count;
    else if (trial.outcome == "obstructed") ++rep.obstructed_count;
    else {
      ++rep.failure_count;
      rep.failures.push_back(trial);
    }
    rep.all.push_back(std::move(trial));
  }
  return rep;
}

}  // namespace ramseyforge
