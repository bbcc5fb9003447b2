#pragma once

// Finite relational structures over finite languages of unary and binary
// symbols: embeddings, induced substructures, irreducibility, induced-cycle
// enumeration and small-structure canonical forms.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ramseyforge {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Raised when a class spec fails its own validity requirements, or when a
// computation reaches a state that contradicts the hypotheses the spec is
// supposed to satisfy (a spec-validity alarm, not a normal outcome).
struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Symbol {
  std::string name;
  int arity = 2;
  bool operator==(const Symbol&) const = default;
  auto operator<=>(const Symbol&) const = default;
};

class Language {
 public:
  Language() = default;
  explicit Language(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    std::set<std::string> seen;
    for (const auto& s : symbols_) {
      if (s.arity != 1 && s.arity != 2)
        throw InputError("language symbol '" + s.name + "' has arity " +
                         std::to_string(s.arity) + "; only 1 and 2 are supported");
      if (!seen.insert(s.name).second)
        throw InputError("duplicate language symbol '" + s.name + "'");
    }
  }

  const std::vector<Symbol>& symbols() const { return symbols_; }
  int size() const { return static_cast<int>(symbols_.size()); }
  int arity(int sym) const { return symbols_.at(sym).arity; }
  const std::string& name(int sym) const { return symbols_.at(sym).name; }

  int index_of(std::string_view name) const {
    for (int i = 0; i < size(); ++i)
      if (symbols_[i].name == name) return i;
    return -1;
  }

  bool operator==(const Language&) const = default;

 private:
  std::vector<Symbol> symbols_;
};

using Tuple = std::vector<int>;  // vertex indices; length == arity of the symbol

// A finite L-structure. Vertices are ordered opaque tokens; the order is used
// only for deterministic iteration, never carries semantics. Relations have
// set semantics, so duplicate tuples are impossible.
class Structure {
 public:
  Structure() = default;
  Structure(Language lang, std::vector<std::string> vertex_names)
      : lang_(std::move(lang)),
        vertices_(std::move(vertex_names)),
        rels_(lang_.size()) {
    std::set<std::string> seen;
    for (const auto& v : vertices_)
      if (!seen.insert(v).second)
        throw InputError("duplicate vertex id '" + v + "'");
  }

  const Language& lang() const { return lang_; }
  int size() const { return static_cast<int>(vertices_.size()); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::string& vertex_name(int i) const { return vertices_.at(i); }

  int vertex_index(std::string_view name) const {
    for (int i = 0; i < size(); ++i)
      if (vertices_[i] == name) return i;
    return -1;
  }

  void add_tuple(int sym, Tuple t) {
    if (sym < 0 || sym >= lang_.size()) throw InputError("unknown symbol index");
    if (static_cast<int>(t.size()) != lang_.arity(sym))
      throw InputError("tuple length does not match arity of '" + lang_.name(sym) + "'");
    for (int v : t)
      if (v < 0 || v >= size()) throw InputError("tuple refers to unknown vertex");
    rels_[sym].insert(std::move(t));
  }

  void add_tuple(std::string_view sym_name, const std::vector<std::string>& names) {
    int sym = lang_.index_of(sym_name);
    if (sym < 0) throw InputError("unknown symbol '" + std::string(sym_name) + "'");
    Tuple t;
    for (const auto& n : names) {
      int v = vertex_index(n);
      if (v < 0) throw InputError("unknown vertex id '" + n + "'");
      t.push_back(v);
    }
    add_tuple(sym, std::move(t));
  }

  const std::set<Tuple>& tuples(int sym) const { return rels_.at(sym); }
  bool has_tuple(int sym, const Tuple& t) const { return rels_.at(sym).count(t) > 0; }

  // Gaifman adjacency: u != v joined by a binary tuple in either order.
  // Loops (v,v) do not make a vertex adjacent to itself.
  bool adjacent(int u, int v) const {
    if (u == v) return false;
    for (int s = 0; s < lang_.size(); ++s) {
      if (lang_.arity(s) != 2) continue;
      if (has_tuple(s, {u, v}) || has_tuple(s, {v, u})) return true;
    }
    return false;
  }

  bool operator==(const Structure&) const = default;
  auto operator<=>(const Structure&) const = default;

 private:
  Language lang_;
  std::vector<std::string> vertices_;
  std::vector<std::set<Tuple>> rels_;
};

// A cycle v_0 ... v_{l-1}, l >= 3, of distinct vertices of some host
// structure, with consecutive vertices (cyclically) adjacent.
struct Cycle {
  std::vector<int> vertices;
  int length() const { return static_cast<int>(vertices.size()); }
};

inline bool is_irreducible(const Structure& a) {
  for (int u = 0; u < a.size(); ++u)
    for (int v = u + 1; v < a.size(); ++v)
      if (!a.adjacent(u, v)) return false;
  return true;
}

// Induced substructure on X (indices into a); vertex names are kept.
inline Structure induced(const Structure& a, const std::vector<int>& xs) {
  std::vector<std::string> names;
  std::map<int, int> remap;
  for (int x : xs) {
    if (x < 0 || x >= a.size()) throw InputError("induced: unknown vertex id");
    if (remap.count(x)) throw InputError("induced: repeated vertex id");
    remap[x] = static_cast<int>(names.size());
    names.push_back(a.vertex_name(x));
  }
  Structure out(a.lang(), std::move(names));
  for (int s = 0; s < a.lang().size(); ++s) {
    for (const Tuple& t : a.tuples(s)) {
      Tuple mapped;
      bool inside = true;
      for (int v : t) {
        auto it = remap.find(v);
        if (it == remap.end()) { inside = false; break; }
        mapped.push_back(it->second);
      }
      if (inside) out.add_tuple(s, std::move(mapped));
    }
  }
  return out;
}

// Induced substructure with vertices renamed to "0", "1", ... in the order of
// xs. Used when comparing against letters and vertex types.
inline Structure induced_relabelled(const Structure& a, const std::vector<int>& xs) {
  Structure sub = induced(a, xs);
  std::vector<std::string> names;
  for (int i = 0; i < sub.size(); ++i) names.push_back(std::to_string(i));
  Structure out(sub.lang(), std::move(names));
  for (int s = 0; s < sub.lang().size(); ++s)
    for (const Tuple& t : sub.tuples(s)) out.add_tuple(s, t);
  return out;
}

inline bool is_homomorphism(const std::vector<int>& f, const Structure& a,
                            const Structure& b) {
  if (a.lang() != b.lang()) throw InputError("language mismatch");
  if (static_cast<int>(f.size()) != a.size()) return false;
  for (int v : f)
    if (v < 0 || v >= b.size()) return false;
  for (int s = 0; s < a.lang().size(); ++s) {
    for (const Tuple& t : a.tuples(s)) {
      Tuple img;
      for (int v : t) img.push_back(f[v]);
      if (!b.has_tuple(s, img)) return false;
    }
  }
  return true;
}

// f injective and tuple membership preserved in both directions.
inline bool is_embedding(const std::vector<int>& f, const Structure& a,
                         const Structure& b) {
  if (!is_homomorphism(f, a, b)) return false;
  std::set<int> image(f.begin(), f.end());
  if (static_cast<int>(image.size()) != a.size()) return false;
  for (int s = 0; s < a.lang().size(); ++s) {
    int r = a.lang().arity(s);
    if (r == 1) {
      for (int v = 0; v < a.size(); ++v)
        if (b.has_tuple(s, {f[v]}) && !a.has_tuple(s, {v})) return false;
    } else {
      for (int u = 0; u < a.size(); ++u)
        for (int v = 0; v < a.size(); ++v)
          if (b.has_tuple(s, {f[u], f[v]}) && !a.has_tuple(s, {u, v})) return false;
    }
  }
  return true;
}

// Homomorphism whose restriction to every irreducible substructure is an
// embedding. In a binary language it is enough to check single vertices and
// adjacent pairs.
inline bool is_homomorphism_embedding(const std::vector<int>& f, const Structure& a,
                                      const Structure& b) {
  if (!is_homomorphism(f, a, b)) return false;
  for (int v = 0; v < a.size(); ++v) {
    for (int s = 0; s < a.lang().size(); ++s) {
      if (a.lang().arity(s) == 1) {
        if (b.has_tuple(s, {f[v]}) != a.has_tuple(s, {v})) return false;
      } else {
        if (b.has_tuple(s, {f[v], f[v]}) != a.has_tuple(s, {v, v})) return false;
      }
    }
  }
  for (int u = 0; u < a.size(); ++u) {
    for (int v = 0; v < a.size(); ++v) {
      if (u == v || !a.adjacent(u, v)) continue;
      if (f[u] == f[v]) return false;
      for (int s = 0; s < a.lang().size(); ++s) {
        if (a.lang().arity(s) != 2) continue;
        if (b.has_tuple(s, {f[u], f[v]}) != a.has_tuple(s, {u, v})) return false;
      }
    }
  }
  return true;
}

// All embeddings A -> B by exhaustive search over injections. Deterministic
// order: maps compared lexicographically.
inline std::vector<std::vector<int>> embeddings(const Structure& a, const Structure& b) {
  if (a.lang() != b.lang()) throw InputError("language mismatch");
  std::vector<std::vector<int>> out;
  std::vector<int> f(a.size(), -1);
  std::vector<bool> used(b.size(), false);

  auto consistent = [&](int added) {
    // check tuples fully placed once `added` is assigned (both directions)
    for (int s = 0; s < a.lang().size(); ++s) {
      int r = a.lang().arity(s);
      if (r == 1) {
        if (a.has_tuple(s, {added}) != b.has_tuple(s, {f[added]})) return false;
      } else {
        for (int u = 0; u <= added; ++u) {
          if (f[u] < 0) continue;
          if (a.has_tuple(s, {u, added}) != b.has_tuple(s, {f[u], f[added]})) return false;
          if (a.has_tuple(s, {added, u}) != b.has_tuple(s, {f[added], f[u]})) return false;
        }
      }
    }
    return true;
  };

  auto rec = [&](auto&& self, int i) -> void {
    if (i == a.size()) {
      out.push_back(f);
      return;
    }
    for (int w = 0; w < b.size(); ++w) {
      if (used[w]) continue;
      f[i] = w;
      used[w] = true;
      if (consistent(i)) self(self, i + 1);
      used[w] = false;
      f[i] = -1;
    }
  };
  rec(rec, 0);
  return out;
}

namespace detail {

inline void append_int(std::string& s, int v) {
  s.push_back(static_cast<char>('0' + (v / 10)));
  s.push_back(static_cast<char>('0' + (v % 10)));
}

inline std::string encode_under_perm(const Structure& a, const std::vector<int>& p) {
  // p maps old index -> new index
  std::string enc;
  append_int(enc, a.size());
  for (int s = 0; s < a.lang().size(); ++s) {
    enc.push_back('|');
    std::vector<Tuple> ts;
    for (const Tuple& t : a.tuples(s)) {
      Tuple m;
      for (int v : t) m.push_back(p[v]);
      ts.push_back(std::move(m));
    }
    std::sort(ts.begin(), ts.end());
    for (const Tuple& t : ts) {
      enc.push_back(';');
      for (int v : t) append_int(enc, v);
    }
  }
  return enc;
}

}  // namespace detail

inline constexpr int kCanonicalCap = 8;

// Canonical byte string by exhaustive minimisation over vertex permutations.
// Equal strings iff the structures are isomorphic (over the same language).
inline std::string canonicalize(const Structure& a) {
  if (a.size() > kCanonicalCap)
    throw CapacityError("canonicalize: structure larger than " +
                        std::to_string(kCanonicalCap) + " vertices");
  std::vector<int> p(a.size());
  std::iota(p.begin(), p.end(), 0);
  std::string best;
  do {
    std::string enc = detail::encode_under_perm(a, p);
    if (best.empty() || enc < best) best = std::move(enc);
  } while (std::next_permutation(p.begin(), p.end()));
  if (best.empty()) best = detail::encode_under_perm(a, {});
  return best;
}

inline bool isomorphic(const Structure& a, const Structure& b) {
  if (a.lang() != b.lang() || a.size() != b.size()) return false;
  return canonicalize(a) == canonicalize(b);
}

// --- letters and vertex types ----------------------------------------------

// A Letter is a structure with vertex set exactly {"0","1"}; ordered, so
// relations may distinguish (0,1) from (1,0).
inline bool is_letter(const Structure& s) {
  return s.size() == 2 && s.vertex_name(0) == "0" && s.vertex_name(1) == "1";
}

inline Structure make_letter(const Language& lang) {
  return Structure(lang, {"0", "1"});
}

inline Structure make_vertex_type(const Language& lang) {
  return Structure(lang, {"0"});
}

inline Structure reverse_letter(const Structure& letter) {
  if (letter.size() != 2) throw InputError("reverse_letter: not a 2-vertex structure");
  Structure out = make_letter(letter.lang());
  for (int s = 0; s < letter.lang().size(); ++s)
    for (const Tuple& t : letter.tuples(s)) {
      Tuple m;
      for (int v : t) m.push_back(1 - v);
      out.add_tuple(s, std::move(m));
    }
  return out;
}

// The structure induced by a letter on one of its endpoints, as a VertexType
// (single vertex "0"; unary relations plus loops).
inline Structure vertex_type_of(const Structure& letter, int which) {
  if (letter.size() != 2 || which < 0 || which > 1)
    throw InputError("vertex_type_of: bad arguments");
  return induced_relabelled(letter, {which});
}

// --- triangle operator ------------------------------------------------------

// The unique 3-vertex structure on {u,v,w} with A on (u,v), B on (v,w) and
// C on (u,w), when the placements agree on the shared vertex types (unary
// relations and loops); nullopt otherwise ("undefined" is a normal result).
inline std::optional<Structure> triangle(const Structure& a, const Structure& b,
                                         const Structure& c) {
  if (a.lang() != b.lang() || a.lang() != c.lang())
    throw InputError("triangle: language mismatch");
  if (a.size() != 2 || b.size() != 2 || c.size() != 2)
    throw InputError("triangle: arguments must be letters");
  // shared endpoints: u in A(0), C(0); v in A(1), B(0); w in B(1), C(1)
  if (vertex_type_of(a, 0) != vertex_type_of(c, 0)) return std::nullopt;
  if (vertex_type_of(a, 1) != vertex_type_of(b, 0)) return std::nullopt;
  if (vertex_type_of(b, 1) != vertex_type_of(c, 1)) return std::nullopt;

  Structure d(a.lang(), {"u", "v", "w"});
  auto place = [&d](const Structure& letter, int x, int y) {
    std::array<int, 2> to{x, y};
    for (int s = 0; s < letter.lang().size(); ++s)
      for (const Tuple& t : letter.tuples(s)) {
        Tuple m;
        for (int v : t) m.push_back(to[v]);
        d.add_tuple(s, std::move(m));
      }
  };
  place(a, 0, 1);
  place(b, 1, 2);
  place(c, 0, 2);
  return d;
}

// --- induced cycle enumeration ----------------------------------------------

// True iff the sequence is an induced cycle of `a`: consecutive vertices
// (cyclically) adjacent, no other pair adjacent. Vacuous for triangles, so
// every triangle counts as an induced cycle.
inline bool is_induced_cycle(const Structure& a, const Cycle& c) {
  int l = c.length();
  if (l < 3) return false;
  std::set<int> distinct(c.vertices.begin(), c.vertices.end());
  if (static_cast<int>(distinct.size()) != l) return false;
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j) {
      bool consecutive = (j == i + 1) || (i == 0 && j == l - 1);
      if (a.adjacent(c.vertices[i], c.vertices[j]) != consecutive) return false;
    }
  return true;
}

// All induced cycles of length 3..lmax, each exactly once up to rotation and
// reflection. Normal form: minimal vertex first, second vertex smaller than
// the last. DFS over simple paths with induced pruning.
inline std::vector<Cycle> induced_cycles(const Structure& a, int lmax) {
  if (lmax < 3) throw InputError("induced_cycles: Lmax must be >= 3");
  std::vector<Cycle> out;
  int n = a.size();
  std::vector<int> path;
  std::vector<bool> on_path(n, false);

  auto rec = [&](auto&& self) -> void {
    int last = path.back();
    int start = path.front();
    int len = static_cast<int>(path.size());
    if (len >= 3 && a.adjacent(last, start)) {
      // induced by pruning below; keep one direction only
      if (path[1] < path.back()) out.push_back(Cycle{path});
      return;  // closing and extending are mutually exclusive for induced cycles
    }
    if (len == lmax) return;
    for (int w = start + 1; w < n; ++w) {
      if (on_path[w] || !a.adjacent(last, w)) continue;
      // induced: w may only be adjacent to `last` among path vertices, except
      // that adjacency to `start` is allowed exactly when it closes the cycle,
      // which the recursive call detects first.
      bool ok = true;
      for (int i = 0; i + 1 < len; ++i) {
        if (i == 0 && len + 1 >= 3 && a.adjacent(w, start)) continue;  // may close
        if (a.adjacent(w, path[i])) { ok = false; break; }
      }
      if (!ok) continue;
      // if w is adjacent to start but the cycle closed would have length < 3,
      // the chord makes any longer extension non-induced
      path.push_back(w);
      on_path[w] = true;
      self(self);
      on_path[w] = false;
      path.pop_back();
    }
  };

  for (int v = 0; v < n; ++v) {
    path = {v};
    std::fill(on_path.begin(), on_path.end(), false);
    on_path[v] = true;
    rec(rec);
  }

  // re-check from scratch; the pruning above is an optimisation, the predicate
  // is the contract
  std::vector<Cycle> checked;
  for (auto& c : out)
    if (is_induced_cycle(a, c)) checked.push_back(std::move(c));
  return checked;
}

// Adds a duplicate v' of vertex v: copies all tuples with v replaced by v',
// no tuples between v and v'. When the input is irreducible, every induced
// cycle of the result already occurs in the input.
inline Structure duplicate_vertex(const Structure& a, int v) {
  if (v < 0 || v >= a.size()) throw InputError("duplicate_vertex: unknown vertex");
  std::vector<std::string> names = a.vertices();
  std::string dup = a.vertex_name(v) + "'";
  while (std::find(names.begin(), names.end(), dup) != names.end()) dup += "'";
  names.push_back(dup);
  int vp = static_cast<int>(names.size()) - 1;
  Structure out(a.lang(), std::move(names));
  for (int s = 0; s < a.lang().size(); ++s) {
    for (const Tuple& t : a.tuples(s)) {
      out.add_tuple(s, t);
      if (std::find(t.begin(), t.end(), v) == t.end()) continue;
      Tuple m;
      for (int x : t) m.push_back(x == v ? vp : x);
      out.add_tuple(s, std::move(m));
    }
  }
  return out;
}

}  // namespace ramseyforge
