#pragma once

// The word structure G over the alphabet of 2-vertex structures embeddable
// into K: vertices and adjacency, finite truncations, the embedding of finite
// fragments of K into G, transport and cycle audits, and type-counting upper
// bounds on big Ramsey degrees.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ramseyforge/completion.hpp"
#include "ramseyforge/paramwords.hpp"
#include "ramseyforge/relstruct.hpp"

namespace ramseyforge {

// A G-vertex: a nonempty word of letter indices into sigma(spec).
using Word = PlainWord;

// Canonically ordered alphabet used for all word comparisons. ClassSpec
// already keeps letters in canonical byte-string order, so this is the
// admissibility-filtered letter list.
inline std::vector<Structure> sigma(const ClassSpec& spec) { return alphabet(spec); }

// Vertex condition: all letters of the word agree (up to isomorphism, which
// for letters over a fixed language is equality of the induced one-vertex
// structures) on the structure induced on endpoint 1.
inline bool g_vertex_valid(const Word& word, const ClassSpec& spec,
                           const std::vector<Structure>& sig) {
  if (word.empty()) return false;
  for (int l : word)
    if (l < 0 || l >= static_cast<int>(sig.size()))
      throw InputError("g_vertex_valid: foreign letter index");
  Structure t0 = vertex_type_of(sig[word[0]], 1);
  for (size_t i = 1; i < word.size(); ++i)
    if (vertex_type_of(sig[word[i]], 1) != t0) return false;
  (void)spec;
  return true;
}

// Edge rule of G. For |U| != |V| (shorter word first after ordering): when
// the triangle of letters (U_i, V_|U|, V_i) is defined and admissible for
// every i < |U|, the pair carries letter V_|U| oriented 0 -> shorter,
// 1 -> longer; otherwise, and for equal lengths, the pair is non-adjacent.
// Returns the letter index into sigma, or nullopt.
inline std::optional<int> g_pair(const Word& u_in, const Word& v_in,
                                 const ClassSpec& spec,
                                 const std::vector<Structure>& sig) {
  if (u_in == v_in) throw InputError("g_pair: vertices must be distinct");
  if (!g_vertex_valid(u_in, spec, sig) || !g_vertex_valid(v_in, spec, sig))
    throw InputError("g_pair: invalid vertex");
  if (u_in.size() == v_in.size()) return std::nullopt;
  const Word& u = u_in.size() < v_in.size() ? u_in : v_in;
  const Word& v = u_in.size() < v_in.size() ? v_in : u_in;
  int lu = static_cast<int>(u.size());
  for (int i = 0; i < lu; ++i) {
    auto d = triangle(sig[u[i]], sig[v[lu]], sig[v[i]]);
    if (!d || !spec.triangle_allowed(*d)) return std::nullopt;
  }
  return v[lu];
}

// --- finite truncations -----------------------------------------------------------

struct GTruncation {
  int n = 0;
  std::vector<Structure> sig;
  std::vector<Word> words;  // vertex order: by length, then lexicographic
  Structure structure;
};

namespace detail {

inline std::string word_name(const Word& w, int sigma_size) {
  std::ostringstream os;
  for (size_t i = 0; i < w.size(); ++i) {
    if (sigma_size > 10 && i) os << '.';
    os << w[i];
  }
  return os.str();
}

// Place every tuple of the letter onto (u, v); the edge rule makes the pair
// map an embedding of the letter, so unary tuples and loops come along.
inline void place_letter_embed(Structure& a, const Structure& letter, int u, int v) {
  std::array<int, 2> to{u, v};
  for (int s = 0; s < letter.lang().size(); ++s)
    for (const Tuple& t : letter.tuples(s)) {
      Tuple m;
      for (int x : t) m.push_back(to[x]);
      a.add_tuple(s, std::move(m));
    }
}

}  // namespace detail

// The structure induced by G on all valid words of length <= n.
inline GTruncation g_truncation(const ClassSpec& spec, int n, std::int64_t cap = 20000) {
  if (n < 1) throw InputError("g_truncation: n must be >= 1");
  GTruncation g;
  g.n = n;
  g.sig = sigma(spec);
  int s = static_cast<int>(g.sig.size());

  std::int64_t total = 0, pow = 1;
  for (int l = 1; l <= n; ++l) {
    pow *= s;
    total += pow;
    if (total > cap) throw CapacityError("g_truncation: vertex count exceeds cap");
  }

  Word w;
  auto gen = [&](auto&& self) -> void {
    if (!w.empty() && g_vertex_valid(w, spec, g.sig)) g.words.push_back(w);
    if (static_cast<int>(w.size()) == n) return;
    for (int l = 0; l < s; ++l) {
      w.push_back(l);
      self(self);
      w.pop_back();
    }
  };
  gen(gen);
  std::sort(g.words.begin(), g.words.end(), [](const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });

  std::vector<std::string> names;
  for (const auto& word : g.words) names.push_back(detail::word_name(word, s));
  g.structure = Structure(spec.lang(), std::move(names));
  for (size_t i = 0; i < g.words.size(); ++i)
    for (size_t j = i + 1; j < g.words.size(); ++j) {
      if (g.words[i].size() == g.words[j].size()) continue;
      auto letter = g_pair(g.words[i], g.words[j], spec, g.sig);
      if (letter)
        detail::place_letter_embed(g.structure, g.sig[*letter],
                                   static_cast<int>(i), static_cast<int>(j));
    }
  return g;
}

// --- the embedding of K fragments ---------------------------------------------------

struct PhiMap {
  Structure k_source;       // the finite fragment, externally numbered 1..n
  Structure k_prime;        // extension by a duplicate of vertex 1, completed
  std::vector<Word> words;  // words[i-1] = image of vertex i, length i
};

// Builds the word image of an irreducible admissible fragment: vertex 1 is
// duplicated as vertex 0, the one missing pair completed deterministically,
// and vertex i becomes the length-i word whose letter j is the pair type of
// (j, i) in the extension.
inline PhiMap phi(const Structure& k_n, const ClassSpec& spec) {
  if (k_n.size() < 1) throw InputError("phi: empty fragment");
  if (!is_irreducible(k_n)) throw InputError("phi: fragment must be irreducible");
  if (!spec.irreducible_allowed(k_n))
    throw InputError("phi: fragment is not admissible for the spec");

  int n = k_n.size();
  std::vector<std::string> names;
  for (int i = 0; i <= n; ++i) names.push_back(std::to_string(i));
  Structure kp(spec.lang(), std::move(names));
  // external vertex i = input vertex i-1; vertex 0 duplicates vertex 1
  for (int s = 0; s < k_n.lang().size(); ++s)
    for (const Tuple& t : k_n.tuples(s)) {
      Tuple shifted;
      for (int v : t) shifted.push_back(v + 1);
      kp.add_tuple(s, shifted);
      if (std::find(shifted.begin(), shifted.end(), 1) != shifted.end()) {
        Tuple dup;
        for (int v : shifted) dup.push_back(v == 1 ? 0 : v);
        kp.add_tuple(s, std::move(dup));
      }
    }

  CompletionResult r = complete(kp, spec);
  if (!completed(r))
    throw SpecError("phi: the duplicated fragment failed to complete; the spec "
                    "violates the completion hypothesis");
  PhiMap map;
  map.k_source = k_n;
  map.k_prime = std::get<Completed>(r).result;

  auto sig = sigma(spec);
  for (int i = 1; i <= n; ++i) {
    Word w;
    for (int j = 0; j < i; ++j) {
      int idx = spec.letter_index(induced_relabelled(map.k_prime, {j, i}));
      if (idx < 0)
        throw SpecError("phi: completed fragment contains a pair that is not an "
                        "allowed letter");
      w.push_back(idx);
    }
    map.words.push_back(std::move(w));
  }
  return map;
}

// Re-checks that the word image is an embedding: every pair of image words
// carries in G exactly the pair type of the source, including the full
// triangle admissibility conditions evaluated from scratch.
inline bool verify_phi(const PhiMap& map, const ClassSpec& spec) {
  auto sig = sigma(spec);
  int n = static_cast<int>(map.words.size());
  for (const auto& w : map.words)
    if (!g_vertex_valid(w, spec, sig)) return false;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      auto letter = g_pair(map.words[i - 1], map.words[j - 1], spec, sig);
      int expect = spec.letter_index(induced_relabelled(map.k_prime, {i, j}));
      if (!letter || *letter != expect) return false;
    }
  return true;
}

// --- truncation cycle audit ------------------------------------------------------------

struct CycleAuditReport {
  int n = 0;
  int lmax = 0;
  int truncation_vertices = 0;
  int cycles_checked = 0;
  int uncompletable_cycles = 0;
  int device_failures = 0;  // augmented/merged proof-device structures that failed
  std::vector<std::vector<std::string>> failing_cycles;  // vertex names
};

// Enumerates induced cycles of the truncation and checks each has a
// completion. Also exercises the proof devices: the augmentation D (edges
// from a minimum-length vertex to all longer cycle vertices, using the edge
// rule letter) and the merge E (all minimum-length vertices identified); both
// must complete.
inline CycleAuditReport g_cycle_audit(const ClassSpec& spec, int n, int lmax,
                                      std::int64_t cap = 20000) {
  GTruncation g = g_truncation(spec, n, cap);
  CycleAuditReport rep;
  rep.n = n;
  rep.lmax = lmax;
  rep.truncation_vertices = g.structure.size();

  for (const Cycle& c : induced_cycles(g.structure, lmax)) {
    ++rep.cycles_checked;
    bool ok = cycle_has_completion(g.structure, c, spec);
    if (!ok) {
      ++rep.uncompletable_cycles;
      std::vector<std::string> names;
      for (int v : c.vertices) names.push_back(g.structure.vertex_name(v));
      rep.failing_cycles.push_back(std::move(names));
      continue;
    }

    // rotate so a minimum-length vertex sits at position 0
    int l = c.length();
    int best = 0;
    for (int i = 1; i < l; ++i)
      if (g.words[c.vertices[i]].size() < g.words[c.vertices[best]].size()) best = i;
    std::vector<int> rot;
    for (int i = 0; i < l; ++i) rot.push_back(c.vertices[(best + i) % l]);

    Structure d = induced(g.structure, rot);
    size_t len0 = g.words[rot[0]].size();
    for (int k = 2; k < l; ++k) {
      const Word& wk = g.words[rot[k]];
      if (wk.size() > len0)
        detail::place_letter_embed(d, g.sig[wk[len0]], 0, k);
    }
    bool d_ok = completed(complete(d, spec));

    // identify the set M of minimum-length vertices
    std::vector<int> m_members;
    for (int k = 0; k < l; ++k)
      if (g.words[rot[k]].size() == len0) m_members.push_back(k);
    bool e_ok = true;
    if (m_members.size() > 1) {
      std::vector<int> to_e(l, -1);
      std::vector<std::string> names;
      for (int k = 0; k < l; ++k) {
        if (k > 0 && g.words[rot[k]].size() == len0) { to_e[k] = 0; continue; }
        to_e[k] = static_cast<int>(names.size());
        names.push_back(d.vertex_name(k));
      }
      Structure e(spec.lang(), std::move(names));
      for (int s = 0; s < d.lang().size(); ++s)
        for (const Tuple& t : d.tuples(s)) {
          Tuple mt;
          for (int v : t) mt.push_back(to_e[v]);
          e.add_tuple(s, std::move(mt));
        }
      e_ok = is_homomorphism_embedding(to_e, d, e) && completed(complete(e, spec));
    }
    if (!d_ok || !e_ok) {
      ++rep.device_failures;
      std::vector<std::string> names;
      for (int v : rot) names.push_back(g.structure.vertex_name(v));
      rep.failing_cycles.push_back(std::move(names));
    }
  }
  return rep;
}

// --- transport audit -------------------------------------------------------------------

struct TransportReport {
  int pairs_checked = 0;
  int violations = 0;
  std::vector<std::string> violation_details;
};

namespace detail {

inline std::vector<std::string> index_alphabet(int sigma_size) {
  std::vector<std::string> a;
  for (int i = 0; i < sigma_size; ++i) a.push_back(std::to_string(i));
  return a;
}

inline bool transport_pair_ok(const ClassSpec& spec, const std::vector<Structure>& sig,
                              const ParamWord& w, const Word& u, const Word& v,
                              std::string* why) {
  auto idx_alpha = index_alphabet(static_cast<int>(sig.size()));
  Word wu = substitute(w, ParamWord::plain(idx_alpha, u)).as_plain();
  Word wv = substitute(w, ParamWord::plain(idx_alpha, v)).as_plain();
  if (!g_vertex_valid(wu, spec, sig) || !g_vertex_valid(wv, spec, sig)) {
    if (why) *why = "substituted word is not a valid vertex";
    return false;
  }
  if ((u.size() < v.size()) != (wu.size() < wv.size()) ||
      (u.size() == v.size()) != (wu.size() == wv.size())) {
    if (why) *why = "substitution changed the length order";
    return false;
  }
  auto before = g_pair(u, v, spec, sig);
  auto after = g_pair(wu, wv, spec, sig);
  if (before != after) {
    if (why) *why = "induced pair structure changed under substitution";
    return false;
  }
  return true;
}

}  // namespace detail

// Checks that substitution by an all-parameter word preserves the structure
// induced on vertex pairs. trials == 0 runs exhaustively over all valid
// vertex pairs of length <= n; otherwise samples `trials` pairs.
inline TransportReport transport_check(const ClassSpec& spec, const ParamWord& w,
                                       int n, int trials, std::uint64_t seed,
                                       std::int64_t cap = 20000) {
  if (!w.alphabet().empty())
    throw InputError("transport_check: W must be over the empty alphabet");
  if (w.params() < n)
    throw InputError("transport_check: W needs at least n parameters");
  GTruncation g = g_truncation(spec, n, cap);
  TransportReport rep;

  auto check = [&](const Word& u, const Word& v) {
    ++rep.pairs_checked;
    std::string why;
    if (!detail::transport_pair_ok(spec, g.sig, w, u, v, &why)) {
      ++rep.violations;
      rep.violation_details.push_back(
          detail::word_name(u, static_cast<int>(g.sig.size())) + " / " +
          detail::word_name(v, static_cast<int>(g.sig.size())) + ": " + why);
    }
  };

  if (trials <= 0) {
    for (size_t i = 0; i < g.words.size(); ++i)
      for (size_t j = i + 1; j < g.words.size(); ++j) check(g.words[i], g.words[j]);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, g.words.size() - 1);
    for (int t = 0; t < trials; ++t) {
      size_t i = pick(rng), j = pick(rng);
      if (i == j) { --t; continue; }
      check(g.words[i], g.words[j]);
    }
  }
  return rep;
}

// --- degree bounds --------------------------------------------------------------------

struct DegreeBoundReport {
  int n = 0;
  int subset_size = 0;
  std::vector<int> counts_per_level;  // counts over subsets with word lengths <= m
  std::set<WordSet> types;
  std::map<WordSet, std::vector<Word>> witnesses;  // one copy per type
  bool stabilized = false;
  int bound() const {
    return counts_per_level.empty() ? 0 : counts_per_level.back();
  }
};

// Counts the embedding types realized by copies of A among the vertices of
// the truncation: every k-subset whose induced structure is isomorphic to A,
// viewed as a word set over sigma, classified by tau. The count at
// stabilization is the reported upper bound on the big Ramsey degree of A.
inline DegreeBoundReport degree_upper_bound(const Structure& a, const ClassSpec& spec,
                                            int n, std::int64_t cap = 20000) {
  if (a.lang() != spec.lang()) throw InputError("degree_upper_bound: language mismatch");
  GTruncation g = g_truncation(spec, n, cap);
  DegreeBoundReport rep;
  rep.n = n;
  rep.subset_size = a.size();

  int k = a.size();
  std::string a_canon = canonicalize(a);
  int nv = static_cast<int>(g.words.size());
  std::map<WordSet, int> min_level;  // least max-word-length realizing the type
  std::map<WordSet, std::vector<Word>> witness;

  std::vector<int> idx(k);
  std::int64_t work = 0;
  auto rec = [&](auto&& self, int pos, int from) -> void {
    if (pos == k) {
      std::vector<int> subset(idx.begin(), idx.end());
      if (canonicalize(induced(g.structure, subset)) != a_canon) return;
      WordSet s;
      int level = 0;
      for (int i : subset) {
        s.insert(g.words[i]);
        level = std::max(level, static_cast<int>(g.words[i].size()));
      }
      WordSet t = embedding_type(s);
      auto [it, inserted] = min_level.try_emplace(t, level);
      if (!inserted) it->second = std::min(it->second, level);
      if (inserted) {
        std::vector<Word> copy(s.begin(), s.end());
        witness.emplace(t, std::move(copy));
      }
      return;
    }
    for (int i = from; i < nv; ++i) {
      if (++work > cap * 64)
        throw CapacityError("degree_upper_bound: subset enumeration exceeds cap");
      idx[pos] = i;
      self(self, pos + 1, i + 1);
    }
  };
  if (nv >= k) rec(rec, 0, 0);

  for (int m = 1; m <= n; ++m) {
    int count = 0;
    for (const auto& [t, lvl] : min_level)
      if (lvl <= m) ++count;
    rep.counts_per_level.push_back(count);
  }
  for (const auto& [t, lvl] : min_level) rep.types.insert(t);
  rep.witnesses = std::move(witness);
  rep.stabilized = n >= 2 &&
                   rep.counts_per_level[n - 1] == rep.counts_per_level[n - 2];
  return rep;
}

}  // namespace ramseyforge
