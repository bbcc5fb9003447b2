#pragma once

// Parameter words over a finite alphabet: validation, substitution, minimal
// envelopes and embedding types, type catalogues, and a desk-scale finite
// monochromatic search.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ramseyforge/relstruct.hpp"  // error types

namespace ramseyforge {

// A plain word: sequence of letter indices into some alphabet.
using PlainWord = std::vector<int>;
using WordSet = std::set<PlainWord>;

// String over an alphabet plus parameters _0, _1, ... whose first occurrences
// appear in increasing order. Entries >= 0 are letter indices; entry -(i+1)
// denotes parameter i. A 0-parameter word is a plain word.
class ParamWord {
 public:
  ParamWord() = default;
  ParamWord(std::vector<std::string> alphabet, std::vector<int> entries)
      : alphabet_(std::move(alphabet)), entries_(std::move(entries)) {
    int next = 0;
    for (int e : entries_) {
      if (e >= 0) {
        if (e >= static_cast<int>(alphabet_.size()))
          throw InputError("param word: letter index out of range");
      } else {
        int p = -e - 1;
        if (p > next)
          throw InputError("param word: first occurrence of _" + std::to_string(p) +
                           " before _" + std::to_string(p - 1));
        if (p == next) ++next;
      }
    }
    params_ = next;
  }

  static ParamWord plain(std::vector<std::string> alphabet, const PlainWord& w) {
    return ParamWord(std::move(alphabet), std::vector<int>(w.begin(), w.end()));
  }

  int length() const { return static_cast<int>(entries_.size()); }
  int params() const { return params_; }
  bool is_word() const { return params_ == 0; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::vector<int>& entries() const { return entries_; }

  bool is_param(int i) const { return entries_.at(i) < 0; }
  int param_index(int i) const { return -entries_.at(i) - 1; }
  int letter(int i) const { return entries_.at(i); }

  PlainWord as_plain() const {
    if (!is_word()) throw InputError("param word is not a plain word");
    return PlainWord(entries_.begin(), entries_.end());
  }

  // Text format: letters as alphabet tokens, parameters as _0, _1, ...
  std::string str() const {
    std::ostringstream os;
    for (int i = 0; i < length(); ++i) {
      if (i) os << ' ';
      if (is_param(i)) os << '_' << param_index(i);
      else os << alphabet_.at(entries_[i]);
    }
    return os.str();
  }

  static ParamWord parse(const std::string& text, std::vector<std::string> alphabet) {
    std::istringstream is(text);
    std::vector<int> entries;
    std::string tok;
    while (is >> tok) {
      if (tok.size() >= 2 && tok[0] == '_') {
        entries.push_back(-(std::stoi(tok.substr(1)) + 1));
      } else {
        auto it = std::find(alphabet.begin(), alphabet.end(), tok);
        if (it == alphabet.end())
          throw InputError("param word: unknown letter token '" + tok + "'");
        entries.push_back(static_cast<int>(it - alphabet.begin()));
      }
    }
    return ParamWord(std::move(alphabet), std::move(entries));
  }

  bool operator==(const ParamWord&) const = default;
  auto operator<=>(const ParamWord&) const = default;

 private:
  std::vector<std::string> alphabet_;
  std::vector<int> entries_;
  int params_ = 0;
};

// W(U): replace each occurrence of _i (i < |U|) by U_i and truncate just
// before the first occurrence of _|U| in W. No truncation when |U| equals
// W's parameter count. Requires |U| <= params(W).
inline ParamWord substitute(const ParamWord& w, const ParamWord& u) {
  int k = u.length();
  if (k > w.params())
    throw InputError("substitute: |U| exceeds the parameter count of W");
  std::vector<std::string> alphabet =
      w.alphabet().empty() ? u.alphabet() : w.alphabet();
  if (!u.alphabet().empty() && !w.alphabet().empty() && u.alphabet() != w.alphabet())
    throw InputError("substitute: alphabet mismatch");

  std::vector<int> out;
  for (int i = 0; i < w.length(); ++i) {
    if (!w.is_param(i)) {
      out.push_back(w.letter(i));
      continue;
    }
    int p = w.param_index(i);
    if (p == k) break;  // truncate just before the first occurrence of _k
    out.push_back(u.entries().at(p));
  }
  return ParamWord(std::move(alphabet), std::move(out));
}

inline WordSet substitute_set(const ParamWord& w, const WordSet& s) {
  WordSet out;
  for (const auto& u : s)
    out.insert(substitute(w, ParamWord::plain(w.alphabet(), u)).as_plain());
  return out;
}

// Sanity law for the substitution calculus: W(U)(V) == W(U(V)).
inline bool compose_check(const ParamWord& w, const ParamWord& u, const ParamWord& v) {
  if (u.length() > w.params() || v.length() > u.params())
    throw InputError("compose_check: incompatible dimensions");
  return substitute(substitute(w, u), v) == substitute(w, substitute(u, v));
}

// --- envelopes ----------------------------------------------------------------

struct EnvelopeResult {
  ParamWord envelope;  // over the empty alphabet, d parameters
  WordSet type;        // tau: plain words over the original alphabet
  int d = 0;
};

namespace detail {

// A candidate envelope of S is a partition of positions 0..maxlen-1 into
// parameter classes, written as a restricted growth string. Validity:
//  (a) positions p < q in one class agree on every word longer than q;
//  (b) for every word s shorter than maxlen, position |s| starts a new class
//      (so the truncation of s's type word lands exactly at |s|).
// Every envelope over the empty alphabet of minimal d has length exactly
// maxlen and is of this shape.
struct EnvelopeSearch {
  const std::vector<PlainWord>& words;
  int maxlen;
  std::vector<bool> must_start_new;          // (b)
  std::vector<std::vector<bool>> can_merge;  // (a), pairwise

  explicit EnvelopeSearch(const std::vector<PlainWord>& ws)
      : words(ws), maxlen(0) {
    for (const auto& s : words) maxlen = std::max(maxlen, static_cast<int>(s.size()));
    must_start_new.assign(maxlen, false);
    for (const auto& s : words)
      if (static_cast<int>(s.size()) < maxlen) must_start_new[s.size()] = true;
    can_merge.assign(maxlen, std::vector<bool>(maxlen, true));
    for (int p = 0; p < maxlen; ++p)
      for (int q = p + 1; q < maxlen; ++q) {
        for (const auto& s : words)
          if (q < static_cast<int>(s.size()) && s[p] != s[q]) {
            can_merge[p][q] = false;
            break;
          }
        if (must_start_new[q]) can_merge[p][q] = false;
      }
  }

  // enumerate all valid partitions with exactly the minimal class count;
  // RGS order makes the enumeration deterministic
  void enumerate(int class_cap, std::vector<std::vector<int>>& out) const {
    std::vector<int> rgs(maxlen, -1);
    std::vector<std::vector<int>> members;  // positions per class
    auto rec = [&](auto&& self, int pos) -> void {
      if (pos == maxlen) {
        out.push_back(rgs);
        return;
      }
      int limit = must_start_new[pos] ? 0 : static_cast<int>(members.size());
      for (int c = 0; c < limit; ++c) {
        bool ok = true;
        for (int p : members[c])
          if (!can_merge[p][pos]) { ok = false; break; }
        if (!ok) continue;
        rgs[pos] = c;
        members[c].push_back(pos);
        self(self, pos + 1);
        members[c].pop_back();
      }
      if (static_cast<int>(members.size()) < class_cap) {
        rgs[pos] = static_cast<int>(members.size());
        members.push_back({pos});
        self(self, pos + 1);
        members.pop_back();
      }
      rgs[pos] = -1;
    };
    rec(rec, 0);
  }

  int minimal_d() const {
    for (int d = 1; d <= maxlen; ++d) {
      std::vector<std::vector<int>> found;
      enumerate(d, found);
      if (!found.empty()) return d;
    }
    return maxlen;  // unreachable: the all-singleton partition is always valid
  }
};

inline EnvelopeResult envelope_from_rgs(const std::vector<int>& rgs,
                                        const std::vector<PlainWord>& words) {
  int maxlen = static_cast<int>(rgs.size());
  int d = 0;
  for (int c : rgs) d = std::max(d, c + 1);
  std::vector<int> first_occ(d, -1);
  for (int p = 0; p < maxlen; ++p)
    if (first_occ[rgs[p]] < 0) first_occ[rgs[p]] = p;

  std::vector<int> entries;
  for (int p = 0; p < maxlen; ++p) entries.push_back(-(rgs[p] + 1));
  ParamWord envelope({}, std::move(entries));

  WordSet type;
  for (const auto& s : words) {
    int len = static_cast<int>(s.size());
    PlainWord u;
    for (int c = 0; c < d && first_occ[c] < len; ++c) u.push_back(s[first_occ[c]]);
    type.insert(std::move(u));
  }
  return EnvelopeResult{std::move(envelope), std::move(type), d};
}

}  // namespace detail

// Minimal envelope of a finite nonempty set of plain words, with its
// embedding type tau. Deterministic: the lexicographically first minimal
// partition is returned. Soundness is re-checked through the substitution
// calculus before returning.
inline EnvelopeResult minimal_envelope(const WordSet& s,
                                       std::vector<std::string> alphabet = {}) {
  if (s.empty()) throw InputError("minimal_envelope: empty set");
  for (const auto& w : s)
    if (w.empty()) throw InputError("minimal_envelope: empty words are not supported");
  std::vector<PlainWord> words(s.begin(), s.end());
  detail::EnvelopeSearch search(words);
  int d = search.minimal_d();
  std::vector<std::vector<int>> found;
  search.enumerate(d, found);
  EnvelopeResult res = detail::envelope_from_rgs(found.front(), words);

  if (alphabet.empty()) {
    int maxletter = 0;
    for (const auto& w : s)
      for (int l : w) maxletter = std::max(maxletter, l + 1);
    for (int i = 0; i < maxletter; ++i) alphabet.push_back("a" + std::to_string(i));
  }
  WordSet image;
  for (const auto& u : res.type)
    image.insert(substitute(res.envelope, ParamWord::plain(alphabet, u)).as_plain());
  if (image != s)
    throw SpecError("minimal_envelope: internal soundness check failed");
  return res;
}

// All minimal envelopes of S (partitions of minimal class count). Used to
// check that the embedding type does not depend on the envelope choice.
inline std::vector<EnvelopeResult> all_minimal_envelopes(const WordSet& s) {
  if (s.empty()) throw InputError("all_minimal_envelopes: empty set");
  for (const auto& w : s)
    if (w.empty()) throw InputError("all_minimal_envelopes: empty words are not supported");
  std::vector<PlainWord> words(s.begin(), s.end());
  detail::EnvelopeSearch search(words);
  int d = search.minimal_d();
  std::vector<std::vector<int>> found;
  search.enumerate(d, found);
  std::vector<EnvelopeResult> out;
  for (const auto& rgs : found) out.push_back(detail::envelope_from_rgs(rgs, words));
  return out;
}

// tau(S): the embedding type under a minimal envelope. Well defined across
// minimal envelopes; that invariance is exercised by the test suite.
inline WordSet embedding_type(const WordSet& s) { return minimal_envelope(s).type; }

// --- type catalogues ------------------------------------------------------------

struct TypeCatalog {
  int alphabet_size = 0;
  int set_size = 0;
  int length_bound = 0;
  std::set<WordSet> types;
  std::vector<int> counts_per_bound;  // counts_per_bound[b-1] = count at bound b
  bool stabilized = false;
};

namespace detail {

inline void all_words_up_to(int sigma, int bound, std::vector<PlainWord>& out) {
  PlainWord w;
  auto rec = [&](auto&& self) -> void {
    if (!w.empty()) out.push_back(w);
    if (static_cast<int>(w.size()) == bound) return;
    for (int l = 0; l < sigma; ++l) {
      w.push_back(l);
      self(self);
      w.pop_back();
    }
  };
  rec(rec);
}

inline WordSet rename_first_occurrence(const WordSet& type) {
  std::map<int, int> remap;
  for (const auto& w : type)  // deterministic: set order
    for (int l : w)
      if (!remap.count(l)) remap[l] = static_cast<int>(remap.size());
  WordSet out;
  for (const auto& w : type) {
    PlainWord m;
    for (int l : w) m.push_back(remap[l]);
    out.insert(std::move(m));
  }
  return out;
}

}  // namespace detail

// Enumerates all size-k sets of nonempty words with lengths <= bound and
// collects their embedding types, reporting stabilization across increasing
// bounds. An empirical witness that there are only finitely many types.
inline TypeCatalog enumerate_types(int sigma, int k, int bound,
                                   bool canonical_renaming = false,
                                   std::int64_t cap = 5'000'000) {
  if (k < 1) throw InputError("enumerate_types: k must be >= 1");
  if (bound < 1) throw InputError("enumerate_types: bound must be >= 1");
  if (sigma < 1) throw InputError("enumerate_types: alphabet must be nonempty");
  TypeCatalog cat;
  cat.alphabet_size = sigma;
  cat.set_size = k;
  cat.length_bound = bound;

  std::int64_t work = 0;
  for (int b = 1; b <= bound; ++b) {
    std::vector<PlainWord> words;
    detail::all_words_up_to(sigma, b, words);
    int n = static_cast<int>(words.size());
    // all k-subsets of words
    std::vector<int> idx(k);
    auto rec = [&](auto&& self, int pos, int from) -> void {
      if (pos == k) {
        WordSet s;
        for (int i : idx) s.insert(words[i]);
        WordSet t = embedding_type(s);
        if (canonical_renaming) t = detail::rename_first_occurrence(t);
        cat.types.insert(std::move(t));
        return;
      }
      for (int i = from; i < n; ++i) {
        if (++work > cap)
          throw CapacityError("enumerate_types: resource cap exceeded (partial "
                              "catalog would be unstabilized)");
        idx[pos] = i;
        self(self, pos + 1, i + 1);
      }
    };
    if (n >= k) rec(rec, 0, 0);
    cat.counts_per_bound.push_back(static_cast<int>(cat.types.size()));
  }
  int m = static_cast<int>(cat.counts_per_bound.size());
  cat.stabilized = m >= 2 && cat.counts_per_bound[m - 1] == cat.counts_per_bound[m - 2];
  return cat;
}

// --- finite monochromatic search ---------------------------------------------------

struct MonoReport {
  int sigma = 0, k = 0, colours = 0, n = 0;
  bool every_colouring_has_witness = false;
  std::int64_t colourings_checked = 0;
  std::vector<std::string> objects;          // coloured objects, index order
  std::vector<int> defeating_colouring;      // empty when none found
  int minimal_n = -1;  // least n' <= n at which every colouring admits a witness
};

namespace detail {

// all parameter words over an alphabet of size sigma with the given length
// and parameter count in [min_params, max_params]
inline std::vector<ParamWord> all_param_words(int sigma, int length, int min_params,
                                              int max_params) {
  std::vector<std::string> alphabet;
  for (int i = 0; i < sigma; ++i) alphabet.push_back(std::string(1, char('a' + i)));
  std::vector<ParamWord> out;
  std::vector<int> entries;
  auto rec = [&](auto&& self, int maxp) -> void {
    if (static_cast<int>(entries.size()) == length) {
      if (maxp + 1 >= min_params) out.emplace_back(alphabet, entries);
      return;
    }
    for (int l = 0; l < sigma; ++l) {
      entries.push_back(l);
      self(self, maxp);
      entries.pop_back();
    }
    for (int p = 0; p <= std::min(maxp + 1, max_params - 1); ++p) {
      entries.push_back(-(p + 1));
      self(self, std::max(maxp, p));
      entries.pop_back();
    }
  };
  rec(rec, -1);
  return out;
}

}  // namespace detail

// Desk-scale shadow of the dual Ramsey statement: for every colouring of the
// k-parameter words of length n over sigma letters, search for a parameter
// word W of the same length with more than k parameters whose substitution
// image is monochromatic. Tiny enforced caps.
inline MonoReport monochromatic_search(int sigma, int k, int colours, int n) {
  if (sigma < 1 || sigma > 2 || n < 1 || n > 4 || colours < 1 || colours > 2 || k < 0)
    throw CapacityError("monochromatic_search: instance exceeds the enforced caps");
  MonoReport rep;
  rep.sigma = sigma;
  rep.k = k;
  rep.colours = colours;
  rep.n = n;

  auto run = [&](int len, MonoReport* fill) -> bool {
    std::vector<ParamWord> objects = detail::all_param_words(sigma, len, k, k);
    std::vector<ParamWord> witnesses;
    for (int m = k + 1; m <= len; ++m)
      for (const auto& w : detail::all_param_words(sigma, len, m, m))
        witnesses.push_back(w);
    if (fill)
      for (const auto& o : objects) fill->objects.push_back(o.str());

    int nobj = static_cast<int>(objects.size());
    if (nobj == 0) return true;
    double space = std::pow(static_cast<double>(colours), nobj);
    if (space > (1 << 20))
      throw CapacityError("monochromatic_search: colouring space exceeds the cap");
    auto index_of = [&](const ParamWord& w) {
      for (int i = 0; i < nobj; ++i)
        if (objects[i] == w) return i;
      return -1;
    };
    // image object indices per witness
    std::vector<std::vector<int>> images;
    for (const auto& w : witnesses) {
      std::vector<int> img;
      for (const auto& u : detail::all_param_words(sigma, w.params(), k, k)) {
        int idx = index_of(substitute(w, u));
        if (idx < 0) { img.clear(); break; }  // image leaves the coloured set
        img.push_back(idx);
      }
      if (!img.empty()) images.push_back(std::move(img));
    }

    std::vector<int> colouring(nobj, 0);
    std::int64_t total = static_cast<std::int64_t>(space);
    for (std::int64_t c = 0; c < total; ++c) {
      std::int64_t x = c;
      for (int i = 0; i < nobj; ++i) {
        colouring[i] = static_cast<int>(x % colours);
        x /= colours;
      }
      if (fill) ++fill->colourings_checked;
      bool witnessed = false;
      for (const auto& img : images) {
        int col = colouring[img[0]];
        bool mono = true;
        for (int i : img)
          if (colouring[i] != col) { mono = false; break; }
        if (mono) { witnessed = true; break; }
      }
      if (!witnessed) {
        if (fill) fill->defeating_colouring = colouring;
        return false;
      }
    }
    return true;
  };

  rep.every_colouring_has_witness = run(n, &rep);
  for (int np = 1; np <= n; ++np) {
    if (run(np, nullptr)) { rep.minimal_n = np; break; }
  }
  return rep;
}

}  // namespace ramseyforge
