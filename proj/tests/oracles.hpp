#pragma once

// Independent test oracles. These deliberately avoid the library's algorithms:
// induced cycles by subset enumeration, metric completion by exhaustive CSP,
// envelopes by enumeration of all-parameter words checked through substitute().

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "ramseyforge/completion.hpp"
#include "ramseyforge/paramwords.hpp"
#include "ramseyforge/relstruct.hpp"

namespace oracles {

using namespace ramseyforge;

// --- induced cycles by subset enumeration -------------------------------------

// A vertex subset spans an induced cycle iff the induced Gaifman graph is
// 2-regular and connected. Induced cycles are determined by their vertex set.
inline std::set<std::set<int>> induced_cycle_sets(const Structure& a, int lmax) {
  std::set<std::set<int>> out;
  int n = a.size();
  std::vector<int> subset;
  auto consider = [&]() {
    int k = static_cast<int>(subset.size());
    std::vector<int> deg(k, 0);
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        if (a.adjacent(subset[i], subset[j])) { ++deg[i]; ++deg[j]; }
    for (int d : deg)
      if (d != 2) return;
    // connectivity of the 2-regular graph
    std::vector<bool> seen(k, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int reached = 1;
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      for (int j = 0; j < k; ++j)
        if (!seen[j] && a.adjacent(subset[i], subset[j])) {
          seen[j] = true;
          ++reached;
          stack.push_back(j);
        }
    }
    if (reached == k) out.insert(std::set<int>(subset.begin(), subset.end()));
  };
  auto rec = [&](auto&& self, int from) -> void {
    int k = static_cast<int>(subset.size());
    if (k >= 3) consider();
    if (k == lmax) return;
    for (int v = from; v < n; ++v) {
      subset.push_back(v);
      self(self, v + 1);
      subset.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// --- exhaustive metric CSP ------------------------------------------------------

// Partial metric space as a symmetric distance matrix; 0 = missing.
struct PartialMetric {
  int n = 0;
  std::vector<std::vector<int>> d;  // d[u][v] in {0} + S
  explicit PartialMetric(int n_) : n(n_), d(n_, std::vector<int>(n_, 0)) {}
};

inline bool metric_triangles_ok(const std::vector<std::vector<int>>& d, int n) {
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        int x = d[a][b], y = d[b][c], z = d[a][c];
        if (!x || !y || !z) continue;
        if (x > y + z || y > x + z || z > x + y) return false;
      }
  return true;
}

// True iff some assignment of S-values to the missing pairs satisfies every
// triangle inequality. Plain backtracking; no shortest-path insight.
inline bool metric_csp_completable(const PartialMetric& pm, const std::vector<int>& s) {
  std::vector<std::pair<int, int>> missing;
  for (int u = 0; u < pm.n; ++u)
    for (int v = u + 1; v < pm.n; ++v)
      if (pm.d[u][v] == 0) missing.push_back({u, v});
  std::vector<std::vector<int>> d = pm.d;
  auto rec = [&](auto&& self, size_t i) -> bool {
    if (i == missing.size()) return metric_triangles_ok(d, pm.n);
    auto [u, v] = missing[i];
    for (int val : s) {
      d[u][v] = d[v][u] = val;
      bool ok = true;  // prune: triangles fully decided so far
      for (int w = 0; w < pm.n && ok; ++w) {
        if (w == u || w == v) continue;
        int x = d[u][w], y = d[v][w];
        if (!x || !y) continue;
        if (val > x + y || x > val + y || y > val + x) ok = false;
      }
      if (ok && self(self, i + 1)) return true;
    }
    d[u][v] = d[v][u] = 0;
    return false;
  };
  return rec(rec, 0);
}

inline PartialMetric metric_from_structure(const Structure& a, const std::vector<int>& s) {
  PartialMetric pm(a.size());
  for (int u = 0; u < a.size(); ++u)
    for (int v = u + 1; v < a.size(); ++v)
      for (int val : s) {
        int sym = a.lang().index_of("d" + std::to_string(val));
        if (sym >= 0 && (a.has_tuple(sym, {u, v}) || a.has_tuple(sym, {v, u})))
          pm.d[u][v] = pm.d[v][u] = val;
      }
  return pm;
}

// Full validity of a claimed completion: every pair has exactly one distance,
// values in S, all triangle inequalities hold, and the input's distances are
// untouched.
inline bool metric_completion_valid(const Structure& input, const Structure& result,
                                    const std::vector<int>& s) {
  if (result.size() != input.size()) return false;
  PartialMetric in = metric_from_structure(input, s);
  PartialMetric res = metric_from_structure(result, s);
  for (int u = 0; u < in.n; ++u)
    for (int v = u + 1; v < in.n; ++v) {
      if (res.d[u][v] == 0) return false;
      if (in.d[u][v] != 0 && in.d[u][v] != res.d[u][v]) return false;
      int count = 0;
      for (int val : s) {
        int sym = result.lang().index_of("d" + std::to_string(val));
        if (sym >= 0 &&
            (result.has_tuple(sym, {u, v}) || result.has_tuple(sym, {v, u})))
          ++count;
      }
      if (count != 1) return false;
    }
  return metric_triangles_ok(res.d, res.n);
}

// --- envelopes by enumeration ----------------------------------------------------

// All parameter words over the empty alphabet with the exact length: the
// restricted-growth strings, encoded as ParamWords.
inline std::vector<ParamWord> all_param_words_empty(int length) {
  std::vector<ParamWord> out;
  std::vector<int> entries;
  auto rec = [&](auto&& self, int maxp) -> void {
    if (static_cast<int>(entries.size()) == length) {
      out.emplace_back(std::vector<std::string>{}, entries);
      return;
    }
    for (int p = 0; p <= maxp + 1; ++p) {
      entries.push_back(-(p + 1));
      self(self, std::max(maxp, p));
      entries.pop_back();
    }
  };
  rec(rec, -1);
  return out;
}

// Whether s has a preimage under the all-parameter word w (some plain word u
// over the given alphabet with w(u) = s), checked through substitute().
inline std::optional<PlainWord> preimage(const ParamWord& w, const PlainWord& s,
                                         const std::vector<std::string>& alphabet) {
  // reconstruct the candidate u of each length m, verify by substitution
  for (int m = 0; m <= w.params(); ++m) {
    PlainWord u(m, -1);
    bool ok = true;
    for (int i = 0; i < w.length() && ok; ++i) {
      int p = w.param_index(i);
      if (p >= m) break;  // truncation point
      if (i >= static_cast<int>(s.size())) { ok = false; break; }
      if (u[p] < 0) u[p] = s[i];
      else if (u[p] != s[i]) ok = false;
    }
    if (!ok) continue;
    for (int& l : u)
      if (l < 0) l = 0;  // parameter never read before truncation: any letter
    ParamWord up = ParamWord::plain(alphabet, u);
    if (substitute(w, up).as_plain() == s) return u;
  }
  return std::nullopt;
}

struct OracleEnvelope {
  int d = 0;
  ParamWord envelope;
  WordSet type;
};

// Minimal envelope by exhaustive enumeration: all-parameter words of length
// 1..maxlen(S)+1, minimal parameter count such that every word of S has a
// preimage. The type is the set of preimages (unique per word, see tests).
inline std::optional<OracleEnvelope> minimal_envelope_oracle(
    const WordSet& s, const std::vector<std::string>& alphabet) {
  int maxlen = 0;
  for (const auto& w : s) maxlen = std::max(maxlen, static_cast<int>(w.size()));
  std::optional<OracleEnvelope> best;
  for (int len = 1; len <= maxlen + 1; ++len)
    for (const auto& w : all_param_words_empty(len)) {
      if (best && w.params() >= best->d) continue;
      WordSet type;
      bool ok = true;
      for (const auto& word : s) {
        auto u = preimage(w, word, alphabet);
        if (!u) { ok = false; break; }
        type.insert(*u);
      }
      if (ok) best = OracleEnvelope{w.params(), w, std::move(type)};
    }
  return best;
}

}  // namespace oracles
