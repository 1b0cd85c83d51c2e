#pragma once

// Brute-force reference computations used to cross-check the metrics.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace oracle {

using Tokens = std::vector<std::string>;

// Plain recursive edit distance, exponential.
inline std::size_t edit_distance(const Tokens& a, std::size_t i, const Tokens& b, std::size_t j) {
  if (i == a.size()) return b.size() - j;
  if (j == b.size()) return a.size() - i;
  if (a[i] == b[j]) return edit_distance(a, i + 1, b, j + 1);
  return 1 + std::min({edit_distance(a, i + 1, b, j), edit_distance(a, i, b, j + 1),
                       edit_distance(a, i + 1, b, j + 1)});
}

inline std::size_t edit_distance(const Tokens& a, const Tokens& b) {
  return edit_distance(a, 0, b, 0);
}

// Longest common subsequence by enumerating every subsequence of `a`.
inline std::size_t lcs(const Tokens& a, const Tokens& b) {
  std::size_t best = 0;
  const std::size_t n = a.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::size_t len = 0;
    std::size_t j = 0;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      while (j < b.size() && b[j] != a[i]) ++j;
      if (j == b.size()) ok = false;
      else {
        ++len;
        ++j;
      }
    }
    if (ok) best = std::max(best, len);
  }
  return best;
}

struct Alignment {
  std::size_t exact = 0;
  std::size_t matches = 0;
  std::size_t chunks = 0;
};

// Every one-to-one matching whose pairs share a lemma; keeps the one with
// the most exact pairs, then the most pairs, then the fewest chunks.
inline Alignment meteor(const Tokens& h, const Tokens& r,
                        const std::function<std::string(const std::string&)>& lemma) {
  std::vector<std::string> hl;
  std::vector<std::string> rl;
  for (const auto& t : h) hl.push_back(lemma(t));
  for (const auto& t : r) rl.push_back(lemma(t));
  std::vector<int> assign(h.size(), -1);
  std::vector<bool> used(r.size(), false);
  Alignment best;
  bool have = false;
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j == h.size()) {
      Alignment a;
      for (std::size_t k = 0; k < h.size(); ++k) {
        if (assign[k] < 0) continue;
        ++a.matches;
        if (h[k] == r[static_cast<std::size_t>(assign[k])]) ++a.exact;
        if (k == 0 || assign[k - 1] < 0 || assign[k - 1] + 1 != assign[k]) ++a.chunks;
      }
      const bool better = !have || a.exact > best.exact ||
                          (a.exact == best.exact && a.matches > best.matches) ||
                          (a.exact == best.exact && a.matches == best.matches && a.chunks < best.chunks);
      if (better) {
        best = a;
        have = true;
      }
      return;
    }
    rec(j + 1);
    for (std::size_t q = 0; q < r.size(); ++q) {
      if (used[q] || hl[j] != rl[q]) continue;
      used[q] = true;
      assign[j] = static_cast<int>(q);
      rec(j + 1);
      assign[j] = -1;
      used[q] = false;
    }
  };
  rec(0);
  return best;
}

}  // namespace oracle
