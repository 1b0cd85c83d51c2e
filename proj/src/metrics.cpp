#include "glosskit/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include "glosskit/error.hpp"
#include "glosskit/utf8.hpp"

namespace glosskit {

namespace {

TokenList lowered(const Sentence& s) {
  TokenList out;
  out.reserve(s.tokens.size());
  for (const auto& t : s.tokens) out.push_back(utf8::to_lower(t.surface));
  return out;
}

TokenList as_is(const Sentence& s) { return s.surfaces(); }

void check_lengths(std::size_t hyps, std::size_t refs, std::string_view metric) {
  if (hyps != refs) {
    throw InvalidArgument(std::string(metric) + ": hypothesis/reference count mismatch (" +
                          std::to_string(hyps) + " vs " + std::to_string(refs) + ")");
  }
}

}  // namespace

EditOps& EditOps::operator+=(const EditOps& o) {
  insertions += o.insertions;
  deletions += o.deletions;
  substitutions += o.substitutions;
  matches += o.matches;
  ref_len += o.ref_len;
  return *this;
}

nlohmann::json MetricReport::to_json() const {
  nlohmann::json j;
  j["metric"] = metric;
  j["score"] = score;
  j["params"] = params;
  j["counts"] = counts;
  if (per_sentence) j["per_sentence"] = *per_sentence;
  return j;
}

// ---------------------------------------------------------------------------
// Edit distance

EditOps edit_ops(const TokenList& hyp, const TokenList& ref) {
  const std::size_t m = ref.size();
  const std::size_t n = hyp.size();
  const std::size_t w = n + 1;
  std::vector<std::size_t> d((m + 1) * w);
  for (std::size_t i = 0; i <= m; ++i) d[i * w] = i;
  for (std::size_t j = 0; j <= n; ++j) d[j] = j;
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      const std::size_t diag = d[(i - 1) * w + j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      const std::size_t del = d[(i - 1) * w + j] + 1;
      const std::size_t ins = d[i * w + j - 1] + 1;
      d[i * w + j] = std::min({diag, del, ins});
    }
  }

  EditOps ops;
  ops.ref_len = m;
  std::size_t i = m;
  std::size_t j = n;
  while (i > 0 || j > 0) {
    const std::size_t cur = d[i * w + j];
    if (i > 0 && j > 0) {
      const bool same = ref[i - 1] == hyp[j - 1];
      const std::size_t diag = d[(i - 1) * w + j - 1];
      if (same && cur == diag) {
        ++ops.matches;
        --i;
        --j;
        continue;
      }
      if (!same && cur == diag + 1) {
        ++ops.substitutions;
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && cur == d[(i - 1) * w + j] + 1) {
      ++ops.deletions;
      --i;
      continue;
    }
    ++ops.insertions;
    --j;
  }
  return ops;
}

EditOps edit_ops(const Sentence& hyp, const Sentence& ref) {
  return edit_ops(lowered(hyp), lowered(ref));
}

WerReport corpus_wer(std::span<const Sentence> hyps,
                     std::span<const Sentence> refs) {
  check_lengths(hyps.size(), refs.size(), "wer");
  if (hyps.empty()) throw InvalidArgument("wer: empty sentence list");

  WerReport r;
  double macro_sum = 0.0;
  std::size_t macro_n = 0;
  std::vector<double> per;
  per.reserve(hyps.size());
  for (std::size_t k = 0; k < hyps.size(); ++k) {
    const EditOps ops = edit_ops(hyps[k], refs[k]);
    r.totals += ops;
    if (ops.ref_len == 0) {
      ++r.empty_refs;
      continue;
    }
    const double wer = 100.0 * static_cast<double>(ops.cost()) /
                       static_cast<double>(ops.ref_len);
    per.push_back(wer);
    macro_sum += wer;
    ++macro_n;
  }
  if (r.totals.ref_len == 0) {
    throw InvalidArgument("wer: every reference is empty");
  }

  nlohmann::json counts = {
      {"sentences", hyps.size()},
      {"empty_refs", r.empty_refs},
      {"insertions", r.totals.insertions},
      {"deletions", r.totals.deletions},
      {"substitutions", r.totals.substitutions},
      {"matches", r.totals.matches},
      {"ref_tokens", r.totals.ref_len},
  };
  r.pooled.metric = "wer";
  r.pooled.score = 100.0 * static_cast<double>(r.totals.cost()) /
                   static_cast<double>(r.totals.ref_len);
  r.pooled.params = {{"aggregation", "pooled"}, {"case", "insensitive"}};
  r.pooled.counts = counts;

  r.macro.metric = "wer";
  r.macro.score = macro_n ? macro_sum / static_cast<double>(macro_n) : 0.0;
  r.macro.params = {{"aggregation", "macro"}, {"case", "insensitive"}};
  r.macro.counts = counts;
  r.macro.per_sentence = std::move(per);
  return r;
}

// ---------------------------------------------------------------------------
// BLEU

namespace {

using NgramCounts = std::unordered_map<std::string, std::size_t>;

NgramCounts ngrams(const TokenList& toks, std::size_t n) {
  NgramCounts out;
  if (toks.size() < n) return out;
  for (std::size_t i = 0; i + n <= toks.size(); ++i) {
    std::string key = toks[i];
    for (std::size_t k = 1; k < n; ++k) {
      key.push_back('\x1f');
      key += toks[i + k];
    }
    ++out[key];
  }
  return out;
}

}  // namespace

MetricReport bleu4(const std::vector<TokenList>& hyps,
                   const std::vector<TokenList>& refs) {
  check_lengths(hyps.size(), refs.size(), "bleu");
  std::array<std::size_t, 4> matched{};
  std::array<std::size_t, 4> total{};
  std::size_t hyp_len = 0;
  std::size_t ref_len = 0;
  for (std::size_t k = 0; k < hyps.size(); ++k) {
    hyp_len += hyps[k].size();
    ref_len += refs[k].size();
    for (std::size_t n = 1; n <= 4; ++n) {
      const NgramCounts h = ngrams(hyps[k], n);
      const NgramCounts r = ngrams(refs[k], n);
      for (const auto& [g, c] : h) {
        total[n - 1] += c;
        auto it = r.find(g);
        if (it != r.end()) matched[n - 1] += std::min(c, it->second);
      }
    }
  }
  if (ref_len == 0) throw InvalidArgument("bleu: every reference is empty");

  double log_sum = 0.0;
  bool zero = hyp_len == 0;
  std::array<double, 4> precisions{};
  for (std::size_t n = 0; n < 4; ++n) {
    precisions[n] = total[n] ? 100.0 * static_cast<double>(matched[n]) /
                                   static_cast<double>(total[n])
                             : 0.0;
    if (matched[n] == 0) {
      zero = true;
    } else {
      log_sum += std::log(static_cast<double>(matched[n]) /
                          static_cast<double>(total[n]));
    }
  }
  double bp = 1.0;
  if (hyp_len == 0) {
    bp = 0.0;
  } else if (hyp_len < ref_len) {
    bp = std::exp(1.0 - static_cast<double>(ref_len) / static_cast<double>(hyp_len));
  }

  MetricReport r;
  r.metric = "bleu";
  r.score = zero ? 0.0 : 100.0 * bp * std::exp(log_sum / 4.0);
  r.params = {{"max_order", 4}, {"smoothing", "none"}, {"case", "insensitive"}};
  r.counts = {
      {"sentences", hyps.size()},
      {"hyp_len", hyp_len},
      {"ref_len", ref_len},
      {"matched", matched},
      {"total", total},
      {"precisions", precisions},
      {"brevity_penalty", bp},
  };
  return r;
}

MetricReport bleu4(std::span<const Sentence> hyps,
                   std::span<const Sentence> refs, bool case_insensitive) {
  check_lengths(hyps.size(), refs.size(), "bleu");
  std::vector<TokenList> h;
  std::vector<TokenList> r;
  h.reserve(hyps.size());
  r.reserve(refs.size());
  for (std::size_t k = 0; k < hyps.size(); ++k) {
    h.push_back(case_insensitive ? lowered(hyps[k]) : as_is(hyps[k]));
    r.push_back(case_insensitive ? lowered(refs[k]) : as_is(refs[k]));
  }
  MetricReport rep = bleu4(h, r);
  rep.params["case"] = case_insensitive ? "insensitive" : "sensitive";
  return rep;
}

// ---------------------------------------------------------------------------
// ROUGE-L

std::size_t lcs_length(const TokenList& a, const TokenList& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

MetricReport rouge_l(std::span<const Sentence> hyps,
                     std::span<const Sentence> refs) {
  check_lengths(hyps.size(), refs.size(), "rouge_l");
  constexpr double kBeta = 1.2;
  constexpr double kBeta2 = kBeta * kBeta;
  std::vector<double> per;
  double sum = 0.0;
  std::size_t skipped = 0;
  for (std::size_t k = 0; k < hyps.size(); ++k) {
    const TokenList h = lowered(hyps[k]);
    const TokenList r = lowered(refs[k]);
    if (h.empty() && r.empty()) {
      ++skipped;
      continue;
    }
    double f = 0.0;
    const std::size_t lcs = lcs_length(h, r);
    if (lcs > 0) {
      const double p = static_cast<double>(lcs) / static_cast<double>(h.size());
      const double rec = static_cast<double>(lcs) / static_cast<double>(r.size());
      f = ((1.0 + kBeta2) * p * rec) / (rec + kBeta2 * p);
    }
    per.push_back(100.0 * f);
    sum += 100.0 * f;
  }
  MetricReport rep;
  rep.metric = "rouge_l";
  rep.score = per.empty() ? 0.0 : sum / static_cast<double>(per.size());
  rep.params = {{"beta", kBeta}, {"aggregation", "macro"}, {"case", "insensitive"}};
  rep.counts = {{"sentences", hyps.size()}, {"scored", per.size()}, {"skipped_empty", skipped}};
  rep.per_sentence = std::move(per);
  return rep;
}

// ---------------------------------------------------------------------------
// METEOR (lite)

namespace {

// Alignment as hyp position -> ref position (-1 when unaligned).
using Alignment = std::vector<int>;

std::size_t count_chunks(const Alignment& a) {
  std::size_t chunks = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] < 0) continue;
    const bool continues = j > 0 && a[j - 1] >= 0 && a[j - 1] + 1 == a[j];
    if (!continues) ++chunks;
  }
  return chunks;
}

struct LemmaClass {
  std::vector<int> hyp;  // positions
  std::vector<int> ref;
  std::size_t exact_quota = 0;
  std::size_t total_quota = 0;
};

// Every assignment of class hyp positions to class ref positions reaching
// both quotas. Each entry lists (hyp, ref) pairs. Stops once `cap` is hit.
void enumerate_class(const LemmaClass& c, const TokenList& h, const TokenList& r,
                     std::size_t cap,
                     std::vector<std::vector<std::pair<int, int>>>& out) {
  std::vector<std::pair<int, int>> cur;
  std::vector<bool> used(c.ref.size(), false);
  auto rec = [&](auto&& self, std::size_t k, std::size_t exact) -> void {
    if (out.size() > cap) return;
    const std::size_t remaining = c.hyp.size() - k;
    if (cur.size() + remaining < c.total_quota) return;
    if (k == c.hyp.size()) {
      if (cur.size() == c.total_quota && exact == c.exact_quota) out.push_back(cur);
      return;
    }
    const int hp = c.hyp[k];
    for (std::size_t q = 0; q < c.ref.size(); ++q) {
      if (used[q]) continue;
      const int rp = c.ref[q];
      used[q] = true;
      cur.emplace_back(hp, rp);
      self(self, k + 1, exact + (h[hp] == r[rp] ? 1 : 0));
      cur.pop_back();
      used[q] = false;
    }
    self(self, k + 1, exact);
  };
  rec(rec, 0, 0);
}

// Order-preserving greedy: exact pairs by occurrence, then lemma pairs.
Alignment greedy_alignment(const std::vector<LemmaClass>& classes,
                           const TokenList& h, const TokenList& r) {
  Alignment a(h.size(), -1);
  for (const auto& c : classes) {
    std::vector<bool> ref_used(c.ref.size(), false);
    std::vector<bool> hyp_used(c.hyp.size(), false);
    for (std::size_t x = 0; x < c.hyp.size(); ++x) {
      for (std::size_t q = 0; q < c.ref.size(); ++q) {
        if (!ref_used[q] && h[c.hyp[x]] == r[c.ref[q]]) {
          ref_used[q] = hyp_used[x] = true;
          a[c.hyp[x]] = c.ref[q];
          break;
        }
      }
    }
    std::size_t q = 0;
    for (std::size_t x = 0; x < c.hyp.size(); ++x) {
      if (hyp_used[x]) continue;
      while (q < c.ref.size() && ref_used[q]) ++q;
      if (q == c.ref.size()) break;
      ref_used[q] = true;
      a[c.hyp[x]] = c.ref[q];
    }
  }
  return a;
}

constexpr std::size_t kMeteorSearchBudget = 200000;

}  // namespace

MeteorAlignment meteor_align(const TokenList& h, const TokenList& r,
                             const LexiconSet& lex) {
  std::map<std::string, LemmaClass> by_lemma;
  for (std::size_t j = 0; j < h.size(); ++j) {
    by_lemma[lemma_of(h[j], lex)].hyp.push_back(static_cast<int>(j));
  }
  for (std::size_t i = 0; i < r.size(); ++i) {
    auto it = by_lemma.find(lemma_of(r[i], lex));
    if (it != by_lemma.end()) it->second.ref.push_back(static_cast<int>(i));
  }
  std::vector<LemmaClass> classes;
  for (auto& [lemma, c] : by_lemma) {
    if (c.ref.empty()) continue;
    std::map<std::string, std::pair<std::size_t, std::size_t>> surf;
    for (int p : c.hyp) ++surf[h[p]].first;
    for (int p : c.ref) ++surf[r[p]].second;
    for (const auto& [s, cnt] : surf) c.exact_quota += std::min(cnt.first, cnt.second);
    c.total_quota = std::min(c.hyp.size(), c.ref.size());
    classes.push_back(std::move(c));
  }

  MeteorAlignment out;
  for (const auto& c : classes) {
    out.exact += c.exact_quota;
    out.matches += c.total_quota;
  }
  if (out.matches == 0) return out;

  // Exhaustive product over per-class assignments when it fits the budget.
  std::vector<std::vector<std::vector<std::pair<int, int>>>> options(classes.size());
  double combos = 1.0;
  bool fits = true;
  for (std::size_t k = 0; k < classes.size() && fits; ++k) {
    enumerate_class(classes[k], h, r, kMeteorSearchBudget, options[k]);
    combos *= static_cast<double>(options[k].size());
    fits = options[k].size() <= kMeteorSearchBudget && combos <= kMeteorSearchBudget;
  }
  if (!fits) {
    out.chunks = count_chunks(greedy_alignment(classes, h, r));
    out.exhaustive = false;
    return out;
  }

  std::vector<std::size_t> idx(classes.size(), 0);
  std::size_t best = std::numeric_limits<std::size_t>::max();
  Alignment a(h.size(), -1);
  for (;;) {
    std::fill(a.begin(), a.end(), -1);
    for (std::size_t k = 0; k < classes.size(); ++k) {
      for (const auto& [hp, rp] : options[k][idx[k]]) a[hp] = rp;
    }
    best = std::min(best, count_chunks(a));
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == options[k].size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  out.chunks = best;
  return out;
}

MetricReport meteor_lite(std::span<const Sentence> hyps,
                         std::span<const Sentence> refs, const LexiconSet& lex) {
  check_lengths(hyps.size(), refs.size(), "meteor");
  constexpr double kAlpha = 0.9;
  constexpr double kBeta = 3.0;
  constexpr double kGamma = 0.5;
  std::vector<double> per;
  double sum = 0.0;
  std::size_t skipped = 0;
  std::size_t greedy = 0;
  for (std::size_t k = 0; k < hyps.size(); ++k) {
    const TokenList h = lowered(hyps[k]);
    const TokenList r = lowered(refs[k]);
    if (h.empty() && r.empty()) {
      ++skipped;
      continue;
    }
    double score = 0.0;
    const MeteorAlignment al = meteor_align(h, r, lex);
    if (!al.exhaustive) ++greedy;
    if (al.matches > 0) {
      const double m = static_cast<double>(al.matches);
      const double p = m / static_cast<double>(h.size());
      const double rec = m / static_cast<double>(r.size());
      const double fmean = p * rec / (kAlpha * p + (1.0 - kAlpha) * rec);
      const double penalty = kGamma * std::pow(static_cast<double>(al.chunks) / m, kBeta);
      score = 100.0 * fmean * (1.0 - penalty);
    }
    per.push_back(score);
    sum += score;
  }
  MetricReport rep;
  rep.metric = "meteor_lite";
  rep.score = per.empty() ? 0.0 : sum / static_cast<double>(per.size());
  rep.params = {{"alpha", kAlpha}, {"beta", kBeta}, {"gamma", kGamma},
                {"stages", {"exact", "lemma"}}, {"aggregation", "macro"},
                {"case", "insensitive"}};
  rep.counts = {{"sentences", hyps.size()}, {"scored", per.size()},
                {"skipped_empty", skipped}, {"greedy_alignments", greedy}};
  rep.per_sentence = std::move(per);
  return rep;
}

// ---------------------------------------------------------------------------
// Token similarity

SimilarityReport token_similarity(const ParallelCorpus& corpus) {
  if (corpus.empty()) throw InvalidArgument("token similarity of an empty corpus");
  std::size_t inter = 0;
  std::size_t gloss_tokens = 0;
  std::size_t text_tokens = 0;
  for (const auto& p : corpus.pairs) {
    std::unordered_map<std::string, std::size_t> text_counts;
    for (const auto& t : p.text.tokens) ++text_counts[utf8::to_lower(t.surface)];
    for (const auto& t : p.gloss.tokens) {
      auto it = text_counts.find(utf8::to_lower(t.surface));
      if (it != text_counts.end() && it->second > 0) {
        --it->second;
        ++inter;
      }
    }
    gloss_tokens += p.gloss.size();
    text_tokens += p.text.size();
  }
  auto pct = [](std::size_t a, std::size_t b) {
    return b ? 100.0 * static_cast<double>(a) / static_cast<double>(b) : 0.0;
  };
  const nlohmann::json counts = {{"pairs", corpus.size()},
                                 {"intersection", inter},
                                 {"gloss_tokens", gloss_tokens},
                                 {"text_tokens", text_tokens}};
  SimilarityReport rep;
  rep.gloss.metric = "token_similarity";
  rep.gloss.score = pct(inter, gloss_tokens);
  rep.gloss.params = {{"denominator", "gloss"}, {"aggregation", "pooled"}, {"case", "insensitive"}};
  rep.gloss.counts = counts;
  rep.text.metric = "token_similarity";
  rep.text.score = pct(inter, text_tokens);
  rep.text.params = {{"denominator", "text"}, {"aggregation", "pooled"}, {"case", "insensitive"}};
  rep.text.counts = counts;
  return rep;
}

}  // namespace glosskit
