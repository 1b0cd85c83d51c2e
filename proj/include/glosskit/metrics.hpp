#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "glosskit/lexicon.hpp"
#include "glosskit/text.hpp"

namespace glosskit {

using TokenList = std::vector<std::string>;

struct EditOps {
  std::size_t insertions = 0;
  std::size_t deletions = 0;
  std::size_t substitutions = 0;
  std::size_t matches = 0;
  std::size_t ref_len = 0;

  std::size_t cost() const { return insertions + deletions + substitutions; }
  EditOps& operator+=(const EditOps& o);
  bool operator==(const EditOps&) const = default;
};

// Unit-cost Levenshtein alignment of hyp against ref. Among minimal-cost
// alignments the backtrace prefers match > substitution > deletion >
// insertion. Deletions are ref tokens missing from hyp. Token lists are
// compared as given; the Sentence overload lowercases first.
EditOps edit_ops(const TokenList& hyp, const TokenList& ref);
EditOps edit_ops(const Sentence& hyp, const Sentence& ref);

// Scores are percentages in [0, 100] (WER may exceed 100).
struct MetricReport {
  std::string metric;
  double score = 0.0;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json counts = nlohmann::json::object();
  std::optional<std::vector<double>> per_sentence;

  nlohmann::json to_json() const;
};

enum class WerAggregation { Pooled, Macro };

struct WerReport {
  MetricReport pooled;  // sum(ins+del+sub) / sum(ref_len)
  MetricReport macro;   // mean of per-sentence WER over non-empty refs
  EditOps totals;
  std::size_t empty_refs = 0;

  const MetricReport& get(WerAggregation a) const {
    return a == WerAggregation::Pooled ? pooled : macro;
  }
};

// Throws InvalidArgument on an empty list, differing lengths, or when every
// reference is empty.
WerReport corpus_wer(std::span<const Sentence> hyps,
                     std::span<const Sentence> refs);

// Corpus BLEU-4: clipped n-gram precisions (n = 1..4), geometric mean,
// brevity penalty exp(1 - r/c) when c < r, no smoothing.
MetricReport bleu4(std::span<const Sentence> hyps,
                   std::span<const Sentence> refs, bool case_insensitive = true);
MetricReport bleu4(const std::vector<TokenList>& hyps,
                   const std::vector<TokenList>& refs);

std::size_t lcs_length(const TokenList& a, const TokenList& b);

// Sentence-averaged LCS F-measure with beta = 1.2, case-insensitive.
// Pairs where both sides are empty are skipped.
MetricReport rouge_l(std::span<const Sentence> hyps,
                     std::span<const Sentence> refs);

struct MeteorAlignment {
  std::size_t exact = 0;
  std::size_t matches = 0;
  std::size_t chunks = 0;
  bool exhaustive = true;  // false when the search budget forced the greedy path
};

// Two-stage unigram alignment (exact, then lemma via `lex`) maximizing exact
// then total matches, then minimizing chunks. Inputs are lowercased tokens.
MeteorAlignment meteor_align(const TokenList& hyp, const TokenList& ref,
                             const LexiconSet& lex);

// Simplified METEOR: F_mean = P*R / (0.9*P + 0.1*R), penalty
// 0.5 * (chunks/matches)^3, sentence-averaged. No paraphrase stage.
MetricReport meteor_lite(std::span<const Sentence> hyps,
                         std::span<const Sentence> refs, const LexiconSet& lex);

enum class SimilarityDenominator { Gloss, Text };

struct SimilarityReport {
  MetricReport gloss;  // intersection / gloss tokens
  MetricReport text;   // intersection / text tokens
  const MetricReport& get(SimilarityDenominator d) const {
    return d == SimilarityDenominator::Gloss ? gloss : text;
  }
};

// Pooled case-insensitive multiset intersection of gloss and text tokens.
SimilarityReport token_similarity(const ParallelCorpus& corpus);

}  // namespace glosskit
