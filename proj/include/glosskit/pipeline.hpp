#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "glosskit/lexicon.hpp"
#include "glosskit/metrics.hpp"
#include "glosskit/rules.hpp"
#include "glosskit/text.hpp"

namespace glosskit {

// ---------------------------------------------------------------------------
// Deterministic randomness. Sampling and shuffling use std::mt19937_64 seeded
// with the user seed and the rejection-based bounded draw below, so results
// are identical across standard libraries.

// Uniform integer in [0, bound). bound must be > 0.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound);

// n distinct indices from [0, population), ascending. Partial Fisher-Yates
// over the identity permutation. Throws InvalidArgument when n > population.
std::vector<std::size_t> sample_indices(std::size_t population, std::size_t n,
                                        std::uint64_t seed);

// Fisher-Yates from the back: for i = size-1 .. 1 swap(i, draw(i + 1)).
template <typename T>
void shuffle_in_place(std::vector<T>& items, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = bounded_draw(rng, i);
    std::swap(items[i - 1], items[j]);
  }
}

// ---------------------------------------------------------------------------
// Monolingual preprocessing

struct FilterResult {
  MonolingualCorpus corpus;
  std::size_t dropped = 0;
};

// Removes sentences longer than max_len tokens (length == max_len survives).
FilterResult filter_by_length(const MonolingualCorpus& corpus,
                              std::size_t max_len = 60);

// Keeps the first occurrence of each line.
FilterResult deduplicate(const MonolingualCorpus& corpus);

// Uniform sample without replacement, input order preserved.
MonolingualCorpus sample(const MonolingualCorpus& corpus, std::size_t n,
                         std::uint64_t seed);

// ---------------------------------------------------------------------------
// Pseudo-corpus generation

struct GenerationManifest {
  std::string source_name;
  std::string source_digest;  // sha256 of the source lines, LF-terminated
  Lang lang = Lang::En;
  std::optional<int> ablated;
  std::string pipeline_label;
  std::string lexicon_digest;
  std::size_t input_sentences = 0;
  std::size_t emitted_pairs = 0;
  std::size_t empty_dropped = 0;
  bool drop_empty = true;
  double seconds = 0.0;
  std::string timestamp;  // UTC ISO-8601; SOURCE_DATE_EPOCH wins when set

  nlohmann::json to_json() const;
};

struct GenerationResult {
  ParallelCorpus corpus;
  GenerationManifest manifest;
};

// Pairs every sentence with its transcription (origin PSEUDO_RULE). Empty
// glosses are dropped and counted when drop_empty is set. Throws
// InvalidArgument when the corpus language differs from the pipeline's.
GenerationResult generate_pseudo_corpus(const MonolingualCorpus& mono,
                                        const RulePipeline& p,
                                        bool drop_empty = true,
                                        unsigned threads = 0);

// Line-aligned external back-translation output (origin PSEUDO_BT).
ParallelCorpus ingest_bt_corpus(const std::filesystem::path& gloss_path,
                                const std::filesystem::path& text_path,
                                Lang lang);

// gt followed by pseudo, optionally shuffled pairwise (origin COMBINED).
ParallelCorpus combine_corpora(const ParallelCorpus& gt,
                               const ParallelCorpus& pseudo,
                               std::optional<std::uint64_t> shuffle_seed = {});

// ---------------------------------------------------------------------------
// Export

enum class ExportMode { Combined, Further };

std::string_view to_string(ExportMode mode);
ExportMode parse_export_mode(std::string_view s);

using NamedCorpora = std::map<std::string, ParallelCorpus>;

// Writes <out_dir>/<split>.gloss and <split>.text for every corpus plus
// manifest.json. COMBINED requires "train"; FURTHER requires "pretrain" and
// "finetune"; "dev" and "test" are optional in both. Any other name is an
// error. Returns the manifest. `extra` is merged into the manifest under
// "config".
nlohmann::json export_training_splits(const NamedCorpora& corpora,
                                      const std::filesystem::path& out_dir,
                                      ExportMode mode,
                                      const nlohmann::json& extra = {});

// ---------------------------------------------------------------------------
// Vocabulary

inline constexpr std::string_view kUnk = "<unk>";

struct Vocabulary {
  std::vector<std::pair<std::string, std::uint64_t>> entries;  // count desc, word asc
  std::size_t cap = 50000;
  std::string unk = std::string(kUnk);

  bool contains(std::string_view word) const;
  std::size_t size() const { return entries.size(); }
  // Rebuilds the lookup index after `entries` changed.
  void reindex();

 private:
  std::set<std::string, std::less<>> index_;
};

// Most frequent `cap` words (exact surfaces). The UNK literal is never
// counted. Throws InvalidArgument when cap is 0.
Vocabulary build_vocabulary(const std::vector<Sentence>& side,
                            std::size_t cap = 50000);

struct UnkStats {
  std::uint64_t gloss_tokens = 0;
  std::uint64_t gloss_unk = 0;
  std::uint64_t text_tokens = 0;
  std::uint64_t text_unk = 0;

  nlohmann::json to_json() const;
};

struct VocabApplyResult {
  ParallelCorpus corpus;
  UnkStats stats;
};

VocabApplyResult apply_vocabulary(const ParallelCorpus& corpus,
                                  const Vocabulary& gloss_vocab,
                                  const Vocabulary& text_vocab);

std::vector<Sentence> gloss_side(const ParallelCorpus& corpus);
std::vector<Sentence> text_side(const ParallelCorpus& corpus);

// ---------------------------------------------------------------------------
// Reports

// WER in both directions and aggregations, token similarity with both
// denominators and vocabulary totals. Throws InvalidArgument when empty.
nlohmann::json analyze_corpus(const ParallelCorpus& corpus);

struct AblationRow {
  std::string label;  // "rule" or "rule<i>"
  std::optional<int> ablated;
  std::vector<std::string> rules;
  std::map<std::string, MetricReport> bleu;  // split -> report
};

struct AblationTable {
  Lang lang = Lang::En;
  std::vector<std::string> splits;
  std::vector<AblationRow> rows;
  std::string lexicon_digest;

  nlohmann::json to_json() const;
  std::string to_table() const;
};

// For the full pipeline and each single-rule-removed pipeline, transcribes
// the text side of every split and scores case-insensitive BLEU-4 against
// the gloss side. `splits` must hold exactly train, dev and test.
AblationTable ablation_run(const NamedCorpora& splits,
                           std::shared_ptr<const LexiconSet> lex, Lang lang,
                           unsigned threads = 0);

}  // namespace glosskit
