#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "glosskit/text.hpp"

namespace glosskit {

using StringMap = std::map<std::string, std::string, std::less<>>;
using StringSet = std::set<std::string, std::less<>>;
using ExpansionMap = std::map<std::string, std::vector<std::string>, std::less<>>;

// Linguistic resources consumed by the rules. All keys are stored
// lowercased; lookups lowercase their argument.
class LexiconSet {
 public:
  LexiconSet() = default;

  // Mutators used while building; call finalize() afterwards.
  void add_lemma(std::string_view surface, std::string_view lemma);
  void add_special_lemma(std::string_view surface, std::string_view lemma);
  void add_stopword(std::string_view word);
  void add_function_word(std::string_view word);
  void add_replacement(std::string_view word, std::string_view replacement);
  void add_abbreviation(std::string_view abbrev,
                        std::vector<std::string> expansion);
  void add_gazetteer_entry(const std::vector<std::string>& tokens);

  // Closes the lemma maps transitively (special entries take precedence),
  // makes every lemma a fixed point, resolves replacement chains and drops
  // replaced words from the stopword set. Throws FormatError on a cycle or
  // on a replacement target that is itself a stopword.
  void finalize();

  // Dictionary lemma for `word` (special map first), if any.
  const std::string* dictionary_lemma(std::string_view word) const;
  bool is_stopword(std::string_view word) const;
  bool is_function_word(std::string_view word) const;
  const std::string* replacement(std::string_view word) const;
  // Trailing periods are ignored on both sides of the comparison.
  const std::vector<std::string>* abbreviation(std::string_view token) const;
  bool gazetteer_contains(const std::vector<std::string>& lowered) const;
  std::size_t gazetteer_max_len() const { return gazetteer_max_len_; }

  const StringMap& lemma_map() const {
    return lemma_map_;
  }
  const StringMap& special_lemma_map() const {
    return special_lemma_map_;
  }
  const StringSet& stopwords() const { return stopwords_; }
  const StringSet& function_words() const {
    return function_words_;
  }
  const StringMap& replacement_map() const {
    return replacement_map_;
  }
  const ExpansionMap& abbreviation_map() const {
    return abbreviation_map_;
  }
  const StringSet& gazetteer() const { return gazetteer_; }

  void set_stopwords(StringSet words);
  void set_function_words(StringSet words);

  // SHA-256 over the canonical serialized form.
  std::string digest() const;

  bool operator==(const LexiconSet& o) const;

 private:
  StringMap lemma_map_;
  StringMap special_lemma_map_;
  StringSet stopwords_;
  StringSet function_words_;
  StringMap replacement_map_;
  ExpansionMap abbreviation_map_;
  StringMap abbreviation_index_;  // key without trailing periods -> key
  StringSet gazetteer_;  // entries joined by single spaces
  std::size_t gazetteer_max_len_ = 0;
};

// Directory layout: lemma.tsv, special_lemma.tsv, stopwords_de.txt,
// function_words_en.txt, replace_de.tsv, abbrev_en.tsv, gazetteer.txt.
// Missing files are treated as empty. Blank lines and lines starting with
// '#' are ignored.
LexiconSet load_lexicon_set(const std::filesystem::path& dir);
void save_lexicon_set(const LexiconSet& lex, const std::filesystem::path& dir);

struct VocabularyStats {
  std::map<std::string, std::uint64_t> text_counts;
  std::map<std::string, std::uint64_t> gloss_counts;
  std::uint64_t text_total = 0;
  std::uint64_t gloss_total = 0;
};

// Case-insensitive token frequencies of both sides. Throws InvalidArgument
// on an empty corpus.
VocabularyStats compute_vocab_stats(const ParallelCorpus& corpus);

// Words frequent in text that (almost) never survive into the gloss:
// text_count >= min_text_freq and gloss_count / text_count <= max_gloss_ratio.
// Sorted.
std::vector<std::string> extract_drop_list(const VocabularyStats& stats,
                                           std::uint64_t min_text_freq = 5,
                                           double max_gloss_ratio = 0.1);

// Lowercased lemma of a word: special map, dictionary, then suffix rules,
// iterated to a fixed point so the result always maps to itself.
std::string lemma_of(std::string_view word, const LexiconSet& lex);

// Suffix-stripping fallback alone (single step, no dictionary).
std::string suffix_lemma(std::string_view lowered);

// Sets t.lemma; entity tokens are returned unchanged.
Token lemmatize(Token t, const LexiconSet& lex);

// Flags gazetteer matches (longest match, left to right, case-insensitive)
// and capitalized tokens that do not start the sentence or a clause. Runs
// of adjacent capitalized tokens share one span id. Surfaces and token
// count never change; existing entity flags are kept.
Sentence tag_entities(Sentence s, const LexiconSet& lex);

}  // namespace glosskit
