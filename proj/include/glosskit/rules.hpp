#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "glosskit/lexicon.hpp"
#include "glosskit/text.hpp"

namespace glosskit {

// The text-to-gloss transformation rules. Numbering inside each language
// follows the rule column order (DE 1-3, EN 1-6).
enum class RuleId {
  De1OmitPunct,
  De2MwtExpand,
  De3Stopwords,
  En1ClauseSeg,
  En2Abbrev,
  En3SpecialChars,
  En4Ner,
  En5Lemma,
  En6FunctionWords,
};

std::string_view rule_name(RuleId id);  // e.g. "EN5_LEMMA"
RuleId parse_rule(std::string_view name);
Lang rule_lang(RuleId id);
// 1-based position of the rule within its language column.
int rule_index(RuleId id);
std::vector<RuleId> full_rules(Lang lang);

// DE rules.
Sentence de_omit_punctuation(Sentence s);
Sentence de_expand_mwt(Sentence s, const LexiconSet& lex);
Sentence de_stopwords(Sentence s, const LexiconSet& lex);

// EN rules.
Sentence en_clause_segmentation(Sentence s);
Sentence en_abbrev_reduction(Sentence s, const LexiconSet& lex);
Sentence en_special_chars(Sentence s);
Sentence en_ner(Sentence s, const LexiconSet& lex);
Sentence en_lemmatize(Sentence s, const LexiconSet& lex);
Sentence en_function_words(Sentence s, const LexiconSet& lex);

Sentence apply_rule(RuleId id, Sentence s, const LexiconSet& lex);

// Number of clauses recorded by en_clause_segmentation (1 for a sentence
// without breaks, 0 for an empty one).
std::size_t clause_count(const Sentence& s);

// Value of a German number word in 13..99 ("dreiundzwanzig" -> 23), with
// ß/ss and ü/ue spellings accepted. Input must be lowercase.
std::optional<int> german_number_value(std::string_view lowered);
// Pieces of a compound number word ("ein", "und", "zwanzig"); nullopt for
// anything that is not a unit+und+tens compound.
std::optional<std::vector<std::string>> split_german_number(
    std::string_view word);
// Expansion of a German contraction ("zum" -> "zu dem"), if any.
const std::vector<std::string>* german_contraction(std::string_view lowered);

struct RulePipeline {
  Lang lang = Lang::En;
  std::vector<RuleId> rules;
  std::optional<int> ablated;
  std::shared_ptr<const LexiconSet> lexicon;

  // "rule" for the full pipeline, "rule<i>" when rule i was removed.
  std::string label() const;
};

// Full pipeline for `lang` in the default (or overridden) order, minus the
// ablated rule. `order`, when given, must be a permutation of the language's
// rules. Throws InvalidArgument for an out-of-range ablation index or a bad
// order.
RulePipeline build_pipeline(Lang lang, std::optional<int> ablated,
                            std::shared_ptr<const LexiconSet> lexicon,
                            const std::optional<std::vector<RuleId>>& order = {});

// Applies the pipeline's rules in order and lowercases the result. The
// output kind is GLOSS; token flags (entities) are kept so a second pass
// sees the same entities. Throws InvalidArgument only on a language
// mismatch.
Sentence transcribe(const Sentence& s, const RulePipeline& p);

// Data-parallel transcription; output order equals input order. `threads`
// of 0 means hardware concurrency.
std::vector<Sentence> transcribe_batch(const std::vector<Sentence>& sentences,
                                       const RulePipeline& p,
                                       unsigned threads = 0);

}  // namespace glosskit
