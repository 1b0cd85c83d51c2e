#include <doctest.h>

#include "glosskit/error.hpp"
#include "glosskit/rules.hpp"
#include "support.hpp"

using namespace glosskit;
using testing::line;

namespace {

RulePipeline full(Lang lang) { return build_pipeline(lang, std::nullopt, testing::shared_lexicon(lang)); }

std::string gloss(std::string_view text, Lang lang) {
  return transcribe(line(text, lang), full(lang)).to_line();
}

}  // namespace

TEST_CASE("paper worked examples") {
  CHECK(gloss("europe 's role is a coordinating role .", Lang::En) ==
        "europe poss role be coordinate role .");
  CHECK(gloss("morgen bis zweiundzwanzig grad .", Lang::De) == "morgen bis zwei zwanzig grad");
}

TEST_CASE("pipeline composition") {
  const auto lex = testing::shared_lexicon(Lang::En);
  CHECK(build_pipeline(Lang::De, std::nullopt, lex).rules ==
        std::vector<RuleId>{RuleId::De1OmitPunct, RuleId::De2MwtExpand, RuleId::De3Stopwords});
  CHECK(build_pipeline(Lang::En, std::nullopt, lex).rules.size() == 6);
  for (int i = 1; i <= 6; ++i) {
    const RulePipeline p = build_pipeline(Lang::En, i, lex);
    CHECK(p.rules.size() == 5);
    CHECK(std::find(p.rules.begin(), p.rules.end(), full_rules(Lang::En)[i - 1]) == p.rules.end());
    CHECK(p.label() == "rule" + std::to_string(i));
  }
  CHECK(build_pipeline(Lang::En, std::nullopt, lex).label() == "rule");
  CHECK_THROWS_AS(build_pipeline(Lang::De, 4, lex), InvalidArgument);
  CHECK_THROWS_AS(build_pipeline(Lang::En, 0, lex), InvalidArgument);
  CHECK_THROWS_AS(build_pipeline(Lang::En, 7, lex), InvalidArgument);
}

TEST_CASE("rule order override must be a permutation") {
  const auto lex = testing::shared_lexicon(Lang::De);
  const std::vector<RuleId> order{RuleId::De3Stopwords, RuleId::De1OmitPunct, RuleId::De2MwtExpand};
  CHECK(build_pipeline(Lang::De, std::nullopt, lex, order).rules == order);
  CHECK(build_pipeline(Lang::De, 1, lex, order).rules ==
        std::vector<RuleId>{RuleId::De3Stopwords, RuleId::De2MwtExpand});
  CHECK_THROWS_AS(build_pipeline(Lang::De, std::nullopt, lex,
                                 std::vector<RuleId>{RuleId::De1OmitPunct}),
                  InvalidArgument);
}

TEST_CASE("rule names round trip") {
  for (Lang lang : {Lang::En, Lang::De}) {
    for (RuleId id : full_rules(lang)) {
      CHECK(parse_rule(rule_name(id)) == id);
      CHECK(rule_lang(id) == lang);
    }
  }
  CHECK(parse_rule("en5_lemma") == RuleId::En5Lemma);
  CHECK_THROWS_AS(parse_rule("EN7"), InvalidArgument);
}

TEST_CASE("DE1 drops punctuation only") {
  CHECK(de_omit_punctuation(line("regen , dann sonne !", Lang::De)).to_line() == "regen dann sonne");
}

TEST_CASE("DE2 expands contractions and number compounds") {
  const LexiconSet lex;
  CHECK(de_expand_mwt(line("im norden zum abend", Lang::De), lex).to_line() ==
        "in dem norden zu dem abend");
  CHECK(de_expand_mwt(line("Dreiundzwanzig grad", Lang::De), lex).to_line() == "Drei und zwanzig grad");
  CHECK(de_expand_mwt(line("dreizehn zwanzig", Lang::De), lex).to_line() == "dreizehn zwanzig");
  CHECK(german_number_value("einundneunzig") == 91);
  CHECK(german_number_value("fünfunddreißig") == 35);
  CHECK(german_number_value("fuenfunddreissig") == 35);
  CHECK(german_number_value("siebzehn") == 17);
  CHECK_FALSE(german_number_value("grad"));
  CHECK_FALSE(split_german_number("einsundzwanzig"));
}

TEST_CASE("DE3 removes stopwords and honors replacements") {
  const LexiconSet& de = testing::default_lexicon(Lang::De);
  CHECK(de_stopwords(line("morgen bis zwei und zwanzig grad", Lang::De), de).to_line() ==
        "morgen bis zwei zwanzig grad");
}

TEST_CASE("EN1 removes clause delimiters and marks clause starts") {
  const Sentence s = en_clause_segmentation(line("we left ; they stayed : fine"));
  CHECK(s.to_line() == "we left they stayed fine");
  CHECK(clause_count(s) == 3);
  CHECK(s.tokens[2].clause_start);
  CHECK(clause_count(Sentence{}) == 0);
}

TEST_CASE("EN2 expands abbreviations") {
  const LexiconSet& en = testing::default_lexicon(Lang::En);
  CHECK(en_abbrev_reduction(line("Mr. Smith visited the U.S. etc."), en).to_line() ==
        "mister Smith visited the united states et cetera");
}

TEST_CASE("EN3 deescapes and normalizes special characters") {
  CHECK(en_special_chars(line("rock &amp; roll “quoted” — done …")).to_line() ==
        "rock & roll \"quoted\" - done ...");
  CHECK(en_special_chars(line("a @-@ b <br>")).to_line() == "a b");
}

TEST_CASE("EN4 protects entities from later rules") {
  const std::string out = gloss("the meeting in Running Springs was agreed", Lang::En);
  CHECK(out == "meeting in running springs be agree");
}

TEST_CASE("EN6 removes function words by lemma") {
  CHECK(gloss("a dog and the cats of an owner", Lang::En) == "dog and cat owner");
}

TEST_CASE("empty pipeline only lowercases") {
  const auto lex = testing::shared_lexicon(Lang::En);
  RulePipeline p = build_pipeline(Lang::En, std::nullopt, lex);
  p.rules.clear();
  const Sentence out = transcribe(line("The Cat , sat ."), p);
  CHECK(out.to_line() == "the cat , sat .");
  CHECK(out.kind == Kind::Gloss);
}

TEST_CASE("transcribe rejects a language mismatch only") {
  CHECK_THROWS_AS(transcribe(line("hallo", Lang::De), full(Lang::En)), InvalidArgument);
  CHECK(transcribe(Sentence{{}, Lang::En, Kind::Text}, full(Lang::En)).empty());
  CHECK(transcribe(line("the of a", Lang::En), full(Lang::En)).empty());
}

TEST_CASE("transcribe is idempotent on its own output") {
  for (Lang lang : {Lang::En, Lang::De}) {
    const RulePipeline p = full(lang);
    for (const char* s : {"Im Norden gibt es heute Regen , im Süden Sonne .",
                          "Europe 's role isn't a coordinating role , Mr. Obama said ; the U.S. flies running .",
                          "morgen bis zweiundzwanzig grad ."}) {
      const Sentence once = transcribe(tokenize(s, lang), p);
      CHECK(transcribe(once, p) == once);
    }
  }
}

TEST_CASE("batch transcription preserves order and matches serial output") {
  const RulePipeline p = full(Lang::En);
  std::vector<Sentence> in;
  for (int i = 0; i < 257; ++i) in.push_back(line("the cats " + std::to_string(i) + " were running"));
  const auto serial = transcribe_batch(in, p, 1);
  const auto parallel = transcribe_batch(in, p, 8);
  REQUIRE(serial.size() == in.size());
  CHECK(serial == parallel);
  CHECK(serial[42].to_line() == "cat 42 be run");
}
