// Gazetteer-plus-capitalization named-entity tagger.

#include <algorithm>

#include "glosskit/lexicon.hpp"
#include "glosskit/utf8.hpp"

namespace glosskit {

namespace {

bool capitalized(const Token& t) {
  return !t.is_punct && utf8::is_upper(utf8::first_char(t.surface));
}

}  // namespace

Sentence tag_entities(Sentence s, const LexiconSet& lex) {
  auto& toks = s.tokens;
  const std::size_t n = toks.size();
  int next_id = 0;
  for (const auto& t : toks) {
    if (t.entity_span_id) next_id = std::max(next_id, *t.entity_span_id + 1);
  }

  std::vector<std::string> lowered;
  lowered.reserve(n);
  for (const auto& t : toks) lowered.push_back(utf8::to_lower(t.surface));

  auto mark = [&](std::size_t begin, std::size_t end) {
    const int id = next_id++;
    for (std::size_t k = begin; k < end; ++k) {
      toks[k].is_entity = true;
      toks[k].entity_span_id = id;
    }
  };

  // Gazetteer: longest match first, scanning left to right.
  const std::size_t max_len = lex.gazetteer_max_len();
  std::size_t i = 0;
  while (max_len > 0 && i < n) {
    std::size_t matched = 0;
    for (std::size_t len = std::min(max_len, n - i); len >= 1; --len) {
      bool free = true;
      for (std::size_t k = i; k < i + len; ++k) free = free && !toks[k].is_entity;
      if (!free) continue;
      std::vector<std::string> window(lowered.begin() + i,
                                      lowered.begin() + i + len);
      if (lex.gazetteer_contains(window)) {
        matched = len;
        break;
      }
    }
    if (matched) {
      mark(i, i + matched);
      i += matched;
    } else {
      ++i;
    }
  }

  // Capitalized tokens that do not open the sentence or a clause. The
  // pronoun "I" and listed function words are skipped.
  i = 0;
  while (i < n) {
    auto eligible = [&](std::size_t k) {
      return k > 0 && !toks[k].clause_start && !toks[k].is_entity &&
             capitalized(toks[k]) && lowered[k] != "i" &&
             !lex.is_function_word(lowered[k]);
    };
    if (!eligible(i)) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < n && eligible(j)) ++j;
    mark(i, j);
    i = j;
  }
  return s;
}

}  // namespace glosskit
