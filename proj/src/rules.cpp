#include "glosskit/rules.hpp"

#include <algorithm>
#include <thread>

#include "glosskit/error.hpp"
#include "glosskit/utf8.hpp"

namespace glosskit {

namespace {

struct RuleInfo {
  RuleId id;
  std::string_view name;
  Lang lang;
  int index;
};

constexpr RuleInfo kRules[] = {
    {RuleId::De1OmitPunct, "DE1_OMIT_PUNCT", Lang::De, 1},
    {RuleId::De2MwtExpand, "DE2_MWT_EXPAND", Lang::De, 2},
    {RuleId::De3Stopwords, "DE3_STOPWORDS", Lang::De, 3},
    {RuleId::En1ClauseSeg, "EN1_CLAUSE_SEG", Lang::En, 1},
    {RuleId::En2Abbrev, "EN2_ABBREV", Lang::En, 2},
    {RuleId::En3SpecialChars, "EN3_SPECIAL_CHARS", Lang::En, 3},
    {RuleId::En4Ner, "EN4_NER", Lang::En, 4},
    {RuleId::En5Lemma, "EN5_LEMMA", Lang::En, 5},
    {RuleId::En6FunctionWords, "EN6_FUNCTION_WORDS", Lang::En, 6},
};

const RuleInfo& info(RuleId id) {
  for (const auto& r : kRules) {
    if (r.id == id) return r;
  }
  throw InvalidArgument("unknown rule id");
}

// Removes tokens matching `drop`; a removed clause opener passes its
// clause_start flag to the next surviving token.
template <typename Pred>
void remove_tokens(Sentence& s, Pred drop) {
  std::vector<Token> out;
  out.reserve(s.tokens.size());
  bool carry = false;
  for (auto& t : s.tokens) {
    if (drop(t)) {
      carry = carry || t.clause_start;
      continue;
    }
    if (carry) t.clause_start = true;
    carry = false;
    out.push_back(std::move(t));
  }
  s.tokens = std::move(out);
}

// New token carrying over the provenance and clause flag of `from`.
Token derived(std::string surface, const Token& from, bool first) {
  Token t = Token::make(std::move(surface));
  t.source_pos = from.source_pos;
  t.clause_start = first && from.clause_start;
  return t;
}

// Replaces every token for which `expand` returns pieces.
template <typename Fn>
void expand_tokens(Sentence& s, Fn expand) {
  std::vector<Token> out;
  out.reserve(s.tokens.size());
  for (auto& t : s.tokens) {
    const std::vector<std::string>* pieces = nullptr;
    std::optional<std::vector<std::string>> owned = expand(t, pieces);
    if (owned) pieces = &*owned;
    if (!pieces) {
      out.push_back(std::move(t));
      continue;
    }
    for (std::size_t k = 0; k < pieces->size(); ++k) {
      out.push_back(derived((*pieces)[k], t, k == 0));
    }
  }
  s.tokens = std::move(out);
}

bool is_clause_delimiter(std::string_view s) {
  return s == ";" || s == ":" || s == "—" || s == "--";
}

// Typographic characters folded to ASCII by the special-char rule.
std::string normalize_chars(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t pos = 0;
  while (pos < s.size()) {
    const std::size_t start = pos;
    auto cp = utf8::decode(s, pos);
    if (!cp) {
      pos = start + 1;
      out.push_back(s[start]);
      continue;
    }
    switch (*cp) {
      case 0x201C: case 0x201D: case 0x201E: case 0x201F:
      case 0x00AB: case 0x00BB:
        out.push_back('"');
        break;
      case 0x2018: case 0x2019: case 0x201A: case 0x201B:
        out.push_back('\'');
        break;
      case 0x2010: case 0x2011: case 0x2012: case 0x2013:
      case 0x2014: case 0x2015: case 0x2212:
        out.push_back('-');
        break;
      case 0x2026:
        out += "...";
        break;
      default:
        if (!utf8::is_control(*cp)) out.append(s.substr(start, pos - start));
    }
  }
  return out;
}

bool is_markup(std::string_view s) {
  if (s.size() > 2 && s.front() == '<' && s.back() == '>') return true;
  return s == "@-@" || s == "@,@" || s == "@.@";
}

}  // namespace

std::string_view rule_name(RuleId id) { return info(id).name; }
Lang rule_lang(RuleId id) { return info(id).lang; }
int rule_index(RuleId id) { return info(id).index; }

RuleId parse_rule(std::string_view name) {
  const std::string upper = [&] {
    std::string u(name);
    for (auto& c : u) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return u;
  }();
  for (const auto& r : kRules) {
    if (r.name == upper) return r.id;
  }
  throw InvalidArgument("unknown rule '" + std::string(name) + "'");
}

std::vector<RuleId> full_rules(Lang lang) {
  std::vector<RuleId> out;
  for (const auto& r : kRules) {
    if (r.lang == lang) out.push_back(r.id);
  }
  return out;
}

// ---------------------------------------------------------------------------
// DE

Sentence de_omit_punctuation(Sentence s) {
  remove_tokens(s, [](const Token& t) { return t.is_punct; });
  return s;
}

Sentence de_expand_mwt(Sentence s, const LexiconSet&) {
  expand_tokens(s, [](const Token& t, const std::vector<std::string>*& table)
                       -> std::optional<std::vector<std::string>> {
    if (t.is_punct || t.is_entity) return std::nullopt;
    const std::string lowered = utf8::to_lower(t.surface);
    if ((table = german_contraction(lowered))) return std::nullopt;
    return split_german_number(t.surface);
  });
  return s;
}

Sentence de_stopwords(Sentence s, const LexiconSet& lex) {
  for (auto& t : s.tokens) {
    const std::string key = utf8::to_lower(t.surface);
    if (const std::string* r = lex.replacement(key); r && *r != t.surface) {
      Token nt = derived(*r, t, true);
      nt.is_entity = t.is_entity;
      nt.entity_span_id = t.entity_span_id;
      t = std::move(nt);
    }
  }
  remove_tokens(s, [&](const Token& t) {
    const std::string key = utf8::to_lower(t.surface);
    return !lex.replacement(key) && lex.is_stopword(key);
  });
  return s;
}

// ---------------------------------------------------------------------------
// EN

Sentence en_clause_segmentation(Sentence s) {
  std::vector<Token> out;
  out.reserve(s.tokens.size());
  bool pending = false;
  for (auto& t : s.tokens) {
    if (is_clause_delimiter(t.surface)) {
      pending = true;
      continue;
    }
    if (pending && !out.empty()) t.clause_start = true;
    pending = false;
    out.push_back(std::move(t));
  }
  s.tokens = std::move(out);
  return s;
}

std::size_t clause_count(const Sentence& s) {
  if (s.empty()) return 0;
  std::size_t n = 1;
  for (std::size_t i = 1; i < s.tokens.size(); ++i) {
    if (s.tokens[i].clause_start) ++n;
  }
  return n;
}

Sentence en_abbrev_reduction(Sentence s, const LexiconSet& lex) {
  expand_tokens(s, [&](const Token& t, const std::vector<std::string>*& table)
                       -> std::optional<std::vector<std::string>> {
    if (!t.is_entity) table = lex.abbreviation(t.surface);
    return std::nullopt;
  });
  return s;
}

Sentence en_special_chars(Sentence s) {
  std::vector<Token> out;
  out.reserve(s.tokens.size());
  bool carry = false;
  for (auto& t : s.tokens) {
    std::string v = normalize_chars(deescape(t.surface));
    if (v.empty() || is_markup(v)) {
      carry = carry || t.clause_start;
      continue;
    }
    if (v != t.surface) {
      Token nt = derived(std::move(v), t, true);
      nt.lemma = t.lemma;
      nt.is_entity = t.is_entity;
      nt.entity_span_id = t.entity_span_id;
      t = std::move(nt);
    }
    if (carry) t.clause_start = true;
    carry = false;
    out.push_back(std::move(t));
  }
  s.tokens = std::move(out);
  return s;
}

Sentence en_ner(Sentence s, const LexiconSet& lex) {
  return tag_entities(std::move(s), lex);
}

Sentence en_lemmatize(Sentence s, const LexiconSet& lex) {
  for (auto& t : s.tokens) {
    if (t.is_entity) continue;
    std::string lemma = lemma_of(t.surface, lex);
    if (lemma != t.surface) {
      Token nt = derived(lemma, t, true);
      t = std::move(nt);
    }
    t.lemma = std::move(lemma);
  }
  return s;
}

Sentence en_function_words(Sentence s, const LexiconSet& lex) {
  remove_tokens(s, [&](const Token& t) {
    if (t.is_entity) return false;
    return lex.is_function_word(utf8::to_lower(t.lemma ? *t.lemma : t.surface));
  });
  return s;
}

Sentence apply_rule(RuleId id, Sentence s, const LexiconSet& lex) {
  switch (id) {
    case RuleId::De1OmitPunct: return de_omit_punctuation(std::move(s));
    case RuleId::De2MwtExpand: return de_expand_mwt(std::move(s), lex);
    case RuleId::De3Stopwords: return de_stopwords(std::move(s), lex);
    case RuleId::En1ClauseSeg: return en_clause_segmentation(std::move(s));
    case RuleId::En2Abbrev: return en_abbrev_reduction(std::move(s), lex);
    case RuleId::En3SpecialChars: return en_special_chars(std::move(s));
    case RuleId::En4Ner: return en_ner(std::move(s), lex);
    case RuleId::En5Lemma: return en_lemmatize(std::move(s), lex);
    case RuleId::En6FunctionWords: return en_function_words(std::move(s), lex);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Pipelines

std::string RulePipeline::label() const {
  return ablated ? "rule" + std::to_string(*ablated) : "rule";
}

RulePipeline build_pipeline(Lang lang, std::optional<int> ablated,
                            std::shared_ptr<const LexiconSet> lexicon,
                            const std::optional<std::vector<RuleId>>& order) {
  const std::vector<RuleId> full = full_rules(lang);
  std::vector<RuleId> rules = full;
  if (order) {
    std::vector<RuleId> a = *order;
    std::vector<RuleId> b = full;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) {
      throw InvalidArgument("rule order must be a permutation of the " +
                            std::string(to_string(lang)) + " rules");
    }
    rules = *order;
  }
  if (ablated) {
    const int n = static_cast<int>(full.size());
    if (*ablated < 1 || *ablated > n) {
      throw InvalidArgument("ablation index " + std::to_string(*ablated) +
                            " out of range 1.." + std::to_string(n) + " for " +
                            std::string(to_string(lang)));
    }
    const RuleId removed = full[static_cast<std::size_t>(*ablated - 1)];
    rules.erase(std::find(rules.begin(), rules.end(), removed));
  }
  if (!lexicon) lexicon = std::make_shared<const LexiconSet>();
  return RulePipeline{lang, std::move(rules), ablated, std::move(lexicon)};
}

Sentence transcribe(const Sentence& s, const RulePipeline& p) {
  if (s.lang != p.lang) {
    throw InvalidArgument("sentence language " + std::string(to_string(s.lang)) +
                          " does not match pipeline language " +
                          std::string(to_string(p.lang)));
  }
  Sentence cur = s;
  for (std::size_t i = 0; i < cur.tokens.size(); ++i) {
    if (cur.tokens[i].source_pos < 0) cur.tokens[i].source_pos = static_cast<int>(i);
  }
  for (RuleId id : p.rules) cur = apply_rule(id, std::move(cur), *p.lexicon);
  for (auto& t : cur.tokens) {
    t.surface = utf8::to_lower(t.surface);
    if (t.lemma) *t.lemma = utf8::to_lower(*t.lemma);
  }
  cur.kind = Kind::Gloss;
  return cur;
}

std::vector<Sentence> transcribe_batch(const std::vector<Sentence>& sentences,
                                       const RulePipeline& p, unsigned threads) {
  std::vector<Sentence> out(sentences.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n = sentences.size();
  const std::size_t workers = std::min<std::size_t>(threads, std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = transcribe(sentences[i], p);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          const std::size_t end = std::min(n, (w + 1) * chunk);
          for (std::size_t i = w * chunk; i < end; ++i) {
            out[i] = transcribe(sentences[i], p);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace glosskit
