// Dictionary-plus-suffix-rule English lemmatizer.
//
// The suffix rules cover regular inflection: -s/-es/-ies plurals and third
// person, -ing and -ed with consonant undoubling and silent-e restoration.
// Irregular forms and words the rules would mangle belong in lemma.tsv.

#include <algorithm>
#include <string>
#include <string_view>

#include "glosskit/lexicon.hpp"
#include "glosskit/utf8.hpp"

namespace glosskit {

namespace {

bool is_vowel_at(std::string_view w, std::size_t i) {
  switch (w[i]) {
    case 'a': case 'e': case 'i': case 'o': case 'u':
      return true;
    case 'y':
      // y is a vowel after a consonant ("typ", "study") but not word-initially.
      return i > 0 && !is_vowel_at(w, i - 1);
    default:
      return false;
  }
}

bool has_vowel(std::string_view w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (is_vowel_at(w, i)) return true;
  }
  return false;
}

int vowel_groups(std::string_view w) {
  int n = 0;
  bool in = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const bool v = is_vowel_at(w, i);
    if (v && !in) ++n;
    in = v;
  }
  return n;
}

bool ascii_lower_word(std::string_view w) {
  return !w.empty() && std::all_of(w.begin(), w.end(), [](char c) {
    return c >= 'a' && c <= 'z';
  });
}

// Stem ends in <consonant><single vowel><consonant>.
bool single_vowel_before_last(std::string_view s) {
  const std::size_t n = s.size();
  if (n < 2 || is_vowel_at(s, n - 1) || !is_vowel_at(s, n - 2)) return false;
  return n < 3 || !is_vowel_at(s, n - 3);
}

bool ends_with(std::string_view s, std::string_view suf) {
  return s.ends_with(suf);
}

// Does a stem left by removing -ing/-ed need its silent e back?
bool needs_e(std::string_view s) {
  const std::size_t n = s.size();
  const char last = s[n - 1];
  const bool single = single_vowel_before_last(s);
  const int groups = vowel_groups(s);
  switch (last) {
    case 'v':
    case 'c':
    case 'u':
      return true;
    case 'z':
      return !ends_with(s, "zz");
    case 'g':
      if (ends_with(s, "ng")) {
        if (ends_with(s, "eng") || ends_with(s, "ung")) return true;
        return ends_with(s, "ang") && n >= 5;
      }
      if (ends_with(s, "rg") || ends_with(s, "dg") || ends_with(s, "lg")) {
        return true;
      }
      return single;
    case 's':
      if (ends_with(s, "ss")) return false;
      if (ends_with(s, "us") && groups > 1) return false;
      return is_vowel_at(s, n - 2) || ends_with(s, "ns") || ends_with(s, "rs") ||
             ends_with(s, "ls") || ends_with(s, "ps");
    case 't':
      if (ends_with(s, "at")) return n < 3 || (s[n - 3] != 'e' && s[n - 3] != 'o');
      if (ends_with(s, "ut") || ends_with(s, "ot")) return single;
      if (ends_with(s, "it")) {
        return single && (groups == 1 || ends_with(s, "vit") || ends_with(s, "nit"));
      }
      return false;
    case 'd':
    case 'k':
    case 'm':
    case 'b':
      return single;
    case 'n':
      if (!single) return false;
      if (ends_with(s, "in")) return true;
      return groups == 1 && !ends_with(s, "en");
    case 'p':
      if (!single) return false;
      return ends_with(s, "ap") || groups == 1;
    case 'r':
      if (!single) return false;
      if (ends_with(s, "ar") || ends_with(s, "ir") || ends_with(s, "ur")) return true;
      return ends_with(s, "or") && groups == 1;
    case 'l':
      // handl, settl, troubl
      if (n >= 2 && !is_vowel_at(s, n - 2) && s[n - 2] != 'l' && s[n - 2] != 'r') return true;
      if (!single) return false;
      return ends_with(s, "ul") || groups == 1;
    default:
      return false;
  }
}

bool undoublable(char c) {
  return c != 'l' && c != 's' && c != 'z' && c != 'f' && c != 'e' && c != 'o';
}

// Turns the stem left by -ing/-ed into a base form.
std::string restore_stem(std::string_view s) {
  const std::size_t n = s.size();
  if (n >= 4 && s[n - 1] == s[n - 2] && !is_vowel_at(s, n - 1) &&
      undoublable(s[n - 1])) {
    return std::string(s.substr(0, n - 1));
  }
  std::string out(s);
  if (needs_e(s)) out.push_back('e');
  return out;
}

}  // namespace

std::string suffix_lemma(std::string_view w) {
  const std::string word(w);
  if (!ascii_lower_word(w) || w.size() < 4) return word;
  const std::size_t n = w.size();

  if (ends_with(w, "sses")) return std::string(w.substr(0, n - 2));
  if (ends_with(w, "ies")) {
    return n > 4 ? std::string(w.substr(0, n - 3)) + "y"
                 : std::string(w.substr(0, n - 1));
  }
  if (ends_with(w, "ied")) {
    return n > 4 ? std::string(w.substr(0, n - 3)) + "y"
                 : std::string(w.substr(0, n - 1));
  }
  if (ends_with(w, "eed")) return word;
  if (ends_with(w, "ing")) {
    std::string_view stem = w.substr(0, n - 3);
    if (stem.size() < 2 || !has_vowel(stem)) return word;
    return restore_stem(stem);
  }
  if (ends_with(w, "ed")) {
    std::string_view stem = w.substr(0, n - 2);
    if (stem.size() < 2 || !has_vowel(stem)) return word;
    return restore_stem(stem);
  }
  if (ends_with(w, "s")) {
    if (ends_with(w, "ss") || ends_with(w, "us") || ends_with(w, "is") ||
        ends_with(w, "ous")) {
      return word;
    }
    if (ends_with(w, "xes") || ends_with(w, "zzes") || ends_with(w, "ches") ||
        ends_with(w, "shes") || (ends_with(w, "oes") && n > 5)) {
      return std::string(w.substr(0, n - 2));
    }
    std::string_view stem = w.substr(0, n - 1);
    if (!has_vowel(stem)) return word;
    return std::string(stem);
  }
  return word;
}

std::string lemma_of(std::string_view word, const LexiconSet& lex) {
  std::string cur = utf8::to_lower(word);
  for (;;) {
    if (const std::string* d = lex.dictionary_lemma(cur)) return *d;
    std::string next = suffix_lemma(cur);
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

Token lemmatize(Token t, const LexiconSet& lex) {
  if (t.is_entity) return t;
  t.lemma = lemma_of(t.surface, lex);
  return t;
}

}  // namespace glosskit
