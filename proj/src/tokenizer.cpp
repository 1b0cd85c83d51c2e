// Conservative Moses-style tokenizer (no aggressive hyphen splitting, no
// escaping). Non-breaking prefix tables follow the Moses EN and DE lists.

#include <algorithm>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "glosskit/text.hpp"
#include "glosskit/utf8.hpp"

namespace glosskit {

namespace {

// 1 = always keeps its period, 2 = keeps it only before a number.
using PrefixTable = std::unordered_map<std::string, int>;

const PrefixTable& en_prefixes() {
  static const PrefixTable table = [] {
    PrefixTable t;
    for (std::string_view w :
         {"A", "B", "C", "D", "E", "F", "G", "H", "I", "J", "K", "L", "M",
          "N", "O", "P", "Q", "R", "S", "T", "U", "V", "W", "X", "Y", "Z",
          "Adj", "Adm", "Adv", "Asst", "Bart", "Bldg", "Brig", "Bros", "Capt",
          "Cmdr", "Col", "Comdr", "Con", "Corp", "Cpl", "DR", "Dr", "Drs",
          "Ens", "Gen", "Gov", "Hon", "Hr", "Hosp", "Insp", "Lt", "MM", "MR",
          "MRS", "MS", "Maj", "Messrs", "Mlle", "Mme", "Mr", "Mrs", "Ms",
          "Msgr", "Op", "Ord", "Pfc", "Ph", "Prof", "Pvt", "Rep", "Reps",
          "Res", "Rev", "Rt", "Sen", "Sens", "Sfc", "Sgt", "Sr", "St", "Supt",
          "Surg", "v", "vs", "i.e", "rev", "e.g", "Rs", "Nos", "Nr", "Jan",
          "Feb", "Mar", "Apr", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov",
          "Dec"}) {
      t.emplace(std::string(w), 1);
    }
    for (std::string_view w : {"No", "Art", "pp"}) t.emplace(std::string(w), 2);
    return t;
  }();
  return table;
}

const PrefixTable& de_prefixes() {
  static const PrefixTable table = [] {
    PrefixTable t;
    for (char c = 'A'; c <= 'Z'; ++c) {
      t.emplace(std::string(1, c), 1);
      t.emplace(std::string(1, static_cast<char>(c + ('a' - 'A'))), 1);
    }
    for (int i = 1; i <= 99; ++i) t.emplace(std::to_string(i), 1);
    for (std::string_view w :
         {"I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI",
          "XII", "XIII", "XIV", "XV", "XVI", "XVII", "XVIII", "XIX", "XX",
          "i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x", "xi",
          "xii", "xiii", "xiv", "xv", "xvi", "xvii", "xviii", "xix", "xx",
          "Adj", "Adm", "Adv", "Asst", "Bart", "Bldg", "Brig", "Bros",
          "Capt", "Cmdr", "Col", "Comdr", "Con", "Corp", "Cpl", "DR", "Dr",
          "Ens", "Gen", "Gov", "Hon", "Hosp", "Insp", "Lt", "MM", "MR",
          "MRS", "MS", "Maj", "Messrs", "Mlle", "Mme", "Mr", "Mrs", "Ms",
          "Msgr", "Op", "Ord", "Pfc", "Ph", "Prof", "Pvt", "Rep", "Reps",
          "Res", "Rev", "Rt", "Sen", "Sens", "Sfc", "Sgt", "Sr", "St",
          "Supt", "Surg", "Mio", "Mrd", "bzw", "vs", "usw", "d.h", "z.B",
          "u.a", "etc", "MwSt", "ggf", "d.J", "D.h", "m.E", "vgl", "I.F",
          "z.T", "sogen", "ff", "u.E", "g.U", "g.g.A", "c.-à-d", "Buchst",
          "u.s.w", "sog", "u.ä", "Std", "evtl", "Zt", "Chr", "u.U", "o.ä",
          "Ltd", "b.A", "z.Zt", "spp", "sen", "SA", "k.o", "jun", "i.H.v",
          "dgl", "dergl", "Co", "zzt", "usf", "s.p.a", "Dkr", "BSE", "No",
          "Nos", "Art", "Nr", "pp", "ca", "Ca"}) {
      t.emplace(std::string(w), 1);
    }
    return t;
  }();
  return table;
}

bool is_apostrophe(char32_t c) { return c == '\'' || c == 0x2019; }

// A unit is one code point, or one XML entity standing for a single
// character. `cls` is the character the unit behaves as.
struct Unit {
  std::string text;
  char32_t cls = 0;
  bool split_before = false;
  bool split_after = false;
};

constexpr char32_t kUnknownEntity = 0xFFFC;

char32_t entity_class(std::string_view ent) {
  if (ent == "&apos;" || ent == "&#39;") return '\'';
  if (ent == "&amp;") return '&';
  if (ent == "&lt;") return '<';
  if (ent == "&gt;") return '>';
  if (ent == "&quot;") return '"';
  if (ent == "&#124;") return '|';
  if (ent == "&#91;") return '[';
  if (ent == "&#93;") return ']';
  return kUnknownEntity;
}

// Length of an entity starting at s[i] ("&name;" / "&#123;" / "&#x1F;"),
// 0 when there is none.
std::size_t entity_length(std::string_view s, std::size_t i) {
  if (s[i] != '&') return 0;
  std::size_t j = i + 1;
  if (j < s.size() && s[j] == '#') ++j;
  const std::size_t body = j;
  while (j < s.size() && j - body < 16 &&
         ((s[j] >= 'a' && s[j] <= 'z') || (s[j] >= 'A' && s[j] <= 'Z') ||
          (s[j] >= '0' && s[j] <= '9'))) {
    ++j;
  }
  if (j == body || j >= s.size() || s[j] != ';') return 0;
  return j + 1 - i;
}

std::vector<Unit> to_units(std::string_view chunk) {
  std::vector<Unit> units;
  std::size_t i = 0;
  while (i < chunk.size()) {
    if (std::size_t n = entity_length(chunk, i)) {
      std::string_view ent = chunk.substr(i, n);
      units.push_back({std::string(ent), entity_class(ent)});
      i += n;
      continue;
    }
    const std::size_t start = i;
    auto cp = utf8::decode(chunk, i);
    if (!cp) {
      i = start + 1;
      units.push_back({std::string(chunk.substr(start, 1)), kUnknownEntity});
      continue;
    }
    units.push_back({std::string(chunk.substr(start, i - start)), *cp});
  }
  return units;
}

bool keeps_attached(char32_t c) {
  return utf8::is_alnum(c) || c == '.' || c == ',' || c == '-' || c == '`' ||
         is_apostrophe(c);
}

void isolate(std::vector<Unit>& u, std::size_t i) {
  u[i].split_before = true;
  u[i].split_after = true;
}

void split_chunk(std::vector<Unit>& u, Lang lang) {
  const std::size_t n = u.size();
  auto cls = [&](std::size_t i) -> char32_t {
    return i < n ? u[i].cls : U' ';
  };
  auto prev = [&](std::size_t i) -> char32_t {
    return i == 0 ? U' ' : u[i - 1].cls;
  };

  for (std::size_t i = 0; i < n; ++i) {
    const char32_t c = u[i].cls;
    if (!keeps_attached(c)) {
      isolate(u, i);
    } else if (c == ',') {
      if (!(utf8::is_digit(prev(i)) && utf8::is_digit(cls(i + 1)))) {
        isolate(u, i);
      }
    }
  }

  // Runs of two or more periods form one isolated token.
  for (std::size_t i = 0; i < n;) {
    if (u[i].cls != '.') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && u[j].cls == '.') ++j;
    if (j - i >= 2) {
      u[i].split_before = true;
      u[j - 1].split_after = true;
    }
    i = j;
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!is_apostrophe(u[i].cls)) continue;
    if (lang != Lang::En) {
      isolate(u, i);
      continue;
    }
    const char32_t p = prev(i);
    const char32_t nx = cls(i + 1);
    const bool pa = utf8::is_alpha(p);
    const bool na = utf8::is_alpha(nx);
    if (!pa && !na) {
      isolate(u, i);
    } else if (!pa && !utf8::is_digit(p) && na) {
      isolate(u, i);
    } else if (pa && !na) {
      isolate(u, i);
    } else if (pa && na) {
      // n't splits before the n when the word continues to the left.
      if ((p == 'n' || p == 'N') && (nx == 't' || nx == 'T') &&
          !utf8::is_alpha(cls(i + 2)) && i >= 2 && utf8::is_alpha(prev(i - 1))) {
        u[i - 1].split_before = true;
      } else {
        u[i].split_before = true;
      }
    } else if (utf8::is_digit(p) && nx == 's') {
      u[i].split_before = true;
    }
  }
}

std::vector<std::string> group(const std::vector<Unit>& u) {
  std::vector<std::string> words;
  std::string cur;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i].split_before && !cur.empty()) {
      words.push_back(std::move(cur));
      cur.clear();
    }
    cur += u[i].text;
    if (u[i].split_after) {
      words.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) words.push_back(std::move(cur));
  return words;
}

bool has_alpha(std::string_view s) {
  std::size_t pos = 0;
  while (pos < s.size()) {
    auto cp = utf8::decode(s, pos);
    if (!cp) return false;
    if (utf8::is_alpha(*cp)) return true;
  }
  return false;
}

bool all_dots(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == '.'; });
}

void split_final_periods(std::vector<std::string>& words, Lang lang) {
  const PrefixTable& prefixes = lang == Lang::En ? en_prefixes() : de_prefixes();
  std::vector<std::string> out;
  out.reserve(words.size() + 1);
  for (std::size_t i = 0; i < words.size(); ++i) {
    const std::string& w = words[i];
    if (w.size() < 2 || w.back() != '.' || all_dots(w)) {
      out.push_back(w);
      continue;
    }
    std::string_view pre(w.data(), w.size() - 1);
    const bool has_next = i + 1 < words.size();
    auto it = prefixes.find(std::string(pre));
    const int type = it == prefixes.end() ? 0 : it->second;
    bool keep = (pre.find('.') != std::string_view::npos && has_alpha(pre)) ||
                type == 1 ||
                (has_next && utf8::is_lower(utf8::first_char(words[i + 1])));
    if (!keep && type == 2 && has_next &&
        utf8::is_digit(utf8::first_char(words[i + 1]))) {
      keep = true;
    }
    if (keep) {
      out.push_back(w);
    } else {
      out.emplace_back(pre);
      out.emplace_back(".");
    }
  }
  words = std::move(out);
}

}  // namespace

Sentence tokenize(std::string_view raw, Lang lang) {
  Sentence s;
  s.lang = lang;
  s.kind = Kind::Text;

  std::vector<std::string> words;
  std::string chunk;
  auto flush = [&] {
    if (chunk.empty()) return;
    auto units = to_units(chunk);
    split_chunk(units, lang);
    for (auto& w : group(units)) words.push_back(std::move(w));
    chunk.clear();
  };

  std::size_t pos = 0;
  while (pos < raw.size()) {
    const std::size_t start = pos;
    auto cp = utf8::decode(raw, pos);
    if (!cp) {
      pos = start + 1;
      chunk.push_back(raw[start]);
      continue;
    }
    if (utf8::is_space(*cp) || utf8::is_control(*cp)) {
      flush();
    } else {
      chunk.append(raw.substr(start, pos - start));
    }
  }
  flush();

  split_final_periods(words, lang);
  s.tokens.reserve(words.size());
  for (auto& w : words) s.tokens.push_back(Token::make(std::move(w)));
  return s;
}

}  // namespace glosskit
