// German multi-word-token data: contractions and the 13..99 number grammar.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "glosskit/rules.hpp"
#include "glosskit/utf8.hpp"

namespace glosskit {

namespace {

struct NumberWord {
  std::string_view spelling;
  int value;
};

constexpr std::array<NumberWord, 11> kUnits{{
    {"ein", 1}, {"zwei", 2}, {"drei", 3}, {"vier", 4}, {"fünf", 5},
    {"fuenf", 5}, {"sechs", 6}, {"sieben", 7}, {"acht", 8}, {"neun", 9},
    {"eins", 1},
}};

constexpr std::array<NumberWord, 10> kTens{{
    {"zwanzig", 20}, {"dreißig", 30}, {"dreissig", 30}, {"vierzig", 40},
    {"fünfzig", 50}, {"fuenfzig", 50}, {"sechzig", 60}, {"siebzig", 70},
    {"achtzig", 80}, {"neunzig", 90},
}};

constexpr std::array<NumberWord, 9> kTeens{{
    {"dreizehn", 13}, {"vierzehn", 14}, {"fünfzehn", 15}, {"fuenfzehn", 15},
    {"sechzehn", 16}, {"siebzehn", 17}, {"achtzehn", 18}, {"neunzehn", 19},
    {"siebenzehn", 17},
}};

template <std::size_t N>
std::optional<int> lookup(const std::array<NumberWord, N>& table,
                          std::string_view w) {
  for (const auto& e : table) {
    if (e.spelling == w) return e.value;
  }
  return std::nullopt;
}

struct Compound {
  std::size_t unit_len;  // bytes
  std::size_t tens_start;
  int value;
};

// unit + "und" + tens, "eins" excluded (the compound form is "ein").
std::optional<Compound> parse_compound(std::string_view w) {
  for (const auto& u : kUnits) {
    if (u.spelling == "eins" || !w.starts_with(u.spelling)) continue;
    std::string_view rest = w.substr(u.spelling.size());
    if (!rest.starts_with("und")) continue;
    std::string_view tens = rest.substr(3);
    if (auto t = lookup(kTens, tens)) {
      return Compound{u.spelling.size(), u.spelling.size() + 3, u.value + *t};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<int> german_number_value(std::string_view w) {
  if (auto v = lookup(kTeens, w)) return v;
  if (auto v = lookup(kTens, w)) return v;
  if (auto c = parse_compound(w)) return c->value;
  return std::nullopt;
}

std::optional<std::vector<std::string>> split_german_number(
    std::string_view word) {
  const std::string lowered = utf8::to_lower(word);
  auto c = parse_compound(lowered);
  if (!c) return std::nullopt;
  // Keep the original casing when lowercasing preserved byte offsets.
  std::string_view src = lowered.size() == word.size() ? word : lowered;
  return std::vector<std::string>{
      std::string(src.substr(0, c->unit_len)),
      std::string(src.substr(c->unit_len, 3)),
      std::string(src.substr(c->tens_start)),
  };
}

const std::vector<std::string>* german_contraction(std::string_view lowered) {
  static const std::unordered_map<std::string, std::vector<std::string>> table{
      {"am", {"an", "dem"}},       {"ans", {"an", "das"}},
      {"aufs", {"auf", "das"}},    {"beim", {"bei", "dem"}},
      {"durchs", {"durch", "das"}}, {"fürs", {"für", "das"}},
      {"hinterm", {"hinter", "dem"}}, {"hinters", {"hinter", "das"}},
      {"im", {"in", "dem"}},       {"ins", {"in", "das"}},
      {"ums", {"um", "das"}},      {"unterm", {"unter", "dem"}},
      {"unters", {"unter", "das"}}, {"übers", {"über", "das"}},
      {"überm", {"über", "dem"}},  {"vom", {"von", "dem"}},
      {"vorm", {"vor", "dem"}},    {"vors", {"vor", "das"}},
      {"zum", {"zu", "dem"}},      {"zur", {"zu", "der"}},
  };
  auto it = table.find(std::string(lowered));
  return it == table.end() ? nullptr : &it->second;
}

}  // namespace glosskit
