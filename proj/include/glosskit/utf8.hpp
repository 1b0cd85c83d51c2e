#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace glosskit::utf8 {

// Decodes one code point starting at `pos`. On success advances `pos` past
// the sequence. Returns nullopt (and leaves `pos` untouched) on a malformed,
// overlong or surrogate sequence.
std::optional<char32_t> decode(std::string_view s, std::size_t& pos);

void append(std::string& out, char32_t cp);

// Byte offset of the first invalid sequence, or nullopt if `s` is valid.
std::optional<std::size_t> first_invalid(std::string_view s);

inline bool is_valid(std::string_view s) { return !first_invalid(s); }

// Character classes. Coverage is ASCII, Latin-1, Latin Extended-A, basic
// Greek and Cyrillic plus the general punctuation blocks; that is what the
// EN and DE corpora contain.
bool is_space(char32_t cp);
bool is_punct(char32_t cp);
bool is_control(char32_t cp);
bool is_digit(char32_t cp);
bool is_alpha(char32_t cp);
bool is_upper(char32_t cp);
bool is_lower(char32_t cp);
inline bool is_alnum(char32_t cp) { return is_alpha(cp) || is_digit(cp); }

char32_t to_lower(char32_t cp);
std::string to_lower(std::string_view s);

// True when every code point of a non-empty string is punctuation.
bool all_punct(std::string_view s);

// First code point of `s`, or U+0000 for an empty/invalid prefix.
char32_t first_char(std::string_view s);

}  // namespace glosskit::utf8
