#include "glosskit/lexicon.hpp"

#include <algorithm>
#include <sstream>

#include "glosskit/digest.hpp"
#include "glosskit/error.hpp"
#include "glosskit/utf8.hpp"

namespace glosskit {

namespace fs = std::filesystem;

namespace {

std::string strip_trailing_periods(std::string_view s) {
  while (s.size() > 1 && s.back() == '.') s.remove_suffix(1);
  return std::string(s);
}

template <typename Map>
const typename Map::mapped_type* find_ptr(const Map& m, std::string_view key) {
  auto it = m.find(key);
  return it == m.end() ? nullptr : &it->second;
}

// Lowercased lookup key; avoids the copy when `s` is already lowercase ASCII.
class Key {
 public:
  explicit Key(std::string_view s) : view_(s) {
    const bool plain = std::none_of(s.begin(), s.end(), [](char c) {
      return (c >= 'A' && c <= 'Z') || static_cast<unsigned char>(c) >= 0x80;
    });
    if (!plain) {
      owned_ = utf8::to_lower(s);
      view_ = owned_;
    }
  }
  operator std::string_view() const { return view_; }

 private:
  std::string owned_;
  std::string_view view_;
};

bool has_space(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  });
}

}  // namespace

void LexiconSet::add_lemma(std::string_view surface, std::string_view lemma) {
  lemma_map_[utf8::to_lower(surface)] = utf8::to_lower(lemma);
}

void LexiconSet::add_special_lemma(std::string_view surface,
                                   std::string_view lemma) {
  special_lemma_map_[utf8::to_lower(surface)] = utf8::to_lower(lemma);
}

void LexiconSet::add_stopword(std::string_view word) {
  stopwords_.insert(utf8::to_lower(word));
}

void LexiconSet::add_function_word(std::string_view word) {
  function_words_.insert(utf8::to_lower(word));
}

void LexiconSet::add_replacement(std::string_view word,
                                 std::string_view replacement) {
  replacement_map_[utf8::to_lower(word)] = std::string(replacement);
}

void LexiconSet::add_abbreviation(std::string_view abbrev,
                                  std::vector<std::string> expansion) {
  std::string key = utf8::to_lower(abbrev);
  abbreviation_index_[strip_trailing_periods(key)] = key;
  abbreviation_map_[std::move(key)] = std::move(expansion);
}

void LexiconSet::add_gazetteer_entry(const std::vector<std::string>& tokens) {
  if (tokens.empty()) return;
  std::string joined;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) joined.push_back(' ');
    joined += utf8::to_lower(tokens[i]);
  }
  gazetteer_.insert(std::move(joined));
  gazetteer_max_len_ = std::max(gazetteer_max_len_, tokens.size());
}

void LexiconSet::set_stopwords(StringSet words) {
  stopwords_.clear();
  for (const auto& w : words) stopwords_.insert(utf8::to_lower(w));
  for (const auto& [k, v] : replacement_map_) stopwords_.erase(k);
}

void LexiconSet::set_function_words(StringSet words) {
  function_words_.clear();
  for (const auto& w : words) function_words_.insert(utf8::to_lower(w));
}

namespace {

// Follows `step` from `start` until a fixed point or a dead end. Throws on
// a cycle of length > 1.
template <typename Step>
std::string resolve_chain(const std::string& start, Step step,
                          std::string_view what) {
  std::vector<std::string> path{start};
  std::string cur = start;
  for (;;) {
    const std::string* next = step(cur);
    if (!next || *next == cur) return cur;
    if (std::find(path.begin(), path.end(), *next) != path.end()) {
      auto first = std::find(path.begin(), path.end(), *next);
      std::string members;
      for (auto it = first; it != path.end(); ++it) {
        if (!members.empty()) members += ", ";
        members += *it;
      }
      throw FormatError(std::string(what) + " cycle: " + members);
    }
    path.push_back(*next);
    cur = *next;
  }
}

}  // namespace

void LexiconSet::finalize() {
  auto lemma_step = [this](const std::string& w) -> const std::string* {
    if (auto* v = find_ptr(special_lemma_map_, w)) return v;
    return find_ptr(lemma_map_, w);
  };
  StringMap special = special_lemma_map_;
  StringMap lemma = lemma_map_;
  for (auto& [k, v] : special) v = resolve_chain(k, lemma_step, "lemma");
  for (auto& [k, v] : lemma) {
    // A key shadowed by the special map resolves like the special entry.
    v = resolve_chain(k, lemma_step, "lemma");
  }
  special_lemma_map_ = std::move(special);
  lemma_map_ = std::move(lemma);
  std::vector<std::string> finals;
  for (const auto& [k, v] : special_lemma_map_) finals.push_back(v);
  for (const auto& [k, v] : lemma_map_) finals.push_back(v);
  for (const auto& v : finals) {
    if (!special_lemma_map_.contains(v) && !lemma_map_.contains(v)) {
      lemma_map_.emplace(v, v);
    }
  }

  auto repl_step = [this](const std::string& w) -> const std::string* {
    return find_ptr(replacement_map_, utf8::to_lower(w));
  };
  StringMap repl = replacement_map_;
  for (auto& [k, v] : repl) v = resolve_chain(k, repl_step, "replacement");
  replacement_map_ = std::move(repl);
  for (const auto& [k, v] : replacement_map_) stopwords_.erase(k);
  for (const auto& [k, v] : replacement_map_) {
    if (stopwords_.contains(utf8::to_lower(v))) {
      throw FormatError("replacement target '" + v + "' of '" + k +
                        "' is itself a stopword");
    }
  }
}

const std::string* LexiconSet::dictionary_lemma(std::string_view word) const {
  const Key key(word);
  if (auto* v = find_ptr(special_lemma_map_, std::string_view(key))) return v;
  return find_ptr(lemma_map_, std::string_view(key));
}

bool LexiconSet::is_stopword(std::string_view word) const {
  return stopwords_.find(std::string_view(Key(word))) != stopwords_.end();
}

bool LexiconSet::is_function_word(std::string_view word) const {
  return function_words_.find(std::string_view(Key(word))) != function_words_.end();
}

const std::string* LexiconSet::replacement(std::string_view word) const {
  return find_ptr(replacement_map_, std::string_view(Key(word)));
}

const std::vector<std::string>* LexiconSet::abbreviation(
    std::string_view token) const {
  if (abbreviation_index_.empty()) return nullptr;
  const std::string key = strip_trailing_periods(utf8::to_lower(token));
  const std::string* full = find_ptr(abbreviation_index_, key);
  return full ? find_ptr(abbreviation_map_, *full) : nullptr;
}

bool LexiconSet::gazetteer_contains(
    const std::vector<std::string>& lowered) const {
  std::string joined;
  for (std::size_t i = 0; i < lowered.size(); ++i) {
    if (i) joined.push_back(' ');
    joined += lowered[i];
  }
  return gazetteer_.find(joined) != gazetteer_.end();
}

bool LexiconSet::operator==(const LexiconSet& o) const {
  return lemma_map_ == o.lemma_map_ &&
         special_lemma_map_ == o.special_lemma_map_ &&
         stopwords_ == o.stopwords_ && function_words_ == o.function_words_ &&
         replacement_map_ == o.replacement_map_ &&
         abbreviation_map_ == o.abbreviation_map_ && gazetteer_ == o.gazetteer_;
}

// ---------------------------------------------------------------------------
// Directory format

namespace {

constexpr std::string_view kLemmaFile = "lemma.tsv";
constexpr std::string_view kSpecialFile = "special_lemma.tsv";
constexpr std::string_view kStopwordFile = "stopwords_de.txt";
constexpr std::string_view kFunctionFile = "function_words_en.txt";
constexpr std::string_view kReplaceFile = "replace_de.tsv";
constexpr std::string_view kAbbrevFile = "abbrev_en.tsv";
constexpr std::string_view kGazetteerFile = "gazetteer.txt";

bool skippable(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos ||
         line.starts_with('#');
}

std::string location(const fs::path& file, std::size_t line) {
  return file.string() + ":" + std::to_string(line);
}

std::vector<std::string> split_spaces(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

// Calls fn(key, value, line_no) for every data line of a two-column TSV.
template <typename Fn>
void read_tsv(const fs::path& file, Fn fn) {
  if (!fs::exists(file)) return;
  const auto lines = read_lines(file);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (skippable(line)) continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos ||
        line.find('\t', tab + 1) != std::string_view::npos) {
      throw FormatError(location(file, i + 1) +
                        ": expected two tab-separated fields");
    }
    std::string_view key = line.substr(0, tab);
    std::string_view value = line.substr(tab + 1);
    if (key.empty() || value.empty()) {
      throw FormatError(location(file, i + 1) + ": empty field");
    }
    fn(key, value, i + 1);
  }
}

template <typename Fn>
void read_word_list(const fs::path& file, Fn fn) {
  if (!fs::exists(file)) return;
  const auto lines = read_lines(file);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (skippable(lines[i])) continue;
    auto words = split_spaces(lines[i]);
    fn(std::move(words), i + 1);
  }
}

void require_single_token(const fs::path& file, std::size_t line,
                          std::string_view s) {
  if (has_space(s)) {
    throw FormatError(location(file, line) + ": '" + std::string(s) +
                      "' must be a single token");
  }
}

std::string serialize_map(const StringMap& m) {
  std::string out;
  for (const auto& [k, v] : m) out += k + "\t" + v + "\n";
  return out;
}

std::string serialize_set(const StringSet& s) {
  std::string out;
  for (const auto& w : s) out += w + "\n";
  return out;
}

std::string serialize_abbrev(const ExpansionMap& m) {
  std::string out;
  for (const auto& [k, v] : m) {
    out += k + "\t";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out.push_back(' ');
      out += v[i];
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace

LexiconSet load_lexicon_set(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw IoError("lexicon directory not found: " + dir.string());
  }
  LexiconSet lex;
  auto two_tokens = [](const fs::path& file, auto add) {
    read_tsv(file, [&](std::string_view k, std::string_view v,
                       std::size_t line) {
      require_single_token(file, line, k);
      require_single_token(file, line, v);
      add(k, v);
    });
  };
  two_tokens(dir / kLemmaFile,
             [&](auto k, auto v) { lex.add_lemma(k, v); });
  two_tokens(dir / kSpecialFile,
             [&](auto k, auto v) { lex.add_special_lemma(k, v); });
  two_tokens(dir / kReplaceFile,
             [&](auto k, auto v) { lex.add_replacement(k, v); });

  const fs::path abbrev = dir / kAbbrevFile;
  read_tsv(abbrev, [&](std::string_view k, std::string_view v,
                       std::size_t line) {
    require_single_token(abbrev, line, k);
    auto tokens = split_spaces(v);
    if (tokens.empty()) {
      throw FormatError(location(abbrev, line) + ": empty expansion");
    }
    lex.add_abbreviation(k, std::move(tokens));
  });

  auto single_words = [](const fs::path& file, auto add) {
    read_word_list(file, [&](std::vector<std::string> words, std::size_t line) {
      if (words.size() != 1) {
        throw FormatError(location(file, line) + ": expected one word");
      }
      add(words.front());
    });
  };
  single_words(dir / kStopwordFile, [&](const auto& w) { lex.add_stopword(w); });
  single_words(dir / kFunctionFile,
               [&](const auto& w) { lex.add_function_word(w); });
  read_word_list(dir / kGazetteerFile,
                 [&](std::vector<std::string> words, std::size_t) {
                   lex.add_gazetteer_entry(words);
                 });

  try {
    lex.finalize();
  } catch (const FormatError& e) {
    throw FormatError(dir.string() + ": " + e.what());
  }
  return lex;
}

void save_lexicon_set(const LexiconSet& lex, const fs::path& dir) {
  fs::create_directories(dir);
  write_file_atomic(dir / kLemmaFile, serialize_map(lex.lemma_map()));
  write_file_atomic(dir / kSpecialFile, serialize_map(lex.special_lemma_map()));
  write_file_atomic(dir / kStopwordFile, serialize_set(lex.stopwords()));
  write_file_atomic(dir / kFunctionFile, serialize_set(lex.function_words()));
  write_file_atomic(dir / kReplaceFile, serialize_map(lex.replacement_map()));
  write_file_atomic(dir / kAbbrevFile, serialize_abbrev(lex.abbreviation_map()));
  write_file_atomic(dir / kGazetteerFile, serialize_set(lex.gazetteer()));
}

std::string LexiconSet::digest() const {
  std::string all;
  auto section = [&](std::string_view name, const std::string& body) {
    all += "## ";
    all += name;
    all += "\n";
    all += body;
  };
  section(kLemmaFile, serialize_map(lemma_map_));
  section(kSpecialFile, serialize_map(special_lemma_map_));
  section(kStopwordFile, serialize_set(stopwords_));
  section(kFunctionFile, serialize_set(function_words_));
  section(kReplaceFile, serialize_map(replacement_map_));
  section(kAbbrevFile, serialize_abbrev(abbreviation_map_));
  section(kGazetteerFile, serialize_set(gazetteer_));
  return sha256_hex(all);
}

// ---------------------------------------------------------------------------
// Vocabulary statistics

VocabularyStats compute_vocab_stats(const ParallelCorpus& corpus) {
  if (corpus.empty()) {
    throw InvalidArgument("cannot compute vocabulary statistics of an empty corpus");
  }
  VocabularyStats st;
  for (const auto& p : corpus.pairs) {
    for (const auto& t : p.gloss.tokens) {
      ++st.gloss_counts[utf8::to_lower(t.surface)];
      ++st.gloss_total;
    }
    for (const auto& t : p.text.tokens) {
      ++st.text_counts[utf8::to_lower(t.surface)];
      ++st.text_total;
    }
  }
  return st;
}

std::vector<std::string> extract_drop_list(const VocabularyStats& stats,
                                           std::uint64_t min_text_freq,
                                           double max_gloss_ratio) {
  std::vector<std::string> out;
  for (const auto& [word, text_count] : stats.text_counts) {
    if (text_count == 0 || text_count < min_text_freq) continue;
    auto it = stats.gloss_counts.find(word);
    const std::uint64_t gloss_count = it == stats.gloss_counts.end() ? 0 : it->second;
    const double ratio =
        static_cast<double>(gloss_count) / static_cast<double>(text_count);
    if (ratio <= max_gloss_ratio) out.push_back(word);
  }
  return out;  // std::map iteration order is already sorted
}

}  // namespace glosskit
