#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace glosskit {

enum class Lang { En, De };
enum class Kind { Text, Gloss };
enum class Origin { GroundTruth, PseudoRule, PseudoBt, Combined };

std::string_view to_string(Lang lang);
std::string_view to_string(Kind kind);
std::string_view to_string(Origin origin);
// Accepts "en"/"de" in any case; throws InvalidArgument otherwise.
Lang parse_lang(std::string_view s);

struct Token {
  std::string surface;
  std::optional<std::string> lemma;
  bool is_punct = false;
  bool is_entity = false;
  std::optional<int> entity_span_id;

  // Rule-engine metadata, never serialized. `clause_start` marks the first
  // token of every clause after the first one; `source_pos` is the index of
  // the input token this token was derived from (-1 when unknown).
  bool clause_start = false;
  int source_pos = -1;

  // Builds a token from a surface, classifying punctuation. Throws
  // InvalidArgument for an empty surface or one containing whitespace.
  static Token make(std::string surface);

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::vector<Token> tokens;
  Lang lang = Lang::En;
  Kind kind = Kind::Text;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
  std::vector<std::string> surfaces() const;
  // Space-joined surfaces, the on-disk line format.
  std::string to_line() const;

  bool operator==(const Sentence&) const = default;
};

// Parses one on-disk line: tokens separated by whitespace.
Sentence sentence_from_line(std::string_view line, Lang lang, Kind kind);

struct SentencePair {
  Sentence gloss;
  Sentence text;
  bool operator==(const SentencePair&) const = default;
};

struct ParallelCorpus {
  std::vector<SentencePair> pairs;
  std::string name;
  Origin origin = Origin::GroundTruth;
  Lang lang = Lang::En;

  std::size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }
  // Throws FormatError when a pair has the wrong kind or language.
  void validate() const;
};

struct MonolingualCorpus {
  std::vector<Sentence> sentences;
  std::string name;
  Lang lang = Lang::En;

  std::size_t size() const { return sentences.size(); }
  bool empty() const { return sentences.empty(); }
};

// Conservative Moses-style tokenization: splits on whitespace and isolates
// punctuation, keeps intra-word hyphens, splits English clitics ('s, n't,
// 'll ...) and honors the per-language non-breaking prefixes for periods.
// XML entities (&amp; ...) are kept intact as single characters so that
// deescape_special_chars can resolve them afterwards.
Sentence tokenize(std::string_view raw, Lang lang);

// Replaces the fixed entity table (&amp; &lt; &gt; &quot; &apos; &#39;
// &#124; &#91; &#93;) inside every surface until no entity remains. Unknown
// entities pass through; tokens that become empty are dropped.
Sentence deescape_special_chars(Sentence s);
std::string deescape(std::string_view surface);

// Line-per-sentence corpus files. A leading UTF-8 BOM is stripped, '\r'
// before '\n' is dropped, invalid UTF-8 raises FormatError naming the line.
std::vector<std::string> read_lines(const std::filesystem::path& path);
MonolingualCorpus read_corpus(const std::filesystem::path& path, Lang lang,
                              Kind kind = Kind::Text);
std::vector<Sentence> read_sentences(const std::filesystem::path& path,
                                     Lang lang, Kind kind);
void write_corpus(const MonolingualCorpus& corpus,
                  const std::filesystem::path& path);
void write_sentences(const std::vector<Sentence>& sentences,
                     const std::filesystem::path& path);

// Reads line-aligned gloss/text files. Differing line counts raise
// FormatError with the message "<gloss> vs <text>".
ParallelCorpus read_parallel(const std::filesystem::path& gloss_path,
                             const std::filesystem::path& text_path,
                             Lang lang, Origin origin);
void write_parallel(const ParallelCorpus& corpus,
                    const std::filesystem::path& gloss_path,
                    const std::filesystem::path& text_path);

// Writes to a sibling temp file and renames it into place.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);

}  // namespace glosskit
