#include "glosskit/text.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <utility>

#include "glosskit/error.hpp"
#include "glosskit/utf8.hpp"

namespace glosskit {

namespace fs = std::filesystem;

std::string_view to_string(Lang lang) {
  return lang == Lang::En ? "en" : "de";
}

std::string_view to_string(Kind kind) {
  return kind == Kind::Text ? "text" : "gloss";
}

std::string_view to_string(Origin origin) {
  switch (origin) {
    case Origin::GroundTruth: return "ground_truth";
    case Origin::PseudoRule: return "pseudo_rule";
    case Origin::PseudoBt: return "pseudo_bt";
    case Origin::Combined: return "combined";
  }
  return "unknown";
}

Lang parse_lang(std::string_view s) {
  const std::string lower = utf8::to_lower(s);
  if (lower == "en") return Lang::En;
  if (lower == "de") return Lang::De;
  throw InvalidArgument("unknown language '" + std::string(s) +
                        "' (expected en or de)");
}

Token Token::make(std::string surface) {
  if (surface.empty()) throw InvalidArgument("token surface is empty");
  std::size_t pos = 0;
  bool punct = true;
  while (pos < surface.size()) {
    const std::size_t start = pos;
    auto cp = utf8::decode(surface, pos);
    if (!cp) {
      pos = start + 1;
      punct = false;
      continue;
    }
    if (utf8::is_space(*cp)) {
      throw InvalidArgument("token surface contains whitespace: '" +
                            surface + "'");
    }
    if (!utf8::is_punct(*cp)) punct = false;
  }
  Token t;
  t.surface = std::move(surface);
  t.is_punct = punct;
  return t;
}

std::vector<std::string> Sentence::surfaces() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.surface);
  return out;
}

std::string Sentence::to_line() const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i].surface;
  }
  return out;
}

Sentence sentence_from_line(std::string_view line, Lang lang, Kind kind) {
  Sentence s;
  s.lang = lang;
  s.kind = kind;
  std::size_t pos = 0;
  std::size_t tok_start = std::string_view::npos;
  auto flush = [&](std::size_t end) {
    if (tok_start != std::string_view::npos) {
      s.tokens.push_back(
          Token::make(std::string(line.substr(tok_start, end - tok_start))));
      tok_start = std::string_view::npos;
    }
  };
  while (pos < line.size()) {
    const std::size_t start = pos;
    auto cp = utf8::decode(line, pos);
    if (!cp) {
      pos = start + 1;
      if (tok_start == std::string_view::npos) tok_start = start;
      continue;
    }
    if (utf8::is_space(*cp)) {
      flush(start);
    } else if (tok_start == std::string_view::npos) {
      tok_start = start;
    }
  }
  flush(line.size());
  return s;
}

void ParallelCorpus::validate() const {
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i];
    if (p.gloss.kind != Kind::Gloss || p.text.kind != Kind::Text) {
      throw FormatError("pair " + std::to_string(i + 1) + " of corpus '" +
                        name + "' has swapped gloss/text kinds");
    }
    if (p.gloss.lang != lang || p.text.lang != lang) {
      throw FormatError("pair " + std::to_string(i + 1) + " of corpus '" +
                        name + "' has a mismatched language");
    }
  }
}

// ---------------------------------------------------------------------------
// Entities

namespace {

struct Entity {
  std::string_view name;
  std::string_view value;
};

constexpr std::array<Entity, 9> kEntities{{
    {"&amp;", "&"},
    {"&lt;", "<"},
    {"&gt;", ">"},
    {"&quot;", "\""},
    {"&apos;", "'"},
    {"&#39;", "'"},
    {"&#124;", "|"},
    {"&#91;", "["},
    {"&#93;", "]"},
}};

// One left-to-right replacement pass.
std::string deescape_once(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '&') {
      bool hit = false;
      for (const auto& e : kEntities) {
        if (s.compare(i, e.name.size(), e.name) == 0) {
          out += e.value;
          i += e.name.size();
          hit = true;
          break;
        }
      }
      if (hit) continue;
    }
    out.push_back(s[i++]);
  }
  return out;
}

}  // namespace

std::string deescape(std::string_view surface) {
  std::string cur(surface);
  if (cur.find('&') == std::string::npos) return cur;
  for (;;) {
    std::string next = deescape_once(cur);
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

Sentence deescape_special_chars(Sentence s) {
  std::vector<Token> out;
  out.reserve(s.tokens.size());
  bool pending_clause = false;
  for (auto& t : s.tokens) {
    if (t.surface.find('&') == std::string::npos) {
      if (pending_clause) t.clause_start = true;
      pending_clause = false;
      out.push_back(std::move(t));
      continue;
    }
    std::string value = deescape(t.surface);
    if (value.empty()) {
      pending_clause = pending_clause || t.clause_start;
      continue;
    }
    Token nt = Token::make(std::move(value));
    nt.lemma = t.lemma;
    nt.is_entity = t.is_entity;
    nt.entity_span_id = t.entity_span_id;
    nt.clause_start = t.clause_start || pending_clause;
    nt.source_pos = t.source_pos;
    pending_clause = false;
    out.push_back(std::move(nt));
  }
  s.tokens = std::move(out);
  return s;
}

// ---------------------------------------------------------------------------
// File I/O

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  std::string data = std::move(buf).str();

  std::string_view view(data);
  if (view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);

  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < view.size()) {
    std::size_t nl = view.find('\n', start);
    const bool last = nl == std::string_view::npos;
    std::string_view line = view.substr(start, last ? view.npos : nl - start);
    if (line.ends_with('\r')) line.remove_suffix(1);
    if (auto bad = utf8::first_invalid(line)) {
      throw FormatError(path.string() + ":" + std::to_string(lines.size() + 1) +
                        ": invalid UTF-8 at byte " + std::to_string(*bad));
    }
    lines.emplace_back(line);
    if (last) break;
    start = nl + 1;
  }
  return lines;
}

std::vector<Sentence> read_sentences(const fs::path& path, Lang lang,
                                     Kind kind) {
  std::vector<Sentence> out;
  for (const auto& line : read_lines(path)) {
    out.push_back(sentence_from_line(line, lang, kind));
  }
  return out;
}

MonolingualCorpus read_corpus(const fs::path& path, Lang lang, Kind kind) {
  MonolingualCorpus c;
  c.sentences = read_sentences(path, lang, kind);
  c.name = path.stem().string();
  c.lang = lang;
  return c;
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot rename into " + path.string());
  }
}

namespace {

std::string join_lines(const std::vector<Sentence>& sentences) {
  std::string out;
  for (const auto& s : sentences) {
    out += s.to_line();
    out.push_back('\n');
  }
  return out;
}

}  // namespace

void write_sentences(const std::vector<Sentence>& sentences,
                     const fs::path& path) {
  write_file_atomic(path, join_lines(sentences));
}

void write_corpus(const MonolingualCorpus& corpus, const fs::path& path) {
  write_sentences(corpus.sentences, path);
}

ParallelCorpus read_parallel(const fs::path& gloss_path,
                             const fs::path& text_path, Lang lang,
                             Origin origin) {
  auto gloss = read_sentences(gloss_path, lang, Kind::Gloss);
  auto text = read_sentences(text_path, lang, Kind::Text);
  if (gloss.size() != text.size()) {
    throw FormatError("line count mismatch between " + gloss_path.string() +
                      " and " + text_path.string() + ": " +
                      std::to_string(gloss.size()) + " vs " +
                      std::to_string(text.size()));
  }
  ParallelCorpus c;
  c.name = text_path.stem().string();
  c.origin = origin;
  c.lang = lang;
  c.pairs.reserve(gloss.size());
  for (std::size_t i = 0; i < gloss.size(); ++i) {
    c.pairs.push_back({std::move(gloss[i]), std::move(text[i])});
  }
  return c;
}

void write_parallel(const ParallelCorpus& corpus, const fs::path& gloss_path,
                    const fs::path& text_path) {
  std::string g;
  std::string t;
  for (const auto& p : corpus.pairs) {
    g += p.gloss.to_line();
    g.push_back('\n');
    t += p.text.to_line();
    t.push_back('\n');
  }
  write_file_atomic(gloss_path, g);
  write_file_atomic(text_path, t);
}

}  // namespace glosskit
