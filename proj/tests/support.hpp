#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "glosskit/lexicon.hpp"
#include "glosskit/text.hpp"

namespace testing {

inline std::filesystem::path test_data(const std::string& rel = "") {
  return std::filesystem::path(GLOSSKIT_TEST_DATA) / rel;
}

inline std::filesystem::path lexicon_dir(glosskit::Lang lang) {
  return std::filesystem::path(GLOSSKIT_DATA_DIR) / "lexicon" /
         std::string(glosskit::to_string(lang));
}

inline const glosskit::LexiconSet& default_lexicon(glosskit::Lang lang) {
  static const glosskit::LexiconSet en = glosskit::load_lexicon_set(lexicon_dir(glosskit::Lang::En));
  static const glosskit::LexiconSet de = glosskit::load_lexicon_set(lexicon_dir(glosskit::Lang::De));
  return lang == glosskit::Lang::En ? en : de;
}

inline std::shared_ptr<const glosskit::LexiconSet> shared_lexicon(glosskit::Lang lang) {
  return std::make_shared<const glosskit::LexiconSet>(default_lexicon(lang));
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("glosskit-" + tag + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  out << s;
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline glosskit::Sentence line(std::string_view s, glosskit::Lang lang = glosskit::Lang::En,
                               glosskit::Kind kind = glosskit::Kind::Text) {
  return glosskit::sentence_from_line(s, lang, kind);
}

}  // namespace testing
