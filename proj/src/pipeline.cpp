#include "glosskit/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <iomanip>
#include <sstream>
#include <unordered_set>

#include "glosskit/digest.hpp"
#include "glosskit/error.hpp"

namespace glosskit {

std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw InvalidArgument("bounded_draw: bound must be positive");
  // Reject the low (2^64 mod bound) values so every residue is equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % bound;
  }
}

std::vector<std::size_t> sample_indices(std::size_t population, std::size_t n,
                                        std::uint64_t seed) {
  if (n > population) {
    throw InvalidArgument("sample: requested " + std::to_string(n) +
                          " sentences from a corpus of " + std::to_string(population));
  }
  std::vector<std::size_t> perm(population);
  for (std::size_t i = 0; i < population; ++i) perm[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + bounded_draw(rng, population - i);
    std::swap(perm[i], perm[j]);
  }
  perm.resize(n);
  std::sort(perm.begin(), perm.end());
  return perm;
}

FilterResult filter_by_length(const MonolingualCorpus& corpus, std::size_t max_len) {
  FilterResult r;
  r.corpus.name = corpus.name;
  r.corpus.lang = corpus.lang;
  for (const auto& s : corpus.sentences) {
    if (s.size() > max_len) {
      ++r.dropped;
    } else {
      r.corpus.sentences.push_back(s);
    }
  }
  return r;
}

FilterResult deduplicate(const MonolingualCorpus& corpus) {
  FilterResult r;
  r.corpus.name = corpus.name;
  r.corpus.lang = corpus.lang;
  std::unordered_set<std::string> seen;
  for (const auto& s : corpus.sentences) {
    if (seen.insert(s.to_line()).second) {
      r.corpus.sentences.push_back(s);
    } else {
      ++r.dropped;
    }
  }
  return r;
}

MonolingualCorpus sample(const MonolingualCorpus& corpus, std::size_t n,
                         std::uint64_t seed) {
  MonolingualCorpus out;
  out.name = corpus.name;
  out.lang = corpus.lang;
  out.sentences.reserve(n);
  for (std::size_t i : sample_indices(corpus.size(), n, seed)) {
    out.sentences.push_back(corpus.sentences[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::string utc_timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long v = std::strtoll(epoch, &end, 10);
    if (end != epoch && *end == '\0') t = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::string corpus_digest(const std::vector<Sentence>& sentences) {
  std::string buf;
  for (const auto& s : sentences) {
    buf += s.to_line();
    buf.push_back('\n');
  }
  return sha256_hex(buf);
}

}  // namespace

nlohmann::json GenerationManifest::to_json() const {
  nlohmann::json j;
  j["source"] = {{"name", source_name}, {"sha256", source_digest}};
  j["config"] = {{"lang", std::string(to_string(lang))},
                 {"pipeline", pipeline_label},
                 {"lexicon_sha256", lexicon_digest},
                 {"drop_empty", drop_empty}};
  j["config"]["ablated"] = ablated ? nlohmann::json(*ablated) : nlohmann::json(nullptr);
  j["counts"] = {{"input_sentences", input_sentences},
                 {"emitted_pairs", emitted_pairs},
                 {"empty_dropped", empty_dropped}};
  j["seconds"] = seconds;
  j["sentences_per_second"] =
      seconds > 0 ? static_cast<double>(input_sentences) / seconds : 0.0;
  j["timestamp"] = timestamp;
  return j;
}

GenerationResult generate_pseudo_corpus(const MonolingualCorpus& mono,
                                        const RulePipeline& p, bool drop_empty,
                                        unsigned threads) {
  if (mono.lang != p.lang) {
    throw InvalidArgument("generate: corpus language " + std::string(to_string(mono.lang)) +
                          " does not match pipeline language " +
                          std::string(to_string(p.lang)));
  }
  GenerationResult r;
  GenerationManifest& m = r.manifest;
  m.source_name = mono.name;
  m.source_digest = corpus_digest(mono.sentences);
  m.lang = p.lang;
  m.ablated = p.ablated;
  m.pipeline_label = p.label();
  m.lexicon_digest = p.lexicon ? p.lexicon->digest() : LexiconSet{}.digest();
  m.input_sentences = mono.size();
  m.drop_empty = drop_empty;

  const auto start = std::chrono::steady_clock::now();
  std::vector<Sentence> glosses = transcribe_batch(mono.sentences, p, threads);
  m.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  r.corpus.name = mono.name;
  r.corpus.lang = mono.lang;
  r.corpus.origin = Origin::PseudoRule;
  r.corpus.pairs.reserve(glosses.size());
  for (std::size_t i = 0; i < glosses.size(); ++i) {
    if (drop_empty && glosses[i].empty()) {
      ++m.empty_dropped;
      continue;
    }
    Sentence text = mono.sentences[i];
    text.kind = Kind::Text;
    r.corpus.pairs.push_back({std::move(glosses[i]), std::move(text)});
  }
  m.emitted_pairs = r.corpus.size();
  m.timestamp = utc_timestamp();
  return r;
}

ParallelCorpus ingest_bt_corpus(const std::filesystem::path& gloss_path,
                                const std::filesystem::path& text_path, Lang lang) {
  ParallelCorpus c = read_parallel(gloss_path, text_path, lang, Origin::PseudoBt);
  c.name = gloss_path.stem().string();
  return c;
}

ParallelCorpus combine_corpora(const ParallelCorpus& gt, const ParallelCorpus& pseudo,
                               std::optional<std::uint64_t> shuffle_seed) {
  if (gt.lang != pseudo.lang) {
    throw InvalidArgument("combine: language mismatch (" + std::string(to_string(gt.lang)) +
                          " vs " + std::string(to_string(pseudo.lang)) + ")");
  }
  ParallelCorpus out;
  out.lang = gt.lang;
  out.origin = Origin::Combined;
  out.name = gt.name + "+" + pseudo.name;
  out.pairs.reserve(gt.size() + pseudo.size());
  out.pairs.insert(out.pairs.end(), gt.pairs.begin(), gt.pairs.end());
  out.pairs.insert(out.pairs.end(), pseudo.pairs.begin(), pseudo.pairs.end());
  if (shuffle_seed) shuffle_in_place(out.pairs, *shuffle_seed);
  return out;
}

// ---------------------------------------------------------------------------

std::string_view to_string(ExportMode mode) {
  return mode == ExportMode::Combined ? "combined" : "further";
}

ExportMode parse_export_mode(std::string_view s) {
  if (s == "combined" || s == "COMBINED") return ExportMode::Combined;
  if (s == "further" || s == "FURTHER") return ExportMode::Further;
  throw InvalidArgument("unknown export mode '" + std::string(s) +
                        "' (expected combined or further)");
}

nlohmann::json export_training_splits(const NamedCorpora& corpora,
                                      const std::filesystem::path& out_dir,
                                      ExportMode mode, const nlohmann::json& extra) {
  const std::vector<std::string> required =
      mode == ExportMode::Combined ? std::vector<std::string>{"train"}
                                   : std::vector<std::string>{"pretrain", "finetune"};
  for (const auto& name : required) {
    if (!corpora.contains(name)) {
      throw InvalidArgument(std::string(to_string(mode)) + " export requires a corpus named '" +
                            name + "'");
    }
  }
  for (const auto& [name, c] : corpora) {
    const bool known = name == "dev" || name == "test" ||
                       std::find(required.begin(), required.end(), name) != required.end();
    if (!known) {
      throw InvalidArgument("unexpected corpus '" + name + "' for " +
                            std::string(to_string(mode)) + " export");
    }
  }

  std::filesystem::create_directories(out_dir);
  nlohmann::json manifest;
  manifest["mode"] = std::string(to_string(mode));
  manifest["config"] = extra.is_null() ? nlohmann::json::object() : extra;
  manifest["splits"] = nlohmann::json::object();
  for (const auto& [name, c] : corpora) {
    std::string gloss;
    std::string text;
    for (const auto& p : c.pairs) {
      gloss += p.gloss.to_line();
      gloss.push_back('\n');
      text += p.text.to_line();
      text.push_back('\n');
    }
    write_file_atomic(out_dir / (name + ".gloss"), gloss);
    write_file_atomic(out_dir / (name + ".text"), text);
    manifest["splits"][name] = {
        {"lang", std::string(to_string(c.lang))},
        {"origin", std::string(to_string(c.origin))},
        {"pairs", c.size()},
        {"files",
         {{"gloss", {{"path", name + ".gloss"}, {"lines", c.size()}, {"sha256", sha256_hex(gloss)}}},
          {"text", {{"path", name + ".text"}, {"lines", c.size()}, {"sha256", sha256_hex(text)}}}}},
    };
  }
  write_file_atomic(out_dir / "manifest.json", manifest.dump(2) + "\n");
  return manifest;
}

// ---------------------------------------------------------------------------

bool Vocabulary::contains(std::string_view word) const {
  return index_.find(word) != index_.end();
}

void Vocabulary::reindex() {
  index_.clear();
  for (const auto& [w, c] : entries) index_.insert(w);
}

Vocabulary build_vocabulary(const std::vector<Sentence>& side, std::size_t cap) {
  if (cap == 0) throw InvalidArgument("vocabulary cap must be at least 1");
  std::map<std::string, std::uint64_t, std::less<>> counts;
  for (const auto& s : side) {
    for (const auto& t : s.tokens) {
      if (t.surface != kUnk) ++counts[t.surface];
    }
  }
  Vocabulary v;
  v.cap = cap;
  v.entries.assign(counts.begin(), counts.end());
  std::stable_sort(v.entries.begin(), v.entries.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (v.entries.size() > cap) v.entries.resize(cap);
  v.reindex();
  return v;
}

nlohmann::json UnkStats::to_json() const {
  return {{"gloss_tokens", gloss_tokens}, {"gloss_unk", gloss_unk},
          {"text_tokens", text_tokens},   {"text_unk", text_unk}};
}

namespace {

Sentence replace_oov(Sentence s, const Vocabulary& v, std::uint64_t& tokens,
                     std::uint64_t& unk) {
  for (auto& t : s.tokens) {
    ++tokens;
    if (!v.contains(t.surface)) {
      ++unk;
      t = Token::make(v.unk);
    }
  }
  return s;
}

}  // namespace

VocabApplyResult apply_vocabulary(const ParallelCorpus& corpus,
                                  const Vocabulary& gloss_vocab,
                                  const Vocabulary& text_vocab) {
  VocabApplyResult r;
  r.corpus.name = corpus.name;
  r.corpus.lang = corpus.lang;
  r.corpus.origin = corpus.origin;
  r.corpus.pairs.reserve(corpus.size());
  for (const auto& p : corpus.pairs) {
    r.corpus.pairs.push_back(
        {replace_oov(p.gloss, gloss_vocab, r.stats.gloss_tokens, r.stats.gloss_unk),
         replace_oov(p.text, text_vocab, r.stats.text_tokens, r.stats.text_unk)});
  }
  return r;
}

std::vector<Sentence> gloss_side(const ParallelCorpus& corpus) {
  std::vector<Sentence> out;
  out.reserve(corpus.size());
  for (const auto& p : corpus.pairs) out.push_back(p.gloss);
  return out;
}

std::vector<Sentence> text_side(const ParallelCorpus& corpus) {
  std::vector<Sentence> out;
  out.reserve(corpus.size());
  for (const auto& p : corpus.pairs) out.push_back(p.text);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

nlohmann::json wer_block(const WerReport& r) {
  return {
      {"wer_pooled", r.pooled.score},
      {"wer_macro", r.macro.score},
      {"ins", r.totals.insertions},
      {"del", r.totals.deletions},
      {"sub", r.totals.substitutions},
      {"matches", r.totals.matches},
      {"ref_tokens", r.totals.ref_len},
      {"empty_refs", r.empty_refs},
  };
}

}  // namespace

nlohmann::json analyze_corpus(const ParallelCorpus& corpus) {
  if (corpus.empty()) throw InvalidArgument("analyze: empty corpus");
  const std::vector<Sentence> gloss = gloss_side(corpus);
  const std::vector<Sentence> text = text_side(corpus);
  const VocabularyStats stats = compute_vocab_stats(corpus);
  const SimilarityReport sim = token_similarity(corpus);

  nlohmann::json j;
  j["corpus"] = {{"name", corpus.name},
                 {"lang", std::string(to_string(corpus.lang))},
                 {"pairs", corpus.size()}};
  j["tokens"] = {{"gloss", stats.gloss_total},
                 {"text", stats.text_total},
                 {"gloss_types", stats.gloss_counts.size()},
                 {"text_types", stats.text_counts.size()}};

  // Default direction: gloss is the hypothesis, text the reference, so
  // deletions count text words missing from the gloss.
  j["wer"] = {
      {"gloss_vs_text", wer_block(corpus_wer(gloss, text))},
      {"text_vs_gloss", wer_block(corpus_wer(text, gloss))},
  };
  j["wer"]["params"] = {{"case", "insensitive"},
                        {"default_direction", "gloss_vs_text"},
                        {"aggregations", {"pooled", "macro"}}};
  j["similarity"] = {{"gloss_denominator", sim.gloss.score},
                     {"text_denominator", sim.text.score},
                     {"intersection", sim.gloss.counts["intersection"]},
                     {"params", {{"case", "insensitive"}, {"aggregation", "pooled"}}}};
  return j;
}

nlohmann::json AblationTable::to_json() const {
  nlohmann::json j;
  j["lang"] = std::string(to_string(lang));
  j["splits"] = splits;
  j["lexicon_sha256"] = lexicon_digest;
  j["metric"] = {{"name", "bleu"}, {"max_order", 4}, {"case", "insensitive"}, {"smoothing", "none"}};
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row;
    row["label"] = r.label;
    row["ablated"] = r.ablated ? nlohmann::json(*r.ablated) : nlohmann::json(nullptr);
    row["rules"] = r.rules;
    row["bleu"] = nlohmann::json::object();
    row["reports"] = nlohmann::json::object();
    for (const auto& [split, rep] : r.bleu) {
      row["bleu"][split] = rep.score;
      row["reports"][split] = rep.to_json();
    }
    j["rows"].push_back(std::move(row));
  }
  return j;
}

std::string AblationTable::to_table() const {
  std::ostringstream os;
  os << std::left << std::setw(8) << "rules";
  for (const auto& s : splits) os << std::right << std::setw(10) << s;
  os << '\n';
  for (const auto& r : rows) {
    os << std::left << std::setw(8) << r.label;
    for (const auto& s : splits) {
      os << std::right << std::setw(10) << std::fixed << std::setprecision(2)
         << r.bleu.at(s).score;
    }
    os << '\n';
  }
  return os.str();
}

AblationTable ablation_run(const NamedCorpora& splits, std::shared_ptr<const LexiconSet> lex,
                           Lang lang, unsigned threads) {
  const std::vector<std::string> names{"train", "dev", "test"};
  for (const auto& n : names) {
    if (!splits.contains(n)) throw InvalidArgument("ablation requires a '" + n + "' split");
  }
  if (splits.size() != names.size()) {
    throw InvalidArgument("ablation takes exactly the train, dev and test splits");
  }
  for (const auto& [n, c] : splits) {
    if (c.lang != lang) {
      throw InvalidArgument("ablation: split '" + n + "' is not " +
                            std::string(to_string(lang)));
    }
  }

  AblationTable table;
  table.lang = lang;
  table.splits = names;
  table.lexicon_digest = lex ? lex->digest() : LexiconSet{}.digest();

  const int n_rules = static_cast<int>(full_rules(lang).size());
  for (int i = 0; i <= n_rules; ++i) {
    const std::optional<int> ablated = i == 0 ? std::nullopt : std::optional<int>(i);
    const RulePipeline p = build_pipeline(lang, ablated, lex);
    AblationRow row;
    row.label = p.label();
    row.ablated = ablated;
    for (RuleId id : p.rules) row.rules.emplace_back(rule_name(id));
    for (const auto& n : names) {
      const ParallelCorpus& c = splits.at(n);
      const std::vector<Sentence> hyps = transcribe_batch(text_side(c), p, threads);
      const std::vector<Sentence> refs = gloss_side(c);
      row.bleu.emplace(n, bleu4(hyps, refs, true));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace glosskit
