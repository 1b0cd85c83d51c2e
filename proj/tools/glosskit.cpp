// glosskit: text-to-gloss transcription, pseudo-corpus preparation and
// gloss/text measurement from the command line.
//
// Exit codes: 0 ok, 1 operation error, 2 usage error. Reports go to stdout,
// the resolved configuration and progress to stderr.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "glosskit/error.hpp"
#include "glosskit/pipeline.hpp"

namespace fs = std::filesystem;
using namespace glosskit;

namespace {

struct Common {
  std::string lang = "en";
  std::string lexicon;
  std::uint64_t seed = 1;
  std::string json;
  unsigned threads = 0;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", "Read key=value options from a file; command-line flags win [none]");
  sub->add_option("--lang", c.lang, "Language of the data")
      ->check(CLI::IsMember({"en", "de"}, CLI::ignore_case));
  sub->add_option("--lexicon", c.lexicon,
                  "Lexicon directory (default: shipped lexicon for --lang)");
  sub->add_option("--seed", c.seed, "Seed for sampling and shuffling");
  sub->add_option("--json", c.json, "Also write the report as JSON to this path [none]");
  sub->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
}

fs::path data_dir() {
  if (const char* env = std::getenv("GLOSSKIT_DATA")) return env;
  return GLOSSKIT_DATA_DIR;
}

fs::path lexicon_path(const Common& c) {
  if (!c.lexicon.empty()) return c.lexicon;
  return data_dir() / "lexicon" / c.lang;
}

std::shared_ptr<const LexiconSet> load_lexicon(const Common& c) {
  const fs::path dir = lexicon_path(c);
  if (!fs::is_directory(dir)) throw IoError("lexicon directory not found: " + dir.string());
  return std::make_shared<const LexiconSet>(load_lexicon_set(dir));
}

std::optional<std::vector<RuleId>> parse_order(const std::string& spec) {
  if (spec.empty()) return std::nullopt;
  std::vector<RuleId> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_rule(item));
  }
  return out;
}

// Reads a key=value file into "--key value" arguments. Keys already given
// on the command line are skipped; "false" flags are dropped.
std::vector<std::string> config_args(const fs::path& path, const std::vector<std::string>& given) {
  std::vector<std::string> out;
  const auto lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view l = lines[i];
    const auto first = l.find_first_not_of(" \t");
    if (first == std::string_view::npos || l[first] == '#' || l[first] == ';' || l[first] == '[') continue;
    const auto eq = l.find('=');
    if (eq == std::string_view::npos) {
      throw CLI::ConversionError(path.string() + ":" + std::to_string(i + 1) + ": expected key=value");
    }
    auto trim = [](std::string_view v) {
      const auto b = v.find_first_not_of(" \t");
      if (b == std::string_view::npos) return std::string();
      const auto e = v.find_last_not_of(" \t");
      std::string r(v.substr(b, e - b + 1));
      if (r.size() >= 2 && (r.front() == '"' || r.front() == '\'') && r.back() == r.front()) {
        r = r.substr(1, r.size() - 2);
      }
      return r;
    };
    const std::string key = "--" + trim(l.substr(0, eq));
    const std::string value = trim(l.substr(eq + 1));
    const bool on_cli = std::any_of(given.begin(), given.end(), [&](const std::string& a) {
      return a == key || a.starts_with(key + "=");
    });
    if (on_cli || value == "false") continue;
    out.push_back(key);
    if (value != "true") out.push_back(value);
  }
  return out;
}

// argv with the subcommand's --config file expanded in place.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  for (std::size_t i = 1; i + 1 < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config") {
      path = args[i + 1];
    } else if (args[i].starts_with("--config=")) {
      path = args[i].substr(9);
    } else {
      continue;
    }
    const std::vector<std::string> extra = config_args(path, args);
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(i), extra.begin(), extra.end());
    break;
  }
  return args;
}

nlohmann::json resolved_config(const CLI::App* sub) {
  nlohmann::json j = nlohmann::json::object();
  std::istringstream in(sub->config_to_str(true, false));
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    j[key] = value;
  }
  return j;
}

void print_config(const CLI::App* sub) {
  std::cerr << "[" << sub->get_name() << "] resolved config:\n";
  const nlohmann::json config = resolved_config(sub);
  for (const auto& [k, v] : config.items()) {
    std::cerr << "  " << k << " = " << v.get<std::string>() << '\n';
  }
}

void write_json(const std::string& path, const nlohmann::json& j) {
  if (path.empty()) return;
  write_file_atomic(path, j.dump(2) + "\n");
}

MonolingualCorpus read_mono(const fs::path& path, Lang lang, bool raw) {
  MonolingualCorpus c;
  c.lang = lang;
  c.name = path.filename().string();
  for (const auto& l : read_lines(path)) {
    c.sentences.push_back(raw ? tokenize(l, lang) : sentence_from_line(l, lang, Kind::Text));
  }
  return c;
}

std::string fixed(double v, int prec = 2) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(prec) << v;
  return os.str();
}

// ---------------------------------------------------------------------------

struct TranscribeOpts {
  Common common;
  std::string in;
  std::string out;
  std::optional<int> ablate;
  std::string rule_order;
  bool tokenize = false;
  bool keep_empty = false;
};

int cmd_transcribe(const TranscribeOpts& o, const CLI::App* sub) {
  const Lang lang = parse_lang(o.common.lang);
  const RulePipeline p = build_pipeline(lang, o.ablate, load_lexicon(o.common), parse_order(o.rule_order));
  const MonolingualCorpus mono = read_mono(o.in, lang, o.tokenize);
  std::cerr << "transcribing " << mono.size() << " sentences with " << p.label() << '\n';
  const GenerationResult g = generate_pseudo_corpus(mono, p, !o.keep_empty, o.common.threads);
  nlohmann::json config = resolved_config(sub);
  config["generation"] = g.manifest.to_json();
  const nlohmann::json manifest =
      export_training_splits({{"train", g.corpus}}, o.out, ExportMode::Combined, config);
  write_json(o.common.json, g.manifest.to_json());
  std::cout << "input " << g.manifest.input_sentences << "  emitted " << g.manifest.emitted_pairs
            << "  empty_dropped " << g.manifest.empty_dropped << "  seconds "
            << fixed(g.manifest.seconds, 3) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------

struct StatsOpts {
  Common common;
  std::string gloss;
  std::string text;
};

int cmd_stats(const StatsOpts& o) {
  const Lang lang = parse_lang(o.common.lang);
  ParallelCorpus c = read_parallel(o.gloss, o.text, lang, Origin::GroundTruth);
  c.name = fs::path(o.text).stem().string();
  const nlohmann::json j = analyze_corpus(c);
  write_json(o.common.json, j);
  std::cout << "pairs            " << j["corpus"]["pairs"] << '\n'
            << "gloss/text tok   " << j["tokens"]["gloss"] << " / " << j["tokens"]["text"] << '\n';
  for (const char* dir : {"gloss_vs_text", "text_vs_gloss"}) {
    const auto& w = j["wer"][dir];
    std::cout << std::left << std::setw(17) << dir << "WER pooled " << fixed(w["wer_pooled"])
              << "  macro " << fixed(w["wer_macro"]) << "  INS " << w["ins"] << "  DEL "
              << w["del"] << "  SUB " << w["sub"] << '\n';
  }
  std::cout << "similarity       gloss-denom " << fixed(j["similarity"]["gloss_denominator"])
            << "%  text-denom " << fixed(j["similarity"]["text_denominator"]) << "%\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct EvaluateOpts {
  Common common;
  std::string hyp;
  std::string ref;
  std::vector<std::string> metrics{"bleu", "rouge_l", "meteor", "wer"};
  bool case_sensitive = false;
};

int cmd_evaluate(const EvaluateOpts& o) {
  const Lang lang = parse_lang(o.common.lang);
  const auto hyps = read_sentences(o.hyp, lang, Kind::Gloss);
  const auto refs = read_sentences(o.ref, lang, Kind::Gloss);
  if (hyps.size() != refs.size()) {
    throw FormatError("line count mismatch: " + std::to_string(hyps.size()) + " vs " +
                      std::to_string(refs.size()));
  }
  nlohmann::json out = nlohmann::json::object();
  std::vector<std::pair<std::string, double>> rows;
  for (const auto& m : o.metrics) {
    if (m == "bleu") {
      const MetricReport r = bleu4(hyps, refs, !o.case_sensitive);
      out["bleu"] = r.to_json();
      rows.emplace_back("bleu", r.score);
    } else if (m == "rouge_l") {
      const MetricReport r = rouge_l(hyps, refs);
      out["rouge_l"] = r.to_json();
      rows.emplace_back("rouge_l", r.score);
    } else if (m == "meteor") {
      const MetricReport r = meteor_lite(hyps, refs, *load_lexicon(o.common));
      out["meteor"] = r.to_json();
      rows.emplace_back("meteor", r.score);
    } else if (m == "wer") {
      const WerReport r = corpus_wer(hyps, refs);
      out["wer"] = {{"pooled", r.pooled.to_json()}, {"macro", r.macro.to_json()}};
      rows.emplace_back("wer_pooled", r.pooled.score);
      rows.emplace_back("wer_macro", r.macro.score);
    }
  }
  write_json(o.common.json, out);
  for (const auto& [name, score] : rows) {
    std::cout << std::left << std::setw(12) << name << std::right << std::setw(8) << fixed(score)
              << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct AblateOpts {
  Common common;
  std::map<std::string, std::pair<std::string, std::string>> splits{
      {"train", {}}, {"dev", {}}, {"test", {}}};
  std::string out;
};

int cmd_ablate(AblateOpts& o) {
  const Lang lang = parse_lang(o.common.lang);
  NamedCorpora corpora;
  for (const auto& [name, paths] : o.splits) {
    ParallelCorpus c = read_parallel(paths.first, paths.second, lang, Origin::GroundTruth);
    c.name = name;
    corpora.emplace(name, std::move(c));
  }
  const AblationTable t = ablation_run(corpora, load_lexicon(o.common), lang, o.common.threads);
  const nlohmann::json j = t.to_json();
  if (!o.out.empty()) {
    fs::create_directories(o.out);
    write_json((fs::path(o.out) / "ablation.json").string(), j);
  }
  write_json(o.common.json, j);
  std::cout << t.to_table();
  return 0;
}

// ---------------------------------------------------------------------------

struct BuildLexiconOpts {
  Common common;
  std::string gloss;
  std::string text;
  std::string out;
  std::uint64_t min_text_freq = 5;
  double max_gloss_ratio = 0.1;
  bool no_base = false;
};

int cmd_build_lexicon(const BuildLexiconOpts& o) {
  const Lang lang = parse_lang(o.common.lang);
  const ParallelCorpus c = read_parallel(o.gloss, o.text, lang, Origin::GroundTruth);
  const VocabularyStats stats = compute_vocab_stats(c);
  const std::vector<std::string> drop = extract_drop_list(stats, o.min_text_freq, o.max_gloss_ratio);

  LexiconSet lex = o.no_base ? LexiconSet{} : *load_lexicon(o.common);
  StringSet words(drop.begin(), drop.end());
  if (lang == Lang::De) {
    lex.set_stopwords(std::move(words));
  } else {
    lex.set_function_words(std::move(words));
  }
  lex.finalize();
  save_lexicon_set(lex, o.out);

  nlohmann::json j;
  j["drop_list"] = drop;
  j["params"] = {{"min_text_freq", o.min_text_freq}, {"max_gloss_ratio", o.max_gloss_ratio}};
  j["tokens"] = {{"gloss", stats.gloss_total}, {"text", stats.text_total}};
  j["types"] = {{"gloss", stats.gloss_counts.size()}, {"text", stats.text_counts.size()}};
  j["lexicon_sha256"] = lex.digest();
  write_json(o.common.json, j);
  std::cout << "drop list (" << drop.size() << "):";
  for (const auto& w : drop) std::cout << ' ' << w;
  std::cout << '\n';
  return 0;
}

// ---------------------------------------------------------------------------

struct PrepareOpts {
  Common common;
  std::string mono;
  std::string gt_gloss;
  std::string gt_text;
  std::string dev_gloss;
  std::string dev_text;
  std::string test_gloss;
  std::string test_text;
  std::string mode = "combined";
  std::string out;
  std::size_t sample = 0;
  std::size_t max_len = 60;
  std::size_t vocab_cap = 50000;
  std::optional<int> ablate;
  std::string rule_order;
  bool dedup = false;
  bool shuffle = false;
  bool tokenize = false;
  bool keep_empty = false;
};

int cmd_prepare(const PrepareOpts& o, const CLI::App* sub) {
  const Lang lang = parse_lang(o.common.lang);
  const ExportMode mode = parse_export_mode(o.mode);
  const RulePipeline p = build_pipeline(lang, o.ablate, load_lexicon(o.common), parse_order(o.rule_order));

  MonolingualCorpus mono = read_mono(o.mono, lang, o.tokenize);
  const std::size_t raw = mono.size();
  const FilterResult filtered = filter_by_length(mono, o.max_len);
  mono = filtered.corpus;
  std::size_t dup_dropped = 0;
  if (o.dedup) {
    const FilterResult d = deduplicate(mono);
    dup_dropped = d.dropped;
    mono = d.corpus;
  }
  if (o.sample > 0) mono = sample(mono, o.sample, o.common.seed);
  std::cerr << "mono " << raw << " -> " << mono.size() << " after filtering/sampling\n";

  const GenerationResult g = generate_pseudo_corpus(mono, p, !o.keep_empty, o.common.threads);
  ParallelCorpus gt = read_parallel(o.gt_gloss, o.gt_text, lang, Origin::GroundTruth);
  gt.name = "ground_truth";

  NamedCorpora splits;
  if (mode == ExportMode::Combined) {
    splits["train"] = combine_corpora(gt, g.corpus,
                                      o.shuffle ? std::optional<std::uint64_t>(o.common.seed) : std::nullopt);
  } else {
    splits["pretrain"] = g.corpus;
    splits["finetune"] = gt;
  }
  if (!o.dev_gloss.empty()) splits["dev"] = read_parallel(o.dev_gloss, o.dev_text, lang, Origin::GroundTruth);
  if (!o.test_gloss.empty()) splits["test"] = read_parallel(o.test_gloss, o.test_text, lang, Origin::GroundTruth);

  nlohmann::json config = resolved_config(sub);
  config["generation"] = g.manifest.to_json();
  config["preprocess"] = {{"raw_sentences", raw},
                          {"length_dropped", filtered.dropped},
                          {"duplicates_dropped", dup_dropped},
                          {"sampled", mono.size()}};
  if (o.vocab_cap > 0) {
    std::vector<Sentence> gloss_train;
    std::vector<Sentence> text_train;
    for (const auto& [name, c] : splits) {
      if (name == "dev" || name == "test") continue;
      for (const auto& pr : c.pairs) {
        gloss_train.push_back(pr.gloss);
        text_train.push_back(pr.text);
      }
    }
    const Vocabulary gv = build_vocabulary(gloss_train, o.vocab_cap);
    const Vocabulary tv = build_vocabulary(text_train, o.vocab_cap);
    nlohmann::json unk = nlohmann::json::object();
    for (auto& [name, c] : splits) {
      VocabApplyResult r = apply_vocabulary(c, gv, tv);
      unk[name] = r.stats.to_json();
      c = std::move(r.corpus);
    }
    config["vocabulary"] = {{"cap", o.vocab_cap},
                            {"unk", std::string(kUnk)},
                            {"gloss_size", gv.size()},
                            {"text_size", tv.size()},
                            {"unk_stats", unk}};
  }
  const nlohmann::json manifest = export_training_splits(splits, o.out, mode, config);
  write_json(o.common.json, manifest);
  for (const auto& [name, c] : splits) {
    std::cout << std::left << std::setw(10) << name << c.size() << " pairs\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"glosskit: rule-based text-to-gloss transcription and gloss/text corpus tools"};
  app.name("glosskit");
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  TranscribeOpts tr;
  auto* t = app.add_subcommand("transcribe", "Transcribe monolingual text into pseudo glosses");
  add_common(t, tr.common);
  t->add_option("--in", tr.in, "Monolingual text, one sentence per line")->required()->check(CLI::ExistingFile);
  t->add_option("--out", tr.out, "Output directory for train.{gloss,text} and manifest.json")->required();
  t->add_option("--ablate", tr.ablate, "Remove rule i (DE 1-3, EN 1-6) [none: full pipeline]");
  t->add_option("--rule-order", tr.rule_order, "Comma-separated rule names overriding the default order [none]");
  t->add_flag("--tokenize", tr.tokenize, "Tokenize raw input lines first [off]");
  t->add_flag("--keep-empty", tr.keep_empty, "Keep pairs whose gloss is empty [off]");

  StatsOpts st;
  auto* s = app.add_subcommand("stats", "Edit-distance, similarity and vocabulary statistics");
  add_common(s, st.common);
  s->add_option("--gloss", st.gloss, "Gloss file")->required()->check(CLI::ExistingFile);
  s->add_option("--text", st.text, "Text file, line-aligned with --gloss")->required()->check(CLI::ExistingFile);

  EvaluateOpts ev;
  auto* e = app.add_subcommand("evaluate", "Score hypothesis glosses against references");
  add_common(e, ev.common);
  e->add_option("--hyp", ev.hyp, "Hypothesis file")->required()->check(CLI::ExistingFile);
  e->add_option("--ref", ev.ref, "Reference file")->required()->check(CLI::ExistingFile);
  e->add_option("--metric", ev.metrics, "Metrics to compute (repeatable)")
      ->check(CLI::IsMember({"bleu", "rouge_l", "meteor", "wer"}))
      ->delimiter(',');
  e->add_flag("--case-sensitive", ev.case_sensitive, "Case-sensitive BLEU [off]");

  AblateOpts ab;
  auto* a = app.add_subcommand("ablate", "BLEU of the full and single-rule-removed pipelines");
  add_common(a, ab.common);
  for (const char* split : {"train", "dev", "test"}) {
    auto& paths = ab.splits[split];
    a->add_option(std::string("--") + split + "-gloss", paths.first, std::string(split) + " gloss file")
        ->required()
        ->check(CLI::ExistingFile);
    a->add_option(std::string("--") + split + "-text", paths.second, std::string(split) + " text file")
        ->required()
        ->check(CLI::ExistingFile);
  }
  a->add_option("--out", ab.out, "Directory for ablation.json [none]");

  BuildLexiconOpts bl;
  auto* b = app.add_subcommand("build-lexicon", "Derive the stopword or function-word list from a parallel corpus");
  add_common(b, bl.common);
  b->add_option("--gloss", bl.gloss, "Gloss file")->required()->check(CLI::ExistingFile);
  b->add_option("--text", bl.text, "Text file, line-aligned with --gloss")->required()->check(CLI::ExistingFile);
  b->add_option("--out", bl.out, "Output lexicon directory")->required();
  b->add_option("--min-text-freq", bl.min_text_freq, "Minimum text-side count");
  b->add_option("--max-gloss-ratio", bl.max_gloss_ratio, "Maximum gloss/text count ratio")
      ->check(CLI::Range(0.0, 1.0));
  b->add_flag("--no-base", bl.no_base, "Start from an empty lexicon instead of --lexicon [off]");

  PrepareOpts pr;
  auto* p = app.add_subcommand("prepare", "Build training splits from monolingual and ground-truth data");
  add_common(p, pr.common);
  p->add_option("--mono", pr.mono, "Monolingual text")->required()->check(CLI::ExistingFile);
  p->add_option("--gt-gloss", pr.gt_gloss, "Ground-truth train gloss")->required()->check(CLI::ExistingFile);
  p->add_option("--gt-text", pr.gt_text, "Ground-truth train text")->required()->check(CLI::ExistingFile);
  auto* dg = p->add_option("--dev-gloss", pr.dev_gloss, "Dev gloss, passed through [none]")->check(CLI::ExistingFile);
  auto* dt = p->add_option("--dev-text", pr.dev_text, "Dev text, passed through [none]")->check(CLI::ExistingFile);
  auto* tg = p->add_option("--test-gloss", pr.test_gloss, "Test gloss, passed through [none]")->check(CLI::ExistingFile);
  auto* tt = p->add_option("--test-text", pr.test_text, "Test text, passed through [none]")->check(CLI::ExistingFile);
  dg->needs(dt);
  dt->needs(dg);
  tg->needs(tt);
  tt->needs(tg);
  p->add_option("--mode", pr.mode, "combined or further")
      ->check(CLI::IsMember({"combined", "further"}, CLI::ignore_case));
  p->add_option("--out", pr.out, "Output directory")->required();
  p->add_option("--sample", pr.sample, "Sample this many sentences (0 = all)");
  p->add_option("--max-len", pr.max_len, "Drop sentences longer than this");
  p->add_option("--vocab-cap", pr.vocab_cap, "Vocabulary size per side (0 = no truncation)");
  p->add_option("--ablate", pr.ablate, "Remove rule i (DE 1-3, EN 1-6) [none: full pipeline]");
  p->add_option("--rule-order", pr.rule_order, "Comma-separated rule names overriding the default order [none]");
  p->add_flag("--dedup", pr.dedup, "Drop duplicate monolingual lines [off]");
  p->add_flag("--shuffle", pr.shuffle, "Shuffle the combined train split with --seed [off]");
  p->add_flag("--tokenize", pr.tokenize, "Tokenize raw monolingual lines first [off]");
  p->add_flag("--keep-empty", pr.keep_empty, "Keep pairs whose gloss is empty [off]");

  try {
    std::vector<std::string> args;
    try {
      args = expand_config(argc, argv);
    } catch (const Error& ex) {
      throw CLI::ConversionError(ex.what());
    }
    std::vector<const char*> cargs;
    for (const auto& a : args) cargs.push_back(a.c_str());
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::Success& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return 2;
  }

  try {
    for (const CLI::App* sub : app.get_subcommands()) print_config(sub);
    if (t->parsed()) return cmd_transcribe(tr, t);
    if (s->parsed()) return cmd_stats(st);
    if (e->parsed()) return cmd_evaluate(ev);
    if (a->parsed()) return cmd_ablate(ab);
    if (b->parsed()) return cmd_build_lexicon(bl);
    if (p->parsed()) return cmd_prepare(pr, p);
  } catch (const std::exception& ex) {
    std::cerr << "glosskit: error: " << ex.what() << '\n';
    return 1;
  }
  return 2;
}
