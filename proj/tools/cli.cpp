// Copyright 2026 The PSC Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "psc/corpus_stats.hpp"
#include "psc/digest.hpp"
#include "psc/errors.hpp"
#include "psc/normalizer.hpp"
#include "psc/pipeline.hpp"
#include "psc/rules.hpp"
#include "psc/sentiment.hpp"
#include "psc/tables.hpp"
#include "psc/utf8.hpp"

namespace psc::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string version_text() {
  std::ostringstream out;
  out << "psc " << PSC_VERSION << "\n"
      << "unification.tsv sha256:" << sha256_hex(tables::unification_tsv())
      << "\n"
      << "polysyllabic.tsv sha256:" << sha256_hex(tables::polysyllabic_tsv())
      << "\n"
      << "lexicon_seed.tsv sha256:" << sha256_hex(tables::lexicon_seed_tsv())
      << "\n"
      << "irregular_stems.tsv sha256:"
      << sha256_hex(tables::irregular_stems_tsv());
  return out.str();
}

// Collects what a run read and how it was configured, and writes the
// manifest once the subcommand has finished.
class Run {
 public:
  explicit Run(std::string subcommand) : subcommand_(std::move(subcommand)) {}

  // Reads a whole input; "-" is stdin and may be used once per run.
  std::string read(const std::string& path) {
    std::string bytes;
    if (path == "-") {
      if (stdin_used_) throw UsageError("only one input may be read from '-'");
      stdin_used_ = true;
      std::ostringstream buf;
      buf << std::cin.rdbuf();
      bytes = buf.str();
    } else {
      std::ifstream in(path, std::ios::binary);
      if (!in) throw DataError(path + ": cannot open file");
      std::ostringstream buf;
      buf << in.rdbuf();
      bytes = buf.str();
    }
    inputs_.push_back({{"path", path}, {"sha256", sha256_hex(bytes)}});
    return bytes;
  }

  // Writes a whole output; "-" is stdout.
  void write(const std::string& path, const std::string& bytes) {
    if (path == "-") {
      std::cout << bytes;
      std::cout.flush();
      if (!std::cout) throw DataError("cannot write to standard output");
      return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError(path + ": cannot open for writing");
    out << bytes;
    out.close();
    if (!out) throw DataError(path + ": write failed");
    if (!manifest_default_) manifest_default_ = path + ".manifest.json";
  }

  json& config() { return config_; }
  void set_seed(std::uint64_t seed) { seed_ = seed; }
  void set_manifest_default(std::string path) {
    manifest_default_ = std::move(path);
  }

  // An explicit --manifest wins; otherwise the manifest sits next to the
  // first file written. Runs that only print to stdout write none.
  void finish(const std::string& explicit_path, double seconds, int threads) {
    const std::string path =
        explicit_path.empty() ? manifest_default_.value_or("") : explicit_path;
    if (path.empty()) return;
    json manifest{
        {"subcommand", subcommand_},
        {"config", config_},
        {"inputs", inputs_},
        {"seed", seed_ ? json(*seed_) : json(nullptr)},
        {"version", PSC_VERSION},
        {"threads", threads},
        {"duration_seconds", seconds},
    };
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError(path + ": cannot open for writing");
    out << manifest.dump(2) << "\n";
    if (!out) throw DataError(path + ": write failed");
  }

 private:
  std::string subcommand_;
  json config_ = json::object();
  json inputs_ = json::array();
  std::optional<std::uint64_t> seed_;
  std::optional<std::string> manifest_default_;
  bool stdin_used_ = false;
};

std::vector<std::string> split_lines(const std::string& bytes,
                                     const std::string& source) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < bytes.size()) {
    std::size_t end = bytes.find('\n', start);
    if (end == std::string::npos) end = bytes.size();
    std::string line = bytes.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!utf8::is_valid(line)) {
      throw DataError(source, lines.size() + 1, "invalid UTF-8");
    }
    lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& line : lines) {
    out += line;
    out += '\n';
  }
  return out;
}

TermFrequencyTable read_table(Run& run, const std::string& path) {
  std::istringstream in(run.read(path));
  return read_tsv(in, path == "-" ? "<stdin>" : path);
}

LabeledReadResult read_examples(Run& run, const std::string& path) {
  std::istringstream in(run.read(path));
  return read_labeled(in, path == "-" ? "<stdin>" : path);
}

std::vector<tables::TsvPair> read_pairs(Run& run, const std::string& path,
                                        bool allow_empty_second = false) {
  return tables::parse_pairs(run.read(path), path, allow_empty_second);
}

// --- normalizer options -----------------------------------------------------

struct NormalizerFlags {
  std::string digits = "ascii";
  bool drop_emoji = false;
  bool keep_latin = false;
  bool unify_hamza_carriers = false;
  bool keep_hamza_alef = false;
  std::string unification;
  std::string polysyllabic;

  void add_to(CLI::App* app) {
    app->add_option("--digits", digits, "Digit script: ascii or persian")
        ->check(CLI::IsMember({"ascii", "persian"}));
    app->add_flag("--drop-emoji", drop_emoji, "Delete emoji instead of "
                  "splitting them into tokens");
    app->add_flag("--keep-latin", keep_latin, "Keep Latin-script words");
    app->add_flag("--unify-hamza-carriers", unify_hamza_carriers,
                  "Also map ؤ and ئ to their bare letters");
    app->add_flag("--keep-hamza-alef", keep_hamza_alef,
                  "Leave أ and إ unchanged");
    app->add_option("--unification", unification,
                    "Extra character-unification TSV (overrides built-ins)");
    app->add_option("--polysyllabic", polysyllabic,
                    "Extra word-variant TSV (overrides built-ins)");
  }

  Normalizer build(Run& run) const {
    NormalizerConfig config;
    config.digits = digits == "persian" ? DigitScript::kPersian
                                        : DigitScript::kAscii;
    config.keep_emoji = !drop_emoji;
    config.keep_latin = keep_latin;
    config.unify_hamza_carriers = unify_hamza_carriers;
    config.unify_hamza_alef = !keep_hamza_alef;
    run.config()["normalizer"] = {
        {"digits", digits},
        {"keep_emoji", config.keep_emoji},
        {"keep_latin", keep_latin},
        {"unify_hamza_alef", config.unify_hamza_alef},
        {"unify_hamza_carriers", unify_hamza_carriers},
        {"unification", unification},
        {"polysyllabic", polysyllabic},
    };

    CharMap letters = CharMap::builtin();
    if (!unification.empty()) {
      const CharMap extra =
          CharMap::from_pairs(read_pairs(run, unification, true), unification);
      for (char32_t cp : extra.sources()) letters.set(cp, *extra.find(cp));
    }
    auto word_pairs = tables::parse_pairs(tables::polysyllabic_tsv(),
                                          "<builtin polysyllabic.tsv>");
    std::string word_source = "<builtin polysyllabic.tsv>";
    if (!polysyllabic.empty()) {
      auto extra = read_pairs(run, polysyllabic);
      std::erase_if(word_pairs, [&](const tables::TsvPair& p) {
        return std::any_of(extra.begin(), extra.end(),
                           [&](const auto& e) { return e.first == p.first; });
      });
      word_pairs.insert(word_pairs.end(), extra.begin(), extra.end());
      word_source = polysyllabic;
    }
    return Normalizer(config, std::move(letters),
                      WordMap::from_pairs(word_pairs, word_source));
  }
};

// --- rule engine options ----------------------------------------------------

struct EngineOptions {
  std::string formal_tf;
  std::string lexicon;
  std::string irregular_stems;
  std::optional<std::vector<std::string>> rules;
  std::optional<std::vector<std::string>> order;
  std::uint64_t min_count = 1;
  bool standalone_ro = false;
  bool chain = false;

  json to_json() const {
    return {
        {"formal_tf", formal_tf},
        {"lexicon", lexicon.empty() ? json("<builtin>") : json(lexicon)},
        {"irregular_stems", irregular_stems.empty() ? json("<builtin>")
                                                    : json(irregular_stems)},
        {"rules", rules ? json(*rules) : json(nullptr)},
        {"order", order ? json(*order) : json(nullptr)},
        {"min_count", min_count},
        {"standalone_ro", standalone_ro},
        {"chain", chain},
    };
  }

  PipelineConfig pipeline() const {
    PipelineConfig config = PipelineConfig::from_names(rules, order);
    config.first_match_wins = !chain;
    return config;
  }

  RuleEngine build(Run& run) const {
    if (formal_tf.empty()) throw UsageError("a formal TF table is required");
    auto formal = std::make_shared<TermFrequencyTable>(read_table(run, formal_tf));
    if (formal->domain() != Domain::kFormal) {
      throw DataError(formal_tf + ": table has domain '" +
                      std::string(domain_name(formal->domain())) +
                      "', expected 'formal'");
    }
    Lexicon lex = lexicon.empty()
                      ? Lexicon::builtin()
                      : Lexicon::from_pairs(read_pairs(run, lexicon), lexicon);
    IrregularStems stems =
        irregular_stems.empty()
            ? IrregularStems::builtin()
            : IrregularStems::from_pairs(read_pairs(run, irregular_stems),
                                         irregular_stems);
    RuleOptions options;
    options.standalone_ro = standalone_ro;
    return RuleEngine(std::move(lex), std::move(formal), std::move(stems),
                      options, min_count);
  }
};

// Rule flags shared by convert and report.
void add_engine_flags(CLI::App* app, EngineOptions& opts) {
  app->add_option("--formal-tf", opts.formal_tf, "Formal TF table (TSV)")
      ->required();
  app->add_option("--lexicon", opts.lexicon,
                  "Slang lexicon TSV (default: built-in seed)");
  app->add_option("--irregular-stems", opts.irregular_stems,
                  "Irregular verb stem TSV (default: built-in)");
  app->add_option_function<std::vector<std::string>>(
         "--rules", [&opts](const std::vector<std::string>& v) { opts.rules = v; },
         "Enabled rules, comma separated")
      ->delimiter(',');
  app->add_option_function<std::vector<std::string>>(
         "--order", [&opts](const std::vector<std::string>& v) { opts.order = v; },
         "Rule order, comma separated")
      ->delimiter(',');
  app->add_option("--min-count", opts.min_count,
                  "Minimum formal count for a candidate to validate")
      ->check(CLI::PositiveNumber);
  app->add_flag("--standalone-ro", opts.standalone_ro,
                "Convert a standalone «رو» to «را»");
  app->add_flag("--chain", opts.chain,
                "Feed each rule's output to the next instead of stopping at "
                "the first match");
}

// A conversion config file: JSON with "formal_tf" and optionally "lexicon",
// "irregular_stems", "rules", "order", "min_count", "standalone_ro",
// "chain". Relative paths resolve against the config's directory.
EngineOptions load_engine_config(Run& run, const std::string& path) {
  json doc;
  try {
    doc = json::parse(run.read(path));
  } catch (const json::parse_error& e) {
    throw DataError(path + ": invalid JSON: " + e.what());
  }
  if (!doc.is_object()) throw DataError(path + ": expected a JSON object");
  const fs::path base = path == "-" ? fs::current_path()
                                    : fs::path(path).parent_path();
  auto resolve = [&](const std::string& p) {
    const fs::path candidate(p);
    return candidate.is_absolute() ? p : (base / candidate).string();
  };
  EngineOptions opts;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "formal_tf") {
        opts.formal_tf = resolve(value.get<std::string>());
      } else if (key == "lexicon") {
        opts.lexicon = resolve(value.get<std::string>());
      } else if (key == "irregular_stems") {
        opts.irregular_stems = resolve(value.get<std::string>());
      } else if (key == "rules") {
        opts.rules = value.get<std::vector<std::string>>();
      } else if (key == "order") {
        opts.order = value.get<std::vector<std::string>>();
      } else if (key == "min_count") {
        opts.min_count = value.get<std::uint64_t>();
      } else if (key == "standalone_ro") {
        opts.standalone_ro = value.get<bool>();
      } else if (key == "chain") {
        opts.chain = value.get<bool>();
      } else {
        throw DataError(path + ": unknown key '" + key + "'");
      }
    }
  } catch (const json::type_error& e) {
    throw DataError(path + ": wrong value type: " + e.what());
  }
  if (opts.formal_tf.empty()) throw DataError(path + ": missing 'formal_tf'");
  if (opts.min_count == 0) throw DataError(path + ": min_count must be >= 1");
  return opts;
}

std::string metrics_text(const EvalMetrics& m) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "n %llu\naccuracy %.4f\nprecision %.4f\nrecall %.4f\nf1 %.4f\n",
                static_cast<unsigned long long>(m.n), m.accuracy,
                m.macro_precision, m.macro_recall, m.macro_f1);
  return buf;
}

struct TrainFlags {
  TrainParams params;

  void add_to(CLI::App* app) {
    app->add_option("--hash-bits", params.hash_bits, "Feature hash bits")
        ->check(CLI::Range(1u, 28u));
    app->add_option("--epochs", params.epochs, "Training epochs");
    app->add_option("--learning-rate", params.learning_rate,
                    "Initial SGD learning rate");
    app->add_option("--decay", params.decay, "Step decay factor");
    app->add_option("--decay-every", params.decay_every,
                    "Epochs between decay steps");
  }

  json to_json() const {
    return {{"hash_bits", params.hash_bits},
            {"epochs", params.epochs},
            {"learning_rate", params.learning_rate},
            {"decay", params.decay},
            {"decay_every", params.decay_every}};
  }
};

std::string single_line(std::string text) {
  for (char& c : text) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return text;
}

}  // namespace

int dispatch(int argc, char** argv) {
  CLI::App app{"Persian slang to formal conversion and sentiment toolkit",
               "psc"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", version_text());

  int threads = 0;
  std::string manifest_path;
  app.add_option("--threads", threads,
                 "Worker threads for parallel stages (default: all cores)")
      ->check(CLI::PositiveNumber);
  app.add_option("--manifest", manifest_path,
                 "Write the run manifest here (default: next to the first "
                 "output file)");

  std::unique_ptr<Run> run;
  std::function<void()> action;
  auto command = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    return sub;
  };
  auto start = [&](const char* name) {
    run = std::make_unique<Run>(name);
    return run.get();
  };

  // normalize
  std::string norm_in = "-", norm_out = "-";
  bool norm_jsonl = false;
  NormalizerFlags norm_flags;
  auto* normalize = command("normalize", "Normalize text, one document per line");
  normalize->add_option("--in", norm_in, "Input text ('-' for stdin)");
  normalize->add_option("--out", norm_out, "Output text ('-' for stdout)");
  normalize->add_flag("--jsonl", norm_jsonl,
                      "Lines are JSON objects; their \"text\" field is "
                      "normalized");
  norm_flags.add_to(normalize);
  normalize->callback([&] {
    action = [&] {
      Run& r = *start("normalize");
      const Normalizer normalizer = norm_flags.build(r);
      r.config()["jsonl"] = norm_jsonl;
      const std::string source = norm_in == "-" ? "<stdin>" : norm_in;
      const auto lines = split_lines(r.read(norm_in), source);
      std::vector<std::string> texts(lines.size());
      std::vector<json> objects;
      if (norm_jsonl) {
        objects.resize(lines.size());
        for (std::size_t i = 0; i < lines.size(); ++i) {
          if (lines[i].empty()) continue;
          try {
            objects[i] = json::parse(lines[i]);
          } catch (const json::parse_error&) {
            throw DataError(source, i + 1, "invalid JSON");
          }
          if (!objects[i].is_object() || !objects[i].contains("text") ||
              !objects[i]["text"].is_string()) {
            throw DataError(source, i + 1,
                            "expected an object with a string \"text\" field");
          }
          texts[i] = objects[i]["text"].get<std::string>();
        }
      } else {
        texts = lines;
      }
      const auto normalized = normalize_lines(normalizer, texts);
      std::vector<std::string> out(lines.size());
      for (std::size_t i = 0; i < lines.size(); ++i) {
        if (norm_jsonl) {
          if (lines[i].empty()) continue;
          objects[i]["text"] = normalized[i].content;
          out[i] = objects[i].dump();
        } else {
          out[i] = normalized[i].content;
        }
      }
      r.write(norm_out, join_lines(out));
    };
  });

  // build-tf
  std::string tf_domain;
  std::vector<std::string> tf_in;
  std::string tf_out = "-";
  bool tf_normalize = false;
  auto* build = command("build-tf", "Count words of normalized text files");
  build->add_option("--domain", tf_domain, "formal or slang")
      ->required()
      ->check(CLI::IsMember({"formal", "slang"}));
  build->add_option("--in", tf_in, "Input text files ('-' for stdin)")
      ->required();
  build->add_option("--out", tf_out, "Output TSV ('-' for stdout)");
  build->add_flag("--normalize", tf_normalize,
                  "Normalize lines first (inputs are assumed normalized)");
  build->callback([&] {
    action = [&] {
      Run& r = *start("build-tf");
      r.config() = {{"domain", tf_domain}, {"normalize", tf_normalize}};
      std::vector<std::string> lines;
      for (const auto& path : tf_in) {
        auto more = split_lines(r.read(path), path == "-" ? "<stdin>" : path);
        lines.insert(lines.end(), std::make_move_iterator(more.begin()),
                     std::make_move_iterator(more.end()));
      }
      if (tf_normalize) {
        const auto normalized = normalize_lines(Normalizer(), lines);
        for (std::size_t i = 0; i < lines.size(); ++i) {
          lines[i] = normalized[i].content;
        }
      }
      const auto table = build_tf(lines, *parse_domain(tf_domain));
      std::ostringstream out;
      write_tsv(out, table);
      r.write(tf_out, out.str());
    };
  });

  // pure-slang
  std::string ps_slang, ps_formal, ps_coef = "5", ps_out = "-";
  auto* pure = command("pure-slang", "Keep words far more frequent in slang");
  pure->add_option("--slang", ps_slang, "Slang TF table")->required();
  pure->add_option("--formal", ps_formal, "Formal TF table")->required();
  pure->add_option("--coef", ps_coef,
                   "Ratio coefficient: integer, decimal or fraction");
  pure->add_option("--out", ps_out, "Output TSV ('-' for stdout)");
  pure->callback([&] {
    action = [&] {
      Run& r = *start("pure-slang");
      const auto criterion = PurityCriterion::parse(ps_coef);
      r.config() = {{"coef", ps_coef}};
      const auto slang = read_table(r, ps_slang);
      const auto formal = read_table(r, ps_formal);
      std::ostringstream out;
      write_tsv(out, extract_pure_slang(slang, formal, criterion));
      r.write(ps_out, out.str());
    };
  });

  // top
  std::string top_in = "-", top_out = "-";
  std::size_t top_k_value = 20;
  auto* top = command("top", "Most frequent words of a TF table");
  top->add_option("--in", top_in, "TF table ('-' for stdin)");
  top->add_option("-k,--k", top_k_value, "Number of words");
  top->add_option("--out", top_out, "Output TSV ('-' for stdout)");
  top->callback([&] {
    action = [&] {
      Run& r = *start("top");
      r.config() = {{"k", top_k_value}};
      const auto table = read_table(r, top_in);
      std::string out;
      for (const auto& [word, count] : top_k(table, top_k_value)) {
        out += word + "\t" + std::to_string(count) + "\n";
      }
      r.write(top_out, out);
    };
  });

  // convert
  std::string cv_in = "-", cv_out = "-";
  EngineOptions cv_opts;
  NormalizerFlags cv_norm;
  auto* convert = command("convert", "Normalize and convert slang text");
  convert->add_option("--in", cv_in, "Input text ('-' for stdin)");
  convert->add_option("--out", cv_out, "Output text ('-' for stdout)");
  add_engine_flags(convert, cv_opts);
  cv_norm.add_to(convert);
  convert->callback([&] {
    action = [&] {
      Run& r = *start("convert");
      const auto config = cv_opts.pipeline();
      r.config()["engine"] = cv_opts.to_json();
      const Normalizer normalizer = cv_norm.build(r);
      const RuleEngine engine = cv_opts.build(r);
      const auto lines =
          split_lines(r.read(cv_in), cv_in == "-" ? "<stdin>" : cv_in);
      const auto converted =
          convert_lines(normalize_lines(normalizer, lines), engine, config);
      std::string out;
      for (const auto& text : converted) {
        out += text.content;
        out += '\n';
      }
      r.write(cv_out, out);
    };
  });

  // report
  std::string rp_pure, rp_out = "-", rp_rounding = "truncate";
  bool rp_compat = false;
  EngineOptions rp_opts;
  auto* report = command("report", "Rule coverage over a pure-slang table");
  report->add_option("--pure-slang", rp_pure, "Pure-slang TF table")
      ->required();
  report->add_option("--out", rp_out, "Report JSON ('-' for stdout)");
  report->add_option("--rounding", rp_rounding,
                     "Percent rounding: truncate or half_up")
      ->check(CLI::IsMember({"truncate", "half_up"}));
  report->add_flag("--paper-compat", rp_compat,
                   "Add notes on differences from the published table");
  add_engine_flags(report, rp_opts);
  report->callback([&] {
    action = [&] {
      Run& r = *start("report");
      const auto config = rp_opts.pipeline();
      r.config() = {{"engine", rp_opts.to_json()},
                    {"rounding", rp_rounding},
                    {"paper_compat", rp_compat}};
      const RuleEngine engine = rp_opts.build(r);
      const auto pure_table = read_table(r, rp_pure);
      const auto result = coverage_report(pure_table, engine, config);
      r.write(rp_out, report_to_json(result, *parse_rounding(rp_rounding),
                                     rp_compat)
                              .dump(2) +
                          "\n");
    };
  });

  // split
  std::string sp_in = "-", sp_dir;
  std::uint64_t sp_seed = 0;
  std::optional<std::size_t> sp_per_class;
  auto* split_cmd = command("split", "Stratified 70/15/15 split");
  split_cmd->add_option("--in", sp_in, "Labeled TSV ('-' for stdin)");
  split_cmd->add_option("--seed", sp_seed, "Random seed");
  split_cmd->add_option("--out-dir", sp_dir,
                        "Directory for train.tsv, validation.tsv, test.tsv")
      ->required();
  split_cmd->add_option("--per-class", sp_per_class,
                        "Balance to this many examples per class first");
  split_cmd->callback([&] {
    action = [&] {
      Run& r = *start("split");
      r.set_seed(sp_seed);
      r.config() = {{"per_class", sp_per_class ? json(*sp_per_class)
                                               : json(nullptr)}};
      const auto input = read_examples(r, sp_in);
      std::vector<LabeledExample> data = input.examples;
      if (sp_per_class) data = balance(data, *sp_per_class, sp_seed);
      const auto parts = split(data, SplitRatios{}, sp_seed);
      std::error_code ec;
      fs::create_directories(sp_dir, ec);
      if (ec) throw DataError(sp_dir + ": cannot create directory");
      const std::pair<const char*, const std::vector<LabeledExample>*> files[] =
          {{"train.tsv", &parts.train},
           {"validation.tsv", &parts.validation},
           {"test.tsv", &parts.test}};
      r.set_manifest_default((fs::path(sp_dir) / "manifest.json").string());
      for (const auto& [name, part] : files) {
        std::ostringstream out;
        write_labeled(out, *part);
        r.write((fs::path(sp_dir) / name).string(), out.str());
      }
      r.config()["sizes"] = {{"train", parts.train.size()},
                             {"validation", parts.validation.size()},
                             {"test", parts.test.size()},
                             {"dropped_no_majority", input.dropped_no_majority}};
    };
  });

  // train
  std::string tr_in, tr_psc, tr_model;
  std::uint64_t tr_seed = 0;
  TrainFlags tr_flags;
  NormalizerFlags tr_norm;
  auto* train_cmd = command("train", "Train the linear sentiment model");
  train_cmd->add_option("--train", tr_in, "Labeled TSV ('-' for stdin)")
      ->required();
  train_cmd->add_option("--psc", tr_psc,
                        "Conversion config JSON; omit to train on "
                        "unconverted text");
  train_cmd->add_option("--model", tr_model, "Output model file")->required();
  train_cmd->add_option("--seed", tr_seed, "Random seed");
  tr_flags.add_to(train_cmd);
  tr_norm.add_to(train_cmd);
  train_cmd->callback([&] {
    action = [&] {
      Run& r = *start("train");
      r.set_seed(tr_seed);
      TrainParams params = tr_flags.params;
      params.seed = tr_seed;
      r.config() = {{"train", tr_flags.to_json()}, {"psc", tr_psc}};
      const Normalizer normalizer = tr_norm.build(r);
      std::optional<EngineOptions> opts;
      std::optional<RuleEngine> engine;
      if (!tr_psc.empty()) {
        opts = load_engine_config(r, tr_psc);
        engine.emplace(opts->build(r));
        r.config()["engine"] = opts->to_json();
      }
      const auto data = read_examples(r, tr_in).examples;
      const auto prepared =
          prepare(data, normalizer, engine ? &*engine : nullptr,
                  opts ? opts->pipeline() : PipelineConfig::none());
      LinearModel model = train(prepared, params);
      model.trained_with_psc = engine.has_value();
      std::ostringstream out;
      model.save(out);
      r.write(tr_model, out.str());
    };
  });

  // eval
  std::string ev_model, ev_test, ev_psc;
  bool ev_json = false;
  NormalizerFlags ev_norm;
  auto* eval_cmd = command("eval", "Evaluate a trained model");
  eval_cmd->add_option("--model", ev_model, "Model file")->required();
  eval_cmd->add_option("--test", ev_test, "Labeled TSV ('-' for stdin)")
      ->required();
  eval_cmd->add_option("--psc", ev_psc,
                       "Conversion config JSON; required iff the model was "
                       "trained with one");
  eval_cmd->add_flag("--json", ev_json, "Print metrics as JSON");
  ev_norm.add_to(eval_cmd);
  eval_cmd->callback([&] {
    action = [&] {
      Run& r = *start("eval");
      r.config() = {{"psc", ev_psc}, {"json", ev_json}};
      std::istringstream model_in(r.read(ev_model));
      const LinearModel model = LinearModel::load(model_in, ev_model);
      if (model.trained_with_psc != !ev_psc.empty()) {
        throw UsageError(model.trained_with_psc
                             ? "model was trained on converted text; pass --psc"
                             : "model was trained on unconverted text; drop "
                               "--psc");
      }
      const Normalizer normalizer = ev_norm.build(r);
      std::optional<EngineOptions> opts;
      std::optional<RuleEngine> engine;
      if (!ev_psc.empty()) {
        opts = load_engine_config(r, ev_psc);
        engine.emplace(opts->build(r));
      }
      const auto data = read_examples(r, ev_test).examples;
      const auto prepared =
          prepare(data, normalizer, engine ? &*engine : nullptr,
                  opts ? opts->pipeline() : PipelineConfig::none());
      const auto metrics = evaluate(model, prepared);
      r.write("-", ev_json ? metrics_to_json(metrics).dump(2) + "\n"
                           : metrics_text(metrics));
    };
  });

  // ablate
  std::string ab_in = "-", ab_psc;
  std::uint64_t ab_seed = 0;
  bool ab_json = false;
  std::optional<std::size_t> ab_per_class;
  TrainFlags ab_flags;
  NormalizerFlags ab_norm;
  auto* ablate = command("ablate", "Train and test with and without conversion");
  ablate->add_option("--in", ab_in, "Labeled TSV ('-' for stdin)");
  ablate->add_option("--seed", ab_seed, "Random seed");
  ablate->add_option("--psc", ab_psc, "Conversion config JSON")->required();
  ablate->add_option("--per-class", ab_per_class,
                     "Examples per class (default: smallest class)");
  ablate->add_flag("--json", ab_json, "Print results as JSON");
  ab_flags.add_to(ablate);
  ab_norm.add_to(ablate);
  ablate->callback([&] {
    action = [&] {
      Run& r = *start("ablate");
      r.set_seed(ab_seed);
      r.config() = {{"train", ab_flags.to_json()},
                    {"psc", ab_psc},
                    {"per_class", ab_per_class ? json(*ab_per_class)
                                               : json(nullptr)}};
      const Normalizer normalizer = ab_norm.build(r);
      const EngineOptions opts = load_engine_config(r, ab_psc);
      const RuleEngine engine = opts.build(r);
      r.config()["engine"] = opts.to_json();
      const auto data = read_examples(r, ab_in).examples;
      AblationParams params;
      params.per_class = ab_per_class;
      params.train = ab_flags.params;
      params.train.seed = ab_seed;
      const auto result =
          ablation(data, normalizer, engine, opts.pipeline(), params);
      if (ab_json) {
        r.write("-", ablation_to_json(result).dump(2) + "\n");
      } else {
        r.write("-", "with conversion\n" + metrics_text(result.with_psc) +
                         "without conversion\n" +
                         metrics_text(result.without_psc));
      }
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "psc: error: " << single_line(e.what()) << "\n"
              << app.help("", CLI::AppFormatMode::Normal);
    return kExitUsage;
  }

  try {
    if (threads > 0) omp_set_num_threads(threads);
    const auto begin = std::chrono::steady_clock::now();
    action();
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - begin;
    run->finish(manifest_path, elapsed.count(), omp_get_max_threads());
    return kExitOk;
  } catch (const UsageError& e) {
    std::cerr << "psc: error: " << single_line(e.what()) << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "psc: error: " << single_line(e.what()) << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "psc: error: " << single_line(e.what()) << "\n";
    return kExitData;
  }
}

}  // namespace psc::cli
