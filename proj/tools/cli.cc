//
// Copyright 2026 The fairembed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "cli.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "fairembed/corpus.h"
#include "fairembed/corpus_transform.h"
#include "fairembed/embedding_store.h"
#include "fairembed/errors.h"
#include "fairembed/experiment.h"
#include "fairembed/gender_geometry.h"
#include "fairembed/run_config.h"
#include "fairembed/swap_rules.h"
#include "fairembed/synth.h"
#include "fairembed/text_util.h"
#include "spdlog/sinks/ostream_sink.h"
#include "spdlog/spdlog.h"

namespace fairembed {
namespace {

// Flags shared by the config-driven subcommands. Unset optionals leave the
// config file value alone.
struct CommonFlags {
  std::string config_path;
  std::optional<std::string> preset;
  std::optional<uint64_t> seed;
  std::optional<std::string> embedding, format, case_policy, embedding_name;
  std::optional<std::string> corpus, pairs, targets, swap_rules;
  std::optional<std::string> mode;
  std::vector<std::string> learners;
  std::optional<int> train_per_cell, threads;
  std::optional<std::string> out;
  bool strip_pronouns = false;
};

void AddCommonFlags(CLI::App* app, CommonFlags& f) {
  app->add_option("--config", f.config_path, "JSON run configuration");
  app->add_option("--preset", f.preset, "named protocol preset (mimic-iii)");
  app->add_option("--seed", f.seed, "random seed");
  app->add_option("--embedding", f.embedding, "word vector file");
  app->add_option("--format", f.format, "vector file format: tsv or w2v");
  app->add_option("--case", f.case_policy, "key case policy: fold-lower or preserve");
  app->add_option("--embedding-name", f.embedding_name, "label used in reports");
  app->add_option("--corpus", f.corpus, "labeled notes (JSONL)");
  app->add_option("--pairs", f.pairs, "gender pairs (TSV)");
  app->add_option("--targets", f.targets, "target terms, one per line");
  app->add_option("--swap-rules", f.swap_rules, "swap rules (JSON)");
  app->add_option("--mode", f.mode, "neutralization mode: replace or remove");
  app->add_option("--learner", f.learners, "restrict to learners (svm, rf, mlp)");
  app->add_option("--train-per-cell", f.train_per_cell, "training notes per gender and label");
  app->add_option("--threads", f.threads, "worker threads for the cell matrix");
  app->add_option("--out", f.out, "output directory");
  app->add_flag("--strip-pronouns", f.strip_pronouns, "ignore pronoun tokens when featurizing");
}

RunConfig ResolveConfig(const CommonFlags& f) {
  RunConfig config;
  if (!f.config_path.empty()) config = LoadRunConfig(f.config_path);
  if (f.preset) config.ApplyPreset(*f.preset);
  if (f.seed) config.seed = *f.seed;
  if (f.embedding) config.embedding_path = *f.embedding;
  if (f.format) config.embedding_format = ParseVectorFormat(*f.format);
  if (f.case_policy) config.case_policy = ParseCasePolicy(*f.case_policy);
  if (f.embedding_name) config.embedding_name = *f.embedding_name;
  if (f.corpus) config.corpus_path = *f.corpus;
  if (f.pairs) config.pairs_path = *f.pairs;
  if (f.targets) config.targets_path = *f.targets;
  if (f.swap_rules) config.swap_rules_path = *f.swap_rules;
  if (f.mode) config.neutralize_mode = ParseNeutralizeMode(*f.mode);
  if (!f.learners.empty()) {
    config.learners.clear();
    for (const std::string& name : f.learners) {
      const LearnerKind kind = ParseLearner(name);
      if (std::find(config.learners.begin(), config.learners.end(), kind) ==
          config.learners.end()) {
        config.learners.push_back(kind);
      }
    }
  }
  if (f.train_per_cell) config.train_per_cell = *f.train_per_cell;
  if (f.threads) config.threads = *f.threads;
  if (f.out) config.output_dir = *f.out;
  if (f.strip_pronouns) config.strip_pronouns = true;
  return config;
}

EmbeddingTable LoadTable(const RunConfig& config) {
  RequireExistingFile(config.embedding_path, "embedding");
  EmbeddingTable table = LoadVectors(config.embedding_path, config.embedding_format,
                                     config.case_policy);
  const std::string name = config.ResolvedEmbeddingName();
  if (table.name() != name) {
    EmbeddingTable renamed(name, table.dim(), table.case_policy());
    for (size_t i = 0; i < table.size(); ++i) renamed.Insert(table.words()[i], table.row(i));
    return renamed;
  }
  return table;
}

std::vector<GenderPair> LoadPairs(const RunConfig& config) {
  if (config.pairs_path.empty()) return DefaultGenderPairs();
  RequireExistingFile(config.pairs_path, "gender pairs");
  return LoadGenderPairs(config.pairs_path);
}

SwapRules LoadRules(const RunConfig& config) {
  if (config.swap_rules_path.empty()) return SwapRules::Default();
  RequireExistingFile(config.swap_rules_path, "swap rules");
  return LoadSwapRules(config.swap_rules_path);
}

void EchoConfig(const RunConfig& config, const std::string& dir) {
  WriteFile(dir + "/config.json", config.ToJson().dump(2) + "\n");
}

std::string Fixed(double v, int precision) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", precision, v);
  return buffer;
}

struct AuditFlags {
  bool explain = false;
  bool normalize_first = false;
  bool uncentered = false;
  double strictness = 1.0;
};

int CmdAudit(const CommonFlags& flags, const AuditFlags& audit, std::ostream& out) {
  const RunConfig config = ResolveConfig(flags);
  RequireExistingFile(config.targets_path, "targets");
  const EmbeddingTable table = LoadTable(config);
  const std::vector<GenderPair> pairs = LoadPairs(config);
  const std::vector<std::string> targets = LoadTargetTerms(config.targets_path);

  DirectionOptions options;
  options.center = !audit.uncentered;
  options.normalize_first = audit.normalize_first;
  const GenderDirection direction = ComputeGenderDirection(table, pairs, options);
  const BiasScore score = DirectBias(table, direction, targets, audit.strictness);

  DirectionOptions other = options;
  other.normalize_first = !options.normalize_first;
  const BiasScore alternative =
      DirectBias(table, ComputeGenderDirection(table, pairs, other), targets, audit.strictness);

  const std::string dir = config.ResolvedOutputDir();
  nlohmann::json skipped = nlohmann::json::array();
  for (const GenderPair& pair : direction.pairs_skipped) {
    skipped.push_back({pair.female_word, pair.male_word});
  }
  const nlohmann::json report = {
      {"embedding", {{"name", table.name()}, {"dim", table.dim()}, {"size", table.size()}}},
      {"bias", ToJson(score)},
      {"label", FormatBias(score)},
      {"gender_direction",
       {{"g", direction.g},
        {"spectrum", direction.spectrum},
        {"pairs_used", direction.pairs_used.size()},
        {"pairs_skipped", std::move(skipped)},
        {"degenerate", direction.degenerate},
        {"center", options.center},
        {"normalize_first", options.normalize_first}}},
      {"alternative_normalization",
       {{"normalize_first", other.normalize_first},
        {"db", alternative.db},
        {"direction", BiasDirectionName(alternative.direction)}}}};
  WriteFile(dir + "/bias.json", report.dump(2) + "\n");

  std::string per_word = "term\tcosine\tstrategy\n";
  for (const TermCosine& term : score.per_word) {
    per_word += term.term + "\t" + Fixed(term.cosine, 6) + "\t" +
                std::string(ResolveStrategyName(term.strategy)) + "\n";
  }
  for (const std::string& missing : score.missing) per_word += missing + "\t\tmissing\n";
  WriteFile(dir + "/per_word.tsv", per_word);
  WriteFile(dir + "/spectrum.csv", SpectrumCsv(SpectrumReport(direction), table.name()));
  EchoConfig(config, dir);

  out << "DB(" << table.name() << ") = " << FormatBias(score) << "  [db=" << Fixed(score.db, 6)
      << ", resolved " << score.n_resolved << ", missing " << score.n_missing << ", pairs "
      << direction.pairs_used.size() << "/" << pairs.size() << "]\n";
  if (direction.degenerate) out << "warning: degenerate pair covariance; used mean difference\n";
  if (alternative.direction != score.direction) {
    out << "note: with normalize_first=" << (other.normalize_first ? "true" : "false")
        << " the direction is " << BiasDirectionName(alternative.direction) << " (db "
        << Fixed(alternative.db, 4) << ")\n";
  }
  if (audit.explain) {
    std::vector<TermCosine> sorted = score.per_word;
    std::stable_sort(sorted.begin(), sorted.end(), [](const TermCosine& a, const TermCosine& b) {
      return std::abs(a.cosine) > std::abs(b.cosine);
    });
    out << "term\tcosine\n";
    for (const TermCosine& term : sorted) out << term.term << "\t" << Fixed(term.cosine, 4) << "\n";
  }
  out << "wrote " << dir << "/bias.json, per_word.tsv, spectrum.csv\n";
  return kExitOk;
}

struct TransformFlags {
  std::string condition;
  bool strict = true;
  std::string output;
};

void CheckPronounFree(const Corpus& corpus, const SwapRules& rules, NeutralizeMode mode) {
  for (const LabeledNote& note : corpus) {
    if (NeutralizeText(note.text, mode, rules).n_rewritten != 0) {
      throw std::logic_error("neutralized note '" + note.id + "' still contains gendered pronouns");
    }
  }
}

int CmdTransform(const CommonFlags& flags, const TransformFlags& transform, std::ostream& out) {
  const RunConfig config = ResolveConfig(flags);
  RequireExistingFile(config.corpus_path, "corpus");
  const Condition condition = ParseCondition(transform.condition);
  const SwapRules rules = LoadRules(config);

  std::vector<std::string> bad_lines;
  const Corpus input = ReadCorpusJsonl(config.corpus_path, {.strict = transform.strict},
                                       &bad_lines);
  const Corpus output = BuildCondition(input, condition, rules, config.neutralize_mode);

  int rewritten = 0, untouched = 0;
  if (condition != Condition::kOriginal) {
    for (const LabeledNote& note : input) {
      const int n = condition == Condition::kNeutralized
                        ? NeutralizeText(note.text, config.neutralize_mode, rules).n_rewritten
                        : SwapText(note.text, rules).n_rewritten;
      rewritten += n;
      untouched += n == 0;
    }
  }
  if (condition == Condition::kNeutralized) {
    CheckPronounFree(output, rules, NeutralizeMode::kReplace);
  }

  const std::string dir = config.ResolvedOutputDir();
  const std::string path =
      transform.output.empty() ? dir + "/" + std::string(ConditionName(condition)) + ".jsonl"
                               : transform.output;
  WriteCorpusJsonl(output, path);
  EchoConfig(config, dir);
  out << "condition " << ConditionName(condition) << ": " << input.size() << " notes in, "
      << output.size() << " notes out, " << rewritten << " tokens rewritten, " << untouched
      << " notes without gendered tokens";
  if (!bad_lines.empty()) out << ", " << bad_lines.size() << " malformed lines skipped";
  out << "\nwrote " << path << "\n";
  return kExitOk;
}

int CmdExperiment(const CommonFlags& flags, std::ostream& out) {
  const RunConfig config = ResolveConfig(flags);
  RequireSeed(config);
  RequireExistingFile(config.corpus_path, "corpus");
  const EmbeddingTable table = LoadTable(config);
  const Corpus corpus = ReadCorpusJsonl(config.corpus_path);

  ExperimentSettings settings;
  settings.rules = LoadRules(config);
  settings.neutralize_mode = config.neutralize_mode;
  settings.grid = config.grid;
  settings.protocol.train_per_cell = config.train_per_cell;
  settings.protocol.min_per_cell = config.min_per_cell;
  settings.featurize.strip_pronouns = config.strip_pronouns;
  settings.featurize.rules = settings.rules;
  settings.threads = config.threads;

  std::optional<BiasScore> bias;
  if (!config.targets_path.empty()) {
    RequireExistingFile(config.targets_path, "targets");
    const std::vector<GenderPair> pairs = LoadPairs(config);
    const GenderDirection direction = ComputeGenderDirection(table, pairs);
    bias = DirectBias(table, direction, LoadTargetTerms(config.targets_path));
  }

  const ReportMatrix matrix =
      RunReportMatrix(corpus, table, settings, *config.seed, config.learners, bias);
  const nlohmann::json report = ToJson(matrix);
  ValidateReportJson(report);
  const std::string markdown = RenderMarkdown(report);

  const std::string dir = config.ResolvedOutputDir();
  WriteFile(dir + "/report.json", report.dump(2) + "\n");
  WriteFile(dir + "/report.md", markdown);
  EchoConfig(config, dir);

  out << markdown;
  out << "\n" << matrix.cells.size() << " cells; train " << matrix.n_train << " notes ("
      << matrix.per_cell << " per gender and label), " << matrix.n_test_pairs
      << " test pairs\nwrote " << dir << "/report.json, report.md\n";
  int failed = 0;
  for (const FairnessReport& cell : matrix.cells) {
    if (!cell.error.empty()) {
      ++failed;
      out << "failed: " << ConditionName(cell.condition) << "/" << LearnerName(cell.learner)
          << ": " << cell.error << "\n";
    }
  }
  return failed == 0 ? kExitOk : kExitPartial;
}

struct SynthFlags {
  std::optional<uint64_t> seed;
  SynthOptions options;
  std::string favored = "F";
  std::string out;
};

int CmdSynth(SynthFlags& flags, std::ostream& out) {
  if (!flags.seed) throw InvalidArgument("an explicit seed is required (--seed)");
  flags.options.seed = *flags.seed;
  flags.options.favored = ParseGender(flags.favored);
  const SynthFixture fixture = GenerateSynth(flags.options);
  RunConfig defaults;
  const std::string dir = flags.out.empty() ? defaults.ResolvedOutputDir() : flags.out;
  WriteSynthFixture(fixture, flags.options, dir);
  out << "synthesized " << fixture.corpus.size() << " notes (" << flags.options.per_cell
      << " per gender and label), " << fixture.table.size() << " vectors of dim "
      << fixture.table.dim() << "\nwrote " << dir
      << "/corpus.jsonl, embedding.tsv, pairs.tsv, targets.txt\n";
  return kExitOk;
}

int CmdReport(const std::string& input, const std::string& output, std::ostream& out) {
  const std::string content = ReadFile(input);
  nlohmann::json report;
  try {
    report = nlohmann::json::parse(content);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(input + ": " + e.what());
  }
  const std::string markdown = RenderMarkdown(report);
  if (output.empty()) {
    out << markdown;
  } else {
    WriteFile(output, markdown);
    out << "wrote " << output << "\n";
  }
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto logger = std::make_shared<spdlog::logger>("fairembed", sink);
  logger->set_pattern("%l: %v");
  auto previous = spdlog::default_logger();
  spdlog::set_default_logger(logger);
  struct Restore {
    std::shared_ptr<spdlog::logger> logger;
    ~Restore() { spdlog::set_default_logger(logger); }
  } restore{previous};

  CLI::App app{"Gender bias audit and fairness experiments for word embeddings", "fairembed"};
  app.require_subcommand(1);
  std::string log_level = "warn";
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off");

  CommonFlags common;
  CLI::App* audit_cmd = app.add_subcommand("audit", "direct bias of target terms");
  AddCommonFlags(audit_cmd, common);
  AuditFlags audit;
  audit_cmd->add_flag("--explain", audit.explain, "print per-term cosines sorted by magnitude");
  audit_cmd->add_flag("--normalize-first", audit.normalize_first,
                      "unit-normalize vectors before pair differences");
  audit_cmd->add_flag("--uncentered", audit.uncentered, "skip mean-centering of differences");
  audit_cmd->add_option("--strictness", audit.strictness, "exponent on |cos|");

  CLI::App* transform_cmd = app.add_subcommand("transform", "rewrite a corpus for one condition");
  AddCommonFlags(transform_cmd, common);
  TransformFlags transform;
  transform_cmd->add_option("--condition", transform.condition,
                            "original, swapped, neutralized or augmented")
      ->required();
  transform_cmd->add_flag("--strict,!--no-strict", transform.strict,
                          "abort on the first malformed line (default) or skip it");
  transform_cmd->add_option("--output", transform.output, "output JSONL file");

  CLI::App* experiment_cmd = app.add_subcommand("experiment", "run the condition x learner matrix");
  AddCommonFlags(experiment_cmd, common);

  CLI::App* synth_cmd = app.add_subcommand("synth", "generate a synthetic corpus and embedding");
  SynthFlags synth;
  synth_cmd->add_option("--seed", synth.seed, "random seed");
  synth_cmd->add_option("--per-cell", synth.options.per_cell, "notes per gender and label");
  synth_cmd->add_option("--dim", synth.options.dim, "vector dimension");
  synth_cmd->add_option("--strength", synth.options.strength,
                        "planted gender-label correlation in [0, 1]");
  synth_cmd->add_option("--embedding-bias", synth.options.embedding_bias,
                        "gender component of depression words at strength 1");
  synth_cmd->add_option("--favored", synth.favored, "group the planted bias favors (F or M)");
  synth_cmd->add_flag("--drop-pronouns", synth.options.drop_pronouns,
                      "leave pronouns out of the embedding");
  synth_cmd->add_option("--out", synth.out, "output directory");

  CLI::App* report_cmd = app.add_subcommand("report", "render a markdown table from report.json");
  std::string report_input, report_output;
  report_cmd->add_option("--input", report_input, "report.json")->required();
  report_cmd->add_option("--output", report_output, "markdown file (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    logger->set_level(spdlog::level::from_str(log_level));
    if (audit_cmd->parsed()) return CmdAudit(common, audit, out);
    if (transform_cmd->parsed()) return CmdTransform(common, transform, out);
    if (experiment_cmd->parsed()) return CmdExperiment(common, out);
    if (synth_cmd->parsed()) return CmdSynth(synth, out);
    if (report_cmd->parsed()) return CmdReport(report_input, report_output, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const MathError& e) {
    err << "error: " << e.what() << "\n";
    return kExitMath;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUnexpected;
  }
  return kExitConfig;
}

}  // namespace fairembed
