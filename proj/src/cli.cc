// Copyright 2026 The HedgeKit Authors.
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

#include "hedgekit/cli.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "hedgekit/corpus.h"
#include "hedgekit/errors.h"
#include "hedgekit/evaluation.h"
#include "hedgekit/lexicon.h"
#include "hedgekit/svm.h"
#include "hedgekit/text.h"
#include "hedgekit/util.h"
#include "json.hpp"

#ifndef HEDGEKIT_VERSION
#define HEDGEKIT_VERSION "dev"
#endif

namespace hedgekit {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr const char *kVersion = HEDGEKIT_VERSION;

struct Context {
  std::vector<std::string> argv;
  std::string command;
  std::uint64_t seed = 42;
  Clock::time_point start = Clock::now();
  std::map<std::string, std::string> inputs;
  CliIo *io = nullptr;

  void AddInput(const std::string &path) { inputs[path] = HashFile(path); }

  json Manifest() const {
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return {{"command", command}, {"argv", argv},      {"seed", seed},
            {"inputs", inputs},   {"version", kVersion}, {"wall_time_seconds", seconds}};
  }

  // Every output file gets a manifest next to it.
  void WriteOutput(const fs::path &path, std::string_view contents) const {
    WriteFile(path, contents);
    WriteFile(fs::path(path.string() + ".manifest.json"), Manifest().dump(1) + "\n");
  }
};

Corpus LoadInput(Context &ctx, const std::string &path) {
  Corpus corpus = LoadCorpus(path);
  ctx.AddInput(path);
  return corpus;
}

std::string Fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

std::string IsoTimestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

std::string PadRight(const std::string &s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string PadLeft(const std::string &s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

// Renders rows with the first column left aligned and the rest right
// aligned.
std::string AlignedTable(const std::vector<std::vector<std::string>> &rows) {
  std::vector<std::size_t> widths;
  for (const auto &row : rows) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }
  std::string out;
  for (const auto &row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += "  ";
      out += c == 0 ? PadRight(row[c], widths[c]) : PadLeft(row[c], widths[c]);
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += '\n';
  }
  return out;
}

json StatsJson(const CorpusStats &stats) { return json::parse(StatsToJson(stats)); }

// ---------------------------------------------------------------------------
// stats

struct StatsArgs {
  std::vector<std::string> corpora;
  std::string json_out;
};

int CmdStats(Context &ctx, const StatsArgs &args) {
  std::vector<std::vector<std::string>> rows = {
      {"Corpus", "Documents", "Sentences", "Avg sentence length", "Flesch reading ease",
       "% uncertain"}};
  json all = json::array();
  for (const std::string &path : args.corpora) {
    const Corpus corpus = LoadInput(ctx, path);
    const CorpusStats stats = ComputeCorpusStats(corpus);
    json j = StatsJson(stats);
    if (args.corpora.size() > 1) j["name"] = path;
    all.push_back(j);
    rows.push_back({fs::path(path).filename().string(), std::to_string(stats.doc_count),
                    std::to_string(stats.sentence_count),
                    Fixed(stats.avg_sentence_length, 2), Fixed(stats.flesch_reading_ease, 2),
                    stats.pct_uncertain ? Fixed(100.0 * *stats.pct_uncertain, 1) : "-"});
  }
  const json report = args.corpora.size() == 1 ? all[0] : all;
  ctx.io->out << report.dump() << "\n\n" << AlignedTable(rows);
  if (!args.json_out.empty()) ctx.WriteOutput(args.json_out, report.dump() + "\n");
  return 0;
}

// ---------------------------------------------------------------------------
// filter / truncate

struct FilterArgs {
  std::string corpus;
  std::string out;
  std::string rules_file;
  std::vector<std::string> require_any;
  std::size_t require_k = 0;
  std::vector<std::string> require_terms;
  std::vector<std::string> exclude_any;
  std::size_t max_words = 0;
};

FilterRules RulesFromJson(const std::string &text) {
  json j;
  try {
    j = json::parse(text);
    FilterRules rules;
    if (j.contains("require_any")) rules.require_any = j["require_any"].get<std::vector<std::string>>();
    if (j.contains("require_k_of")) {
      KOfRule k;
      k.k = j["require_k_of"].at("k").get<std::size_t>();
      k.terms = j["require_k_of"].at("terms").get<std::vector<std::string>>();
      rules.require_k_of = k;
    }
    if (j.contains("exclude_any")) rules.exclude_any = j["exclude_any"].get<std::vector<std::string>>();
    if (j.contains("max_words") && !j["max_words"].is_null()) {
      rules.max_words = j["max_words"].get<std::size_t>();
    }
    return rules;
  } catch (const json::exception &e) {
    throw InputError(std::string("filter rules: ") + e.what());
  }
}

int CmdFilter(Context &ctx, const FilterArgs &args) {
  const Corpus corpus = LoadInput(ctx, args.corpus);
  FilterRules rules;
  if (!args.rules_file.empty()) {
    rules = RulesFromJson(ReadFile(args.rules_file));
    ctx.AddInput(args.rules_file);
  }
  if (!args.require_any.empty()) rules.require_any = args.require_any;
  if (!args.require_terms.empty() || args.require_k > 0) {
    rules.require_k_of = KOfRule{args.require_k, args.require_terms};
  }
  if (!args.exclude_any.empty()) rules.exclude_any = args.exclude_any;
  if (args.max_words > 0) rules.max_words = args.max_words;
  const Corpus kept = FilterDocuments(corpus, rules);
  ctx.WriteOutput(args.out, SerializeCorpus(kept));
  ctx.io->out << "kept " << kept.size() << " of " << corpus.size() << " documents\n";
  return 0;
}

struct TruncateArgs {
  std::string corpus;
  std::string out;
};

int CmdTruncate(Context &ctx, const TruncateArgs &args) {
  const Corpus corpus = LoadInput(ctx, args.corpus);
  Corpus out;
  std::size_t truncated = 0;
  for (const Document &doc : corpus) {
    Document t = TruncateForDebate(doc);
    if (!(t == doc)) ++truncated;
    out.push_back(std::move(t));
  }
  ValidateCorpus(out);
  ctx.WriteOutput(args.out, SerializeCorpus(out));
  ctx.io->out << "truncated " << truncated << " of " << corpus.size() << " documents\n";
  return 0;
}

// ---------------------------------------------------------------------------
// annotate / agreement

struct AnnotateArgs {
  std::string corpus;
  std::string annotator;
  std::string session;
  std::string from_file;
  bool resume = false;
};

struct SessionFile {
  std::string annotator;
  std::uint64_t seed = 0;
  // In recorded order; a later record for the same id wins.
  std::vector<std::pair<std::string, char>> records;

  std::map<std::string, char> labels() const {
    std::map<std::string, char> out;
    for (const auto &[sid, label] : records) out[sid] = label;
    return out;
  }
};

SessionFile ParseSession(const std::string &path) {
  const std::string text = ReadFile(path);
  std::istringstream lines(text);
  std::string line;
  SessionFile session;
  bool have_header = false;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto fail = [&](const std::string &what) {
      throw InputError("corrupted session file " + path + ":" + std::to_string(line_no) + ": " +
                       what);
    };
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error &) {
      fail("malformed JSON");
    }
    if (!j.is_object()) fail("record is not an object");
    if (!have_header) {
      if (j.value("type", "") != "header" || !j.contains("annotator") ||
          !j["annotator"].is_string() || !j.contains("seed") || !j["seed"].is_number_unsigned()) {
        fail("missing header record");
      }
      session.annotator = j["annotator"].get<std::string>();
      session.seed = j["seed"].get<std::uint64_t>();
      have_header = true;
      continue;
    }
    if (!j.contains("sid") || !j["sid"].is_string() || !j.contains("label") ||
        !j["label"].is_string()) {
      fail("record needs \"sid\" and \"label\"");
    }
    const std::string label = j["label"].get<std::string>();
    if (label != "c" && label != "u" && label != "n") fail("label must be c, u or n");
    session.records.emplace_back(j["sid"].get<std::string>(), label[0]);
  }
  if (!have_header) throw InputError("corrupted session file " + path + ": empty");
  return session;
}

int CmdAnnotate(Context &ctx, const AnnotateArgs &args) {
  const Corpus corpus = LoadInput(ctx, args.corpus);
  std::vector<const Sentence *> sentences;
  for (const Document &doc : corpus) {
    for (const Sentence &s : doc.sentences) sentences.push_back(&s);
  }
  if (sentences.empty()) throw InputError("empty corpus");
  const std::vector<std::size_t> order = SeededPermutation(sentences.size(), ctx.seed);

  std::set<std::string> done;
  const bool exists = fs::exists(args.session);
  if (exists && !args.resume) {
    throw UsageError("session file " + args.session + " exists; pass --resume to continue it");
  }
  if (exists) {
    const SessionFile previous = ParseSession(args.session);
    if (previous.annotator != args.annotator || previous.seed != ctx.seed) {
      throw InputError("session " + args.session + " belongs to annotator \"" +
                       previous.annotator + "\" with seed " + std::to_string(previous.seed));
    }
    for (const auto &[sid, label] : previous.records) done.insert(sid);
  }

  std::ifstream key_file;
  std::istream *keys = &ctx.io->in;
  if (!args.from_file.empty()) {
    key_file.open(args.from_file);
    if (!key_file) throw InputError("cannot open " + args.from_file);
    keys = &key_file;
  } else if (!ctx.io->in_is_terminal) {
    throw UsageError("annotate needs an interactive terminal; use --from-file for scripted input");
  }

  std::ofstream session(args.session, std::ios::app);
  if (!session) throw InputError("cannot write " + args.session);
  if (!exists) {
    json header = {{"type", "header"},
                   {"annotator", args.annotator},
                   {"seed", ctx.seed},
                   {"corpus_hash", ctx.inputs[args.corpus]},
                   {"version", kVersion}};
    session << header.dump() << '\n' << std::flush;
  }

  std::ostream &out = ctx.io->out;
  std::size_t labeled = done.size();
  bool quit = false;
  for (std::size_t k = 0; k < order.size() && !quit; ++k) {
    const Sentence &s = *sentences[order[k]];
    if (done.count(s.id)) continue;
    // Only the sentence text is ever shown.
    out << "\n[" << (k + 1) << "/" << order.size() << "] " << s.text << "\n";
    for (;;) {
      out << "(c)ertain  (u)ncertain  (n)ot a sentence  (q)uit > " << std::flush;
      std::string answer;
      if (!(*keys >> answer)) {
        quit = true;
        break;
      }
      const char key = static_cast<char>(std::tolower(static_cast<unsigned char>(answer[0])));
      if (key == 'q') {
        quit = true;
        break;
      }
      if (key == 'c' || key == 'u' || key == 'n') {
        json record = {{"sid", s.id}, {"label", std::string(1, key)}, {"ts", IsoTimestamp()}};
        session << record.dump() << '\n' << std::flush;
        ++labeled;
        break;
      }
      out << "unrecognized key \"" << answer << "\"\n";
    }
  }
  out << "\nlabeled " << labeled << " of " << order.size() << " sentences\n";
  return 0;
}

struct AgreementArgs {
  std::string session_a;
  std::string session_b;
  std::string json_out;
};

Certainty SessionLabel(char c) {
  return c == 'u' ? Certainty::kUncertain
                  : (c == 'c' ? Certainty::kCertain : Certainty::kNotASentence);
}

int CmdAgreement(Context &ctx, const AgreementArgs &args) {
  const auto a = ParseSession(args.session_a).labels();
  const auto b = ParseSession(args.session_b).labels();
  ctx.AddInput(args.session_a);
  ctx.AddInput(args.session_b);
  std::set<std::string> ids_a, ids_b;
  for (const auto &[sid, label] : a) ids_a.insert(sid);
  for (const auto &[sid, label] : b) ids_b.insert(sid);
  if (ids_a != ids_b) {
    throw InputError("sessions cover different sentence ids (" + std::to_string(ids_a.size()) +
                     " vs " + std::to_string(ids_b.size()) + ")");
  }
  std::vector<Certainty> la, lb;
  for (const auto &[sid, label] : a) {
    const char other = b.at(sid);
    if (label == 'n' || other == 'n') continue;
    la.push_back(SessionLabel(label));
    lb.push_back(SessionLabel(other));
  }
  if (la.empty()) throw InputError("no proper sentences in common");
  const AgreementReport r = CohensKappa(la, lb);
  json j = {{"n_items", r.n_items},
            {"n_agreed", r.n_agreed},
            {"n_dropped", a.size() - r.n_items},
            {"observed_agreement", RoundSignificant(r.observed_agreement)},
            {"expected_agreement", RoundSignificant(r.expected_agreement)},
            {"kappa", RoundSignificant(r.kappa)}};
  ctx.io->out << j.dump() << "\n\n"
              << AlignedTable({{"Proper sentences", std::to_string(r.n_items)},
                               {"Agreed", std::to_string(r.n_agreed)},
                               {"Observed agreement", Fixed(r.observed_agreement, 4)},
                               {"Expected agreement", Fixed(r.expected_agreement, 4)},
                               {"Cohen's kappa", Fixed(r.kappa, 4)}});
  if (!args.json_out.empty()) ctx.WriteOutput(args.json_out, j.dump() + "\n");
  return 0;
}

// ---------------------------------------------------------------------------
// lexicon / train / tune

FeatureVariant VariantArg(const std::string &name) {
  auto v = ParseFeatureVariant(name);
  if (!v) throw UsageError("unknown feature config \"" + name + "\"");
  return *v;
}

struct LexiconArgs {
  std::string corpus;
  std::string config = "cues";
  std::string out;
  std::string dump_features;
};

int CmdLexicon(Context &ctx, const LexiconArgs &args) {
  const Corpus corpus = LoadInput(ctx, args.corpus);
  const CueLexicon lexicon =
      BuildLexicon(CollectCues(corpus), VariantArg(args.config), StopwordList::Default());
  if (lexicon.skipped_cues() > 0) {
    ctx.io->err << "warning: " << lexicon.skipped_cues()
                << " cue(s) normalized to nothing and were skipped\n";
  }
  ctx.WriteOutput(args.out, lexicon.ToJson() + "\n");
  if (!args.dump_features.empty()) {
    const auto rows = FeaturizeCorpus(corpus, lexicon, StopwordList::Default());
    ctx.WriteOutput(args.dump_features, FeatureDumpJsonl(rows));
  }
  ctx.io->out << AlignedTable({{"Feature source", "#features"},
                               {std::string(FeatureVariantName(lexicon.variant())),
                                std::to_string(lexicon.size())}});
  return 0;
}

struct TrainArgs {
  std::string corpus;
  std::string config = "cues";
  std::string weighting = "proportional";
  double c = 1.0;
  double gamma = 1.0;
  double tolerance = 1e-3;
  std::string model_out;
  std::string lexicon_out;
};

int CmdTrain(Context &ctx, const TrainArgs &args) {
  const Corpus corpus = LoadInput(ctx, args.corpus);
  TrainConfig cfg;
  cfg.c = args.c;
  cfg.weighting = ParseClassWeighting(args.weighting);
  cfg.kkt_tolerance = args.tolerance;
  cfg.seed = ctx.seed;
  const TrainedClassifier trained =
      TrainClassifier(corpus, VariantArg(args.config), KernelParams{args.gamma}, cfg);
  ctx.WriteOutput(args.model_out, trained.model.ToJson() + "\n");
  ctx.WriteOutput(args.lexicon_out, trained.lexicon.ToJson() + "\n");
  ctx.io->out << "trained on " << args.corpus << ": " << trained.model.support_vectors().size()
              << " support vectors, " << trained.lexicon.size() << " features\n";
  return 0;
}

struct TuneArgs {
  std::string corpus;
  std::string grid_file;
  std::vector<double> gammas;
  std::vector<double> cs;
  std::vector<std::string> configs;
  std::vector<std::string> weightings;
  std::size_t folds = 0;
  std::string out_dir;
  std::size_t jobs = 0;
  bool per_fold_lexicon = false;
  double tolerance = 1e-3;
};

int CmdTune(Context &ctx, const TuneArgs &args) {
  const Corpus corpus = LoadInput(ctx, args.corpus);
  GridSpec spec = GridSpec::Default();
  if (!args.grid_file.empty()) {
    spec = GridSpec::FromJson(ReadFile(args.grid_file));
    ctx.AddInput(args.grid_file);
  }
  if (!args.gammas.empty()) spec.gammas = args.gammas;
  if (!args.cs.empty()) spec.cs = args.cs;
  if (!args.configs.empty()) {
    spec.configs.clear();
    for (const std::string &name : args.configs) spec.configs.push_back(VariantArg(name));
  }
  if (!args.weightings.empty()) {
    spec.weightings.clear();
    for (const std::string &name : args.weightings) {
      spec.weightings.push_back(ParseClassWeighting(name));
    }
  }
  if (args.folds > 0) spec.folds = args.folds;
  spec.seed = ctx.seed;

  GridOptions options;
  options.jobs = args.jobs > 0 ? args.jobs : std::max(1u, std::thread::hardware_concurrency());
  options.per_fold_lexicon = args.per_fold_lexicon;
  options.kkt_tolerance = args.tolerance;
  const GridSearchReport report = GridSearch(corpus, spec, options);
  const GridCell &best = report.best_cell();

  TrainConfig cfg;
  cfg.c = best.c;
  cfg.weighting = best.weighting;
  cfg.kkt_tolerance = args.tolerance;
  cfg.seed = ctx.seed;
  const TrainedClassifier trained =
      TrainClassifier(corpus, best.config, KernelParams{best.gamma}, cfg);

  const fs::path dir(args.out_dir);
  fs::create_directories(dir);
  ctx.WriteOutput(dir / "grid_report.json", report.ToJson());
  ctx.WriteOutput(dir / "model.json", trained.model.ToJson() + "\n");
  ctx.WriteOutput(dir / "lexicon.json", trained.lexicon.ToJson() + "\n");

  char params[96];
  std::snprintf(params, sizeof(params), "(%g, 2^%g)", best.c, std::log2(best.gamma));
  const EvalMetrics &m = best.metrics;
  ctx.io->out << "Best " << spec.folds << "-fold cross-validation performance ("
              << report.cells.size() << " cells)\n"
              << AlignedTable({{"Dataset", "Config", "Weighting", "(C, gamma)", "P", "R", "F"},
                               {fs::path(args.corpus).filename().string(),
                                std::string(FeatureVariantName(best.config)),
                                std::string(ClassWeightingName(best.weighting)), params,
                                Fixed(100.0 * m.precision, 1), Fixed(100.0 * m.recall, 1),
                                Fixed(100.0 * m.f1, 1)}});
  return 0;
}

// ---------------------------------------------------------------------------
// eval / transfer / classify / compare

struct ModelArgs {
  std::string model;
  std::string lexicon;
};

std::pair<SvmModel, CueLexicon> LoadModel(Context &ctx, const ModelArgs &args) {
  SvmModel model = SvmModel::FromJson(ReadFile(args.model));
  CueLexicon lexicon = CueLexicon::FromJson(ReadFile(args.lexicon));
  ctx.AddInput(args.model);
  ctx.AddInput(args.lexicon);
  CheckModelLexicon(model, lexicon);
  return {std::move(model), std::move(lexicon)};
}

json OptionalNumber(const std::optional<double> &v) {
  return v ? json(RoundSignificant(*v)) : json(nullptr);
}

std::string OptionalFixed(const std::optional<double> &v) { return v ? Fixed(*v, 2) : "-"; }

std::vector<std::string> MetricsRow(const std::string &name, const EvalMetrics &m) {
  return {name, Fixed(100.0 * m.precision, 1), Fixed(100.0 * m.recall, 1),
          Fixed(100.0 * m.f1, 1)};
}

struct EvalArgs {
  ModelArgs model;
  std::string corpus;
  std::string json_out;
};

int CmdEval(Context &ctx, const EvalArgs &args) {
  const auto [model, lexicon] = LoadModel(ctx, args.model);
  const Corpus corpus = LoadInput(ctx, args.corpus);
  const CorpusPredictions p = PredictCorpus(model, lexicon, corpus);
  std::vector<Certainty> predicted, gold;
  std::vector<std::size_t> lengths;
  for (std::size_t i = 0; i < p.ids.size(); ++i) {
    if (p.gold[i] != Certainty::kCertain && p.gold[i] != Certainty::kUncertain) continue;
    predicted.push_back(p.predicted[i]);
    gold.push_back(*p.gold[i]);
    lengths.push_back(p.lengths[i]);
  }
  if (gold.empty()) throw InputError("eval needs gold labels; " + args.corpus + " has none");
  const EvalMetrics m = EvaluateTransfer(model, lexicon, corpus);
  const ErrorLengthReport lengths_report = ErrorLengthAnalysis(predicted, gold, lengths);
  json j = json::parse(MetricsToJson(m));
  j["mean_length"] = {{"tp", OptionalNumber(lengths_report.tp)},
                      {"fp", OptionalNumber(lengths_report.fp)},
                      {"fn", OptionalNumber(lengths_report.fn)},
                      {"tn", OptionalNumber(lengths_report.tn)}};
  ctx.io->out << j.dump() << "\n\n"
              << AlignedTable({{"Dataset", "P", "R", "F"},
                               MetricsRow(fs::path(args.corpus).filename().string(), m)})
              << "\n"
              << AlignedTable({{"Cell", "Count", "Mean length"},
                               {"TP", std::to_string(lengths_report.tp_count),
                                OptionalFixed(lengths_report.tp)},
                               {"FP", std::to_string(lengths_report.fp_count),
                                OptionalFixed(lengths_report.fp)},
                               {"FN", std::to_string(lengths_report.fn_count),
                                OptionalFixed(lengths_report.fn)},
                               {"TN", std::to_string(lengths_report.tn_count),
                                OptionalFixed(lengths_report.tn)}});
  if (!args.json_out.empty()) ctx.WriteOutput(args.json_out, j.dump() + "\n");
  return 0;
}

struct TransferArgs {
  ModelArgs model;
  std::vector<std::string> targets;
  std::string json_out;
};

int CmdTransfer(Context &ctx, const TransferArgs &args) {
  const auto [model, lexicon] = LoadModel(ctx, args.model);
  std::vector<std::vector<std::string>> rows = {{"Dataset", "P", "R", "F"}};
  json j = json::array();
  Corpus combined;
  std::string combined_name;
  for (const std::string &path : args.targets) {
    const Corpus corpus = LoadInput(ctx, path);
    const EvalMetrics m = EvaluateTransfer(model, lexicon, corpus);
    const std::string name = fs::path(path).filename().string();
    json row = json::parse(MetricsToJson(m));
    row["name"] = path;
    j.push_back(row);
    rows.push_back(MetricsRow(name, m));
    combined.insert(combined.end(), corpus.begin(), corpus.end());
    combined_name += (combined_name.empty() ? "" : " + ") + name;
  }
  if (args.targets.size() > 1) {
    const EvalMetrics m = EvaluateTransfer(model, lexicon, combined);
    json row = json::parse(MetricsToJson(m));
    row["name"] = combined_name;
    j.push_back(row);
    rows.insert(rows.begin() + 1, MetricsRow(combined_name, m));
  }
  ctx.io->out << j.dump() << "\n\n" << AlignedTable(rows);
  if (!args.json_out.empty()) ctx.WriteOutput(args.json_out, j.dump() + "\n");
  return 0;
}

struct ClassifyArgs {
  ModelArgs model;
  std::vector<std::string> corpora;
  std::string json_out;
};

int CmdClassify(Context &ctx, const ClassifyArgs &args) {
  const auto [model, lexicon] = LoadModel(ctx, args.model);
  std::vector<std::vector<std::string>> rows = {{"Dataset", "% uncertain"}};
  json j = json::array();
  for (const std::string &path : args.corpora) {
    const Corpus corpus = LoadInput(ctx, path);
    const double rate = ClassifyCorpusUncertainty(model, lexicon, corpus);
    j.push_back({{"name", path}, {"pct_uncertain", RoundSignificant(rate)}});
    rows.push_back({fs::path(path).filename().string(), Fixed(100.0 * rate, 1)});
  }
  ctx.io->out << j.dump() << "\n\n" << AlignedTable(rows);
  if (!args.json_out.empty()) ctx.WriteOutput(args.json_out, j.dump() + "\n");
  return 0;
}

struct CompareArgs {
  std::string a;
  std::string b;
  bool pooled = false;
  std::string json_out;
};

std::vector<Certainty> GoldLabels(const Corpus &corpus, const std::string &path) {
  std::vector<Certainty> labels;
  for (const Document &doc : corpus) {
    for (const Sentence &s : doc.sentences) {
      if (s.has_binary_label()) labels.push_back(*s.gold_label);
    }
  }
  if (labels.empty()) throw InputError(path + " has no certain/uncertain gold labels");
  return labels;
}

int CmdCompare(Context &ctx, const CompareArgs &args) {
  const auto la = GoldLabels(LoadInput(ctx, args.a), args.a);
  const auto lb = GoldLabels(LoadInput(ctx, args.b), args.b);
  const auto xa = UncertaintyIndicators(la);
  const auto xb = UncertaintyIndicators(lb);
  const ProportionTest t =
      ProportionTTest(xa, xb, args.pooled ? TTestVariant::kPooled : TTestVariant::kWelch);
  auto finite = [](double v) { return std::isfinite(v) ? json(RoundSignificant(v)) : json(nullptr); };
  json j = {{"pct_uncertain_a", RoundSignificant(t.mean1)},
            {"pct_uncertain_b", RoundSignificant(t.mean2)},
            {"n_a", xa.size()},
            {"n_b", xb.size()},
            {"test", args.pooled ? "pooled" : "welch"},
            {"t_stat", finite(t.t_stat)},
            {"df", RoundSignificant(t.df)},
            {"p_value", RoundSignificant(t.p_value)},
            {"significant_at_05", t.significant_at_05},
            {"degenerate", t.degenerate}};
  const std::string verdict = t.significant_at_05 ? "significant (p < .05)" : "not significant";
  ctx.io->out << j.dump() << "\n\n"
              << AlignedTable({{"Dataset", "% of uncertain sentences"},
                               {fs::path(args.a).filename().string(), Fixed(100.0 * t.mean1, 1)},
                               {fs::path(args.b).filename().string(), Fixed(100.0 * t.mean2, 1)}})
              << "\n"
              << (args.pooled ? "pooled" : "Welch") << " t = "
              << (std::isfinite(t.t_stat) ? Fixed(t.t_stat, 4) : std::string(t.t_stat > 0 ? "inf" : "-inf"))
              << ", df = " << Fixed(t.df, 2) << ", p = " << Fixed(t.p_value, 4) << ": " << verdict
              << "\n";
  if (!args.json_out.empty()) ctx.WriteOutput(args.json_out, j.dump() + "\n");
  return 0;
}

}  // namespace

int RunCli(const std::vector<std::string> &args, CliIo io) {
  CLI::App app{"hedgekit: hedge and uncertainty detection toolkit", "hedgekit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key = value configuration file; flags override it");
  app.set_version_flag("--version", kVersion);

  Context ctx;
  ctx.io = &io;
  ctx.argv = args;
  app.add_option("--seed", ctx.seed, "seed for every random choice (default 42)")
      ->envname("HEDGEKIT_SEED");

  StatsArgs stats;
  auto *stats_cmd = app.add_subcommand("stats", "descriptive statistics for corpora");
  stats_cmd->add_option("corpora", stats.corpora, "corpus JSONL files")->required();
  stats_cmd->add_option("--json", stats.json_out, "write the JSON report here");

  FilterArgs filter;
  auto *filter_cmd = app.add_subcommand("filter", "keep documents that pass keyword rules");
  filter_cmd->add_option("--corpus", filter.corpus)->required();
  filter_cmd->add_option("--out", filter.out)->required();
  filter_cmd->add_option("--rules", filter.rules_file, "JSON rules file");
  filter_cmd->add_option("--require-any", filter.require_any, "keep if any phrase occurs");
  filter_cmd->add_option("--require-k", filter.require_k, "distinct --require-term hits needed");
  filter_cmd->add_option("--require-term", filter.require_terms);
  filter_cmd->add_option("--exclude-any", filter.exclude_any, "drop if any phrase occurs");
  filter_cmd->add_option("--max-words", filter.max_words, "drop documents longer than this");

  TruncateArgs truncate;
  auto *truncate_cmd =
      app.add_subcommand("truncate", "keep words 51-250 of documents over 280 words");
  truncate_cmd->add_option("--corpus", truncate.corpus)->required();
  truncate_cmd->add_option("--out", truncate.out)->required();

  AnnotateArgs annotate;
  auto *annotate_cmd = app.add_subcommand("annotate", "blind labeling in randomized order");
  annotate_cmd->add_option("--corpus", annotate.corpus)->required();
  annotate_cmd->add_option("--annotator", annotate.annotator)->required();
  annotate_cmd->add_option("--session", annotate.session, "session JSONL file")->required();
  annotate_cmd->add_option("--from-file", annotate.from_file, "read keys from a file");
  annotate_cmd->add_flag("--resume", annotate.resume, "continue an existing session");

  AgreementArgs agreement;
  auto *agreement_cmd = app.add_subcommand("agreement", "Cohen's kappa between two sessions");
  agreement_cmd->add_option("session_a", agreement.session_a)->required();
  agreement_cmd->add_option("session_b", agreement.session_b)->required();
  agreement_cmd->add_option("--json", agreement.json_out);

  LexiconArgs lexicon;
  auto *lexicon_cmd = app.add_subcommand("lexicon", "build the cue lexicon of a corpus");
  lexicon_cmd->add_option("--corpus", lexicon.corpus)->required();
  lexicon_cmd->add_option("--config", lexicon.config, "feature variant");
  lexicon_cmd->add_option("--out", lexicon.out)->required();
  lexicon_cmd->add_option("--dump-features", lexicon.dump_features, "feature dump JSONL");

  TrainArgs train;
  auto *train_cmd = app.add_subcommand("train", "train one model");
  train_cmd->add_option("--corpus", train.corpus)->required();
  train_cmd->add_option("--config", train.config, "feature variant");
  train_cmd->add_option("--weighting", train.weighting, "uniform or proportional");
  train_cmd->add_option("--c", train.c, "regularization C");
  train_cmd->add_option("--gamma", train.gamma, "RBF width");
  train_cmd->add_option("--tolerance", train.tolerance, "KKT tolerance");
  train_cmd->add_option("--model-out", train.model_out)->required();
  train_cmd->add_option("--lexicon-out", train.lexicon_out)->required();

  TuneArgs tune;
  auto *tune_cmd = app.add_subcommand("tune", "grid search with k-fold cross-validation");
  tune_cmd->add_option("--corpus", tune.corpus)->required();
  tune_cmd->add_option("--grid", tune.grid_file, "JSON grid specification");
  tune_cmd->add_option("--gamma", tune.gammas, "gamma values (repeatable)");
  tune_cmd->add_option("--c", tune.cs, "C values (repeatable)");
  tune_cmd->add_option("--feature-config", tune.configs, "feature variants (repeatable)");
  tune_cmd->add_option("--weighting", tune.weightings, "class weightings (repeatable)");
  tune_cmd->add_option("--folds", tune.folds);
  tune_cmd->add_option("--out-dir", tune.out_dir)->required();
  tune_cmd->add_option("--jobs", tune.jobs, "worker threads (default: processors)");
  tune_cmd->add_flag("--per-fold-lexicon", tune.per_fold_lexicon);
  tune_cmd->add_option("--tolerance", tune.tolerance, "KKT tolerance");

  auto add_model = [](CLI::App *cmd, ModelArgs &m) {
    cmd->add_option("--model", m.model)->required();
    cmd->add_option("--lexicon", m.lexicon)->required();
  };

  EvalArgs eval;
  auto *eval_cmd = app.add_subcommand("eval", "score a model on a labeled corpus");
  add_model(eval_cmd, eval.model);
  eval_cmd->add_option("--corpus", eval.corpus)->required();
  eval_cmd->add_option("--json", eval.json_out);

  TransferArgs transfer;
  auto *transfer_cmd = app.add_subcommand("transfer", "score a model on other domains");
  add_model(transfer_cmd, transfer.model);
  transfer_cmd->add_option("--target", transfer.targets, "labeled corpora (repeatable)")
      ->required();
  transfer_cmd->add_option("--json", transfer.json_out);

  ClassifyArgs classify;
  auto *classify_cmd = app.add_subcommand("classify", "percentage of sentences predicted uncertain");
  add_model(classify_cmd, classify.model);
  classify_cmd->add_option("--corpus", classify.corpora, "corpora (repeatable)")->required();
  classify_cmd->add_option("--json", classify.json_out);

  CompareArgs compare;
  auto *compare_cmd =
      app.add_subcommand("compare", "compare uncertainty rates of two labeled corpora");
  compare_cmd->add_option("corpus_a", compare.a)->required();
  compare_cmd->add_option("corpus_b", compare.b)->required();
  compare_cmd->add_flag("--pooled", compare.pooled, "pooled-variance t-test instead of Welch");
  compare_cmd->add_option("--json", compare.json_out);

  std::vector<char *> argv;
  std::vector<std::string> owned = args.empty() ? std::vector<std::string>{"hedgekit"} : args;
  for (std::string &a : owned) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, io.out, io.err);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e, io.out, io.err);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e, io.out, io.err);
  } catch (const CLI::ParseError &e) {
    app.exit(e, io.out, io.err);
    return 4;
  }

  try {
    CLI::App *cmd = app.get_subcommands().front();
    ctx.command = cmd->get_name();
    if (cmd == stats_cmd) return CmdStats(ctx, stats);
    if (cmd == filter_cmd) return CmdFilter(ctx, filter);
    if (cmd == truncate_cmd) return CmdTruncate(ctx, truncate);
    if (cmd == annotate_cmd) return CmdAnnotate(ctx, annotate);
    if (cmd == agreement_cmd) return CmdAgreement(ctx, agreement);
    if (cmd == lexicon_cmd) return CmdLexicon(ctx, lexicon);
    if (cmd == train_cmd) return CmdTrain(ctx, train);
    if (cmd == tune_cmd) return CmdTune(ctx, tune);
    if (cmd == eval_cmd) return CmdEval(ctx, eval);
    if (cmd == transfer_cmd) return CmdTransfer(ctx, transfer);
    if (cmd == classify_cmd) return CmdClassify(ctx, classify);
    if (cmd == compare_cmd) return CmdCompare(ctx, compare);
    throw UsageError("unknown subcommand");
  } catch (const Error &e) {
    io.err << "hedgekit " << ctx.command << ": " << e.what() << "\n";
    return e.exit_code();
  } catch (const fs::filesystem_error &e) {
    io.err << "hedgekit " << ctx.command << ": " << e.what() << "\n";
    return 2;
  } catch (const json::exception &e) {
    io.err << "hedgekit " << ctx.command << ": " << e.what() << "\n";
    return 2;
  }
}

}  // namespace hedgekit
