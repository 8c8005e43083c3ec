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

#include "hedgekit/evaluation.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <thread>

#include <boost/math/special_functions/beta.hpp>

#include "hedgekit/errors.h"
#include "hedgekit/util.h"
#include "json.hpp"

namespace hedgekit {
namespace {

using nlohmann::json;

double Ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

int ToSign(Certainty label) { return label == Certainty::kUncertain ? 1 : -1; }

// Training and held-out parts of one fold.
struct FoldData {
  TrainingSet train;
  std::vector<SparseVector> test_vectors;
  std::vector<int> test_labels;
};

TrainingSet Subset(const TrainingSet &data, std::span<const std::size_t> rows) {
  TrainingSet out;
  out.dimension = data.dimension;
  out.vectors.reserve(rows.size());
  out.labels.reserve(rows.size());
  for (std::size_t r : rows) {
    out.vectors.push_back(data.vectors[r]);
    out.labels.push_back(data.labels[r]);
  }
  return out;
}

std::vector<std::size_t> Complement(const Folds &folds, std::size_t held_out) {
  std::vector<std::size_t> rows;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    if (f != held_out) rows.insert(rows.end(), folds[f].begin(), folds[f].end());
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

void RequireBothClasses(const TrainingSet &train, std::size_t fold) {
  const std::size_t pos = train.positives();
  if (pos == 0 || pos == train.size()) {
    throw InputError("cross-validation: training part of fold " + std::to_string(fold) +
                     " has only one class");
  }
}

std::vector<FoldData> SplitFolds(const TrainingSet &data, const Folds &folds) {
  std::vector<FoldData> out;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    FoldData fd;
    fd.train = Subset(data, Complement(folds, f));
    RequireBothClasses(fd.train, f);
    TrainingSet test = Subset(data, folds[f]);
    fd.test_vectors = std::move(test.vectors);
    fd.test_labels = std::move(test.labels);
    out.push_back(std::move(fd));
  }
  return out;
}

EvalMetrics RunFolds(const std::vector<FoldData> &folds, const KernelParams &kernel,
                     const TrainConfig &cfg) {
  EvalMetrics pooled;
  for (const FoldData &fd : folds) {
    const SvmModel model = TrainSmo(fd.train, kernel, cfg);
    std::vector<int> predicted;
    predicted.reserve(fd.test_vectors.size());
    for (const SparseVector &x : fd.test_vectors) predicted.push_back(model.predict(x));
    pooled += ScoreLabels(predicted, fd.test_labels);
  }
  return pooled;
}

// Labeled proper sentences of a corpus, in corpus order.
std::vector<const Sentence *> LabeledSentences(const Corpus &corpus) {
  std::vector<const Sentence *> out;
  for (const Document &doc : corpus) {
    for (const Sentence &s : doc.sentences) {
      if (s.has_binary_label()) out.push_back(&s);
    }
  }
  return out;
}

SparseVector FeaturizeSentence(const Sentence &s, const CueLexicon &lexicon,
                               const StopwordList &stopwords) {
  return ToSparse(Featurize(Normalize(s.text, stopwords), lexicon), lexicon.size());
}

// Folds whose lexicon is rebuilt from the cues of the training part.
std::vector<FoldData> PerFoldLexiconFolds(const std::vector<const Sentence *> &sentences,
                                          const Folds &folds, FeatureVariant variant,
                                          const StopwordList &stopwords) {
  std::vector<FoldData> out;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    const std::vector<std::size_t> train_rows = Complement(folds, f);
    std::vector<std::string> cues;
    for (std::size_t r : train_rows) {
      for (std::string &cue : sentences[r]->cue_texts()) cues.push_back(std::move(cue));
    }
    const CueLexicon lexicon = BuildLexicon(cues, variant, stopwords);
    FoldData fd;
    fd.train.dimension = lexicon.size();
    for (std::size_t r : train_rows) {
      fd.train.vectors.push_back(FeaturizeSentence(*sentences[r], lexicon, stopwords));
      fd.train.labels.push_back(ToSign(*sentences[r]->gold_label));
    }
    RequireBothClasses(fd.train, f);
    for (std::size_t r : folds[f]) {
      fd.test_vectors.push_back(FeaturizeSentence(*sentences[r], lexicon, stopwords));
      fd.test_labels.push_back(ToSign(*sentences[r]->gold_label));
    }
    out.push_back(std::move(fd));
  }
  return out;
}

std::vector<int> SentenceSigns(const std::vector<const Sentence *> &sentences) {
  std::vector<int> labels;
  labels.reserve(sentences.size());
  for (const Sentence *s : sentences) labels.push_back(ToSign(*s->gold_label));
  return labels;
}

std::vector<FoldData> PrepareFolds(const Corpus &corpus,
                                   const std::vector<const Sentence *> &sentences,
                                   const Folds &folds, FeatureVariant variant,
                                   bool per_fold_lexicon, const StopwordList &stopwords) {
  if (per_fold_lexicon) return PerFoldLexiconFolds(sentences, folds, variant, stopwords);
  const CueLexicon lexicon = BuildLexicon(CollectCues(corpus), variant, stopwords);
  TrainingSet data;
  data.dimension = lexicon.size();
  for (const Sentence *s : sentences) {
    data.vectors.push_back(FeaturizeSentence(*s, lexicon, stopwords));
    data.labels.push_back(ToSign(*s->gold_label));
  }
  return SplitFolds(data, folds);
}

std::vector<const Sentence *> RequireLabeled(const Corpus &corpus) {
  std::vector<const Sentence *> sentences = LabeledSentences(corpus);
  if (sentences.empty()) throw InputError("corpus has no certain/uncertain gold labels");
  return sentences;
}

json CellToJson(const GridCell &cell) {
  const EvalMetrics &m = cell.metrics;
  return {{"config", std::string(FeatureVariantName(cell.config))},
          {"weighting", std::string(ClassWeightingName(cell.weighting))},
          {"c", RoundSignificant(cell.c)},
          {"gamma", RoundSignificant(cell.gamma)},
          {"tp", m.tp},
          {"fp", m.fp},
          {"fn", m.fn},
          {"tn", m.tn},
          {"precision", RoundSignificant(m.precision)},
          {"recall", RoundSignificant(m.recall)},
          {"f1", RoundSignificant(m.f1)}};
}

template <typename T>
std::vector<T> SortedUnique(std::vector<T> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

}  // namespace

EvalMetrics EvalMetrics::FromCounts(std::size_t tp, std::size_t fp, std::size_t fn,
                                    std::size_t tn) {
  EvalMetrics m;
  m.tp = tp;
  m.fp = fp;
  m.fn = fn;
  m.tn = tn;
  m.precision_undefined = tp + fp == 0;
  m.recall_undefined = tp + fn == 0;
  m.precision = Ratio(tp, tp + fp);
  m.recall = Ratio(tp, tp + fn);
  m.f1 = m.precision + m.recall > 0.0
             ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
             : 0.0;
  return m;
}

EvalMetrics &EvalMetrics::operator+=(const EvalMetrics &other) {
  *this = FromCounts(tp + other.tp, fp + other.fp, fn + other.fn, tn + other.tn);
  return *this;
}

EvalMetrics ScoreLabels(std::span<const int> predicted, std::span<const int> gold) {
  if (predicted.size() != gold.size()) {
    throw InputError("score: prediction and gold lengths differ");
  }
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const bool p = predicted[i] > 0;
    const bool g = gold[i] > 0;
    if (p && g) ++tp;
    else if (p) ++fp;
    else if (g) ++fn;
    else ++tn;
  }
  return EvalMetrics::FromCounts(tp, fp, fn, tn);
}

std::string MetricsToJson(const EvalMetrics &m) {
  json j = {{"tp", m.tp},
            {"fp", m.fp},
            {"fn", m.fn},
            {"tn", m.tn},
            {"precision", RoundSignificant(m.precision)},
            {"recall", RoundSignificant(m.recall)},
            {"f1", RoundSignificant(m.f1)},
            {"precision_undefined", m.precision_undefined},
            {"recall_undefined", m.recall_undefined}};
  return j.dump();
}

Folds KFoldSplit(std::size_t n, std::size_t k,
                 std::optional<std::span<const int>> labels, std::uint64_t seed) {
  if (k == 0) throw InputError("kfold: k must be positive");
  if (k > n) {
    throw InputError("kfold: k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
  }
  std::mt19937_64 rng(seed);
  Folds folds(k);
  std::size_t next = 0;
  auto deal = [&](std::vector<std::size_t> members) {
    SeededShuffle(members, rng);
    for (std::size_t idx : members) {
      folds[next].push_back(idx);
      next = (next + 1) % k;
    }
  };
  if (labels) {
    if (labels->size() != n) throw InputError("kfold: label count differs from n");
    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < n; ++i) by_class[(*labels)[i]].push_back(i);
    for (auto &[label, members] : by_class) {
      if (members.size() < k) {
        throw InputError("kfold: class " + std::to_string(label) + " has " +
                         std::to_string(members.size()) + " members, fewer than k = " +
                         std::to_string(k));
      }
      deal(std::move(members));
    }
  } else {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    deal(std::move(all));
  }
  for (auto &fold : folds) std::sort(fold.begin(), fold.end());
  return folds;
}

SparseVector ToSparse(const FeatureVector &fv, std::size_t dim) {
  SparseVector v;
  v.dim = dim;
  v.entries.reserve(fv.counts.size());
  for (const auto &[column, count] : fv.counts) {
    if (column >= dim) throw InputError("feature column outside lexicon");
    v.entries.push_back({column, static_cast<double>(count)});
  }
  return v;
}

LabeledData ToLabeledData(std::span<const FeaturizedSentence> rows, std::size_t dim) {
  LabeledData out;
  out.set.dimension = dim;
  for (const FeaturizedSentence &row : rows) {
    if (row.gold_label != Certainty::kCertain && row.gold_label != Certainty::kUncertain) {
      continue;
    }
    out.set.vectors.push_back(ToSparse(row.features, dim));
    out.set.labels.push_back(ToSign(*row.gold_label));
    out.ids.push_back(row.features.sentence_id);
    out.lengths.push_back(row.length);
  }
  return out;
}

EvalMetrics CrossValidateData(const TrainingSet &data, const Folds &folds,
                              const KernelParams &kernel, const TrainConfig &cfg) {
  return RunFolds(SplitFolds(data, folds), kernel, cfg);
}

EvalMetrics CrossValidate(const Corpus &corpus, FeatureVariant variant,
                          const KernelParams &kernel, const TrainConfig &cfg,
                          const CvOptions &options, const StopwordList &stopwords) {
  const std::vector<const Sentence *> sentences = RequireLabeled(corpus);
  const std::vector<int> labels = SentenceSigns(sentences);
  const Folds folds =
      KFoldSplit(sentences.size(), options.folds,
                 options.stratified ? std::optional<std::span<const int>>(labels)
                                    : std::nullopt,
                 options.seed);
  return RunFolds(
      PrepareFolds(corpus, sentences, folds, variant, options.per_fold_lexicon, stopwords),
      kernel, cfg);
}

GridSpec GridSpec::Default() {
  GridSpec spec;
  for (int e = -9; e <= 4; ++e) spec.gammas.push_back(std::ldexp(1.0, e));
  spec.cs.push_back(1.0);
  for (int c = 10; c <= 150; c += 10) spec.cs.push_back(c);
  spec.configs.assign(kAllFeatureVariants.begin(), kAllFeatureVariants.end());
  spec.weightings = {ClassWeighting::kUniform, ClassWeighting::kProportional};
  return spec;
}

void GridSpec::Validate() const {
  if (gammas.empty() || cs.empty() || configs.empty() || weightings.empty()) {
    throw InputError("grid spec: every parameter set must be non-empty");
  }
  for (double g : gammas) KernelParams{g}.Validate();
  for (double c : cs) {
    if (!(c > 0.0) || !std::isfinite(c)) throw InputError("grid spec: C must be positive");
  }
  if (folds < 2) throw InputError("grid spec: folds must be at least 2");
}

GridSpec GridSpec::FromJson(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw InputError(std::string("grid spec: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("grid spec: expected a JSON object");
  GridSpec spec = Default();
  try {
    if (j.contains("gammas")) spec.gammas = j["gammas"].get<std::vector<double>>();
    if (j.contains("log2_gammas")) {
      spec.gammas.clear();
      for (double e : j["log2_gammas"].get<std::vector<double>>()) {
        spec.gammas.push_back(std::exp2(e));
      }
    }
    if (j.contains("cs")) spec.cs = j["cs"].get<std::vector<double>>();
    if (j.contains("configs")) {
      spec.configs.clear();
      for (const std::string &name : j["configs"].get<std::vector<std::string>>()) {
        auto v = ParseFeatureVariant(name);
        if (!v) throw InputError("grid spec: unknown config \"" + name + "\"");
        spec.configs.push_back(*v);
      }
    }
    if (j.contains("weightings")) {
      spec.weightings.clear();
      for (const std::string &name : j["weightings"].get<std::vector<std::string>>()) {
        spec.weightings.push_back(ParseClassWeighting(name));
      }
    }
    if (j.contains("folds")) spec.folds = j["folds"].get<std::size_t>();
    if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
  } catch (const json::exception &e) {
    throw InputError(std::string("grid spec: ") + e.what());
  }
  spec.Validate();
  return spec;
}

std::string GridSpec::ToJson() const {
  json configs_json = json::array();
  for (FeatureVariant v : SortedUnique(configs)) {
    configs_json.push_back(std::string(FeatureVariantName(v)));
  }
  json weightings_json = json::array();
  for (ClassWeighting w : SortedUnique(weightings)) {
    weightings_json.push_back(std::string(ClassWeightingName(w)));
  }
  json gammas_json = json::array();
  for (double g : SortedUnique(gammas)) gammas_json.push_back(RoundSignificant(g));
  json cs_json = json::array();
  for (double c : SortedUnique(cs)) cs_json.push_back(RoundSignificant(c));
  json j = {{"gammas", gammas_json},   {"cs", cs_json},
            {"configs", configs_json}, {"weightings", weightings_json},
            {"folds", folds},          {"seed", seed}};
  return j.dump();
}

std::string GridSearchReport::ToJson() const {
  json cells_json = json::array();
  for (const GridCell &cell : cells) cells_json.push_back(CellToJson(cell));
  json j = {{"cells", cells_json},
            {"best", best},
            {"seed", seed},
            {"spec", json::parse(spec.ToJson())}};
  return j.dump(1) + "\n";
}

std::size_t SelectBest(std::span<const GridCell> cells) {
  if (cells.empty()) throw InputError("grid search produced no cells");
  auto better = [](const GridCell &a, const GridCell &b) {
    if (a.metrics.f1 != b.metrics.f1) return a.metrics.f1 > b.metrics.f1;
    if (a.metrics.recall != b.metrics.recall) return a.metrics.recall > b.metrics.recall;
    if (a.c != b.c) return a.c < b.c;
    if (a.gamma != b.gamma) return a.gamma < b.gamma;
    if (a.config != b.config) return a.config < b.config;
    return a.weighting < b.weighting;
  };
  std::size_t best = 0;
  for (std::size_t i = 1; i < cells.size(); ++i) {
    if (better(cells[i], cells[best])) best = i;
  }
  return best;
}

GridSearchReport GridSearch(const Corpus &corpus, const GridSpec &spec,
                            const GridOptions &options, const StopwordList &stopwords) {
  spec.Validate();
  const std::vector<const Sentence *> sentences = RequireLabeled(corpus);
  const std::vector<int> labels = SentenceSigns(sentences);
  const Folds folds = KFoldSplit(sentences.size(), spec.folds,
                                 std::span<const int>(labels), spec.seed);

  const auto configs = SortedUnique(spec.configs);
  const auto weightings = SortedUnique(spec.weightings);
  const auto cs = SortedUnique(spec.cs);
  const auto gammas = SortedUnique(spec.gammas);

  std::vector<std::vector<FoldData>> fold_data;
  for (FeatureVariant v : configs) {
    fold_data.push_back(
        PrepareFolds(corpus, sentences, folds, v, options.per_fold_lexicon, stopwords));
  }

  GridSearchReport report;
  report.seed = spec.seed;
  report.spec = spec;
  std::vector<std::size_t> cell_config;
  for (std::size_t ci = 0; ci < configs.size(); ++ci) {
    for (ClassWeighting w : weightings) {
      for (double c : cs) {
        for (double g : gammas) {
          report.cells.push_back({configs[ci], w, c, g, {}});
          cell_config.push_back(ci);
        }
      }
    }
  }

  std::vector<std::exception_ptr> errors(report.cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < report.cells.size(); i = next++) {
      GridCell &cell = report.cells[i];
      TrainConfig cfg;
      cfg.c = cell.c;
      cfg.weighting = cell.weighting;
      cfg.kkt_tolerance = options.kkt_tolerance;
      cfg.seed = spec.seed;
      try {
        cell.metrics = RunFolds(fold_data[cell_config[i]], KernelParams{cell.gamma}, cfg);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(options.jobs, 1, report.cells.size());
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  for (const std::exception_ptr &e : errors) {
    if (e) std::rethrow_exception(e);
  }
  report.best = SelectBest(report.cells);
  return report;
}

TrainedClassifier TrainClassifier(const Corpus &corpus, FeatureVariant variant,
                                  const KernelParams &kernel, const TrainConfig &cfg,
                                  const StopwordList &stopwords) {
  const std::vector<const Sentence *> sentences = RequireLabeled(corpus);
  CueLexicon lexicon = BuildLexicon(CollectCues(corpus), variant, stopwords);
  TrainingSet data;
  data.dimension = lexicon.size();
  for (const Sentence *s : sentences) {
    data.vectors.push_back(FeaturizeSentence(*s, lexicon, stopwords));
    data.labels.push_back(ToSign(*s->gold_label));
  }
  SvmModel model = TrainSmo(data, kernel, cfg).with_lexicon_hash(lexicon.Hash());
  return {std::move(lexicon), std::move(model)};
}

void CheckModelLexicon(const SvmModel &model, const CueLexicon &lexicon) {
  if (model.lexicon_hash() != lexicon.Hash()) {
    throw InputError("model/lexicon hash mismatch: model expects " +
                     (model.lexicon_hash().empty() ? std::string("<none>")
                                                   : model.lexicon_hash()) +
                     ", lexicon is " + lexicon.Hash());
  }
  if (model.dim() != lexicon.size()) {
    throw InputError("model dimension differs from lexicon size");
  }
}

CorpusPredictions PredictCorpus(const SvmModel &model, const CueLexicon &lexicon,
                                const Corpus &corpus, const StopwordList &stopwords) {
  CheckModelLexicon(model, lexicon);
  CorpusPredictions out;
  for (const FeaturizedSentence &row : FeaturizeCorpus(corpus, lexicon, stopwords)) {
    const int sign = model.predict(ToSparse(row.features, lexicon.size()));
    out.ids.push_back(row.features.sentence_id);
    out.predicted.push_back(sign > 0 ? Certainty::kUncertain : Certainty::kCertain);
    out.gold.push_back(row.gold_label);
    out.lengths.push_back(row.length);
  }
  return out;
}

EvalMetrics EvaluateTransfer(const SvmModel &model, const CueLexicon &lexicon,
                             const Corpus &corpus, const StopwordList &stopwords) {
  const CorpusPredictions p = PredictCorpus(model, lexicon, corpus, stopwords);
  std::vector<int> predicted;
  std::vector<int> gold;
  for (std::size_t i = 0; i < p.ids.size(); ++i) {
    if (!p.gold[i]) continue;
    predicted.push_back(ToSign(p.predicted[i]));
    gold.push_back(ToSign(*p.gold[i]));
  }
  if (gold.empty()) throw InputError("evaluation corpus has no gold labels");
  return ScoreLabels(predicted, gold);
}

double ClassifyCorpusUncertainty(const SvmModel &model, const CueLexicon &lexicon,
                                 const Corpus &corpus, const StopwordList &stopwords) {
  const CorpusPredictions p = PredictCorpus(model, lexicon, corpus, stopwords);
  if (p.predicted.empty()) throw InputError("empty corpus");
  return PercentUncertain(p.predicted);
}

AgreementReport CohensKappa(std::span<const Certainty> a, std::span<const Certainty> b) {
  if (a.size() != b.size()) throw InputError("kappa: label lists differ in length");
  if (a.empty()) throw InputError("kappa: empty label lists");
  const double n = static_cast<double>(a.size());
  std::map<Certainty, std::pair<std::size_t, std::size_t>> marginals;
  AgreementReport r;
  r.n_items = a.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) ++r.n_agreed;
    ++marginals[a[i]].first;
    ++marginals[b[i]].second;
  }
  r.observed_agreement = static_cast<double>(r.n_agreed) / n;
  for (const auto &[label, counts] : marginals) {
    r.expected_agreement +=
        (static_cast<double>(counts.first) / n) * (static_cast<double>(counts.second) / n);
  }
  if (r.expected_agreement >= 1.0) {
    r.kappa = 1.0;
  } else {
    r.kappa = (r.observed_agreement - r.expected_agreement) / (1.0 - r.expected_agreement);
  }
  return r;
}

ProportionTest ProportionTTest(std::span<const double> x1, std::span<const double> x2,
                               TTestVariant variant) {
  if (x1.size() < 2 || x2.size() < 2) {
    throw InputError("t-test: each sample needs at least two observations");
  }
  auto moments = [](std::span<const double> x) {
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return std::pair{mean, ss / static_cast<double>(x.size() - 1)};
  };
  const auto [m1, v1] = moments(x1);
  const auto [m2, v2] = moments(x2);
  const double n1 = static_cast<double>(x1.size());
  const double n2 = static_cast<double>(x2.size());

  ProportionTest r;
  r.mean1 = m1;
  r.mean2 = m2;
  double se2;
  if (variant == TTestVariant::kWelch) {
    const double a = v1 / n1;
    const double b = v2 / n2;
    se2 = a + b;
    const double denom = a * a / (n1 - 1.0) + b * b / (n2 - 1.0);
    r.df = denom > 0.0 ? se2 * se2 / denom : n1 + n2 - 2.0;
  } else {
    const double pooled = ((n1 - 1.0) * v1 + (n2 - 1.0) * v2) / (n1 + n2 - 2.0);
    se2 = pooled * (1.0 / n1 + 1.0 / n2);
    r.df = n1 + n2 - 2.0;
  }

  if (se2 == 0.0) {
    if (m1 == m2) {
      r.t_stat = 0.0;
      r.p_value = 1.0;
    } else {
      r.t_stat = m1 > m2 ? std::numeric_limits<double>::infinity()
                         : -std::numeric_limits<double>::infinity();
      r.p_value = 0.0;
      r.degenerate = true;
    }
  } else {
    r.t_stat = (m1 - m2) / std::sqrt(se2);
    const double x = r.df / (r.df + r.t_stat * r.t_stat);
    r.p_value = std::clamp(boost::math::ibeta(0.5 * r.df, 0.5, x), 0.0, 1.0);
  }
  r.significant_at_05 = r.p_value < 0.05;
  return r;
}

std::vector<double> UncertaintyIndicators(std::span<const Certainty> labels) {
  std::vector<double> out;
  for (Certainty label : labels) {
    if (label == Certainty::kNotASentence) continue;
    out.push_back(label == Certainty::kUncertain ? 1.0 : 0.0);
  }
  return out;
}

ErrorLengthReport ErrorLengthAnalysis(std::span<const Certainty> predicted,
                                      std::span<const Certainty> gold,
                                      std::span<const std::size_t> lengths) {
  if (predicted.size() != gold.size() || gold.size() != lengths.size()) {
    throw InputError("error length analysis: misaligned inputs");
  }
  double sums[4] = {0, 0, 0, 0};
  std::size_t counts[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i] == Certainty::kNotASentence || predicted[i] == Certainty::kNotASentence) {
      throw InputError("error length analysis: not_a_sentence is not a binary label");
    }
    const bool p = predicted[i] == Certainty::kUncertain;
    const bool g = gold[i] == Certainty::kUncertain;
    const int cell = p ? (g ? 0 : 1) : (g ? 2 : 3);
    sums[cell] += static_cast<double>(lengths[i]);
    ++counts[cell];
  }
  auto mean = [&](int cell) -> std::optional<double> {
    if (counts[cell] == 0) return std::nullopt;
    return sums[cell] / static_cast<double>(counts[cell]);
  };
  ErrorLengthReport r;
  r.tp = mean(0);
  r.fp = mean(1);
  r.fn = mean(2);
  r.tn = mean(3);
  r.tp_count = counts[0];
  r.fp_count = counts[1];
  r.fn_count = counts[2];
  r.tn_count = counts[3];
  return r;
}

std::string MetricsTable(std::span<const std::pair<std::string, EvalMetrics>> rows,
                         std::string_view title) {
  std::size_t width = 7;
  for (const auto &[name, m] : rows) width = std::max(width, name.size());
  std::string out(title);
  out += '\n';
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-*s  %6s  %6s  %6s\n", static_cast<int>(width),
                "Dataset", "P", "R", "F");
  out += buf;
  for (const auto &[name, m] : rows) {
    std::snprintf(buf, sizeof(buf), "%-*s  %6.1f  %6.1f  %6.1f\n", static_cast<int>(width),
                  name.c_str(), 100.0 * m.precision, 100.0 * m.recall, 100.0 * m.f1);
    out += buf;
  }
  return out;
}

}  // namespace hedgekit
