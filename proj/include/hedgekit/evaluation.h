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

#ifndef HEDGEKIT_EVALUATION_H_
#define HEDGEKIT_EVALUATION_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hedgekit/corpus.h"
#include "hedgekit/lexicon.h"
#include "hedgekit/svm.h"

namespace hedgekit {

// Confusion counts and scores for the Uncertain class.
struct EvalMetrics {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // Set when the corresponding denominator was zero and the score is 0 by
  // convention.
  bool precision_undefined = false;
  bool recall_undefined = false;

  static EvalMetrics FromCounts(std::size_t tp, std::size_t fp, std::size_t fn,
                                std::size_t tn);
  std::size_t total() const { return tp + fp + fn + tn; }
  EvalMetrics &operator+=(const EvalMetrics &other);
};

// Labels are +1 / -1.
EvalMetrics ScoreLabels(std::span<const int> predicted, std::span<const int> gold);

std::string MetricsToJson(const EvalMetrics &m);

using Folds = std::vector<std::vector<std::size_t>>;

// Partitions [0, n) into k folds whose sizes differ by at most one. With
// labels, every class is spread evenly over the folds. Fold contents are
// sorted ascending; the assignment depends only on `seed`.
Folds KFoldSplit(std::size_t n, std::size_t k,
                 std::optional<std::span<const int>> labels, std::uint64_t seed);

SparseVector ToSparse(const FeatureVector &fv, std::size_t dim);

// Sentences with a Certain/Uncertain gold label, as an SVM training set.
struct LabeledData {
  TrainingSet set;
  std::vector<std::string> ids;
  std::vector<std::size_t> lengths;
};

LabeledData ToLabeledData(std::span<const FeaturizedSentence> rows, std::size_t dim);

struct CvOptions {
  std::size_t folds = 5;
  std::uint64_t seed = 42;
  bool stratified = true;
  // Rebuild the lexicon from the training folds' cues in every fold instead
  // of once from the whole corpus.
  bool per_fold_lexicon = false;
};

// Train on k-1 folds, predict the held out fold, pool counts over folds.
EvalMetrics CrossValidateData(const TrainingSet &data, const Folds &folds,
                              const KernelParams &kernel, const TrainConfig &cfg);

EvalMetrics CrossValidate(const Corpus &corpus, FeatureVariant variant,
                          const KernelParams &kernel, const TrainConfig &cfg,
                          const CvOptions &options,
                          const StopwordList &stopwords = StopwordList::Default());

struct GridSpec {
  std::vector<double> gammas;
  std::vector<double> cs;
  std::vector<FeatureVariant> configs;
  std::vector<ClassWeighting> weightings;
  std::size_t folds = 5;
  std::uint64_t seed = 42;

  // gamma in {2^-9, ..., 2^4}, C in {1, 10, 20, ..., 150}, every feature
  // variant, both weightings, five folds.
  static GridSpec Default();
  // Throws InputError on empty sets or non-positive values.
  void Validate() const;
  std::size_t cell_count() const {
    return gammas.size() * cs.size() * configs.size() * weightings.size();
  }

  // Missing keys fall back to Default().
  static GridSpec FromJson(std::string_view json_text);
  std::string ToJson() const;
};

struct GridCell {
  FeatureVariant config = FeatureVariant::kCuesOnly;
  ClassWeighting weighting = ClassWeighting::kUniform;
  double c = 1.0;
  double gamma = 1.0;
  EvalMetrics metrics;
};

struct GridSearchReport {
  std::vector<GridCell> cells;
  std::size_t best = 0;
  std::uint64_t seed = 0;
  GridSpec spec;

  const GridCell &best_cell() const { return cells.at(best); }
  // Cells sorted by (config, weighting, c, gamma); reals at six significant
  // digits.
  std::string ToJson() const;
};

// Highest f1, then higher recall, smaller C, smaller gamma, earlier config,
// earlier weighting.
std::size_t SelectBest(std::span<const GridCell> cells);

struct GridOptions {
  std::size_t jobs = 1;
  bool per_fold_lexicon = false;
  double kkt_tolerance = 1e-3;
};

GridSearchReport GridSearch(const Corpus &corpus, const GridSpec &spec,
                            const GridOptions &options = {},
                            const StopwordList &stopwords = StopwordList::Default());

struct TrainedClassifier {
  CueLexicon lexicon;
  SvmModel model;
};

// Lexicon from every cue of `corpus`, model on every labeled sentence; the
// model carries the lexicon hash.
TrainedClassifier TrainClassifier(const Corpus &corpus, FeatureVariant variant,
                                  const KernelParams &kernel, const TrainConfig &cfg,
                                  const StopwordList &stopwords = StopwordList::Default());

struct CorpusPredictions {
  std::vector<std::string> ids;
  std::vector<Certainty> predicted;
  std::vector<std::optional<Certainty>> gold;
  std::vector<std::size_t> lengths;
};

// Throws InputError unless the model was trained on this lexicon.
void CheckModelLexicon(const SvmModel &model, const CueLexicon &lexicon);

CorpusPredictions PredictCorpus(const SvmModel &model, const CueLexicon &lexicon,
                                const Corpus &corpus,
                                const StopwordList &stopwords = StopwordList::Default());

// Scores the model on every gold-labeled proper sentence of `corpus`.
EvalMetrics EvaluateTransfer(const SvmModel &model, const CueLexicon &lexicon,
                             const Corpus &corpus,
                             const StopwordList &stopwords = StopwordList::Default());

// Fraction of proper sentences predicted Uncertain.
double ClassifyCorpusUncertainty(const SvmModel &model, const CueLexicon &lexicon,
                                 const Corpus &corpus,
                                 const StopwordList &stopwords = StopwordList::Default());

struct AgreementReport {
  std::size_t n_items = 0;
  std::size_t n_agreed = 0;
  double observed_agreement = 0.0;
  double expected_agreement = 0.0;
  double kappa = 0.0;
};

AgreementReport CohensKappa(std::span<const Certainty> a, std::span<const Certainty> b);

enum class TTestVariant { kWelch, kPooled };

struct ProportionTest {
  double mean1 = 0.0;
  double mean2 = 0.0;
  double t_stat = 0.0;
  double df = 0.0;
  double p_value = 1.0;
  bool significant_at_05 = false;
  // Both samples have zero variance but different means; t is infinite and
  // p is 0 by convention.
  bool degenerate = false;
};

// Two-sample t-test treating each indicator as a real observation.
ProportionTest ProportionTTest(std::span<const double> x1, std::span<const double> x2,
                               TTestVariant variant = TTestVariant::kWelch);

// 1.0 for Uncertain, 0.0 for Certain; NotASentence is skipped.
std::vector<double> UncertaintyIndicators(std::span<const Certainty> labels);

struct ErrorLengthReport {
  std::optional<double> tp;
  std::optional<double> fp;
  std::optional<double> fn;
  std::optional<double> tn;
  std::size_t tp_count = 0;
  std::size_t fp_count = 0;
  std::size_t fn_count = 0;
  std::size_t tn_count = 0;
};

// Mean sentence length in each confusion cell; empty cells stay unset.
ErrorLengthReport ErrorLengthAnalysis(std::span<const Certainty> predicted,
                                      std::span<const Certainty> gold,
                                      std::span<const std::size_t> lengths);

// Aligned P / R / F table, one row per (label, metrics).
std::string MetricsTable(std::span<const std::pair<std::string, EvalMetrics>> rows,
                         std::string_view title);

}  // namespace hedgekit

#endif  // HEDGEKIT_EVALUATION_H_
