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

#ifndef HEDGEKIT_SVM_H_
#define HEDGEKIT_SVM_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hedgekit {

struct SparseEntry {
  std::uint32_t index = 0;
  double value = 0.0;

  friend bool operator==(const SparseEntry &, const SparseEntry &) = default;
};

// Sparse real vector in a space of known dimension. Entries are sorted by
// index, unique, and never zero.
struct SparseVector {
  std::size_t dim = 0;
  std::vector<SparseEntry> entries;

  static SparseVector FromPairs(std::size_t dim,
                                std::vector<SparseEntry> entries);
  double squared_norm() const;

  friend bool operator==(const SparseVector &, const SparseVector &) = default;
};

double Dot(const SparseVector &x, const SparseVector &z);

struct KernelParams {
  double gamma = 1.0;

  void Validate() const;
};

// exp(-gamma * |x - z|^2). Throws InputError on dimension mismatch.
double RbfKernel(const SparseVector &x, const SparseVector &z,
                 const KernelParams &params);

enum class ClassWeighting { kUniform, kProportional };

std::string_view ClassWeightingName(ClassWeighting weighting);
ClassWeighting ParseClassWeighting(std::string_view name);

struct TrainConfig {
  double c = 1.0;
  ClassWeighting weighting = ClassWeighting::kUniform;
  // Stop once the maximal violating pair gap drops to this value.
  double kkt_tolerance = 1e-3;
  // Iteration budget, in units of the training set size.
  std::size_t max_epochs = 10000;
  // Recorded for provenance. The solver has no randomized component.
  std::uint64_t seed = 42;
  // Upper bound on cached kernel rows.
  std::size_t cache_rows = 4096;
  // Record the dual objective after every pair update.
  bool trace_objective = false;

  void Validate() const;
};

// Labels are +1 (Uncertain) and -1 (Certain).
struct TrainingSet {
  std::vector<SparseVector> vectors;
  std::vector<int> labels;
  std::size_t dimension = 0;

  std::size_t size() const { return vectors.size(); }
  std::size_t positives() const;
  // Throws InputError on length mismatch, bad labels, foreign dimensions or
  // a missing class.
  void Validate() const;
};

struct ClassCosts {
  double positive = 1.0;
  double negative = 1.0;

  double for_label(int label) const { return label > 0 ? positive : negative; }
};

// Uniform: both classes pay c. Proportional: each class pays
// c * n / (2 * n_class), so the rarer class is costlier.
ClassCosts ComputeClassCosts(const TrainingSet &data, const TrainConfig &cfg);

// Immutable trained classifier; safe to share between threads.
class SvmModel {
 public:
  SvmModel() = default;
  SvmModel(std::vector<SparseVector> support_vectors,
           std::vector<double> dual_coefs, double bias, KernelParams kernel,
           ClassCosts costs, std::size_t dim, std::string lexicon_hash = {});

  // sum_i coef_i K(sv_i, x) + bias.
  double decision_value(const SparseVector &x) const;
  // +1 (Uncertain) iff decision_value >= 0.
  int predict(const SparseVector &x) const;

  const std::vector<SparseVector> &support_vectors() const { return support_vectors_; }
  const std::vector<double> &dual_coefs() const { return dual_coefs_; }
  double bias() const { return bias_; }
  const KernelParams &kernel() const { return kernel_; }
  const ClassCosts &class_costs() const { return costs_; }
  std::size_t dim() const { return dim_; }
  const std::string &lexicon_hash() const { return lexicon_hash_; }

  SvmModel with_lexicon_hash(std::string hash) const;

  // {"gamma", "bias", "c_pos", "c_neg", "svs": [{"counts", "coef"}], "dim",
  // "lexicon_hash"}.
  std::string ToJson() const;
  static SvmModel FromJson(std::string_view json_text);

 private:
  std::vector<SparseVector> support_vectors_;
  std::vector<double> dual_coefs_;
  std::vector<double> sv_norms_;
  double bias_ = 0.0;
  KernelParams kernel_;
  ClassCosts costs_;
  std::size_t dim_ = 0;
  std::string lexicon_hash_;
};

struct TrainResult {
  SvmModel model;
  // One multiplier per training point.
  std::vector<double> alphas;
  double objective = 0.0;
  std::size_t iterations = 0;
  // Final maximal violating pair gap.
  double max_violation = 0.0;
  // Dual objective after each update, when requested.
  std::vector<double> objective_trace;
};

// Solves max sum(a) - 1/2 sum_ij a_i a_j y_i y_j K_ij subject to
// sum(a_i y_i) = 0 and 0 <= a_i <= C_i with pairwise SMO updates.
// Throws ConvergenceError when the iteration budget runs out.
TrainResult TrainSmoDetailed(const TrainingSet &data, const KernelParams &kernel,
                             const TrainConfig &cfg);
SvmModel TrainSmo(const TrainingSet &data, const KernelParams &kernel,
                  const TrainConfig &cfg);

// Dual objective recomputed from scratch in O(n^2).
double DualObjective(const TrainingSet &data, const KernelParams &kernel,
                     const std::vector<double> &alphas);

// Largest per-point KKT violation of `alphas` under the decision function of
// `model`, evaluated independently of the solver's internal state.
double KktViolation(const TrainingSet &data, const SvmModel &model,
                    const std::vector<double> &alphas);

}  // namespace hedgekit

#endif  // HEDGEKIT_SVM_H_
