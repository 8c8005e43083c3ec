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

#include "hedgekit/svm.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <memory>
#include <unordered_map>

#include "hedgekit/errors.h"
#include "json.hpp"

namespace hedgekit {
namespace {

using nlohmann::json;

// Curvature substitute for non-positive second derivatives along a pair.
constexpr double kTau = 1e-12;
// Multipliers within this distance of a bound are snapped onto it.
constexpr double kBoundEpsilon = 1e-12;
constexpr double kSupportThreshold = 1e-12;

double SquaredDistance(const SparseVector &x, double x_norm, const SparseVector &z,
                       double z_norm) {
  return std::max(0.0, x_norm + z_norm - 2.0 * Dot(x, z));
}

// LRU cache of kernel matrix rows. Rows are handed out as shared pointers
// so an eviction never invalidates a row still in use.
class KernelRows {
 public:
  KernelRows(const TrainingSet &data, const KernelParams &params,
             std::size_t capacity)
      : data_(data), gamma_(params.gamma), capacity_(std::max<std::size_t>(capacity, 2)) {
    norms_.reserve(data.size());
    for (const SparseVector &v : data.vectors) norms_.push_back(v.squared_norm());
  }

  std::shared_ptr<const std::vector<double>> row(std::size_t i) {
    auto it = rows_.find(i);
    if (it != rows_.end()) {
      recency_.splice(recency_.begin(), recency_, it->second.position);
      return it->second.values;
    }
    auto values = std::make_shared<std::vector<double>>(data_.size());
    const SparseVector &xi = data_.vectors[i];
    for (std::size_t j = 0; j < data_.size(); ++j) {
      (*values)[j] = std::exp(
          -gamma_ * SquaredDistance(xi, norms_[i], data_.vectors[j], norms_[j]));
    }
    if (rows_.size() >= capacity_) {
      rows_.erase(recency_.back());
      recency_.pop_back();
    }
    recency_.push_front(i);
    rows_.emplace(i, Slot{values, recency_.begin()});
    return values;
  }

 private:
  struct Slot {
    std::shared_ptr<const std::vector<double>> values;
    std::list<std::size_t>::iterator position;
  };

  const TrainingSet &data_;
  double gamma_;
  std::size_t capacity_;
  std::vector<double> norms_;
  std::list<std::size_t> recency_;
  std::unordered_map<std::size_t, Slot> rows_;
};

json CountsToJson(const SparseVector &v) {
  json counts = json::object();
  for (const SparseEntry &e : v.entries) {
    const std::string key = std::to_string(e.index);
    if (std::floor(e.value) == e.value && std::fabs(e.value) < 9.0e15) {
      counts[key] = static_cast<std::int64_t>(e.value);
    } else {
      counts[key] = e.value;
    }
  }
  return counts;
}

double RequireNumber(const json &j, const char *key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number()) {
    throw InputError(std::string("model: missing numeric field \"") + key + "\"");
  }
  return it->get<double>();
}

}  // namespace

SparseVector SparseVector::FromPairs(std::size_t dim, std::vector<SparseEntry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const SparseEntry &a, const SparseEntry &b) { return a.index < b.index; });
  SparseVector v;
  v.dim = dim;
  for (const SparseEntry &e : entries) {
    if (e.index >= dim) {
      throw InputError("sparse index " + std::to_string(e.index) +
                       " outside dimension " + std::to_string(dim));
    }
    if (!v.entries.empty() && v.entries.back().index == e.index) {
      v.entries.back().value += e.value;
    } else {
      v.entries.push_back(e);
    }
  }
  std::erase_if(v.entries, [](const SparseEntry &e) { return e.value == 0.0; });
  return v;
}

double SparseVector::squared_norm() const {
  double s = 0.0;
  for (const SparseEntry &e : entries) s += e.value * e.value;
  return s;
}

double Dot(const SparseVector &x, const SparseVector &z) {
  double s = 0.0;
  auto a = x.entries.begin();
  auto b = z.entries.begin();
  while (a != x.entries.end() && b != z.entries.end()) {
    if (a->index == b->index) {
      s += a->value * b->value;
      ++a;
      ++b;
    } else if (a->index < b->index) {
      ++a;
    } else {
      ++b;
    }
  }
  return s;
}

void KernelParams::Validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw InputError("kernel gamma must be positive and finite");
  }
}

double RbfKernel(const SparseVector &x, const SparseVector &z,
                 const KernelParams &params) {
  if (x.dim != z.dim) {
    throw InputError("rbf_kernel: dimension mismatch (" + std::to_string(x.dim) +
                     " vs " + std::to_string(z.dim) + ")");
  }
  params.Validate();
  return std::exp(-params.gamma *
                  SquaredDistance(x, x.squared_norm(), z, z.squared_norm()));
}

std::string_view ClassWeightingName(ClassWeighting weighting) {
  return weighting == ClassWeighting::kUniform ? "uniform" : "proportional";
}

ClassWeighting ParseClassWeighting(std::string_view name) {
  if (name == "uniform") return ClassWeighting::kUniform;
  if (name == "proportional") return ClassWeighting::kProportional;
  throw InputError("unknown class weighting \"" + std::string(name) + "\"");
}

void TrainConfig::Validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw InputError("C must be positive and finite");
  if (!(kkt_tolerance > 0.0) || kkt_tolerance > 0.1) {
    throw InputError("kkt_tolerance must lie in (0, 0.1]");
  }
  if (max_epochs == 0) throw InputError("max_epochs must be positive");
}

std::size_t TrainingSet::positives() const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
}

void TrainingSet::Validate() const {
  if (vectors.size() != labels.size()) {
    throw InputError("training set: " + std::to_string(vectors.size()) +
                     " vectors but " + std::to_string(labels.size()) + " labels");
  }
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (labels[i] != 1 && labels[i] != -1) {
      throw InputError("training set: label of point " + std::to_string(i) +
                       " is not +1/-1");
    }
    if (vectors[i].dim != dimension) {
      throw InputError("training set: point " + std::to_string(i) +
                       " has the wrong dimension");
    }
    for (const SparseEntry &e : vectors[i].entries) {
      if (e.index >= dimension) {
        throw InputError("training set: point " + std::to_string(i) +
                         " has a column outside the dimension");
      }
    }
  }
  const std::size_t pos = positives();
  if (pos == 0 || pos == labels.size()) {
    throw InputError("training set needs both classes (got " + std::to_string(pos) +
                     " positive of " + std::to_string(labels.size()) + ")");
  }
}

ClassCosts ComputeClassCosts(const TrainingSet &data, const TrainConfig &cfg) {
  if (cfg.weighting == ClassWeighting::kUniform) return {cfg.c, cfg.c};
  const double n = static_cast<double>(data.size());
  const double pos = static_cast<double>(data.positives());
  const double neg = n - pos;
  return {cfg.c * n / (2.0 * pos), cfg.c * n / (2.0 * neg)};
}

SvmModel::SvmModel(std::vector<SparseVector> support_vectors,
                   std::vector<double> dual_coefs, double bias, KernelParams kernel,
                   ClassCosts costs, std::size_t dim, std::string lexicon_hash)
    : support_vectors_(std::move(support_vectors)),
      dual_coefs_(std::move(dual_coefs)),
      bias_(bias),
      kernel_(kernel),
      costs_(costs),
      dim_(dim),
      lexicon_hash_(std::move(lexicon_hash)) {
  if (support_vectors_.size() != dual_coefs_.size()) {
    throw InputError("model: support vector and coefficient counts differ");
  }
  kernel_.Validate();
  for (const SparseVector &sv : support_vectors_) {
    if (sv.dim != dim_) throw InputError("model: support vector dimension mismatch");
    sv_norms_.push_back(sv.squared_norm());
  }
}

double SvmModel::decision_value(const SparseVector &x) const {
  if (x.dim != dim_) {
    throw InputError("decision_value: dimension mismatch (" + std::to_string(x.dim) +
                     " vs " + std::to_string(dim_) + ")");
  }
  const double x_norm = x.squared_norm();
  double sum = 0.0;
  for (std::size_t i = 0; i < support_vectors_.size(); ++i) {
    sum += dual_coefs_[i] *
           std::exp(-kernel_.gamma *
                    SquaredDistance(support_vectors_[i], sv_norms_[i], x, x_norm));
  }
  return sum + bias_;
}

int SvmModel::predict(const SparseVector &x) const {
  return decision_value(x) >= 0.0 ? 1 : -1;
}

SvmModel SvmModel::with_lexicon_hash(std::string hash) const {
  SvmModel copy = *this;
  copy.lexicon_hash_ = std::move(hash);
  return copy;
}

std::string SvmModel::ToJson() const {
  json svs = json::array();
  for (std::size_t i = 0; i < support_vectors_.size(); ++i) {
    svs.push_back({{"counts", CountsToJson(support_vectors_[i])}, {"coef", dual_coefs_[i]}});
  }
  json j = {{"gamma", kernel_.gamma},  {"bias", bias_}, {"c_pos", costs_.positive},
            {"c_neg", costs_.negative}, {"svs", svs},   {"dim", dim_},
            {"lexicon_hash", lexicon_hash_}};
  return j.dump();
}

SvmModel SvmModel::FromJson(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw InputError(std::string("model: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("model: not a JSON object");
  KernelParams kernel{RequireNumber(j, "gamma")};
  const double bias = RequireNumber(j, "bias");
  ClassCosts costs{RequireNumber(j, "c_pos"), RequireNumber(j, "c_neg")};
  if (!j.contains("dim") || !j["dim"].is_number_unsigned()) {
    throw InputError("model: missing field \"dim\"");
  }
  const std::size_t dim = j["dim"].get<std::size_t>();
  std::string hash;
  if (j.contains("lexicon_hash") && j["lexicon_hash"].is_string()) {
    hash = j["lexicon_hash"].get<std::string>();
  }
  if (!j.contains("svs") || !j["svs"].is_array()) throw InputError("model: missing \"svs\"");
  std::vector<SparseVector> svs;
  std::vector<double> coefs;
  for (const json &sv : j["svs"]) {
    if (!sv.is_object() || !sv.contains("counts") || !sv["counts"].is_object()) {
      throw InputError("model: support vector without \"counts\"");
    }
    std::vector<SparseEntry> entries;
    for (const auto &[key, value] : sv["counts"].items()) {
      if (!value.is_number()) throw InputError("model: non-numeric count");
      std::size_t parsed = 0;
      unsigned long column = 0;
      try {
        column = std::stoul(key, &parsed);
      } catch (const std::exception &) {
        parsed = 0;
      }
      if (parsed != key.size()) throw InputError("model: bad column id \"" + key + "\"");
      entries.push_back({static_cast<std::uint32_t>(column), value.get<double>()});
    }
    svs.push_back(SparseVector::FromPairs(dim, std::move(entries)));
    coefs.push_back(RequireNumber(sv, "coef"));
  }
  return SvmModel(std::move(svs), std::move(coefs), bias, kernel, costs, dim, hash);
}

TrainResult TrainSmoDetailed(const TrainingSet &data, const KernelParams &kernel,
                             const TrainConfig &cfg) {
  data.Validate();
  kernel.Validate();
  cfg.Validate();

  const std::size_t n = data.size();
  const std::vector<int> &y = data.labels;
  const ClassCosts costs = ComputeClassCosts(data, cfg);
  std::vector<double> upper(n);
  for (std::size_t t = 0; t < n; ++t) upper[t] = costs.for_label(y[t]);

  std::vector<double> alpha(n, 0.0);
  // Gradient of the minimization form 1/2 a'Qa - sum(a).
  std::vector<double> grad(n, -1.0);
  KernelRows rows(data, kernel, cfg.cache_rows);

  auto can_move_up = [&](std::size_t t) {
    return y[t] > 0 ? alpha[t] < upper[t] : alpha[t] > 0.0;
  };
  auto can_move_down = [&](std::size_t t) {
    return y[t] > 0 ? alpha[t] > 0.0 : alpha[t] < upper[t];
  };
  auto snap = [&](std::size_t t) {
    const double eps = kBoundEpsilon * std::max(1.0, upper[t]);
    if (alpha[t] < eps) alpha[t] = 0.0;
    if (alpha[t] > upper[t] - eps) alpha[t] = upper[t];
  };
  auto objective = [&] {
    double s = 0.0;
    for (std::size_t t = 0; t < n; ++t) s += alpha[t] * (1.0 - grad[t]);
    return 0.5 * s;
  };

  TrainResult result;
  const std::size_t budget =
      cfg.max_epochs > std::numeric_limits<std::size_t>::max() / std::max<std::size_t>(n, 1)
          ? std::numeric_limits<std::size_t>::max()
          : cfg.max_epochs * std::max<std::size_t>(n, 1);

  double gap = 0.0;
  std::size_t iter = 0;
  for (;; ++iter) {
    // Maximal violating pair: i maximizes -y*grad over the points whose
    // y*alpha may grow, j minimizes it over those whose y*alpha may shrink.
    double g_max = -std::numeric_limits<double>::infinity();
    double g_min = std::numeric_limits<double>::infinity();
    std::size_t i = n;
    std::size_t j = n;
    for (std::size_t t = 0; t < n; ++t) {
      const double v = -y[t] * grad[t];
      if (can_move_up(t) && v > g_max) {
        g_max = v;
        i = t;
      }
      if (can_move_down(t) && v < g_min) {
        g_min = v;
        j = t;
      }
    }
    gap = (i == n || j == n) ? 0.0 : g_max - g_min;
    if (gap <= cfg.kkt_tolerance) break;
    if (iter >= budget) {
      throw ConvergenceError("SMO did not converge within " + std::to_string(budget) +
                                 " iterations; final violation " + std::to_string(gap),
                             gap);
    }

    const auto row_i = rows.row(i);
    const auto row_j = rows.row(j);
    const double k_ij = (*row_i)[j];
    const double q_ij = y[i] * y[j] * k_ij;
    const double c_i = upper[i];
    const double c_j = upper[j];
    const double old_i = alpha[i];
    const double old_j = alpha[j];

    if (y[i] != y[j]) {
      double curvature = (*row_i)[i] + (*row_j)[j] + 2.0 * q_ij;
      if (curvature <= 0.0) curvature = kTau;
      const double delta = (-grad[i] - grad[j]) / curvature;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > c_i - c_j) {
        if (alpha[i] > c_i) {
          alpha[i] = c_i;
          alpha[j] = c_i - diff;
        }
      } else if (alpha[j] > c_j) {
        alpha[j] = c_j;
        alpha[i] = c_j + diff;
      }
    } else {
      double curvature = (*row_i)[i] + (*row_j)[j] - 2.0 * q_ij;
      if (curvature <= 0.0) curvature = kTau;
      const double delta = (grad[i] - grad[j]) / curvature;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > c_i) {
        if (alpha[i] > c_i) {
          alpha[i] = c_i;
          alpha[j] = sum - c_i;
        }
      } else if (alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = sum;
      }
      if (sum > c_j) {
        if (alpha[j] > c_j) {
          alpha[j] = c_j;
          alpha[i] = sum - c_j;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = sum;
      }
    }
    snap(i);
    snap(j);

    const double d_i = alpha[i] - old_i;
    const double d_j = alpha[j] - old_j;
    for (std::size_t t = 0; t < n; ++t) {
      grad[t] += y[t] * (y[i] * (*row_i)[t] * d_i + y[j] * (*row_j)[t] * d_j);
    }
    if (cfg.trace_objective) result.objective_trace.push_back(objective());
  }

  // Bias from the free multipliers, or the midpoint of the feasible
  // interval when every multiplier sits at a bound.
  double upper_bound = std::numeric_limits<double>::infinity();
  double lower_bound = -std::numeric_limits<double>::infinity();
  double free_sum = 0.0;
  std::size_t free_count = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    const bool at_upper = alpha[t] >= upper[t];
    const bool at_lower = alpha[t] <= 0.0;
    if (at_upper) {
      if (y[t] < 0) upper_bound = std::min(upper_bound, yg);
      else lower_bound = std::max(lower_bound, yg);
    } else if (at_lower) {
      if (y[t] > 0) upper_bound = std::min(upper_bound, yg);
      else lower_bound = std::max(lower_bound, yg);
    } else {
      free_sum += yg;
      ++free_count;
    }
  }
  const double rho =
      free_count > 0 ? free_sum / static_cast<double>(free_count)
                     : 0.5 * (upper_bound + lower_bound);

  std::vector<SparseVector> svs;
  std::vector<double> coefs;
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > kSupportThreshold) {
      svs.push_back(data.vectors[t]);
      coefs.push_back(y[t] * alpha[t]);
    }
  }

  result.model = SvmModel(std::move(svs), std::move(coefs), -rho, kernel, costs,
                          data.dimension);
  result.objective = objective();
  result.alphas = std::move(alpha);
  result.iterations = iter;
  result.max_violation = gap;
  return result;
}

SvmModel TrainSmo(const TrainingSet &data, const KernelParams &kernel,
                  const TrainConfig &cfg) {
  return TrainSmoDetailed(data, kernel, cfg).model;
}

double DualObjective(const TrainingSet &data, const KernelParams &kernel,
                     const std::vector<double> &alphas) {
  const std::size_t n = data.size();
  double linear = 0.0;
  double quadratic = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    linear += alphas[i];
    if (alphas[i] == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (alphas[j] == 0.0) continue;
      quadratic += alphas[i] * alphas[j] * data.labels[i] * data.labels[j] *
                   RbfKernel(data.vectors[i], data.vectors[j], kernel);
    }
  }
  return linear - 0.5 * quadratic;
}

double KktViolation(const TrainingSet &data, const SvmModel &model,
                    const std::vector<double> &alphas) {
  double worst = 0.0;
  const ClassCosts &costs = model.class_costs();
  for (std::size_t t = 0; t < data.size(); ++t) {
    const double margin = data.labels[t] * model.decision_value(data.vectors[t]);
    const double cap = costs.for_label(data.labels[t]);
    if (alphas[t] < cap) worst = std::max(worst, 1.0 - margin);
    if (alphas[t] > 0.0) worst = std::max(worst, margin - 1.0);
  }
  return worst;
}

}  // namespace hedgekit
