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

#ifndef HEDGEKIT_TESTS_SUPPORT_SYNTHETIC_H_
#define HEDGEKIT_TESTS_SUPPORT_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hedgekit/corpus.h"

namespace hedgekit::testing {

// Uncertain sentences carry exactly one planted cue from a private
// inventory and Certain sentences are pure filler, so the two classes are
// separable by construction.
struct PlantedSpec {
  std::size_t sentences = 2000;
  double uncertain_rate = 0.22;
  std::size_t cue_count = 50;
  // Distinct prefixes give disjoint cue inventories and vocabularies.
  std::string cue_prefix = "hedge";
  std::string filler_prefix = "w";
  std::size_t filler_vocab = 400;
  std::size_t min_length = 8;
  std::size_t max_length = 30;
  std::size_t sentences_per_doc = 10;
  std::string source = "synthetic";
  std::string id_prefix = "s";
  std::uint64_t seed = 1;
};

// Cue k has 1 + k % 3 tokens.
std::vector<std::string> CueInventory(const std::string &prefix, std::size_t count);

Corpus GeneratePlantedCorpus(const PlantedSpec &spec);

// Builds a sentence from tokens, marking the tokens at [cue_begin, cue_end)
// as one cue span.
Sentence MakeSentence(const std::string &id, const std::vector<std::string> &tokens,
                      std::optional<Certainty> label, std::size_t cue_begin = 0,
                      std::size_t cue_end = 0);

}  // namespace hedgekit::testing

#endif  // HEDGEKIT_TESTS_SUPPORT_SYNTHETIC_H_
