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

#ifndef HEDGEKIT_LEXICON_H_
#define HEDGEKIT_LEXICON_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "hedgekit/corpus.h"

namespace hedgekit {

class StopwordList {
 public:
  StopwordList(std::initializer_list<std::string> words,
               std::string version = "custom");
  StopwordList(std::vector<std::string> words, std::string version);

  // The list shipped in data/stopwords-en-v1.txt.
  static const StopwordList &Default();
  // One word per line; '#' starts a comment line.
  static StopwordList Parse(std::string_view contents, std::string version);

  bool contains(std::string_view word) const;
  const std::string &version() const { return version_; }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
  std::string version_;
};

// Lowercase tokens with punctuation and stopwords removed.
struct TokenSequence {
  std::vector<std::string> tokens;
};

TokenSequence Normalize(std::string_view text, const StopwordList &stopwords);

// Which n-grams of each cue phrase become features in addition to the
// whole cue.
enum class FeatureVariant {
  kCuesOnly,
  kCuesUni,
  kCuesBi,
  kCuesTri,
  kCuesUniBiTri,
  kCuesBiTri,
};

inline constexpr std::array<FeatureVariant, 6> kAllFeatureVariants = {
    FeatureVariant::kCuesOnly,     FeatureVariant::kCuesUni,
    FeatureVariant::kCuesBi,       FeatureVariant::kCuesTri,
    FeatureVariant::kCuesUniBiTri, FeatureVariant::kCuesBiTri,
};

std::string_view FeatureVariantName(FeatureVariant variant);
std::optional<FeatureVariant> ParseFeatureVariant(std::string_view name);

using NGram = std::vector<std::string>;

class CueLexicon {
 public:
  // `entries` in index order. Throws InputError on duplicates or tokens
  // that could not come out of Normalize.
  CueLexicon(FeatureVariant variant, std::vector<NGram> entries,
             std::string source_tag = {});

  static CueLexicon FromJson(std::string_view json_text);
  // {"config": name, "entries": [[tok, ...], ...]} in index order.
  std::string ToJson() const;
  // Digest of ToJson(); binds trained models to this feature space.
  std::string Hash() const;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<NGram> &entries() const { return entries_; }
  FeatureVariant variant() const { return variant_; }
  const std::string &source_tag() const { return source_tag_; }
  std::optional<std::uint32_t> column(const NGram &entry) const;
  // Lookup by tokens joined with single spaces.
  std::optional<std::uint32_t> column_of_key(const std::string &key) const;
  // Distinct entry lengths, ascending.
  const std::vector<std::size_t> &lengths() const { return lengths_; }

  // Cues dropped by BuildLexicon because they normalized to nothing.
  std::size_t skipped_cues() const { return skipped_cues_; }
  void set_skipped_cues(std::size_t n) { skipped_cues_ = n; }

 private:
  FeatureVariant variant_;
  std::vector<NGram> entries_;
  std::string source_tag_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<std::size_t> lengths_;
  std::size_t skipped_cues_ = 0;
};

// Normalizes each cue and collects the whole cue plus the n-grams the
// variant asks for. Entries are indexed in lexicographic order. Throws
// InputError if `cues` is empty or nothing survives normalization.
CueLexicon BuildLexicon(std::span<const std::string> cues,
                        FeatureVariant variant, const StopwordList &stopwords,
                        std::string source_tag = {});

// Cue phrases of every annotated sentence, in corpus order.
std::vector<std::string> CollectCues(const Corpus &corpus);

struct FeatureVector {
  std::string sentence_id;
  // (column, count) sorted by column; counts are >= 1.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> counts;

  std::uint64_t total() const;
};

// Counts every contiguous, possibly overlapping, occurrence of every entry.
FeatureVector Featurize(const TokenSequence &sentence, const CueLexicon &lexicon,
                        std::string sentence_id = {});

struct FeaturizedSentence {
  FeatureVector features;
  std::optional<Certainty> gold_label;
  // Whitespace tokens of the raw text.
  std::size_t length = 0;
};

// Proper sentences only (NotASentence excluded), in corpus order.
std::vector<FeaturizedSentence> FeaturizeCorpus(const Corpus &corpus,
                                                const CueLexicon &lexicon,
                                                const StopwordList &stopwords);

// JSONL {"sid": id, "counts": {"j": c}, "label": -1 | 1 | null}.
std::string FeatureDumpJsonl(std::span<const FeaturizedSentence> rows);

}  // namespace hedgekit

#endif  // HEDGEKIT_LEXICON_H_
