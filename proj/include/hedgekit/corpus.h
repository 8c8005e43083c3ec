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

#ifndef HEDGEKIT_CORPUS_H_
#define HEDGEKIT_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hedgekit {

enum class Certainty { kCertain, kUncertain, kNotASentence };

std::string_view CertaintyName(Certainty label);
std::optional<Certainty> ParseCertainty(std::string_view name);

// Half-open interval of Unicode scalar offsets into a sentence text.
struct CueSpan {
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const CueSpan &, const CueSpan &) = default;
};

struct Sentence {
  std::string id;
  std::string text;
  std::optional<Certainty> gold_label;
  std::vector<CueSpan> cue_spans;
  // Whether the enclosing corpus carries cue annotations at all.
  bool spans_present = false;

  // Everything except sentences annotated as not being proper sentences.
  bool is_proper() const {
    return gold_label != Certainty::kNotASentence;
  }
  bool has_binary_label() const {
    return gold_label == Certainty::kCertain ||
           gold_label == Certainty::kUncertain;
  }
  std::size_t word_count() const;
  std::vector<std::string> cue_texts() const;

  friend bool operator==(const Sentence &, const Sentence &) = default;
};

struct Document {
  std::string id;
  std::string source_tag;
  std::vector<Sentence> sentences;
  // Whitespace tokens over all sentences.
  std::size_t word_count() const;

  friend bool operator==(const Document &, const Document &) = default;
};

using Corpus = std::vector<Document>;

// Validation throws InputError naming the offending sentence id.
void ValidateSentence(const Sentence &sentence);
void ValidateCorpus(const Corpus &corpus);

// JSONL, one document per line. `origin` names the source in messages.
Corpus ParseCorpus(std::string_view jsonl, std::string_view origin = "<input>");
Corpus LoadCorpus(const std::filesystem::path &path);
std::string SerializeCorpus(const Corpus &corpus);
void SaveCorpus(const Corpus &corpus, const std::filesystem::path &path);

std::size_t SentenceCount(const Corpus &corpus);

struct KOfRule {
  std::size_t k = 0;
  std::vector<std::string> terms;
};

struct FilterRules {
  std::vector<std::string> require_any;
  std::optional<KOfRule> require_k_of;
  std::vector<std::string> exclude_any;
  std::optional<std::size_t> max_words;

  // Throws InputError for k == 0, k > |terms| or empty term lists.
  void Validate() const;
};

bool PassesFilter(const Document &doc, const FilterRules &rules);
Corpus FilterDocuments(const Corpus &corpus, const FilterRules &rules);

// Documents over 280 words keep words 51..250 only, re-split into
// sentences; shorter documents are returned unchanged.
Document TruncateForDebate(const Document &doc);

// Sentence splitter for raw text: a sentence ends at a token whose final
// character, ignoring closing quotes and brackets, is '.', '!' or '?'.
std::vector<std::string> SplitSentences(std::string_view raw);

struct CorpusStats {
  std::size_t doc_count = 0;
  std::size_t sentence_count = 0;
  double avg_sentence_length = 0.0;
  double flesch_reading_ease = 0.0;
  std::optional<double> pct_uncertain;
};

// Throws InputError when the corpus has no sentences.
CorpusStats ComputeCorpusStats(const Corpus &corpus);

// Keys sorted, reals at six significant digits.
std::string StatsToJson(const CorpusStats &stats);

// 206.835 - 1.015 (words / sentences) - 84.6 (syllables / words), with no
// clamping to [0, 100].
double FleschReadingEase(std::size_t word_count, std::size_t sentence_count,
                         std::size_t syllable_count);

// Vowel-group heuristic over the letters of `word`: a e i o u y groups,
// less one for a silent final "e" when at least one group remains. A final
// "e" counts as silent only in the vowel-consonant-e pattern.
// Throws InputError if `word` contains no letters.
std::size_t CountSyllables(std::string_view word);

// Fraction of Uncertain labels. NotASentence entries must be removed first.
double PercentUncertain(std::span<const Certainty> labels);

}  // namespace hedgekit

#endif  // HEDGEKIT_CORPUS_H_
