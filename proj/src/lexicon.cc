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

#include "hedgekit/lexicon.h"

#include <algorithm>
#include <set>

#include "hedgekit/errors.h"
#include "hedgekit/text.h"
#include "hedgekit/util.h"
#include "json.hpp"
#include "stopwords_data.h"

namespace hedgekit {
namespace {

using nlohmann::json;

std::string JoinKey(std::span<const std::string> tokens) {
  std::string key;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) key += ' ';
    key += tokens[i];
  }
  return key;
}

bool IsNormalizedToken(const std::string &token) {
  if (token.empty()) return false;
  for (char32_t c : DecodeUtf8(token)) {
    if (IsWhitespace(c) || IsPunctuation(c) || ToLower(c) != c) return false;
  }
  return true;
}

// Besides the whole cue, which n-gram orders does each variant add?
std::vector<std::size_t> NGramOrders(FeatureVariant variant) {
  switch (variant) {
    case FeatureVariant::kCuesOnly:
      return {};
    case FeatureVariant::kCuesUni:
      return {1};
    case FeatureVariant::kCuesBi:
      return {2};
    case FeatureVariant::kCuesTri:
      return {3};
    case FeatureVariant::kCuesUniBiTri:
      return {1, 2, 3};
    case FeatureVariant::kCuesBiTri:
      return {2, 3};
  }
  return {};
}

}  // namespace

StopwordList::StopwordList(std::initializer_list<std::string> words,
                           std::string version)
    : words_(words.begin(), words.end()), version_(std::move(version)) {}

StopwordList::StopwordList(std::vector<std::string> words, std::string version)
    : words_(std::make_move_iterator(words.begin()),
             std::make_move_iterator(words.end())),
      version_(std::move(version)) {}

const StopwordList &StopwordList::Default() {
  static const StopwordList list =
      Parse(kStopwordsEnV1, std::string(kStopwordsEnV1Version));
  return list;
}

StopwordList StopwordList::Parse(std::string_view contents, std::string version) {
  std::vector<std::string> words;
  std::size_t pos = 0;
  while (pos <= contents.size()) {
    std::size_t eol = contents.find('\n', pos);
    if (eol == std::string_view::npos) eol = contents.size();
    std::string_view line = contents.substr(pos, eol - pos);
    pos = eol + 1;
    if (!line.empty() && line.front() == '#') continue;
    for (std::string_view word : SplitWhitespace(line)) {
      words.push_back(ToLowerUtf8(word));
    }
  }
  return StopwordList(std::move(words), std::move(version));
}

bool StopwordList::contains(std::string_view word) const {
  return words_.find(std::string(word)) != words_.end();
}

TokenSequence Normalize(std::string_view text, const StopwordList &stopwords) {
  std::u32string decoded = DecodeUtf8(text);
  std::u32string cleaned;
  cleaned.reserve(decoded.size());
  for (char32_t c : decoded) {
    if (!IsPunctuation(c)) cleaned.push_back(ToLower(c));
  }
  const std::string lowered = EncodeUtf8(cleaned);
  TokenSequence out;
  for (std::string_view word : SplitWhitespace(lowered)) {
    if (stopwords.contains(word)) continue;
    out.tokens.emplace_back(word);
  }
  return out;
}

std::string_view FeatureVariantName(FeatureVariant variant) {
  switch (variant) {
    case FeatureVariant::kCuesOnly:
      return "cues";
    case FeatureVariant::kCuesUni:
      return "cues+uni";
    case FeatureVariant::kCuesBi:
      return "cues+bi";
    case FeatureVariant::kCuesTri:
      return "cues+tri";
    case FeatureVariant::kCuesUniBiTri:
      return "cues+uni+bi+tri";
    case FeatureVariant::kCuesBiTri:
      return "cues+bi+tri";
  }
  return "cues";
}

std::optional<FeatureVariant> ParseFeatureVariant(std::string_view name) {
  for (FeatureVariant v : kAllFeatureVariants) {
    if (FeatureVariantName(v) == name) return v;
  }
  return std::nullopt;
}

CueLexicon::CueLexicon(FeatureVariant variant, std::vector<NGram> entries,
                       std::string source_tag)
    : variant_(variant),
      entries_(std::move(entries)),
      source_tag_(std::move(source_tag)) {
  std::set<std::size_t> lengths;
  for (std::size_t j = 0; j < entries_.size(); ++j) {
    const NGram &entry = entries_[j];
    if (entry.empty()) throw InputError("lexicon entry " + std::to_string(j) + " is empty");
    for (const std::string &token : entry) {
      if (!IsNormalizedToken(token)) {
        throw InputError("lexicon entry " + std::to_string(j) +
                         " has a non-normalized token \"" + token + "\"");
      }
    }
    if (!index_.emplace(JoinKey(entry), static_cast<std::uint32_t>(j)).second) {
      throw InputError("duplicate lexicon entry \"" + JoinKey(entry) + "\"");
    }
    lengths.insert(entry.size());
  }
  lengths_.assign(lengths.begin(), lengths.end());
}

CueLexicon CueLexicon::FromJson(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw InputError(std::string("lexicon: malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("config") || !j["config"].is_string() ||
      !j.contains("entries") || !j["entries"].is_array()) {
    throw InputError("lexicon: expected {\"config\": str, \"entries\": [...]}");
  }
  auto variant = ParseFeatureVariant(j["config"].get<std::string>());
  if (!variant) {
    throw InputError("lexicon: unknown config \"" + j["config"].get<std::string>() + "\"");
  }
  std::vector<NGram> entries;
  for (const json &entry : j["entries"]) {
    if (!entry.is_array()) throw InputError("lexicon: entry is not an array");
    NGram gram;
    for (const json &token : entry) {
      if (!token.is_string()) throw InputError("lexicon: token is not a string");
      gram.push_back(token.get<std::string>());
    }
    entries.push_back(std::move(gram));
  }
  return CueLexicon(*variant, std::move(entries));
}

std::string CueLexicon::ToJson() const {
  json entries = json::array();
  for (const NGram &entry : entries_) entries.push_back(entry);
  json j = {{"config", std::string(FeatureVariantName(variant_))},
            {"entries", entries}};
  return j.dump();
}

std::string CueLexicon::Hash() const { return HexDigest(ToJson()); }

std::optional<std::uint32_t> CueLexicon::column(const NGram &entry) const {
  return column_of_key(JoinKey(entry));
}

std::optional<std::uint32_t> CueLexicon::column_of_key(const std::string &key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

CueLexicon BuildLexicon(std::span<const std::string> cues, FeatureVariant variant,
                        const StopwordList &stopwords, std::string source_tag) {
  if (cues.empty()) throw InputError("build_lexicon: empty cue list");
  const std::vector<std::size_t> orders = NGramOrders(variant);
  std::set<NGram> grams;
  std::size_t skipped = 0;
  for (const std::string &cue : cues) {
    const std::vector<std::string> tokens = Normalize(cue, stopwords).tokens;
    if (tokens.empty()) {
      ++skipped;
      continue;
    }
    grams.insert(tokens);
    for (std::size_t n : orders) {
      for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        grams.insert(NGram(tokens.begin() + i, tokens.begin() + i + n));
      }
    }
  }
  if (grams.empty()) {
    throw InputError("build_lexicon: every cue normalized to an empty phrase");
  }
  CueLexicon lexicon(variant, std::vector<NGram>(grams.begin(), grams.end()),
                     std::move(source_tag));
  lexicon.set_skipped_cues(skipped);
  return lexicon;
}

std::vector<std::string> CollectCues(const Corpus &corpus) {
  std::vector<std::string> cues;
  for (const Document &doc : corpus) {
    for (const Sentence &s : doc.sentences) {
      for (std::string &cue : s.cue_texts()) cues.push_back(std::move(cue));
    }
  }
  return cues;
}

std::uint64_t FeatureVector::total() const {
  std::uint64_t n = 0;
  for (const auto &[column, count] : counts) n += count;
  return n;
}

FeatureVector Featurize(const TokenSequence &sentence, const CueLexicon &lexicon,
                        std::string sentence_id) {
  std::unordered_map<std::uint32_t, std::uint32_t> counts;
  const auto &tokens = sentence.tokens;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::string key;
    std::size_t built = 0;
    for (std::size_t n : lexicon.lengths()) {
      if (i + n > tokens.size()) break;
      while (built < n) {
        if (built) key += ' ';
        key += tokens[i + built];
        ++built;
      }
      if (auto column = lexicon.column_of_key(key)) ++counts[*column];
    }
  }
  FeatureVector fv;
  fv.sentence_id = std::move(sentence_id);
  fv.counts.assign(counts.begin(), counts.end());
  std::sort(fv.counts.begin(), fv.counts.end());
  return fv;
}

std::vector<FeaturizedSentence> FeaturizeCorpus(const Corpus &corpus,
                                                const CueLexicon &lexicon,
                                                const StopwordList &stopwords) {
  std::vector<FeaturizedSentence> rows;
  for (const Document &doc : corpus) {
    for (const Sentence &s : doc.sentences) {
      if (!s.is_proper()) continue;
      FeaturizedSentence row;
      row.features = Featurize(Normalize(s.text, stopwords), lexicon, s.id);
      row.gold_label = s.gold_label;
      row.length = s.word_count();
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string FeatureDumpJsonl(std::span<const FeaturizedSentence> rows) {
  std::string out;
  for (const FeaturizedSentence &row : rows) {
    json counts = json::object();
    for (const auto &[column, count] : row.features.counts) {
      counts[std::to_string(column)] = count;
    }
    json label = nullptr;
    if (row.gold_label == Certainty::kUncertain) label = 1;
    if (row.gold_label == Certainty::kCertain) label = -1;
    json j = {{"sid", row.features.sentence_id}, {"counts", counts}, {"label", label}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace hedgekit
