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

#include "hedgekit/corpus.h"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

#include "hedgekit/errors.h"
#include "hedgekit/text.h"
#include "hedgekit/util.h"
#include "json.hpp"

namespace hedgekit {
namespace {

using nlohmann::json;

constexpr std::size_t kDebateMinWords = 280;
constexpr std::size_t kDebateSkipWords = 50;
constexpr std::size_t kDebateKeepWords = 200;

[[noreturn]] void RecordError(std::string_view origin, std::size_t line,
                              const std::string &what) {
  throw InputError(std::string(origin) + ":" + std::to_string(line) + ": " +
                   what);
}

std::string RequireString(const json &obj, const char *key,
                          std::string_view origin, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    RecordError(origin, line, std::string("missing string field \"") + key +
                                  "\"");
  }
  return it->get<std::string>();
}

Sentence ParseSentence(const json &j, bool spans_present,
                       std::string_view origin, std::size_t line) {
  if (!j.is_object()) RecordError(origin, line, "sentence is not an object");
  Sentence s;
  s.id = RequireString(j, "id", origin, line);
  s.text = RequireString(j, "text", origin, line);
  s.spans_present = spans_present;
  if (auto it = j.find("label"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) RecordError(origin, line, "label must be a string");
    auto label = ParseCertainty(it->get<std::string>());
    if (!label) {
      RecordError(origin, line, "unknown label \"" + it->get<std::string>() +
                                    "\" in sentence " + s.id);
    }
    s.gold_label = label;
  }
  if (auto it = j.find("cues"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) RecordError(origin, line, "cues must be an array");
    for (const json &span : *it) {
      if (!span.is_array() || span.size() != 2 ||
          !span[0].is_number_unsigned() || !span[1].is_number_unsigned()) {
        RecordError(origin, line,
                    "cue span must be [start, end] in sentence " + s.id);
      }
      s.cue_spans.push_back(
          {span[0].get<std::size_t>(), span[1].get<std::size_t>()});
    }
  }
  return s;
}

json SentenceToJson(const Sentence &s) {
  json spans = json::array();
  for (const CueSpan &span : s.cue_spans) spans.push_back({span.start, span.end});
  json j = {{"id", s.id}, {"text", s.text}, {"cues", spans}};
  if (s.gold_label) {
    j["label"] = std::string(CertaintyName(*s.gold_label));
  } else {
    j["label"] = nullptr;
  }
  return j;
}

// Lowercased tokens with surrounding punctuation removed; used for phrase
// matching by the document filters.
std::vector<std::string> MatchTokens(std::string_view text) {
  std::vector<std::string> tokens;
  for (std::string_view word : SplitWhitespace(text)) {
    std::string t = TrimPunctuation(ToLowerUtf8(word));
    if (!t.empty()) tokens.push_back(std::move(t));
  }
  return tokens;
}

bool ContainsPhrase(const std::vector<std::string> &tokens,
                    const std::vector<std::string> &phrase) {
  if (phrase.empty() || phrase.size() > tokens.size()) return false;
  auto it = std::search(tokens.begin(), tokens.end(), phrase.begin(),
                        phrase.end());
  return it != tokens.end();
}

std::vector<std::string> DocumentTokens(const Document &doc) {
  std::vector<std::string> tokens;
  for (const Sentence &s : doc.sentences) {
    auto sentence_tokens = MatchTokens(s.text);
    tokens.insert(tokens.end(), std::make_move_iterator(sentence_tokens.begin()),
                  std::make_move_iterator(sentence_tokens.end()));
  }
  return tokens;
}

std::size_t CountMatchingTerms(const std::vector<std::string> &tokens,
                               const std::vector<std::string> &phrases) {
  std::size_t n = 0;
  std::set<std::vector<std::string>> seen;
  for (const std::string &phrase : phrases) {
    auto key = MatchTokens(phrase);
    if (!seen.insert(key).second) continue;
    if (ContainsPhrase(tokens, key)) ++n;
  }
  return n;
}

bool IsVowel(char32_t c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

bool IsClosing(char32_t c) {
  return c == '"' || c == '\'' || c == ')' || c == ']' || c == '}' ||
         c == 0x201D || c == 0x2019 || c == 0xBB;
}

std::size_t SyllablesOrOne(std::string_view word) {
  for (char32_t c : DecodeUtf8(word)) {
    if (IsLetter(c)) return CountSyllables(word);
  }
  return 1;
}

}  // namespace

std::string_view CertaintyName(Certainty label) {
  switch (label) {
    case Certainty::kCertain:
      return "certain";
    case Certainty::kUncertain:
      return "uncertain";
    case Certainty::kNotASentence:
      return "not_a_sentence";
  }
  return "certain";
}

std::optional<Certainty> ParseCertainty(std::string_view name) {
  if (name == "certain") return Certainty::kCertain;
  if (name == "uncertain") return Certainty::kUncertain;
  if (name == "not_a_sentence") return Certainty::kNotASentence;
  return std::nullopt;
}

std::size_t Sentence::word_count() const { return CountWords(text); }

std::vector<std::string> Sentence::cue_texts() const {
  std::vector<std::string> cues;
  cues.reserve(cue_spans.size());
  for (const CueSpan &span : cue_spans) {
    cues.push_back(Utf8Substring(text, span.start, span.end));
  }
  return cues;
}

std::size_t Document::word_count() const {
  std::size_t n = 0;
  for (const Sentence &s : sentences) n += s.word_count();
  return n;
}

void ValidateSentence(const Sentence &s) {
  const std::size_t length = Utf8Length(s.text);
  for (const CueSpan &span : s.cue_spans) {
    if (span.start >= span.end || span.end > length) {
      throw InputError("sentence " + s.id + ": cue span [" +
                       std::to_string(span.start) + ", " +
                       std::to_string(span.end) + ") outside text of length " +
                       std::to_string(length));
    }
  }
  if (s.gold_label == Certainty::kUncertain && s.spans_present &&
      s.cue_spans.empty()) {
    throw InputError("sentence " + s.id +
                     ": labeled uncertain but carries no cue span");
  }
  if (s.gold_label == Certainty::kCertain && !s.cue_spans.empty()) {
    throw InputError("sentence " + s.id + ": labeled certain but has cue spans");
  }
}

void ValidateCorpus(const Corpus &corpus) {
  std::unordered_set<std::string> sentence_ids;
  for (const Document &doc : corpus) {
    for (const Sentence &s : doc.sentences) {
      ValidateSentence(s);
      if (!sentence_ids.insert(s.id).second) {
        throw InputError("sentence " + s.id + ": duplicate sentence id (document " +
                         doc.id + ")");
      }
    }
  }
}

Corpus ParseCorpus(std::string_view jsonl, std::string_view origin) {
  Corpus corpus;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < jsonl.size()) {
    std::size_t eol = jsonl.find('\n', pos);
    if (eol == std::string_view::npos) eol = jsonl.size();
    std::string_view line = jsonl.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error &e) {
      RecordError(origin, line_no, std::string("malformed JSON: ") + e.what());
    }
    if (!record.is_object()) RecordError(origin, line_no, "record is not an object");

    Document doc;
    doc.id = RequireString(record, "id", origin, line_no);
    doc.source_tag = RequireString(record, "source", origin, line_no);
    bool spans_present = false;
    if (auto it = record.find("spans_present"); it != record.end()) {
      if (!it->is_boolean()) RecordError(origin, line_no, "spans_present must be boolean");
      spans_present = it->get<bool>();
    }
    auto sentences = record.find("sentences");
    if (sentences == record.end() || !sentences->is_array()) {
      RecordError(origin, line_no, "missing array field \"sentences\"");
    }
    for (const json &s : *sentences) {
      doc.sentences.push_back(ParseSentence(s, spans_present, origin, line_no));
    }
    try {
      for (const Sentence &s : doc.sentences) ValidateSentence(s);
    } catch (const InputError &e) {
      RecordError(origin, line_no, e.what());
    }
    corpus.push_back(std::move(doc));
  }
  ValidateCorpus(corpus);
  return corpus;
}

Corpus LoadCorpus(const std::filesystem::path &path) {
  return ParseCorpus(ReadFile(path), path.string());
}

std::string SerializeCorpus(const Corpus &corpus) {
  std::string out;
  for (const Document &doc : corpus) {
    json sentences = json::array();
    bool spans_present = false;
    for (const Sentence &s : doc.sentences) {
      sentences.push_back(SentenceToJson(s));
      spans_present = spans_present || s.spans_present;
    }
    json record = {{"id", doc.id},
                   {"source", doc.source_tag},
                   {"sentences", sentences},
                   {"spans_present", spans_present}};
    out += record.dump();
    out += '\n';
  }
  return out;
}

void SaveCorpus(const Corpus &corpus, const std::filesystem::path &path) {
  WriteFile(path, SerializeCorpus(corpus));
}

std::size_t SentenceCount(const Corpus &corpus) {
  std::size_t n = 0;
  for (const Document &doc : corpus) n += doc.sentences.size();
  return n;
}

void FilterRules::Validate() const {
  if (require_k_of) {
    if (require_k_of->k == 0) throw InputError("require_k_of: k must be positive");
    if (require_k_of->terms.empty()) throw InputError("require_k_of: empty term list");
    if (require_k_of->k > require_k_of->terms.size()) {
      throw InputError("require_k_of: k exceeds the number of terms");
    }
  }
  if (max_words && *max_words == 0) throw InputError("max_words must be positive");
}

bool PassesFilter(const Document &doc, const FilterRules &rules) {
  if (rules.max_words && doc.word_count() > *rules.max_words) return false;
  if (rules.require_any.empty() && !rules.require_k_of &&
      rules.exclude_any.empty()) {
    return true;
  }
  const std::vector<std::string> tokens = DocumentTokens(doc);
  if (!rules.require_any.empty() &&
      CountMatchingTerms(tokens, rules.require_any) == 0) {
    return false;
  }
  if (rules.require_k_of &&
      CountMatchingTerms(tokens, rules.require_k_of->terms) <
          rules.require_k_of->k) {
    return false;
  }
  if (!rules.exclude_any.empty() &&
      CountMatchingTerms(tokens, rules.exclude_any) > 0) {
    return false;
  }
  return true;
}

Corpus FilterDocuments(const Corpus &corpus, const FilterRules &rules) {
  rules.Validate();
  Corpus kept;
  for (const Document &doc : corpus) {
    if (PassesFilter(doc, rules)) kept.push_back(doc);
  }
  return kept;
}

std::vector<std::string> SplitSentences(std::string_view raw) {
  std::vector<std::string> sentences;
  std::string current;
  for (std::string_view word : SplitWhitespace(raw)) {
    if (!current.empty()) current += ' ';
    current += word;
    std::u32string decoded = DecodeUtf8(word);
    while (!decoded.empty() && IsClosing(decoded.back())) decoded.pop_back();
    if (!decoded.empty() &&
        (decoded.back() == '.' || decoded.back() == '!' || decoded.back() == '?')) {
      sentences.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) sentences.push_back(std::move(current));
  return sentences;
}

Document TruncateForDebate(const Document &doc) {
  if (doc.word_count() <= kDebateMinWords) return doc;
  std::string kept;
  std::size_t index = 0;
  for (const Sentence &s : doc.sentences) {
    for (std::string_view word : SplitWhitespace(s.text)) {
      if (index >= kDebateSkipWords && index < kDebateSkipWords + kDebateKeepWords) {
        if (!kept.empty()) kept += ' ';
        kept += word;
      }
      ++index;
    }
  }
  Document out;
  out.id = doc.id;
  out.source_tag = doc.source_tag;
  std::size_t k = 0;
  for (std::string &text : SplitSentences(kept)) {
    Sentence s;
    s.id = doc.id + "." + std::to_string(k++);
    s.text = std::move(text);
    out.sentences.push_back(std::move(s));
  }
  return out;
}

double FleschReadingEase(std::size_t word_count, std::size_t sentence_count,
                         std::size_t syllable_count) {
  if (word_count == 0) throw InputError("Flesch reading ease: zero words");
  if (sentence_count == 0) throw InputError("Flesch reading ease: zero sentences");
  const double words = static_cast<double>(word_count);
  return 206.835 - 1.015 * (words / static_cast<double>(sentence_count)) -
         84.6 * (static_cast<double>(syllable_count) / words);
}

std::size_t CountSyllables(std::string_view word) {
  std::u32string letters;
  for (char32_t c : DecodeUtf8(word)) {
    if (IsLetter(c)) letters.push_back(ToLower(c));
  }
  if (letters.empty()) throw InputError("count_syllables: empty word");
  std::size_t groups = 0;
  bool in_group = false;
  for (char32_t c : letters) {
    const bool vowel = IsVowel(c);
    if (vowel && !in_group) ++groups;
    in_group = vowel;
  }
  const std::size_t n = letters.size();
  // A final "e" is silent only after a single consonant that follows a
  // vowel ("cake", "hope"). After a consonant cluster it keeps its own
  // syllable ("science").
  const bool silent_e = n >= 3 && letters[n - 1] == 'e' &&
                        !IsVowel(letters[n - 2]) && IsVowel(letters[n - 3]);
  if (silent_e && groups > 1) --groups;
  return std::max<std::size_t>(groups, 1);
}

double PercentUncertain(std::span<const Certainty> labels) {
  if (labels.empty()) throw InputError("percent_uncertain: empty label list");
  std::size_t uncertain = 0;
  for (Certainty label : labels) {
    if (label == Certainty::kNotASentence) {
      throw InputError("percent_uncertain: not_a_sentence labels must be removed");
    }
    if (label == Certainty::kUncertain) ++uncertain;
  }
  return static_cast<double>(uncertain) / static_cast<double>(labels.size());
}

CorpusStats ComputeCorpusStats(const Corpus &corpus) {
  CorpusStats stats;
  stats.doc_count = corpus.size();
  std::size_t words = 0;
  std::size_t syllables = 0;
  std::vector<Certainty> labels;
  for (const Document &doc : corpus) {
    for (const Sentence &s : doc.sentences) {
      ++stats.sentence_count;
      for (std::string_view word : SplitWhitespace(s.text)) {
        ++words;
        syllables += SyllablesOrOne(word);
      }
      if (s.has_binary_label()) labels.push_back(*s.gold_label);
    }
  }
  if (stats.sentence_count == 0) throw InputError("empty corpus");
  stats.avg_sentence_length =
      static_cast<double>(words) / static_cast<double>(stats.sentence_count);
  if (words > 0) {
    stats.flesch_reading_ease =
        FleschReadingEase(words, stats.sentence_count, syllables);
  }
  if (!labels.empty()) stats.pct_uncertain = PercentUncertain(labels);
  return stats;
}

std::string StatsToJson(const CorpusStats &stats) {
  json j = {{"doc_count", stats.doc_count},
            {"sentence_count", stats.sentence_count},
            {"avg_sentence_length", RoundSignificant(stats.avg_sentence_length)},
            {"flesch_reading_ease", RoundSignificant(stats.flesch_reading_ease)}};
  if (stats.pct_uncertain) {
    j["pct_uncertain"] = RoundSignificant(*stats.pct_uncertain);
  }
  return j.dump();
}

}  // namespace hedgekit
