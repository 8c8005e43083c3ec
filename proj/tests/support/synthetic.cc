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

#include "support/synthetic.h"

#include <cmath>
#include <random>

#include "hedgekit/text.h"
#include "hedgekit/util.h"

namespace hedgekit::testing {

std::vector<std::string> CueInventory(const std::string &prefix, std::size_t count) {
  std::vector<std::string> cues;
  for (std::size_t k = 0; k < count; ++k) {
    std::string cue;
    for (std::size_t t = 0; t <= k % 3; ++t) {
      if (t) cue += ' ';
      cue += prefix + std::to_string(k) + static_cast<char>('a' + t);
    }
    cues.push_back(cue);
  }
  return cues;
}

Sentence MakeSentence(const std::string &id, const std::vector<std::string> &tokens,
                      std::optional<Certainty> label, std::size_t cue_begin,
                      std::size_t cue_end) {
  Sentence s;
  s.id = id;
  s.gold_label = label;
  s.spans_present = true;
  std::size_t span_start = 0;
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    if (t) s.text += ' ';
    if (t == cue_begin) span_start = Utf8Length(s.text);
    s.text += tokens[t];
    if (t + 1 == cue_end && cue_end > cue_begin) {
      s.cue_spans.push_back({span_start, Utf8Length(s.text)});
    }
  }
  return s;
}

Corpus GeneratePlantedCorpus(const PlantedSpec &spec) {
  std::mt19937_64 rng(spec.seed);
  const std::vector<std::string> cues = CueInventory(spec.cue_prefix, spec.cue_count);
  const auto n_uncertain =
      static_cast<std::size_t>(std::llround(spec.uncertain_rate * static_cast<double>(spec.sentences)));
  std::vector<bool> uncertain(spec.sentences, false);
  for (std::size_t i = 0; i < n_uncertain; ++i) uncertain[i] = true;
  SeededShuffle(uncertain, rng);

  Corpus corpus;
  for (std::size_t i = 0; i < spec.sentences; ++i) {
    if (i % spec.sentences_per_doc == 0) {
      Document doc;
      doc.id = spec.id_prefix + "doc" + std::to_string(i / spec.sentences_per_doc);
      doc.source_tag = spec.source;
      corpus.push_back(std::move(doc));
    }
    const std::size_t length =
        spec.min_length + UniformBelow(rng, spec.max_length - spec.min_length + 1);
    std::vector<std::string> tokens;
    for (std::size_t t = 0; t < length; ++t) {
      tokens.push_back(spec.filler_prefix + std::to_string(UniformBelow(rng, spec.filler_vocab)));
    }
    const std::string id = spec.id_prefix + std::to_string(i);
    if (uncertain[i]) {
      const std::string &cue = cues[UniformBelow(rng, cues.size())];
      std::vector<std::string> cue_tokens;
      for (std::string_view w : SplitWhitespace(cue)) cue_tokens.emplace_back(w);
      const std::size_t at = UniformBelow(rng, tokens.size() + 1);
      tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(at), cue_tokens.begin(),
                    cue_tokens.end());
      corpus.back().sentences.push_back(
          MakeSentence(id, tokens, Certainty::kUncertain, at, at + cue_tokens.size()));
    } else {
      corpus.back().sentences.push_back(MakeSentence(id, tokens, Certainty::kCertain));
    }
  }
  return corpus;
}

}  // namespace hedgekit::testing
