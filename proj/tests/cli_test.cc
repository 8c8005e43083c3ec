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

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "hedgekit/corpus.h"
#include "hedgekit/lexicon.h"
#include "json.hpp"
#include "support/cli_harness.h"
#include "support/synthetic.h"

namespace hedgekit {
namespace {

using nlohmann::json;
using testing::CliRun;
using testing::Run;
using testing::ScratchDir;

// The JSON document printed before the blank line.
json FirstJson(const std::string &out) { return json::parse(out.substr(0, out.find("\n\n"))); }

std::vector<json> JsonLines(const std::string &text) {
  std::vector<json> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) rows.push_back(json::parse(line));
  }
  return rows;
}

Corpus ThreeSentences() {
  Document doc;
  doc.id = "doc";
  doc.source_tag = "SECRET-PROVENANCE";
  doc.sentences = {
      testing::MakeSentence("alpha", {"The", "drug", "may", "help."}, Certainty::kUncertain, 2, 3),
      testing::MakeSentence("beta", {"The", "drug", "works."}, Certainty::kCertain),
      testing::MakeSentence("gamma", {"Results", "below"}, Certainty::kNotASentence)};
  return {doc};
}

std::string SessionText(const std::vector<std::pair<std::string, std::string>> &labels,
                        const std::string &annotator = "a") {
  std::string text =
      json{{"type", "header"}, {"annotator", annotator}, {"seed", 42}}.dump() + "\n";
  for (const auto &[sid, label] : labels) {
    text += json{{"sid", sid}, {"label", label}, {"ts", "2026-01-01T00:00:00Z"}}.dump() + "\n";
  }
  return text;
}

TEST_CASE("exit codes for misuse and bad input") {
  ScratchDir dir("codes");
  CHECK(Run({}).code == 4);
  CHECK(Run({"frobnicate"}).code == 4);
  CHECK(Run({"stats"}).code == 4);
  CHECK(Run({"train", "--corpus", "x.jsonl"}).code == 4);
  CHECK(Run({"--help"}).code == 0);
  const CliRun version = Run({"--version"});
  CHECK(version.code == 0);
  CHECK(version.out.find("0.1.0") != std::string::npos);

  const CliRun missing = Run({"stats", dir.path("nope.jsonl")});
  CHECK(missing.code == 2);

  const CliRun empty = Run({"stats", dir.Write("empty.jsonl", "")});
  CHECK(empty.code == 2);
  CHECK(empty.err.find("empty corpus") != std::string::npos);

  const CliRun malformed = Run({"stats", dir.Write("bad.jsonl", "{\"id\": 3}\n")});
  CHECK(malformed.code == 2);
  CHECK(malformed.err.find(":1:") != std::string::npos);

  const std::string corpus = dir.Save("c.jsonl", ThreeSentences());
  CHECK(Run({"lexicon", "--corpus", corpus, "--config", "bogus", "--out", dir.path("l.json")})
            .code == 4);
  CHECK(Run({"train", "--corpus", corpus, "--weighting", "heavy", "--model-out",
             dir.path("m.json"), "--lexicon-out", dir.path("l.json")})
            .code == 2);
}

TEST_CASE("stats prints JSON, a table and accepts several corpora") {
  ScratchDir dir("stats");
  Document doc;
  doc.id = "d";
  doc.sentences = {testing::MakeSentence("s1", {"a", "b", "c"}, Certainty::kUncertain, 0, 1),
                   testing::MakeSentence("s2", {"d", "e"}, Certainty::kCertain)};
  const std::string one = dir.Save("one.jsonl", {doc});
  const CliRun run = Run({"stats", one, "--json", dir.path("stats.json")});
  REQUIRE(run.code == 0);
  const json j = FirstJson(run.out);
  CHECK(j["doc_count"] == 1);
  CHECK(j["sentence_count"] == 2);
  CHECK(j["avg_sentence_length"] == 2.5);
  CHECK(j["pct_uncertain"] == 0.5);
  CHECK(run.out.find("one.jsonl") != std::string::npos);
  CHECK(json::parse(dir.Read("stats.json")) == j);
  const json manifest = json::parse(dir.Read("stats.json.manifest.json"));
  CHECK(manifest["command"] == "stats");
  CHECK(manifest["seed"] == 42);
  CHECK(manifest["inputs"][one].get<std::string>().size() == 16);

  const std::string two = dir.Save("two.jsonl", ThreeSentences());
  const CliRun both = Run({"stats", one, two});
  REQUIRE(both.code == 0);
  const json arr = FirstJson(both.out);
  REQUIRE(arr.size() == 2);
  CHECK(arr[1]["sentence_count"] == 3);
  CHECK(both.out.find("two.jsonl") != std::string::npos);
}

TEST_CASE("annotate: scripted keys, hidden provenance, resume") {
  ScratchDir dir("annotate");
  const std::string corpus = dir.Save("c.jsonl", ThreeSentences());
  const std::string keys = dir.Write("keys.txt", "u\nc\nn\n");
  const std::string session = dir.path("s.jsonl");

  const CliRun run = Run({"annotate", "--corpus", corpus, "--annotator", "ann1", "--session",
                          session, "--from-file", keys, "--seed", "7"});
  REQUIRE(run.code == 0);
  CHECK(run.out.find("SECRET-PROVENANCE") == std::string::npos);
  for (const char *id : {"alpha", "beta", "gamma"}) CHECK(run.out.find(id) == std::string::npos);

  const std::vector<json> rows = JsonLines(dir.Read("s.jsonl"));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0]["type"] == "header");
  CHECK(rows[0]["annotator"] == "ann1");
  CHECK(rows[0]["seed"] == 7);
  CHECK(dir.Read("s.jsonl").find("SECRET-PROVENANCE") == std::string::npos);
  std::vector<std::string> order;
  for (std::size_t i = 1; i < rows.size(); ++i) order.push_back(rows[i]["sid"]);
  CHECK(rows[1]["label"] == "u");
  CHECK(rows[2]["label"] == "c");
  CHECK(rows[3]["label"] == "n");

  // The presented texts follow the recorded order.
  const Corpus loaded = LoadCorpus(corpus);
  std::size_t last = 0;
  for (const std::string &sid : order) {
    for (const Sentence &s : loaded[0].sentences) {
      if (s.id != sid) continue;
      const std::size_t at = run.out.find(s.text);
      REQUIRE(at != std::string::npos);
      CHECK(at >= last);
      last = at;
    }
  }

  // Same seed, same order; two of three, then resume for the last one.
  const std::string partial = dir.path("p.jsonl");
  REQUIRE(Run({"annotate", "--corpus", corpus, "--annotator", "ann1", "--session", partial,
               "--from-file", dir.Write("two.txt", "c c"), "--seed", "7"})
              .code == 0);
  const std::vector<json> first = JsonLines(dir.Read("p.jsonl"));
  REQUIRE(first.size() == 3);
  CHECK(first[1]["sid"] == order[0]);
  CHECK(first[2]["sid"] == order[1]);

  CHECK(Run({"annotate", "--corpus", corpus, "--annotator", "ann1", "--session", partial,
             "--from-file", keys, "--seed", "7"})
            .code == 4);
  CHECK(Run({"annotate", "--corpus", corpus, "--annotator", "other", "--session", partial,
             "--from-file", keys, "--seed", "7", "--resume"})
            .code == 2);

  const CliRun resumed = Run({"annotate", "--corpus", corpus, "--annotator", "ann1", "--session",
                              partial, "--from-file", dir.Write("one.txt", "u"), "--seed", "7",
                              "--resume"});
  REQUIRE(resumed.code == 0);
  std::size_t prompts = 0;
  for (std::size_t at = resumed.out.find("/3] "); at != std::string::npos;
       at = resumed.out.find("/3] ", at + 1)) {
    ++prompts;
  }
  CHECK(prompts == 1);
  CHECK(resumed.out.find("[3/3]") != std::string::npos);
  const std::vector<json> after = JsonLines(dir.Read("p.jsonl"));
  REQUIRE(after.size() == 4);
  CHECK(after[3]["sid"] == order[2]);
  CHECK(after[3]["label"] == "u");

  // Interactive input is refused when stdin is not a terminal.
  CHECK(Run({"annotate", "--corpus", corpus, "--annotator", "x", "--session", dir.path("t.jsonl")},
            "u c n", false)
            .code == 4);
  const CliRun tty = Run({"annotate", "--corpus", corpus, "--annotator", "x", "--session",
                          dir.path("t.jsonl")},
                         "x u c n", true);
  CHECK(tty.code == 0);
  CHECK(tty.out.find("unrecognized key") != std::string::npos);
  CHECK(JsonLines(dir.Read("t.jsonl")).size() == 4);

  CHECK(Run({"annotate", "--corpus", corpus, "--annotator", "x", "--session",
             dir.Write("junk.jsonl", "not json\n"), "--from-file", keys, "--resume"})
            .code == 2);
}

TEST_CASE("annotate order depends on the seed, from flag, env or config file") {
  ScratchDir dir("order");
  testing::PlantedSpec spec;
  spec.sentences = 30;
  const std::string corpus = dir.Save("c.jsonl", testing::GeneratePlantedCorpus(spec));
  std::string many;
  for (int i = 0; i < 30; ++i) many += "c ";
  const std::string keys = dir.Write("keys.txt", many);
  int serial = 0;
  auto order = [&](std::vector<std::string> extra) {
    const std::string name = "s" + std::to_string(serial++) + ".jsonl";
    std::vector<std::string> args = {"annotate", "--corpus", corpus, "--annotator", "a",
                                     "--session", dir.path(name), "--from-file", keys};
    args.insert(args.end(), extra.begin(), extra.end());
    REQUIRE(Run(args).code == 0);
    std::vector<std::string> ids;
    for (const json &row : JsonLines(dir.Read(name))) {
      if (row.contains("sid")) ids.push_back(row["sid"]);
    }
    return ids;
  };
  const auto seven = order({"--seed", "7"});
  CHECK(seven.size() == 30);
  CHECK(order({"--seed", "7"}) == seven);
  CHECK(order({"--seed", "8"}) != seven);
  CHECK(order({}) == order({"--seed", "42"}));

  ::setenv("HEDGEKIT_SEED", "7", 1);
  CHECK(order({}) == seven);
  ::unsetenv("HEDGEKIT_SEED");

  const std::string config = dir.Write("run.ini", "seed = 7\n");
  std::vector<std::string> args = {"--config", config, "annotate", "--corpus", corpus,
                                   "--annotator", "a", "--session", dir.path("cfg.jsonl"),
                                   "--from-file", keys};
  REQUIRE(Run(args).code == 0);
  CHECK(JsonLines(dir.Read("cfg.jsonl"))[0]["seed"] == 7);
}

TEST_CASE("agreement between sessions") {
  ScratchDir dir("agree");
  const std::string a = dir.Write(
      "a.jsonl", SessionText({{"1", "c"}, {"2", "c"}, {"3", "u"}, {"4", "u"}, {"5", "n"}}));
  const std::string b = dir.Write(
      "b.jsonl", SessionText({{"1", "c"}, {"2", "u"}, {"3", "u"}, {"4", "u"}, {"5", "c"}}, "b"));
  const CliRun run = Run({"agreement", a, b});
  REQUIRE(run.code == 0);
  const json j = FirstJson(run.out);
  CHECK(j["n_items"] == 4);
  CHECK(j["n_dropped"] == 1);
  CHECK(j["kappa"] == 0.5);

  CHECK(FirstJson(Run({"agreement", a, a}).out)["kappa"] == 1.0);

  const std::string none =
      dir.Write("n.jsonl", SessionText({{"1", "n"}, {"2", "n"}, {"3", "n"}, {"4", "n"}, {"5", "n"}}));
  const CliRun empty = Run({"agreement", a, none});
  CHECK(empty.code == 2);
  CHECK(empty.err.find("no proper sentences in common") != std::string::npos);

  const std::string other = dir.Write("o.jsonl", SessionText({{"1", "c"}, {"9", "u"}}));
  CHECK(Run({"agreement", a, other}).code == 2);
}

TEST_CASE("filter, truncate and lexicon commands") {
  ScratchDir dir("prep");
  testing::PlantedSpec spec;
  spec.sentences = 100;
  const Corpus planted = testing::GeneratePlantedCorpus(spec);
  const std::string corpus = dir.Save("c.jsonl", planted);

  REQUIRE(Run({"filter", "--corpus", corpus, "--out", dir.path("f.jsonl"), "--max-words", "150"})
              .code == 0);
  const Corpus filtered = LoadCorpus(dir.path("f.jsonl"));
  FilterRules rules;
  rules.max_words = 150;
  CHECK(filtered == FilterDocuments(planted, rules));
  CHECK(Run({"filter", "--corpus", corpus, "--out", dir.path("g.jsonl"), "--require-k", "3",
             "--require-term", "w1", "--require-term", "w2"})
            .code == 2);
  const std::string rules_file = dir.Write("rules.json", R"({"require_any": ["hedge0a"]})");
  REQUIRE(Run({"filter", "--corpus", corpus, "--out", dir.path("r.jsonl"), "--rules", rules_file})
              .code == 0);
  for (const Document &d : LoadCorpus(dir.path("r.jsonl"))) {
    FilterRules any;
    any.require_any = {"hedge0a"};
    CHECK(PassesFilter(d, any));
  }

  REQUIRE(Run({"truncate", "--corpus", corpus, "--out", dir.path("t.jsonl")}).code == 0);
  for (const Document &d : LoadCorpus(dir.path("t.jsonl"))) CHECK(d.word_count() <= 280);

  const CliRun lex = Run({"lexicon", "--corpus", corpus, "--config", "cues+bi", "--out",
                          dir.path("lex.json"), "--dump-features", dir.path("feat.jsonl")});
  REQUIRE(lex.code == 0);
  const CueLexicon built = CueLexicon::FromJson(dir.Read("lex.json"));
  CHECK(built.variant() == FeatureVariant::kCuesBi);
  CHECK(JsonLines(dir.Read("feat.jsonl")).size() == 100);
  CHECK(std::filesystem::exists(dir.path("feat.jsonl.manifest.json")));
}

TEST_CASE("tune is reproducible and produces a usable model") {
  ScratchDir dir("tune");
  testing::PlantedSpec spec;
  spec.sentences = 300;
  spec.seed = 11;
  const std::string corpus = dir.Save("c.jsonl", testing::GeneratePlantedCorpus(spec));
  const std::string grid =
      dir.Write("grid.json", R"({"log2_gammas":[-3,0],"cs":[1,10],"configs":["cues"]})");
  auto tune = [&](const std::string &out) {
    return Run({"tune", "--corpus", corpus, "--grid", grid, "--out-dir", dir.path(out), "--seed",
                "7", "--jobs", "2"});
  };
  const CliRun first = tune("a");
  REQUIRE(first.code == 0);
  REQUIRE(tune("b").code == 0);
  CHECK(dir.Read("a/grid_report.json") == dir.Read("b/grid_report.json"));
  CHECK(dir.Read("a/model.json") == dir.Read("b/model.json"));
  const json report = json::parse(dir.Read("a/grid_report.json"));
  CHECK(report["seed"] == 7);
  CHECK(report["cells"].size() == 8);
  CHECK(report["cells"][report["best"].get<std::size_t>()]["f1"].get<double>() >= 0.95);
  CHECK(std::filesystem::exists(dir.path("a/model.json.manifest.json")));
  CHECK(first.out.find("Best 5-fold cross-validation performance") != std::string::npos);

  const CliRun single = Run({"tune", "--corpus", corpus, "--gamma", "0.5", "--c", "10",
                             "--feature-config", "cues", "--weighting", "uniform", "--out-dir",
                             dir.path("one")});
  REQUIRE(single.code == 0);
  CHECK(json::parse(dir.Read("one/grid_report.json"))["cells"].size() == 1);

  const CliRun eval = Run({"eval", "--model", dir.path("a/model.json"), "--lexicon",
                           dir.path("a/lexicon.json"), "--corpus", corpus});
  REQUIRE(eval.code == 0);
  const json m = FirstJson(eval.out);
  CHECK(m["f1"].get<double>() >= 0.95);
  CHECK(m.contains("mean_length"));

  // A lexicon from another run does not match the model.
  REQUIRE(Run({"lexicon", "--corpus", corpus, "--config", "cues+uni", "--out",
               dir.path("other.json")})
              .code == 0);
  CHECK(Run({"eval", "--model", dir.path("a/model.json"), "--lexicon", dir.path("other.json"),
             "--corpus", corpus})
            .code == 2);

  Corpus unlabeled = LoadCorpus(corpus);
  for (Document &d : unlabeled) {
    for (Sentence &s : d.sentences) {
      s.gold_label.reset();
      s.cue_spans.clear();
    }
  }
  CHECK(Run({"tune", "--corpus", dir.Save("u.jsonl", unlabeled), "--gamma", "1", "--c", "1",
             "--out-dir", dir.path("u")})
            .code == 2);
}

TEST_CASE("transfer, classify and compare") {
  ScratchDir dir("transfer");
  testing::PlantedSpec a;
  a.sentences = 300;
  a.seed = 3;
  testing::PlantedSpec b = a;
  b.cue_prefix = "doubt";
  b.filler_prefix = "v";
  b.seed = 4;
  const std::string dom_a = dir.Save("a.jsonl", testing::GeneratePlantedCorpus(a));
  const std::string dom_b = dir.Save("b.jsonl", testing::GeneratePlantedCorpus(b));
  REQUIRE(Run({"train", "--corpus", dom_a, "--c", "10", "--gamma", "0.5", "--model-out",
               dir.path("m.json"), "--lexicon-out", dir.path("l.json")})
              .code == 0);
  const CliRun t = Run({"transfer", "--model", dir.path("m.json"), "--lexicon",
                        dir.path("l.json"), "--target", dom_a, "--target", dom_b});
  REQUIRE(t.code == 0);
  const json rows = FirstJson(t.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0]["f1"].get<double>() > rows[1]["f1"].get<double>());
  CHECK(rows[1]["recall"] == 0.0);
  CHECK(rows[2]["name"] == "a.jsonl + b.jsonl");

  // No support vectors and a negative bias: everything is Certain.
  const CueLexicon lexicon(FeatureVariant::kCuesOnly, {{"perhaps"}});
  dir.Write("neg_lex.json", lexicon.ToJson());
  dir.Write("neg_model.json", json{{"gamma", 1.0},
                                   {"bias", -1.0},
                                   {"c_pos", 1.0},
                                   {"c_neg", 1.0},
                                   {"svs", json::array()},
                                   {"dim", 1},
                                   {"lexicon_hash", lexicon.Hash()}}
                                  .dump());
  const CliRun c = Run({"classify", "--model", dir.path("neg_model.json"), "--lexicon",
                        dir.path("neg_lex.json"), "--corpus", dom_b});
  REQUIRE(c.code == 0);
  CHECK(FirstJson(c.out)[0]["pct_uncertain"] == 0.0);
  CHECK(c.out.find("0.0") != std::string::npos);

  const CliRun same = Run({"compare", dom_a, dom_a});
  REQUIRE(same.code == 0);
  const json s = FirstJson(same.out);
  CHECK(s["p_value"] == 1.0);
  CHECK(s["significant_at_05"] == false);
  CHECK(same.out.find("not significant") != std::string::npos);

  testing::PlantedSpec heavy = a;
  heavy.uncertain_rate = 0.6;
  heavy.seed = 5;
  const CliRun diff =
      Run({"compare", dom_a, dir.Save("h.jsonl", testing::GeneratePlantedCorpus(heavy)), "--pooled"});
  REQUIRE(diff.code == 0);
  CHECK(FirstJson(diff.out)["test"] == "pooled");
  CHECK(FirstJson(diff.out)["significant_at_05"] == true);
}

}  // namespace
}  // namespace hedgekit
