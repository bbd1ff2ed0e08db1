// Copyright 2026 The slufst Authors. All Rights Reserved.
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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "slufst/alphabet.h"
#include "slufst/dialog-spec.h"
#include "slufst/error.h"
#include "slufst/grammar.h"
#include "slufst/model.h"
#include "slufst/utf8.h"
#include "slufst/wfst-ops.h"
#include "test-util.h"

namespace slufst {
namespace {

using testing::AllSequences;
using testing::DataPath;
using testing::EnumerateRelation;
using testing::LabelSeq;

std::vector<std::string> ToSymbols(const SymbolTable &t, const LabelSeq &seq) {
  std::vector<std::string> out;
  for (Label l : seq) out.push_back(t.Symbol(l));
  return out;
}

LabelSeq ToLabels(const SymbolTable &t, const std::vector<std::string> &syms) {
  LabelSeq out;
  for (const auto &s : syms) out.push_back(*t.Find(s));
  return out;
}

std::set<std::vector<std::string>> OutputSequences(const Wfst &fst) {
  std::set<std::vector<std::string>> out;
  for (const auto &[key, cost] : EnumerateRelation(fst, 1e18, 256)) {
    out.insert(ToSymbols(*fst.OutputSymbols(), key.second));
  }
  return out;
}

std::set<std::vector<std::string>> InputSequences(const Wfst &fst) {
  std::set<std::vector<std::string>> out;
  for (const auto &[key, cost] : EnumerateRelation(fst, 1e18, 256)) {
    out.insert(ToSymbols(*fst.InputSymbols(), key.first));
  }
  return out;
}

std::vector<std::string> Split(const std::string &s) { return SplitWords(s); }

std::vector<std::string> Append(std::vector<std::string> a,
                                const std::vector<std::string> &b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

DialogSpec Listing() { return ReadDialogSpecFile(DataPath("listing.json")); }

// ---------------------------------------------------------------------------
// Dialog spec parsing and template expansion.

TEST(DialogSpecTest, ParsesListing) {
  DialogSpec spec = Listing();
  ASSERT_EQ(spec.intents.size(), 1u);
  ASSERT_EQ(spec.intents.at("get-looks").size(), 1u);
  const auto &animals = spec.lookups.at("animal");
  ASSERT_EQ(animals.size(), 4u);
  int synonyms = 0;
  for (const auto &e : animals) {
    if (!e.IsSynonym()) continue;
    ++synonyms;
    EXPECT_EQ(e.raw, Split("hairy frogfish"));
    EXPECT_EQ(e.canonical, Split("striated frogfish"));
  }
  EXPECT_EQ(synonyms, 1);
}

TEST(DialogSpecTest, RejectsSpecWithoutIntents) {
  try {
    ParseDialogSpec(R"j({"intents":{},"lookups":{}})j");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kBuild);
    EXPECT_NE(std::string(e.what()).find("no intents"), std::string::npos);
  }
}

TEST(DialogSpecTest, UnknownSlotIsNamed) {
  try {
    ParseDialogSpec(R"j({"intents":{"paint":["make it [---](color)"]},
                        "lookups":{}})j");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kBuild);
    EXPECT_NE(std::string(e.what()).find("\"color\""), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("\"paint\""), std::string::npos);
  }
}

TEST(DialogSpecTest, MalformedTemplatesAreBuildErrors) {
  for (const char *t : {"(a|b", "a )", "[---](x", "[foo](x)", "((a))",
                        "(|)", ""}) {
    std::string doc = std::string(R"j({"intents":{"i":[")j") + t +
                      R"j("]},"lookups":{"x":["v"]}})j";
    EXPECT_THROW(ParseDialogSpec(doc), Error) << t;
  }
  EXPECT_THROW(ParseDialogSpec("not json"), Error);
  EXPECT_THROW(ParseDialogSpec(R"j({"intents":{"i":[]}})j"), Error);
  EXPECT_THROW(ParseDialogSpec(R"j({"intents":{"a/b":["x"]}})j"), Error);
  EXPECT_THROW(ParseDialogSpec(R"j({"intents":{"i":["x"]},
                                   "lookups":{"s":[]}})j"),
               Error);
}

TEST(ExpandTemplateTest, ListingTemplate) {
  auto out = ExpandTemplate(ParseTemplate("(is a|are) [---](animal) cute"));
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(SentenceToString(out[0]), "is a [---](animal) cute");
  EXPECT_EQ(SentenceToString(out[1]), "are [---](animal) cute");
  EXPECT_TRUE(out[0][2].placeholder);
}

TEST(ExpandTemplateTest, NoGroupsGivesSingleton) {
  auto out = ExpandTemplate(ParseTemplate("turn it off"));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(SentenceToString(out[0]), "turn it off");
}

TEST(ExpandTemplateTest, GroupSizesMultiplyInWrittenOrder) {
  auto out = ExpandTemplate(ParseTemplate("(a|b) x (c|d e|)"));
  std::vector<std::string> expected = {"a x c", "a x d e", "a x",
                                       "b x c", "b x d e", "b x"};
  ASSERT_EQ(out.size(), expected.size());
  for (size_t i = 0; i < out.size(); ++i) {
    EXPECT_EQ(SentenceToString(out[i]), expected[i]);
  }
}

TEST(LookupEntryTest, SynonymAlternatives) {
  auto entries = ParseLookupEntry("(hairy frogfish|frog fish)->striated frogfish");
  ASSERT_EQ(entries.size(), 2u);
  EXPECT_EQ(entries[1].raw, Split("frog fish"));
  EXPECT_EQ(entries[1].Value(), Split("striated frogfish"));
  auto same = ParseLookupEntry("(red)->red");
  EXPECT_FALSE(same[0].IsSynonym());
  EXPECT_THROW(ParseLookupEntry("red->"), Error);
}

// ---------------------------------------------------------------------------
// Intent, slot and lexicon FSTs.

class GrammarFstTest : public ::testing::Test {
 protected:
  void SetUp() override {
    spec_ = Listing();
    words_ = BuildWordTable(spec_);
  }
  DialogSpec spec_;
  std::shared_ptr<SymbolTable> words_;
};

TEST_F(GrammarFstTest, WordTablePutsTagsAfterWords) {
  auto tag = words_->Find("#intent:get-looks");
  auto word = words_->Find("stargazer");
  ASSERT_TRUE(tag && word);
  EXPECT_GT(*tag, *word);
  EXPECT_TRUE(words_->Find(PlaceholderTag("animal")).has_value());
  EXPECT_TRUE(words_->Find("#/slot").has_value());
  EXPECT_EQ(ClassifyTag(PlaceholderTag("animal")), TagKind::kPlaceholder);
  EXPECT_EQ(ClassifyTag("cute"), TagKind::kNone);
}

TEST_F(GrammarFstTest, WordsThatLookLikeTagsAreRejected) {
  DialogSpec bad = ParseDialogSpec(R"j({"intents":{"i":["#/slot"]}})j");
  EXPECT_THROW(BuildWordTable(bad), Error);
}

TEST_F(GrammarFstTest, FixedIntentFstHasTagAtTheEnd) {
  auto sentences =
      ExpandTemplate(spec_.intents.at("get-looks")[0]);
  Wfst fst = BuildIntentFst(sentences, GrammarMode::kFixed, "get-looks", words_);
  std::string ph = PlaceholderTag("animal");
  std::set<std::vector<std::string>> expected = {
      {"is", "a", ph, "cute", "#intent:get-looks"},
      {"are", ph, "cute", "#intent:get-looks"}};
  EXPECT_EQ(OutputSequences(fst), expected);
  for (const auto &[key, cost] : EnumerateRelation(fst, 1e18, 64)) {
    EXPECT_EQ(cost, 0.0);
  }
}

TEST_F(GrammarFstTest, SingleSentenceIsThreeStateChain) {
  auto words = std::make_shared<SymbolTable>();
  words->AddSymbol("stop");
  words->AddSymbol("#intent:halt");
  Wfst fst = BuildIntentFst({{{"stop", false}}}, GrammarMode::kFixed, "halt",
                            words);
  EXPECT_EQ(fst.NumStates(), 3u);
  EXPECT_EQ(fst.TotalArcs(), 2u);
  auto r = Accepts(fst, ToLabels(*words, {"stop"}));
  ASSERT_TRUE(r);
  EXPECT_EQ(ToSymbols(*words, r->output),
            (std::vector<std::string>{"stop", "#intent:halt"}));
}

TEST_F(GrammarFstTest, BigramCostsMatchHandComputedEstimates) {
  auto words = std::make_shared<SymbolTable>();
  for (const char *w : {"a", "b", "c", "#intent:x"}) words->AddSymbol(w);
  std::vector<Sentence> sentences = {{{"a", false}, {"b", false}},
                                     {{"a", false}, {"c", false}}};
  Wfst fst = BuildIntentFst(sentences, GrammarMode::kBigram, "x", words);
  // Outcomes per context: a, b, c, end = 4.
  // P(a|<s>) = (2+1)/(2+4), P(b|a) = (1+1)/(2+4), P(end|b) = (1+1)/(1+4).
  double expected = -std::log(3.0 / 6) - std::log(2.0 / 6) - std::log(2.0 / 5);
  auto r = Accepts(fst, ToLabels(*words, {"a", "b"}));
  ASSERT_TRUE(r);
  EXPECT_NEAR(r->cost.Value(), expected, 1e-9);
  // Unseen continuation still has smoothed mass: P(a|b) = 1/5.
  auto unseen = Accepts(fst, ToLabels(*words, {"a", "b", "a", "c"}));
  ASSERT_TRUE(unseen);
  EXPECT_GT(unseen->cost.Value(), r->cost.Value());
}

TEST_F(GrammarFstTest, BigramContextsAreNormalized) {
  DialogSpec spec = ParseDialogSpec(R"j({"intents":{"i":[
      "(turn|switch) (on|off) the (light|fan)", "lights (on|off)"]}})j");
  auto words = BuildWordTable(spec);
  std::vector<Sentence> sentences;
  for (const auto &t : spec.intents.at("i")) {
    for (const auto &s : ExpandTemplate(t)) sentences.push_back(s);
  }
  Wfst fst = BuildIntentFst(sentences, GrammarMode::kBigram, "i", words);
  for (StateId s = 0; s < fst.NumStates(); ++s) {
    if (fst.NumArcs(s) == 0) continue;
    double total = 0.0;
    for (const Arc &arc : fst.Arcs(s)) {
      EXPECT_GE(arc.weight.Value(), 0.0);
      total += std::exp(-arc.weight.Value());
    }
    EXPECT_NEAR(total, 1.0, 1e-9) << "state " << s;
  }
}

TEST_F(GrammarFstTest, SlotFstSingleWordIsFourStateChain) {
  auto words = std::make_shared<SymbolTable>();
  for (const char *w : {"red", "#slot:color", "#/slot"}) words->AddSymbol(w);
  Wfst fst = BuildSlotFst("color", ParseLookupEntry("red"), words);
  EXPECT_EQ(fst.NumStates(), 4u);
  EXPECT_EQ(fst.TotalArcs(), 3u);
  EXPECT_EQ(OutputSequences(fst),
            (std::set<std::vector<std::string>>{
                {"#slot:color", "red", "#/slot"}}));
}

TEST_F(GrammarFstTest, SlotFstSynonymEmitsCanonicalOnly) {
  Wfst fst = BuildSlotFst("animal", spec_.lookups.at("animal"), words_);
  auto r = Accepts(fst, ToLabels(*words_, Split("hairy frogfish")));
  ASSERT_TRUE(r);
  EXPECT_EQ(ToSymbols(*words_, r->output),
            Append(Append({"#slot:animal"}, Split("striated frogfish")),
                   {"#/slot"}));
  auto plain = Accepts(fst, ToLabels(*words_, Split("aye aye")));
  ASSERT_TRUE(plain);
  EXPECT_EQ(ToSymbols(*words_, plain->output),
            (std::vector<std::string>{"#slot:animal", "aye", "aye", "#/slot"}));
  EXPECT_EQ(InputSequences(fst).size(), 4u);
}

TEST_F(GrammarFstTest, InsertSlotsOnListing) {
  Wfst g = BuildIntentGrammar(spec_, "get-looks", GrammarMode::kFixed, words_);
  auto r = Accepts(g, ToLabels(*words_, Split("is a atlantic stargazer cute")));
  ASSERT_TRUE(r);
  EXPECT_EQ(JoinWords(ToSymbols(*words_, r->output)),
            "is a #slot:animal atlantic stargazer #/slot " +
                PlaceholderTag("animal") + " cute #intent:get-looks");
  EXPECT_FALSE(
      Accepts(g, ToLabels(*words_, Split("is a striated frogfish cute"))));
}

TEST_F(GrammarFstTest, InsertSlotsWithoutPlaceholdersIsUnchanged) {
  auto words = std::make_shared<SymbolTable>();
  for (const char *w : {"stop", "#intent:halt"}) words->AddSymbol(w);
  Wfst fst = BuildIntentFst({{{"stop", false}}}, GrammarMode::kFixed, "halt",
                            words);
  Wfst inserted = InsertSlots(fst, {});
  EXPECT_EQ(EnumerateRelation(fst, 1e18, 8), EnumerateRelation(inserted, 1e18, 8));
}

TEST_F(GrammarFstTest, InsertSlotsMissingSlotIsBuildError) {
  auto sentences = ExpandTemplate(spec_.intents.at("get-looks")[0]);
  Wfst fst = BuildIntentFst(sentences, GrammarMode::kFixed, "get-looks", words_);
  EXPECT_THROW(InsertSlots(fst, {}), Error);
}

TEST_F(GrammarFstTest, TwoPlaceholdersOfOneSlotSpliceIndependently) {
  DialogSpec spec = ParseDialogSpec(R"j({
    "intents": {"mix": ["(mix|blend) [---](c) and [---](c)"]},
    "lookups": {"c": ["red", "deep blue"]}})j");
  auto words = BuildWordTable(spec);
  Wfst g = BuildIntentGrammar(spec, "mix", GrammarMode::kFixed, words);
  EXPECT_EQ(InputSequences(g).size(), 2u * 2u * 2u);
}

// Accepted word sequences equal templates x slot entries, by brute force.
TEST_F(GrammarFstTest, FixedModeMatchesBruteForceExpansion) {
  DialogSpec spec = ParseDialogSpec(R"j({
    "intents": {
      "order": ["(i want|give me) [---](food) (please|)",
                "[---](food) with [---](side)"],
      "cancel": ["(cancel|stop) (it|the order|)"]
    },
    "lookups": {
      "food": ["pizza", "hot dog", "(burger|cheese burger)->hamburger"],
      "side": ["fries", "(salad)->green salad"]
    }})j");
  auto words = BuildWordTable(spec);
  for (const auto &[intent, templates] : spec.intents) {
    std::set<std::vector<std::string>> inputs, outputs;
    for (const auto &t : templates) {
      for (const auto &sentence : ExpandTemplate(t)) {
        std::vector<std::pair<std::vector<std::string>,
                              std::vector<std::string>>>
            partial = {{{}, {}}};
        for (const auto &token : sentence) {
          decltype(partial) next;
          for (const auto &[in, out] : partial) {
            if (!token.placeholder) {
              next.push_back({Append(in, {token.text}),
                              Append(out, {token.text})});
              continue;
            }
            for (const auto &e : spec.lookups.at(token.text)) {
              auto o = Append(out, {"#slot:" + token.text});
              o = Append(Append(o, e.Value()),
                         {"#/slot", PlaceholderTag(token.text)});
              next.push_back({Append(in, e.raw), o});
            }
          }
          partial = std::move(next);
        }
        for (const auto &[in, out] : partial) {
          inputs.insert(in);
          outputs.insert(Append(out, {"#intent:" + intent}));
        }
      }
    }
    ASSERT_LE(inputs.size(), 200u);
    Wfst g = BuildIntentGrammar(spec, intent, GrammarMode::kFixed, words);
    EXPECT_EQ(InputSequences(g), inputs) << intent;
    EXPECT_EQ(OutputSequences(g), outputs) << intent;
  }
}

class LexiconTest : public ::testing::Test {
 protected:
  void SetUp() override {
    alphabet_ = ParseAlphabet(R"j({"symbols":[" ","a","b","c","-"],"blank":"-"})j");
    chars_ = BuildCharTable(alphabet_);
  }
  Alphabet alphabet_;
  std::shared_ptr<SymbolTable> chars_;
};

TEST_F(LexiconTest, SharedPrefixTrie) {
  auto words = std::make_shared<SymbolTable>();
  words->AddSymbol("ab");
  words->AddSymbol("abba");
  Wfst lex = BuildLexiconFst({"ab", "abba"}, chars_, words);
  // root, a, ab, abb, abba: the "ab" prefix is shared.
  EXPECT_EQ(lex.NumStates(), 5u);
  auto r = Accepts(lex, ToLabels(*chars_, {"a", "b", " ", "a", "b", "b", "a", " "}));
  ASSERT_TRUE(r);
  EXPECT_EQ(ToSymbols(*words, r->output), (std::vector<std::string>{"ab", "abba"}));
  EXPECT_FALSE(Accepts(lex, ToLabels(*chars_, {"a", "b"})));
}

TEST_F(LexiconTest, SingleWord) {
  auto words = std::make_shared<SymbolTable>();
  words->AddSymbol("a");
  Wfst lex = BuildLexiconFst({"a"}, chars_, words);
  EXPECT_EQ(lex.NumStates(), 2u);
  EXPECT_EQ(lex.TotalArcs(), 2u);
}

TEST_F(LexiconTest, RejectsBadWords) {
  auto words = std::make_shared<SymbolTable>();
  words->AddSymbol("a-b");
  words->AddSymbol("xy");
  EXPECT_THROW(BuildLexiconFst({"a-b"}, chars_, words), Error);
  EXPECT_THROW(BuildLexiconFst({"xy"}, chars_, words), Error);
  EXPECT_THROW(BuildLexiconFst({}, chars_, words), Error);
}

TEST_F(LexiconTest, AcceptsExactlyWordSpaceSequences) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> len(1, 3), ch(0, 2);
  std::set<std::string> vocab;
  while (vocab.size() < 10) {
    std::string w;
    for (int i = len(rng); i > 0; --i) w.push_back("abc"[ch(rng)]);
    vocab.insert(w);
  }
  auto words = std::make_shared<SymbolTable>();
  for (const auto &w : vocab) words->AddSymbol(w);
  Wfst lex = BuildLexiconFst({vocab.begin(), vocab.end()}, chars_, words);
  for (const auto &seq : AllSequences(4, 5)) {
    std::string text;
    for (Label l : seq) text += chars_->Symbol(l);
    // Oracle: text is w1 ' ' w2 ' ' ... with every w in the vocabulary.
    std::vector<std::string> expected;
    bool ok = true;
    size_t pos = 0;
    while (pos < text.size()) {
      size_t sp = text.find(' ', pos);
      if (sp == std::string::npos || sp == pos ||
          !vocab.contains(text.substr(pos, sp - pos))) {
        ok = false;
        break;
      }
      expected.push_back(text.substr(pos, sp - pos));
      pos = sp + 1;
    }
    auto r = Accepts(lex, seq);
    ASSERT_EQ(ok, r.has_value()) << "'" << text << "'";
    if (ok) EXPECT_EQ(ToSymbols(*words, r->output), expected);
  }
}

// ---------------------------------------------------------------------------
// Token FST.

std::string CollapseOracle(const std::vector<std::string> &labels,
                           const std::string &blank) {
  std::string out;
  std::string prev;
  for (const auto &l : labels) {
    if (l == blank) {
      prev.clear();
      continue;
    }
    if (l == prev) continue;
    out += l;
    prev = l;
  }
  return out;
}

TEST(TokenFstTest, CollapsesRepeatsAndBlanks) {
  Alphabet alphabet = ReadAlphabetFile(DataPath("alphabet-toy.json"));
  auto labels = BuildLabelTable(alphabet);
  auto chars = BuildCharTable(alphabet);
  Wfst tokens = BuildTokenFst(alphabet, labels, chars);
  std::vector<std::string> input;
  for (char c : std::string("aaab ab-b")) input.emplace_back(1, c);
  auto r = Accepts(tokens, ToLabels(*labels, input));
  ASSERT_TRUE(r);
  std::string out;
  for (const auto &c : ToSymbols(*chars, r->output)) out += c;
  EXPECT_EQ(out, "ab abb");
  EXPECT_EQ(r->cost.Value(), 0.0);
}

TEST(TokenFstTest, AllShortStringsMatchCollapseOracle) {
  Alphabet alphabet = ReadAlphabetFile(DataPath("alphabet-toy.json"));
  auto labels = BuildLabelTable(alphabet);
  auto chars = BuildCharTable(alphabet);
  Wfst tokens = BuildTokenFst(alphabet, labels, chars);
  size_t checked = 0;
  for (const auto &seq : AllSequences(4, 6)) {
    std::vector<std::string> syms = ToSymbols(*labels, seq);
    auto r = Accepts(tokens, seq);
    ASSERT_TRUE(r);
    std::string out;
    for (const auto &c : ToSymbols(*chars, r->output)) out += c;
    ASSERT_EQ(out, CollapseOracle(syms, "-"));
    ++checked;
  }
  EXPECT_EQ(checked, 1u + 4 + 16 + 64 + 256 + 1024 + 4096);
}

TEST(TokenFstTest, AllBlanksGiveEmptyOutput) {
  Alphabet alphabet = ReadAlphabetFile(DataPath("alphabet-toy.json"));
  auto labels = BuildLabelTable(alphabet);
  Wfst tokens = BuildTokenFst(alphabet, labels, BuildCharTable(alphabet));
  auto r = Accepts(tokens, ToLabels(*labels, {"-", "-", "-"}));
  ASSERT_TRUE(r);
  EXPECT_TRUE(r->output.empty());
}

TEST(TokenFstTest, PieceModeMatchesCollapseThenSpell) {
  const std::string mark = "\xE2\x96\x81";
  Alphabet alphabet = ParseAlphabet(R"j({"type":"pieces","symbols":[")j" + mark +
                                    R"j(ab",")j" + mark + R"j(","a","b","ba",
                                    "<blank>"],"blank":"<blank>"})j");
  auto labels = BuildLabelTable(alphabet);
  auto chars = BuildCharTable(alphabet);
  Wfst tokens = BuildTokenFst(alphabet, labels, chars);
  for (const auto &seq : AllSequences(6, 5)) {
    std::vector<std::string> syms = ToSymbols(*labels, seq);
    // Oracle: collapse on labels, spell, boundary -> space, strip leading.
    std::string spelled;
    std::string prev;
    for (const auto &l : syms) {
      if (l == "<blank>") {
        prev.clear();
        continue;
      }
      if (l == prev) continue;
      prev = l;
      std::string s = l;
      for (size_t p; (p = s.find(mark)) != std::string::npos;) {
        s.replace(p, mark.size(), " ");
      }
      spelled += s;
    }
    spelled.erase(0, spelled.find_first_not_of(' ') == std::string::npos
                         ? spelled.size()
                         : spelled.find_first_not_of(' '));
    auto r = Accepts(tokens, seq);
    ASSERT_TRUE(r);
    std::string out;
    for (const auto &c : ToSymbols(*chars, r->output)) out += c;
    ASSERT_EQ(out, spelled);
  }
}

TEST(AlphabetTest, Validation) {
  EXPECT_THROW(ParseAlphabet(R"j([" ","a"])j"), Error);         // no blank
  EXPECT_THROW(ParseAlphabet(R"j(["a","<blank>"])j"), Error);   // no space
  EXPECT_THROW(ParseAlphabet(R"j([" ","a","a","<blank>"])j"), Error);
  EXPECT_THROW(ParseAlphabet(R"j([" ","ab","<blank>"])j"), Error);
  EXPECT_THROW(ParseAlphabet(R"j({"type":"bpe","symbols":[]})j"), Error);
  Alphabet a = ParseAlphabet(R"j([" ","a","<blank>"])j");
  EXPECT_EQ(a.kind, LabelKind::kChars);
  EXPECT_EQ(AlphabetFromJson(AlphabetToJson(a)).symbols, a.symbols);
}

// ---------------------------------------------------------------------------
// Model bundle.

std::map<std::string, std::string> ReadDir(const std::filesystem::path &dir) {
  std::map<std::string, std::string> files;
  for (const auto &entry : std::filesystem::directory_iterator(dir)) {
    std::ifstream is(entry.path(), std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    files[entry.path().filename().string()] = ss.str();
  }
  return files;
}

TEST(ModelTest, BuildIsDeterministicAndRoundTrips) {
  DialogSpec spec = Listing();
  Alphabet alphabet = ReadAlphabetFile(DataPath("alphabet-en.json"));
  auto base = std::filesystem::temp_directory_path() / "slufst-model-test";
  std::filesystem::remove_all(base);
  SaveModel(BuildModel(spec, alphabet, GrammarMode::kFixed, 1), base / "one");
  SaveModel(BuildModel(spec, alphabet, GrammarMode::kFixed, 4), base / "two");
  auto one = ReadDir(base / "one");
  EXPECT_EQ(one, ReadDir(base / "two"));
  EXPECT_TRUE(one.contains("intent-get-looks.fwf"));
  EXPECT_TRUE(one.contains("tokens.fwf"));
  EXPECT_TRUE(one.contains("manifest.json"));

  ModelBundle loaded = LoadModel(base / "one");
  SaveModel(loaded, base / "three");
  EXPECT_EQ(one, ReadDir(base / "three"));
  EXPECT_EQ(loaded.intents.begin()->second.OutputSymbols().get(),
            loaded.words.get());
  std::filesystem::remove_all(base);
}

TEST(ModelTest, ThreeIntentsGiveThreeModels) {
  DialogSpec spec = ParseDialogSpec(R"j({"intents":{
      "a":["go home"],"b":["stop now"],"c":["go now"]}})j");
  Alphabet alphabet = ReadAlphabetFile(DataPath("alphabet-en.json"));
  ModelBundle model = BuildModel(spec, alphabet, GrammarMode::kFixed);
  EXPECT_EQ(model.intents.size(), 3u);
}

TEST(ModelTest, ListingLgAcceptsCharacterSequence) {
  DialogSpec spec = Listing();
  Alphabet alphabet = ReadAlphabetFile(DataPath("alphabet-en.json"));
  ModelBundle model = BuildModel(spec, alphabet, GrammarMode::kFixed);
  const Wfst &lg = model.intents.at("get-looks");
  LabelSeq input;
  for (char c : std::string("is a aye aye cute ")) {
    input.push_back(*model.chars->Find(std::string(1, c)));
  }
  auto r = Accepts(lg, input);
  ASSERT_TRUE(r);
  EXPECT_EQ(JoinWords(ToSymbols(*model.words, r->output)),
            "is a #slot:animal aye aye #/slot " + PlaceholderTag("animal") +
                " cute #intent:get-looks");
}

// Every LG output path ends in one intent tag with balanced slot markers.
TEST(ModelTest, LgOutputsAreWellFormed) {
  DialogSpec spec = ParseDialogSpec(R"j({
    "intents": {"set": ["set [---](room) to [---](level)", "(dim|brighten) [---](room)"]},
    "lookups": {"room": ["kitchen", "(bath)->bathroom"], "level": ["high", "low"]}})j");
  Alphabet alphabet = ReadAlphabetFile(DataPath("alphabet-en.json"));
  for (GrammarMode mode : {GrammarMode::kFixed, GrammarMode::kBigram}) {
    ModelBundle model = BuildModel(spec, alphabet, mode);
    Wfst g = BuildIntentGrammar(spec, "set", mode, model.words);
    for (const auto &[key, cost] : EnumerateRelation(g, 30.0, 12)) {
      auto out = ToSymbols(*model.words, key.second);
      ASSERT_FALSE(out.empty());
      EXPECT_EQ(out.back(), "#intent:set");
      int depth = 0, tags = 0;
      for (const auto &s : out) {
        TagKind k = ClassifyTag(s);
        if (k == TagKind::kIntent) ++tags;
        if (k == TagKind::kSlotOpen) EXPECT_EQ(depth++, 0);
        if (k == TagKind::kSlotClose) EXPECT_EQ(--depth, 0);
      }
      EXPECT_EQ(tags, 1);
      EXPECT_EQ(depth, 0);
    }
  }
}

}  // namespace
}  // namespace slufst
