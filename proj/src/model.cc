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

#include "slufst/model.h"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "parallel.h"
#include "slufst/error.h"
#include "slufst/wfst-io.h"
#include "slufst/wfst-ops.h"

namespace slufst {
namespace {

constexpr int kModelVersion = 1;
constexpr const char *kManifest = "manifest.json";

std::string IntentFileName(const std::string &intent) {
  return "intent-" + intent + ".fwf";
}

std::vector<Sentence> IntentSentences(const DialogSpec &spec,
                                      const std::string &intent) {
  std::vector<Sentence> sentences;
  std::set<Sentence> seen;
  for (const auto &t : spec.intents.at(intent)) {
    for (auto &s : ExpandTemplate(t)) {
      if (seen.insert(s).second) sentences.push_back(std::move(s));
    }
  }
  return sentences;
}

std::vector<std::string> SlotsOf(const std::vector<Sentence> &sentences) {
  std::set<std::string> slots;
  for (const auto &s : sentences) {
    for (const auto &token : s) {
      if (token.placeholder) slots.insert(token.text);
    }
  }
  return {slots.begin(), slots.end()};
}

void WriteText(const std::filesystem::path &path, const std::string &text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  os << text;
  if (!os) throw Error(ErrorKind::kIo, "failed to write " + path.string());
}

nlohmann::json DecodeDefaultsToJson(const DecodeParams &p) {
  nlohmann::json doc;
  doc["top_k"] = p.top_k ? nlohmann::json(*p.top_k) : nlohmann::json();
  doc["mean_k"] = p.mean_k ? nlohmann::json(*p.mean_k) : nlohmann::json();
  doc["gamma"] = p.gamma;
  doc["acoustic_scale"] = p.acoustic_scale;
  return doc;
}

DecodeParams DecodeDefaultsFromJson(const nlohmann::json &doc) {
  DecodeParams p;
  auto optional_int = [&](const char *key, std::optional<int> fallback) {
    if (!doc.contains(key)) return fallback;
    if (doc[key].is_null()) return std::optional<int>();
    return std::optional<int>(doc[key].get<int>());
  };
  p.top_k = optional_int("top_k", p.top_k);
  p.mean_k = optional_int("mean_k", p.mean_k);
  p.gamma = doc.value("gamma", p.gamma);
  p.acoustic_scale = doc.value("acoustic_scale", p.acoustic_scale);
  return p;
}

// Makes every FST share one instance per table, checking contents agree.
std::shared_ptr<const SymbolTable> Unify(
    const std::shared_ptr<const SymbolTable> &canonical,
    const std::shared_ptr<const SymbolTable> &loaded, const std::string &what) {
  if (!loaded || *loaded != *canonical) {
    throw Error(ErrorKind::kIo, what + " has an inconsistent symbol table");
  }
  return canonical;
}

}  // namespace

Wfst BuildIntentGrammar(const DialogSpec &spec, const std::string &intent,
                        GrammarMode mode,
                        std::shared_ptr<const SymbolTable> words) {
  std::vector<Sentence> sentences = IntentSentences(spec, intent);
  std::map<std::string, Wfst> slot_fsts;
  for (const auto &slot : SlotsOf(sentences)) {
    slot_fsts.emplace(slot, BuildSlotFst(slot, spec.lookups.at(slot), words));
  }
  return InsertSlots(BuildIntentFst(sentences, mode, intent, words), slot_fsts);
}

ModelBundle BuildModel(const DialogSpec &spec, const Alphabet &alphabet,
                       GrammarMode mode, int num_threads) {
  ModelBundle model;
  model.alphabet = alphabet;
  model.mode = mode;
  model.labels = BuildLabelTable(alphabet);
  model.chars = BuildCharTable(alphabet);
  model.words = BuildWordTable(spec);
  model.tokens = BuildTokenFst(alphabet, model.labels, model.chars);

  std::vector<std::string> names;
  for (const auto &[name, templates] : spec.intents) names.push_back(name);
  std::vector<Wfst> built(names.size());
  std::vector<std::vector<std::string>> slots(names.size());
  std::vector<std::set<std::string>> vocab(names.size());
  internal::ParallelFor(names.size(), num_threads, [&](size_t i) {
    const std::string &name = names[i];
    std::vector<Sentence> sentences = IntentSentences(spec, name);
    slots[i] = SlotsOf(sentences);
    for (const auto &s : sentences) {
      for (const auto &token : s) {
        if (!token.placeholder) vocab[i].insert(token.text);
      }
    }
    for (const auto &slot : slots[i]) {
      for (const auto &entry : spec.lookups.at(slot)) {
        vocab[i].insert(entry.raw.begin(), entry.raw.end());
      }
    }
    Wfst grammar = BuildIntentGrammar(spec, name, mode, model.words);
    Wfst lexicon = BuildLexiconFst({vocab[i].begin(), vocab[i].end()},
                                   model.chars, model.words);
    built[i] = ArcSort(Compose(lexicon, grammar));
    if (built[i].Start() == kNoStateId) {
      throw Error(ErrorKind::kBuild,
                  "intent \"" + name + "\" compiles to an empty grammar");
    }
  });
  std::set<std::string> all_words;
  for (size_t i = 0; i < names.size(); ++i) {
    model.intents.emplace(names[i], std::move(built[i]));
    model.intent_slots.emplace(names[i], std::move(slots[i]));
    all_words.insert(vocab[i].begin(), vocab[i].end());
  }
  model.vocabulary.assign(all_words.begin(), all_words.end());
  return model;
}

void SaveModel(const ModelBundle &model, const std::filesystem::path &dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorKind::kIo, "cannot create " + dir.string() + ": " +
                                    ec.message());
  }
  WriteWfstFile(model.tokens, dir / "tokens.fwf");
  WriteText(dir / "labels.syms", SymbolTableToText(*model.labels));
  WriteText(dir / "chars.syms", SymbolTableToText(*model.chars));
  WriteText(dir / "words.syms", SymbolTableToText(*model.words));

  nlohmann::json manifest;
  manifest["format"] = "slufst-model";
  manifest["version"] = kModelVersion;
  manifest["mode"] = std::string(GrammarModeName(model.mode));
  manifest["alphabet"] = AlphabetToJson(model.alphabet);
  manifest["vocabulary"] = model.vocabulary;
  manifest["decode_defaults"] = DecodeDefaultsToJson(model.defaults);
  manifest["intents"] = nlohmann::json::object();
  for (const auto &[name, lg] : model.intents) {
    WriteWfstFile(lg, dir / IntentFileName(name));
    manifest["intents"][name] = {
        {"file", IntentFileName(name)},
        {"slots", model.intent_slots.at(name)},
        {"states", lg.NumStates()},
        {"arcs", lg.TotalArcs()},
    };
  }
  WriteText(dir / kManifest, manifest.dump(2) + "\n");
}

ModelBundle LoadModel(const std::filesystem::path &dir) {
  std::ifstream is(dir / kManifest);
  if (!is) {
    throw Error(ErrorKind::kIo, "no " + std::string(kManifest) + " in " +
                                    dir.string());
  }
  nlohmann::json manifest;
  try {
    is >> manifest;
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::kIo, std::string("bad manifest: ") + e.what());
  }

  ModelBundle model;
  try {
    if (manifest.value("format", "") != "slufst-model") {
      throw Error(ErrorKind::kIo, "not a model manifest");
    }
    if (manifest.at("version").get<int>() != kModelVersion) {
      throw Error(ErrorKind::kIo, "unsupported model version");
    }
    model.mode = ParseGrammarMode(manifest.at("mode").get<std::string>());
    model.alphabet = AlphabetFromJson(manifest.at("alphabet"));
    model.vocabulary =
        manifest.at("vocabulary").get<std::vector<std::string>>();
    model.defaults = DecodeDefaultsFromJson(
        manifest.value("decode_defaults", nlohmann::json::object()));
    model.tokens = ReadWfstFile(dir / "tokens.fwf");
    model.labels = Unify(BuildLabelTable(model.alphabet),
                         model.tokens.InputSymbols(), "tokens.fwf");
    model.chars = Unify(BuildCharTable(model.alphabet),
                        model.tokens.OutputSymbols(), "tokens.fwf");
    model.tokens.SetInputSymbols(model.labels);
    model.tokens.SetOutputSymbols(model.chars);
    for (const auto &[name, entry] : manifest.at("intents").items()) {
      std::string file = entry.at("file").get<std::string>();
      if (file != IntentFileName(name)) {
        throw Error(ErrorKind::kIo, "unexpected file name " + file);
      }
      Wfst lg = ReadWfstFile(dir / file);
      if (!model.words) {
        if (!lg.OutputSymbols()) {
          throw Error(ErrorKind::kIo, file + " has no output symbols");
        }
        model.words = lg.OutputSymbols();
      }
      lg.SetInputSymbols(Unify(model.chars, lg.InputSymbols(), file));
      lg.SetOutputSymbols(Unify(model.words, lg.OutputSymbols(), file));
      model.intents.emplace(name, std::move(lg));
      model.intent_slots.emplace(
          name, entry.value("slots", std::vector<std::string>()));
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::kIo, std::string("bad manifest: ") + e.what());
  }
  if (model.intents.empty()) {
    throw Error(ErrorKind::kIo, "model defines no intents");
  }
  return model;
}

}  // namespace slufst
