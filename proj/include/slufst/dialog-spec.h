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

// Dialog specification: intents with sentence templates, and slot lookups.
//
//   {
//     "intents": { "get-looks": ["(is a|are) [---](animal) cute"] },
//     "lookups": { "animal": ["aye aye", "(hairy frogfish)->striated frogfish"] }
//   }
//
// Template syntax: plain words, `(a|b c|)` alternation over word sequences
// (an empty alternative makes the group optional, groups do not nest), and
// `[---](slot)` placeholders. Lookup entries are word sequences, optionally
// `(raw one|raw two)->canonical` synonyms.

#ifndef SLUFST_DIALOG_SPEC_H_
#define SLUFST_DIALOG_SPEC_H_

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace slufst {

struct WordToken {
  std::string word;
};

struct SlotToken {
  std::string slot;
};

using TemplateElement = std::variant<WordToken, SlotToken>;

struct AlternationGroup {
  std::vector<std::vector<TemplateElement>> alternatives;
};

using TemplatePart = std::variant<WordToken, SlotToken, AlternationGroup>;

struct SentenceTemplate {
  std::string source;
  std::vector<TemplatePart> parts;
};

// One token of an expanded sentence: a literal word or a slot placeholder.
struct SentenceToken {
  std::string text;  // word, or slot name for placeholders
  bool placeholder = false;

  friend auto operator<=>(const SentenceToken &, const SentenceToken &) =
      default;
};

using Sentence = std::vector<SentenceToken>;

struct LookupEntry {
  std::vector<std::string> raw;
  std::vector<std::string> canonical;  // empty unless this is a synonym

  bool IsSynonym() const { return !canonical.empty(); }
  // The slot value reported for this entry.
  const std::vector<std::string> &Value() const {
    return IsSynonym() ? canonical : raw;
  }
};

struct DialogSpec {
  std::map<std::string, std::vector<SentenceTemplate>> intents;
  std::map<std::string, std::vector<LookupEntry>> lookups;
};

// Throws Error(kBuild) naming the intent / template on any violation.
DialogSpec ParseDialogSpec(std::string_view json_text);
DialogSpec ReadDialogSpecFile(const std::string &path);

SentenceTemplate ParseTemplate(std::string_view text);

// Splits one lookup string into entries; alternation on the raw side yields
// one entry per alternative.
std::vector<LookupEntry> ParseLookupEntry(std::string_view text);

// Cartesian expansion, leftmost group varying slowest, alternatives in the
// order written.
std::vector<Sentence> ExpandTemplate(const SentenceTemplate &t);

std::string SentenceToString(const Sentence &sentence);

}  // namespace slufst

#endif  // SLUFST_DIALOG_SPEC_H_
