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

// Builders for the model-side transducers.
//
// Three symbol tables are involved:
//   labels  CTC output labels in alphabet column order, blank designated;
//   chars   characters spelled by the labels, " " for the word boundary;
//   words   vocabulary words followed by structural tags.
//
// Token FST: labels -> chars. Lexicon FST: chars -> words. Intent and slot
// FSTs: words -> words.

#ifndef SLUFST_GRAMMAR_H_
#define SLUFST_GRAMMAR_H_

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "slufst/alphabet.h"
#include "slufst/dialog-spec.h"
#include "slufst/wfst.h"

namespace slufst {

enum class GrammarMode { kFixed, kBigram };

std::string_view GrammarModeName(GrammarMode mode);
// Accepts "fixed" and "2gram"; throws Error(kConfig) otherwise.
GrammarMode ParseGrammarMode(std::string_view name);

inline constexpr std::string_view kSlotCloseTag = "#/slot";
std::string IntentTag(std::string_view intent);     // "#intent:<name>"
std::string SlotOpenTag(std::string_view slot);     // "#slot:<name>"
std::string PlaceholderTag(std::string_view slot);  // "⟨<name>⟩"

enum class TagKind { kNone, kIntent, kSlotOpen, kSlotClose, kPlaceholder };
// Classifies a words-table symbol; `name` receives the intent or slot name.
TagKind ClassifyTag(std::string_view symbol, std::string *name = nullptr);

std::shared_ptr<SymbolTable> BuildLabelTable(const Alphabet &alphabet);
std::shared_ptr<SymbolTable> BuildCharTable(const Alphabet &alphabet);
// Epsilon, then every word of the spec in byte order, then every tag in byte
// order. Throws Error(kBuild) for words that look like tags.
std::shared_ptr<SymbolTable> BuildWordTable(const DialogSpec &spec);

// Word-level acceptor over `sentences` whose paths end in an epsilon-input
// arc emitting the intent tag into a single final state. Placeholders are
// single arcs labelled with their placeholder tag.
//   kFixed   shared-prefix union of the sentences, all weights 0;
//   kBigram  bigram model with add-one smoothing. Every context, the
//            sentence start included, distributes mass over the seen tokens
//            plus the sentence end; the end probability sits on the
//            intent-tag arc.
Wfst BuildIntentFst(const std::vector<Sentence> &sentences, GrammarMode mode,
                    const std::string &intent,
                    std::shared_ptr<const SymbolTable> words);

// eps:#slot:<name>, one branch per entry, eps:#/slot. Plain entries map each
// word to itself; synonyms consume the raw words with epsilon output and then
// emit the canonical words on epsilon-input arcs. Branches share prefixes.
Wfst BuildSlotFst(const std::string &slot,
                  const std::vector<LookupEntry> &entries,
                  std::shared_ptr<const SymbolTable> words);

// Replaces every placeholder arc with a copy of its slot FST followed by an
// eps:placeholder arc that carries the placeholder arc's weight. Throws
// Error(kBuild) when a placeholder has no slot FST.
Wfst InsertSlots(const Wfst &intent, const std::map<std::string, Wfst> &slots);

// Closure over a character trie: each word is spelled and terminated by the
// space character, whose arc emits the word. Throws Error(kBuild) for words
// containing spaces or characters missing from `chars`.
Wfst BuildLexiconFst(const std::vector<std::string> &vocabulary,
                     std::shared_ptr<const SymbolTable> chars,
                     std::shared_ptr<const SymbolTable> words);

// CTC collapse from labels to characters: repeats merge, blanks vanish. In
// piece mode each piece is spelled out with the word boundary as a space,
// and spaces before the first emitted character are dropped.
Wfst BuildTokenFst(const Alphabet &alphabet,
                   std::shared_ptr<const SymbolTable> labels,
                   std::shared_ptr<const SymbolTable> chars);

// Characters a label spells: the word boundary becomes " ", the blank
// spells nothing.
std::vector<std::string> SpellLabel(const Alphabet &alphabet,
                                    const std::string &label);

}  // namespace slufst

#endif  // SLUFST_GRAMMAR_H_
