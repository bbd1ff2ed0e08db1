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

#include "slufst/grammar.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <tuple>
#include <utility>

#include "slufst/error.h"
#include "slufst/utf8.h"
#include "slufst/wfst-ops.h"

namespace slufst {
namespace {

constexpr std::string_view kIntentPrefix = "#intent:";
constexpr std::string_view kSlotPrefix = "#slot:";
constexpr std::string_view kPlaceholderOpen = "\xE2\x9F\xA8";   // U+27E8
constexpr std::string_view kPlaceholderClose = "\xE2\x9F\xA9";  // U+27E9

Label RequireLabel(const SymbolTable &table, std::string_view symbol) {
  auto label = table.Find(symbol);
  if (!label) {
    throw Error(ErrorKind::kBuild,
                "symbol '" + std::string(symbol) + "' is not in the table");
  }
  return *label;
}

Label TokenLabel(const SymbolTable &words, const SentenceToken &token) {
  return RequireLabel(words, token.placeholder ? PlaceholderTag(token.text)
                                               : token.text);
}

void CollectElementWords(const TemplateElement &e, std::set<std::string> *out) {
  if (const auto *w = std::get_if<WordToken>(&e)) out->insert(w->word);
}

}  // namespace

std::string_view GrammarModeName(GrammarMode mode) {
  return mode == GrammarMode::kFixed ? "fixed" : "2gram";
}

GrammarMode ParseGrammarMode(std::string_view name) {
  if (name == "fixed") return GrammarMode::kFixed;
  if (name == "2gram") return GrammarMode::kBigram;
  throw Error(ErrorKind::kConfig, "unknown grammar mode '" + std::string(name) +
                                      "' (expected fixed or 2gram)");
}

std::string IntentTag(std::string_view intent) {
  return std::string(kIntentPrefix) + std::string(intent);
}

std::string SlotOpenTag(std::string_view slot) {
  return std::string(kSlotPrefix) + std::string(slot);
}

std::string PlaceholderTag(std::string_view slot) {
  return std::string(kPlaceholderOpen) + std::string(slot) +
         std::string(kPlaceholderClose);
}

TagKind ClassifyTag(std::string_view symbol, std::string *name) {
  auto set_name = [&](std::string_view n) {
    if (name != nullptr) *name = std::string(n);
  };
  if (symbol == kSlotCloseTag) return TagKind::kSlotClose;
  if (symbol.starts_with(kIntentPrefix)) {
    set_name(symbol.substr(kIntentPrefix.size()));
    return TagKind::kIntent;
  }
  if (symbol.starts_with(kSlotPrefix)) {
    set_name(symbol.substr(kSlotPrefix.size()));
    return TagKind::kSlotOpen;
  }
  if (symbol.size() > kPlaceholderOpen.size() + kPlaceholderClose.size() &&
      symbol.starts_with(kPlaceholderOpen) &&
      symbol.ends_with(kPlaceholderClose)) {
    set_name(symbol.substr(kPlaceholderOpen.size(),
                           symbol.size() - kPlaceholderOpen.size() -
                               kPlaceholderClose.size()));
    return TagKind::kPlaceholder;
  }
  return TagKind::kNone;
}

std::vector<std::string> SpellLabel(const Alphabet &alphabet,
                                    const std::string &label) {
  if (label == alphabet.blank) return {};
  if (alphabet.kind == LabelKind::kChars) {
    return {label == alphabet.space ? std::string(" ") : label};
  }
  std::vector<std::string> chars = SplitCodePoints(label);
  std::vector<std::string> boundary = SplitCodePoints(alphabet.word_boundary);
  std::vector<std::string> out;
  for (size_t i = 0; i < chars.size();) {
    if (!boundary.empty() && i + boundary.size() <= chars.size() &&
        std::equal(boundary.begin(), boundary.end(), chars.begin() + i)) {
      out.emplace_back(" ");
      i += boundary.size();
    } else {
      out.push_back(chars[i++]);
    }
  }
  return out;
}

std::shared_ptr<SymbolTable> BuildLabelTable(const Alphabet &alphabet) {
  ValidateAlphabet(alphabet);
  auto table = std::make_shared<SymbolTable>();
  for (const auto &s : alphabet.symbols) table->AddSymbol(s);
  table->SetBlank(*table->Find(alphabet.blank));
  return table;
}

std::shared_ptr<SymbolTable> BuildCharTable(const Alphabet &alphabet) {
  ValidateAlphabet(alphabet);
  auto table = std::make_shared<SymbolTable>();
  table->AddSymbol(" ");
  if (alphabet.kind == LabelKind::kChars) {
    for (const auto &s : alphabet.symbols) {
      for (const auto &c : SpellLabel(alphabet, s)) table->AddSymbol(c);
    }
  } else {
    std::set<std::string> chars;
    for (const auto &s : alphabet.symbols) {
      for (const auto &c : SpellLabel(alphabet, s)) chars.insert(c);
    }
    for (const auto &c : chars) table->AddSymbol(c);
  }
  return table;
}

std::shared_ptr<SymbolTable> BuildWordTable(const DialogSpec &spec) {
  std::set<std::string> words;
  std::set<std::string> tags = {std::string(kSlotCloseTag)};
  for (const auto &[intent, templates] : spec.intents) {
    tags.insert(IntentTag(intent));
    for (const auto &t : templates) {
      for (const auto &part : t.parts) {
        if (const auto *w = std::get_if<WordToken>(&part)) {
          words.insert(w->word);
        } else if (const auto *g = std::get_if<AlternationGroup>(&part)) {
          for (const auto &alt : g->alternatives) {
            for (const auto &e : alt) CollectElementWords(e, &words);
          }
        }
      }
    }
  }
  for (const auto &[slot, entries] : spec.lookups) {
    tags.insert(SlotOpenTag(slot));
    tags.insert(PlaceholderTag(slot));
    for (const auto &entry : entries) {
      words.insert(entry.raw.begin(), entry.raw.end());
      words.insert(entry.canonical.begin(), entry.canonical.end());
    }
  }
  auto table = std::make_shared<SymbolTable>();
  for (const auto &w : words) {
    if (ClassifyTag(w) != TagKind::kNone || w == SymbolTable::kEpsilonSymbol) {
      throw Error(ErrorKind::kBuild,
                  "word '" + w + "' collides with a reserved symbol");
    }
    table->AddSymbol(w);
  }
  for (const auto &t : tags) table->AddSymbol(t);
  return table;
}

Wfst BuildIntentFst(const std::vector<Sentence> &sentences, GrammarMode mode,
                    const std::string &intent,
                    std::shared_ptr<const SymbolTable> words) {
  if (sentences.empty()) {
    throw Error(ErrorKind::kBuild, "intent \"" + intent + "\" has no sentences");
  }
  const SymbolTable &table = *words;
  const Label tag = RequireLabel(table, IntentTag(intent));
  Wfst fst(words, words);
  const StateId root = fst.AddState();
  fst.SetStart(root);

  if (mode == GrammarMode::kFixed) {
    std::map<std::pair<StateId, Label>, StateId> child;
    std::set<StateId> ends;
    for (const auto &sentence : sentences) {
      StateId s = root;
      for (const auto &token : sentence) {
        Label label = TokenLabel(table, token);
        auto [it, inserted] = child.try_emplace({s, label}, 0);
        if (inserted) {
          it->second = fst.AddState();
          fst.AddArc(s, {label, label, TropicalWeight::One(), it->second});
        }
        s = it->second;
      }
      ends.insert(s);
    }
    const StateId final = fst.AddState();
    fst.SetFinal(final);
    for (StateId e : ends) {
      fst.AddArc(e, {kEpsilon, tag, TropicalWeight::One(), final});
    }
    return fst;
  }

  // Bigram counts over distinct sentences. Context kEpsilon is the sentence
  // start; next-token kEpsilon is the sentence end.
  std::set<Sentence> distinct(sentences.begin(), sentences.end());
  std::map<std::pair<Label, Label>, double> pair_count;
  std::map<Label, double> context_count;
  std::set<Label> tokens;
  for (const auto &sentence : distinct) {
    Label prev = kEpsilon;
    for (const auto &token : sentence) {
      Label label = TokenLabel(table, token);
      tokens.insert(label);
      pair_count[{prev, label}] += 1;
      context_count[prev] += 1;
      prev = label;
    }
    pair_count[{prev, kEpsilon}] += 1;
    context_count[prev] += 1;
  }
  const double outcomes = static_cast<double>(tokens.size()) + 1.0;
  std::map<Label, StateId> state_of = {{kEpsilon, root}};
  for (Label t : tokens) state_of[t] = fst.AddState();
  const StateId final = fst.AddState();
  fst.SetFinal(final);
  auto cost = [&](Label context, Label next) {
    auto it = pair_count.find({context, next});
    double n = it == pair_count.end() ? 0.0 : it->second;
    return TropicalWeight(
        -std::log((n + 1.0) / (context_count[context] + outcomes)));
  };
  for (const auto &[context, state] : state_of) {
    for (Label t : tokens) {
      fst.AddArc(state, {t, t, cost(context, t), state_of[t]});
    }
    fst.AddArc(state, {kEpsilon, tag, cost(context, kEpsilon), final});
  }
  return fst;
}

Wfst BuildSlotFst(const std::string &slot,
                  const std::vector<LookupEntry> &entries,
                  std::shared_ptr<const SymbolTable> words) {
  if (entries.empty()) {
    throw Error(ErrorKind::kBuild, "slot \"" + slot + "\" has no values");
  }
  const SymbolTable &table = *words;
  Wfst fst(words, words);
  const StateId start = fst.AddState();
  const StateId root = fst.AddState();
  fst.SetStart(start);
  fst.AddArc(start, {kEpsilon, RequireLabel(table, SlotOpenTag(slot)),
                     TropicalWeight::One(), root});

  std::map<std::tuple<StateId, Label, Label>, StateId> child;
  auto step = [&](StateId s, Label i, Label o) {
    auto [it, inserted] = child.try_emplace({s, i, o}, 0);
    if (inserted) {
      it->second = fst.AddState();
      fst.AddArc(s, {i, o, TropicalWeight::One(), it->second});
    }
    return it->second;
  };
  std::set<StateId> ends;
  for (const auto &entry : entries) {
    StateId s = root;
    for (const auto &w : entry.raw) {
      Label label = RequireLabel(table, w);
      s = step(s, label, entry.IsSynonym() ? kEpsilon : label);
    }
    for (const auto &w : entry.canonical) {
      s = step(s, kEpsilon, RequireLabel(table, w));
    }
    ends.insert(s);
  }
  const StateId final = fst.AddState();
  fst.SetFinal(final);
  const Label close = RequireLabel(table, kSlotCloseTag);
  for (StateId e : ends) {
    fst.AddArc(e, {kEpsilon, close, TropicalWeight::One(), final});
  }
  return fst;
}

Wfst InsertSlots(const Wfst &intent, const std::map<std::string, Wfst> &slots) {
  const SymbolTable *words = intent.InputSymbols().get();
  if (words == nullptr) {
    throw Error(ErrorKind::kBuild, "intent FST has no symbol table");
  }
  Wfst out(intent.InputSymbols(), intent.OutputSymbols());
  if (intent.Start() == kNoStateId) return out;
  for (StateId s = 0; s < intent.NumStates(); ++s) {
    out.AddState();
    if (intent.IsFinal(s)) out.SetFinal(s, intent.Final(s));
  }
  out.SetStart(intent.Start());

  // A slot start without incoming arcs can be merged into the splice source.
  std::map<std::string, bool> mergeable;
  for (const auto &[name, slot] : slots) {
    if (slot.InputSymbols() && *slot.InputSymbols() != *words) {
      throw Error(ErrorKind::kConfig,
                  "slot \"" + name + "\" uses a different symbol table");
    }
    bool merge = slot.Start() != kNoStateId && !slot.IsFinal(slot.Start());
    for (StateId q = 0; merge && q < slot.NumStates(); ++q) {
      for (const Arc &arc : slot.Arcs(q)) {
        if (arc.nextstate == slot.Start()) merge = false;
      }
    }
    mergeable[name] = merge;
  }

  std::string name;
  for (StateId s = 0; s < intent.NumStates(); ++s) {
    for (const Arc &arc : intent.Arcs(s)) {
      if (arc.ilabel == kEpsilon ||
          ClassifyTag(words->Symbol(arc.ilabel), &name) !=
              TagKind::kPlaceholder) {
        out.AddArc(s, arc);
        continue;
      }
      auto it = slots.find(name);
      if (it == slots.end()) {
        throw Error(ErrorKind::kBuild, "no slot FST for placeholder \"" +
                                           name + "\"");
      }
      const Wfst &slot = it->second;
      if (slot.Start() == kNoStateId) continue;
      const bool merge = mergeable[name];
      std::vector<StateId> id(slot.NumStates());
      for (StateId q = 0; q < slot.NumStates(); ++q) {
        id[q] = merge && q == slot.Start() ? s : out.AddState();
      }
      if (!merge) {
        out.AddArc(s, {kEpsilon, kEpsilon, TropicalWeight::One(),
                       id[slot.Start()]});
      }
      for (StateId q = 0; q < slot.NumStates(); ++q) {
        for (Arc copy : slot.Arcs(q)) {
          copy.nextstate = id[copy.nextstate];
          out.AddArc(id[q], copy);
        }
        if (slot.IsFinal(q)) {
          out.AddArc(id[q], {kEpsilon, arc.olabel,
                             Times(slot.Final(q), arc.weight), arc.nextstate});
        }
      }
    }
  }
  return Connect(out);
}

Wfst BuildLexiconFst(const std::vector<std::string> &vocabulary,
                     std::shared_ptr<const SymbolTable> chars,
                     std::shared_ptr<const SymbolTable> words) {
  if (vocabulary.empty()) {
    throw Error(ErrorKind::kBuild, "empty lexicon vocabulary");
  }
  const Label space = RequireLabel(*chars, " ");
  Wfst fst(chars, words);
  const StateId root = fst.AddState();
  fst.SetStart(root);
  fst.SetFinal(root);
  std::map<std::pair<StateId, Label>, StateId> child;
  std::set<std::string> sorted(vocabulary.begin(), vocabulary.end());
  for (const auto &word : sorted) {
    std::vector<std::string> spelled = SplitCodePoints(word);
    if (spelled.empty()) throw Error(ErrorKind::kBuild, "empty lexicon word");
    StateId s = root;
    for (const auto &c : spelled) {
      if (c.size() == 1 && std::isspace(static_cast<unsigned char>(c[0]))) {
        throw Error(ErrorKind::kBuild, "word '" + word + "' contains a space");
      }
      auto label = chars->Find(c);
      if (!label || *label == space) {
        throw Error(ErrorKind::kBuild, "word '" + word + "' uses character '" +
                                           c + "' outside the alphabet");
      }
      auto [it, inserted] = child.try_emplace({s, *label}, 0);
      if (inserted) {
        it->second = fst.AddState();
        fst.AddArc(s, {*label, kEpsilon, TropicalWeight::One(), it->second});
      }
      s = it->second;
    }
    fst.AddArc(s, {space, RequireLabel(*words, word), TropicalWeight::One(),
                   root});
  }
  return ArcSort(fst);
}

Wfst BuildTokenFst(const Alphabet &alphabet,
                   std::shared_ptr<const SymbolTable> labels,
                   std::shared_ptr<const SymbolTable> chars) {
  const Label blank = RequireLabel(*labels, alphabet.blank);
  const bool strip_leading = alphabet.kind == LabelKind::kPieces;
  Wfst fst(labels, chars);

  // State key: (last label, or epsilon after a blank / at the start;
  // whether any character was emitted yet).
  using Key = std::pair<Label, bool>;
  std::map<Key, StateId> ids;
  std::vector<std::pair<Key, StateId>> keys;
  auto state_of = [&](const Key &key) {
    auto [it, inserted] = ids.try_emplace(key, 0);
    if (inserted) {
      it->second = fst.AddState();
      fst.SetFinal(it->second);
      keys.emplace_back(key, it->second);
    }
    return it->second;
  };
  std::vector<std::vector<Label>> spelled(labels->NumSymbols());
  for (Label x = 1; x < labels->NumSymbols(); ++x) {
    for (const auto &c : SpellLabel(alphabet, labels->Symbol(x))) {
      spelled[x].push_back(RequireLabel(*chars, c));
    }
  }
  // Multi-character outputs share one chain per (label, output, target).
  std::map<std::tuple<Label, std::vector<Label>, StateId>, StateId> chains;

  fst.SetStart(state_of({kEpsilon, !strip_leading}));
  for (size_t i = 0; i < keys.size(); ++i) {
    const auto [key, s] = keys[i];
    const auto [last, emitted] = key;
    for (Label x = 1; x < labels->NumSymbols(); ++x) {
      if (x == blank) {
        fst.AddArc(s, {x, kEpsilon, TropicalWeight::One(),
                       state_of({kEpsilon, emitted})});
        continue;
      }
      if (x == last) {
        fst.AddArc(s, {x, kEpsilon, TropicalWeight::One(), s});
        continue;
      }
      std::vector<Label> out = spelled[x];
      if (!emitted) {
        const Label space = RequireLabel(*chars, " ");
        auto first = std::find_if(out.begin(), out.end(),
                                  [&](Label c) { return c != space; });
        out.erase(out.begin(), first);
      }
      const StateId target = state_of({x, emitted || !out.empty()});
      if (out.size() <= 1) {
        fst.AddArc(s, {x, out.empty() ? kEpsilon : out[0],
                       TropicalWeight::One(), target});
        continue;
      }
      auto [it, inserted] = chains.try_emplace({x, out, target}, 0);
      if (inserted) {
        StateId prev = fst.AddState();
        it->second = prev;
        for (size_t k = 1; k < out.size(); ++k) {
          StateId next = k + 1 == out.size() ? target : fst.AddState();
          fst.AddArc(prev, {kEpsilon, out[k], TropicalWeight::One(), next});
          prev = next;
        }
      }
      fst.AddArc(s, {x, out[0], TropicalWeight::One(), it->second});
    }
  }
  return ArcSort(fst);
}

}  // namespace slufst
