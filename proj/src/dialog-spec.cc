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

#include "slufst/dialog-spec.h"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "slufst/error.h"
#include "slufst/utf8.h"

namespace slufst {
namespace {

constexpr std::string_view kPlaceholderText = "---";

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)); }

bool IsReserved(char c) {
  return c == '(' || c == ')' || c == '|' || c == '[' || c == ']';
}

// Recursive-descent scanner over one template string.
class TemplateScanner {
 public:
  explicit TemplateScanner(std::string_view text) : text_(text) {}

  std::vector<TemplatePart> Parse() {
    std::vector<TemplatePart> parts;
    while (SkipSpace()) {
      char c = text_[pos_];
      if (c == '(') {
        parts.emplace_back(ParseGroup());
      } else if (c == '[') {
        parts.emplace_back(ParsePlaceholder());
      } else if (c == ')' || c == '|' || c == ']') {
        Fail(std::string("unexpected '") + c + "'");
      } else {
        parts.emplace_back(WordToken{ParseWord()});
      }
    }
    return parts;
  }

 private:
  bool SkipSpace() {
    while (pos_ < text_.size() && IsSpace(text_[pos_])) ++pos_;
    return pos_ < text_.size();
  }

  [[noreturn]] void Fail(const std::string &what) const {
    throw Error(ErrorKind::kBuild,
                what + " at offset " + std::to_string(pos_));
  }

  std::string ParseWord() {
    size_t start = pos_;
    while (pos_ < text_.size() && !IsSpace(text_[pos_]) &&
           !IsReserved(text_[pos_])) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  SlotToken ParsePlaceholder() {
    size_t close = text_.find(']', pos_);
    if (close == std::string_view::npos) Fail("unterminated '['");
    std::string_view inner = text_.substr(pos_ + 1, close - pos_ - 1);
    if (inner != kPlaceholderText) {
      Fail("only [---](slot) placeholders are supported");
    }
    pos_ = close + 1;
    if (pos_ >= text_.size() || text_[pos_] != '(') {
      Fail("placeholder must be followed by (slot)");
    }
    size_t end = text_.find(')', pos_);
    if (end == std::string_view::npos) Fail("unterminated slot name");
    std::string name(text_.substr(pos_ + 1, end - pos_ - 1));
    if (name.empty() || SplitWords(name).size() != 1 ||
        name.find_first_of("([|]") != std::string::npos) {
      Fail("invalid slot name '" + name + "'");
    }
    pos_ = end + 1;
    return SlotToken{name};
  }

  AlternationGroup ParseGroup() {
    ++pos_;  // '('
    AlternationGroup group;
    group.alternatives.emplace_back();
    while (true) {
      if (!SkipSpace()) Fail("unterminated '('");
      char c = text_[pos_];
      if (c == ')') {
        ++pos_;
        break;
      }
      if (c == '|') {
        ++pos_;
        group.alternatives.emplace_back();
      } else if (c == '(') {
        Fail("nested alternation groups are not supported");
      } else if (c == '[') {
        group.alternatives.back().emplace_back(ParsePlaceholder());
      } else if (c == ']') {
        Fail("unexpected ']'");
      } else {
        group.alternatives.back().emplace_back(WordToken{ParseWord()});
      }
    }
    return group;
  }

  std::string_view text_;
  size_t pos_ = 0;
};

void AppendElement(const TemplateElement &e, Sentence *out) {
  if (const auto *w = std::get_if<WordToken>(&e)) {
    out->push_back({w->word, false});
  } else {
    out->push_back({std::get<SlotToken>(e).slot, true});
  }
}

std::vector<std::string> SlotNamesOf(const SentenceTemplate &t) {
  std::vector<std::string> names;
  for (const auto &part : t.parts) {
    if (const auto *s = std::get_if<SlotToken>(&part)) {
      names.push_back(s->slot);
    } else if (const auto *g = std::get_if<AlternationGroup>(&part)) {
      for (const auto &alt : g->alternatives) {
        for (const auto &e : alt) {
          if (const auto *s2 = std::get_if<SlotToken>(&e)) {
            names.push_back(s2->slot);
          }
        }
      }
    }
  }
  return names;
}

// Intent names end up in file names and tags.
bool IsValidIntentName(const std::string &name) {
  if (name.empty() || name[0] == '.') return false;
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_' &&
        c != '.') {
      return false;
    }
  }
  return true;
}

}  // namespace

SentenceTemplate ParseTemplate(std::string_view text) {
  SentenceTemplate t;
  t.source = std::string(text);
  t.parts = TemplateScanner(text).Parse();
  if (t.parts.empty()) throw Error(ErrorKind::kBuild, "empty template");
  return t;
}

std::vector<LookupEntry> ParseLookupEntry(std::string_view text) {
  std::string_view raw_part = text;
  std::vector<std::string> canonical;
  size_t arrow = text.find("->");
  if (arrow != std::string_view::npos) {
    raw_part = text.substr(0, arrow);
    canonical = SplitWords(text.substr(arrow + 2));
    if (canonical.empty()) {
      throw Error(ErrorKind::kBuild, "synonym without a canonical value");
    }
  }

  std::vector<std::string> alternatives;
  std::string trimmed = JoinWords(SplitWords(raw_part));
  if (!trimmed.empty() && trimmed.front() == '(') {
    if (trimmed.back() != ')') {
      throw Error(ErrorKind::kBuild, "unterminated '(' in lookup entry");
    }
    std::string inner = trimmed.substr(1, trimmed.size() - 2);
    std::stringstream ss(inner);
    std::string alt;
    while (std::getline(ss, alt, '|')) alternatives.push_back(alt);
    if (!inner.empty() && inner.back() == '|') alternatives.emplace_back();
  } else {
    alternatives.push_back(trimmed);
  }

  std::vector<LookupEntry> entries;
  for (const auto &alt : alternatives) {
    LookupEntry entry;
    entry.raw = SplitWords(alt);
    entry.canonical = canonical;
    if (entry.raw.empty()) {
      throw Error(ErrorKind::kBuild, "empty lookup value");
    }
    for (const auto &w : entry.raw) {
      if (w.find_first_of("()|[]") != std::string::npos) {
        throw Error(ErrorKind::kBuild, "malformed lookup value '" +
                                           std::string(text) + "'");
      }
    }
    // A synonym whose canonical form equals its raw form is a plain value.
    if (entry.canonical == entry.raw) entry.canonical.clear();
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<Sentence> ExpandTemplate(const SentenceTemplate &t) {
  std::vector<Sentence> out = {{}};
  for (const auto &part : t.parts) {
    if (const auto *g = std::get_if<AlternationGroup>(&part)) {
      std::vector<Sentence> next;
      next.reserve(out.size() * g->alternatives.size());
      for (const auto &prefix : out) {
        for (const auto &alt : g->alternatives) {
          Sentence s = prefix;
          for (const auto &e : alt) AppendElement(e, &s);
          next.push_back(std::move(s));
        }
      }
      out = std::move(next);
    } else {
      TemplateElement e = std::holds_alternative<WordToken>(part)
                              ? TemplateElement(std::get<WordToken>(part))
                              : TemplateElement(std::get<SlotToken>(part));
      for (auto &s : out) AppendElement(e, &s);
    }
  }
  return out;
}

std::string SentenceToString(const Sentence &sentence) {
  std::string out;
  for (const auto &token : sentence) {
    if (!out.empty()) out.push_back(' ');
    out += token.placeholder ? "[---](" + token.text + ")" : token.text;
  }
  return out;
}

DialogSpec ParseDialogSpec(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error &e) {
    throw Error(ErrorKind::kBuild, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("intents") ||
      !doc["intents"].is_object()) {
    throw Error(ErrorKind::kBuild, "dialog spec needs an \"intents\" object");
  }
  if (doc.contains("lookups") && !doc["lookups"].is_object()) {
    throw Error(ErrorKind::kBuild, "\"lookups\" must be an object");
  }

  DialogSpec spec;
  if (doc.contains("lookups")) {
    for (const auto &[slot, values] : doc["lookups"].items()) {
      if (!values.is_array() || values.empty()) {
        throw Error(ErrorKind::kBuild,
                    "lookup \"" + slot + "\" needs a non-empty list");
      }
      auto &entries = spec.lookups[slot];
      for (size_t i = 0; i < values.size(); ++i) {
        if (!values[i].is_string()) {
          throw Error(ErrorKind::kBuild, "lookup \"" + slot + "\" entry " +
                                             std::to_string(i + 1) +
                                             " is not a string");
        }
        try {
          for (auto &e : ParseLookupEntry(values[i].get<std::string>())) {
            entries.push_back(std::move(e));
          }
        } catch (const Error &e) {
          throw Error(ErrorKind::kBuild, "lookup \"" + slot + "\" entry " +
                                             std::to_string(i + 1) + ": " +
                                             e.what());
        }
      }
    }
  }

  if (doc["intents"].empty()) {
    throw Error(ErrorKind::kBuild, "dialog spec defines no intents");
  }
  for (const auto &[name, templates] : doc["intents"].items()) {
    if (!IsValidIntentName(name)) {
      throw Error(ErrorKind::kBuild, "invalid intent name \"" + name +
                                         "\" (allowed: letters, digits, . _ -)");
    }
    if (!templates.is_array() || templates.empty()) {
      throw Error(ErrorKind::kBuild,
                  "intent \"" + name + "\" has no sentence templates");
    }
    auto &parsed = spec.intents[name];
    for (size_t i = 0; i < templates.size(); ++i) {
      std::string where = "intent \"" + name + "\", template " +
                          std::to_string(i + 1);
      if (!templates[i].is_string()) {
        throw Error(ErrorKind::kBuild, where + ": not a string");
      }
      SentenceTemplate t;
      try {
        t = ParseTemplate(templates[i].get<std::string>());
      } catch (const Error &e) {
        throw Error(ErrorKind::kBuild, where + ": " + e.what());
      }
      for (const auto &slot : SlotNamesOf(t)) {
        if (!spec.lookups.contains(slot)) {
          throw Error(ErrorKind::kBuild,
                      where + ": unknown slot \"" + slot + "\"");
        }
      }
      for (const auto &sentence : ExpandTemplate(t)) {
        if (sentence.empty()) {
          throw Error(ErrorKind::kBuild,
                      where + ": expands to an empty sentence");
        }
      }
      parsed.push_back(std::move(t));
    }
  }
  return spec;
}

DialogSpec ReadDialogSpecFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::kIo, "cannot open " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ParseDialogSpec(ss.str());
}

}  // namespace slufst
