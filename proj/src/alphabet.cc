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

#include "slufst/alphabet.h"

#include <fstream>
#include <set>
#include <sstream>

#include "slufst/error.h"
#include "slufst/symbol-table.h"
#include "slufst/utf8.h"

namespace slufst {

void ValidateAlphabet(const Alphabet &alphabet) {
  if (alphabet.symbols.size() < 2) {
    throw Error(ErrorKind::kConfig, "alphabet needs at least two labels");
  }
  std::set<std::string> seen;
  bool has_blank = false;
  bool has_space = false;
  for (const auto &s : alphabet.symbols) {
    if (s.empty()) throw Error(ErrorKind::kConfig, "empty alphabet symbol");
    if (s == SymbolTable::kEpsilonSymbol) {
      throw Error(ErrorKind::kConfig, "<eps> is reserved");
    }
    if (!seen.insert(s).second) {
      throw Error(ErrorKind::kConfig, "duplicate alphabet symbol '" + s + "'");
    }
    if (s == alphabet.blank) {
      has_blank = true;
      continue;
    }
    if (s == alphabet.SpaceLabel()) has_space = true;
    if (alphabet.kind == LabelKind::kChars && s != alphabet.space &&
        SplitCodePoints(s).size() != 1) {
      throw Error(ErrorKind::kConfig,
                  "character alphabet symbol '" + s + "' is not one character");
    }
  }
  if (!has_blank) {
    throw Error(ErrorKind::kConfig,
                "alphabet lacks the blank symbol '" + alphabet.blank + "'");
  }
  if (!has_space) {
    throw Error(ErrorKind::kConfig, "alphabet lacks the space label '" +
                                        alphabet.SpaceLabel() + "'");
  }
}

Alphabet AlphabetFromJson(const nlohmann::json &doc) {
  Alphabet alphabet;
  try {
    if (doc.is_array()) {
      alphabet.symbols = doc.get<std::vector<std::string>>();
    } else if (doc.is_object()) {
      std::string type = doc.value("type", "chars");
      if (type == "pieces") {
        alphabet.kind = LabelKind::kPieces;
      } else if (type != "chars") {
        throw Error(ErrorKind::kConfig, "unknown alphabet type '" + type + "'");
      }
      const char *key = doc.contains("symbols") ? "symbols" : "pieces";
      alphabet.symbols = doc.at(key).get<std::vector<std::string>>();
      alphabet.blank = doc.value("blank", alphabet.blank);
      alphabet.space = doc.value("space", alphabet.space);
      alphabet.word_boundary = doc.value("word_boundary", alphabet.word_boundary);
    } else {
      throw Error(ErrorKind::kConfig, "alphabet must be a list or an object");
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::kConfig, std::string("bad alphabet: ") + e.what());
  }
  ValidateAlphabet(alphabet);
  return alphabet;
}

Alphabet ParseAlphabet(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error &e) {
    throw Error(ErrorKind::kConfig, std::string("invalid JSON: ") + e.what());
  }
  return AlphabetFromJson(doc);
}

Alphabet ReadAlphabetFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::kIo, "cannot open " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ParseAlphabet(ss.str());
}

nlohmann::json AlphabetToJson(const Alphabet &alphabet) {
  nlohmann::json doc;
  doc["type"] = alphabet.kind == LabelKind::kChars ? "chars" : "pieces";
  doc["symbols"] = alphabet.symbols;
  doc["blank"] = alphabet.blank;
  if (alphabet.kind == LabelKind::kChars) {
    doc["space"] = alphabet.space;
  } else {
    doc["word_boundary"] = alphabet.word_boundary;
  }
  return doc;
}

}  // namespace slufst
