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

#include "slufst/text-frontend.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "slufst/error.h"
#include "slufst/utf8.h"

namespace slufst {
namespace {

void ThrowUnencodable(const std::set<std::string> &bad) {
  std::string list;
  for (const auto &c : bad) {
    if (!list.empty()) list += ", ";
    list += "'" + c + "'";
  }
  throw Error(ErrorKind::kInput, "text uses characters outside the alphabet: " +
                                     list);
}

}  // namespace

std::vector<std::string> EncodeText(std::string_view text,
                                    const Alphabet &alphabet) {
  const std::string normalized = NormalizeText(text);
  std::vector<std::string> labels;
  std::set<std::string> bad;
  if (alphabet.kind == LabelKind::kChars) {
    std::set<std::string> known;
    for (const auto &s : alphabet.symbols) {
      if (s != alphabet.blank) known.insert(s);
    }
    for (const auto &c : SplitCodePoints(normalized)) {
      std::string label = c == " " ? alphabet.space : c;
      if (!known.contains(label)) {
        bad.insert(c);
      } else {
        labels.push_back(std::move(label));
      }
    }
    if (!bad.empty()) ThrowUnencodable(bad);
    return labels;
  }

  std::set<std::string> pieces;
  size_t longest = 0;
  for (const auto &s : alphabet.symbols) {
    if (s == alphabet.blank) continue;
    pieces.insert(s);
    longest = std::max(longest, s.size());
  }
  for (const auto &word : SplitWords(normalized)) {
    std::string rest = alphabet.word_boundary + word;
    while (!rest.empty()) {
      size_t len = std::min(longest, rest.size());
      for (; len > 0; --len) {
        if (pieces.contains(rest.substr(0, len))) break;
      }
      if (len == 0) {
        // Report the offending code point and skip past it.
        std::string cp = SplitCodePoints(rest).front();
        bad.insert(cp == alphabet.word_boundary ? std::string(" ") : cp);
        rest.erase(0, cp.size());
        continue;
      }
      labels.push_back(rest.substr(0, len));
      rest.erase(0, len);
    }
  }
  if (!bad.empty()) ThrowUnencodable(bad);
  return labels;
}

LogitMatrix TextToLogits(std::string_view text, const Alphabet &alphabet,
                         const TextEncodeParams &params) {
  if (!(params.p_floor > 0.0) || !(params.noise_amplitude >= 0.0) ||
      !(params.p_hit <= 1.0) ||
      !(params.p_hit > params.p_floor + params.noise_amplitude)) {
    throw Error(ErrorKind::kConfig,
                "need 0 < p_floor, noise >= 0 and p_floor + noise < p_hit <= 1");
  }
  std::map<std::string, size_t> column;
  for (size_t v = 0; v < alphabet.symbols.size(); ++v) {
    column[alphabet.symbols[v]] = v;
  }
  std::vector<size_t> hits;
  for (const auto &label : EncodeText(text, alphabet)) {
    hits.push_back(column.at(label));
    hits.push_back(column.at(alphabet.blank));
  }
  if (hits.empty()) hits.push_back(column.at(alphabet.blank));

  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> jitter(0.0, params.noise_amplitude);
  std::vector<std::vector<double>> frames;
  frames.reserve(hits.size());
  for (size_t hit : hits) {
    std::vector<double> row(alphabet.symbols.size());
    double sum = 0.0;
    for (size_t v = 0; v < row.size(); ++v) {
      double noise = params.noise_amplitude > 0.0 ? jitter(rng) : 0.0;
      row[v] = v == hit ? params.p_hit : params.p_floor + noise;
      sum += row[v];
    }
    for (double &p : row) p /= sum;
    frames.push_back(std::move(row));
  }
  return LogitMatrix(alphabet.symbols, frames);
}

}  // namespace slufst
