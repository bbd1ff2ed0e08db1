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

// Exhaustive decode oracle: enumerates every label sequence of the matrix
// plus the appended space frame, collapses it, and keeps the sequences that
// spell a grammar sentence followed by a space.

#ifndef SLUFST_TESTS_DECODE_ORACLE_H_
#define SLUFST_TESTS_DECODE_ORACLE_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "slufst/alphabet.h"
#include "slufst/dialog-spec.h"
#include "slufst/logit-matrix.h"

namespace slufst::testing {

struct OracleTrial {
  Alphabet alphabet;
  std::map<std::string, std::vector<std::string>> intents;  // sentences
  std::vector<std::string> symbols;  // matrix columns, alphabet order
  std::vector<std::vector<double>> frames;

  DialogSpec Spec() const {
    nlohmann::json doc;
    doc["intents"] = intents;
    return ParseDialogSpec(doc.dump());
  }
  LogitMatrix Matrix() const { return LogitMatrix(symbols, frames); }
};

struct OracleAnswer {
  double cost = 0.0;
  std::string intent;
  std::string text;
  // Every sentence whose cost ties the minimum (relative 1e-9).
  std::set<std::string> tied;
};

// Minimum over all label sequences; nullopt when none spells a sentence.
inline std::optional<OracleAnswer> SolveByEnumeration(const OracleTrial &t) {
  const size_t v = t.symbols.size();
  const std::string &blank = t.alphabet.blank;
  std::vector<std::vector<double>> rows = t.frames;
  std::vector<double> last(v, 0.1 / static_cast<double>(v - 1));
  for (size_t c = 0; c < v; ++c) {
    if (t.symbols[c] == t.alphabet.space) last[c] = 0.9;
  }
  rows.push_back(last);

  std::map<std::string, std::string> target_intent;  // "w1 w2 " -> intent
  for (const auto &[intent, sentences] : t.intents) {
    for (const auto &s : sentences) target_intent[s + " "] = intent;
  }
  auto is_prefix = [&](const std::string &p) {
    auto it = target_intent.lower_bound(p);
    return it != target_intent.end() && it->first.compare(0, p.size(), p) == 0;
  };

  std::map<std::string, double> best;
  std::string collapsed;
  std::function<void(size_t, int, double)> walk = [&](size_t frame, int prev,
                                                      double cost) {
    if (frame == rows.size()) {
      if (target_intent.contains(collapsed)) {
        auto [it, inserted] = best.try_emplace(collapsed, cost);
        if (!inserted) it->second = std::min(it->second, cost);
      }
      return;
    }
    for (size_t c = 0; c < v; ++c) {
      double p = rows[frame][c];
      if (p <= 0.0) continue;
      double next = cost - std::log(p);
      const std::string &sym = t.symbols[c];
      if (sym == blank) {
        walk(frame + 1, -1, next);
      } else if (static_cast<int>(c) == prev) {
        walk(frame + 1, prev, next);
      } else {
        std::string ch = sym == t.alphabet.space ? " " : sym;
        collapsed += ch;
        if (is_prefix(collapsed)) walk(frame + 1, static_cast<int>(c), next);
        collapsed.resize(collapsed.size() - ch.size());
      }
    }
  };
  walk(0, -1, 0.0);
  if (best.empty()) return std::nullopt;

  OracleAnswer answer;
  answer.cost = std::numeric_limits<double>::infinity();
  for (const auto &[text, cost] : best) {
    if (cost < answer.cost) {
      answer.cost = cost;
      answer.text = text;
    }
  }
  for (const auto &[text, cost] : best) {
    if (cost <= answer.cost + 1e-9 * std::max(1.0, answer.cost)) {
      answer.tied.insert(text.substr(0, text.size() - 1));
    }
  }
  answer.intent = target_intent.at(answer.text);
  answer.text.pop_back();
  return answer;
}

// Random trial with T <= 8 frames, V in {3, 4} labels and at most 3
// sentences spread over one or two intents. Half of the matrices favour a
// CTC spelling of one sentence.
inline OracleTrial MakeOracleTrial(std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto pick = [&](size_t n) {
    return std::uniform_int_distribution<size_t>(0, n - 1)(rng);
  };
  OracleTrial t;
  const size_t num_labels = 3 + pick(2);
  std::vector<std::string> letters = {"a", "b"};
  letters.resize(num_labels - 2);
  t.symbols = {" ", "-"};
  t.symbols.insert(t.symbols.end(), letters.begin(), letters.end());
  std::shuffle(t.symbols.begin(), t.symbols.end(), rng);
  t.alphabet.symbols = t.symbols;
  t.alphabet.blank = "-";
  t.alphabet.space = " ";

  std::set<std::string> sentences;
  const size_t wanted = 1 + pick(3);
  while (sentences.size() < wanted) {
    std::string s;
    for (size_t w = 0, n = 1 + pick(2); w < n; ++w) {
      if (!s.empty()) s += " ";
      for (size_t i = 0, len = 1 + pick(3); i < len; ++i) {
        s += letters[pick(letters.size())];
      }
    }
    sentences.insert(s);
  }
  const bool two_intents = sentences.size() > 1 && unit(rng) < 0.5;
  for (const auto &s : sentences) {
    t.intents[two_intents && unit(rng) < 0.5 ? "beta" : "alpha"].push_back(s);
  }
  if (t.intents.size() == 1 && two_intents) {
    // Keep both intents non-empty.
    auto &only = t.intents.begin()->second;
    t.intents[t.intents.begin()->first == "alpha" ? "beta" : "alpha"]
        .push_back(only.back());
    only.pop_back();
  }

  const size_t frames = 1 + pick(8);
  auto column = [&](const std::string &sym) {
    return static_cast<size_t>(
        std::find(t.symbols.begin(), t.symbols.end(), sym) - t.symbols.begin());
  };
  std::vector<size_t> hot;  // favoured column per frame, if any
  if (unit(rng) < 0.5) {
    std::vector<std::string> all(sentences.begin(), sentences.end());
    const std::string &s = all[pick(all.size())];
    std::vector<size_t> path;
    for (size_t i = 0; i < s.size(); ++i) {
      if (i > 0 && s[i] == s[i - 1]) path.push_back(column("-"));
      path.push_back(column(std::string(1, s[i])));
    }
    while (path.size() < frames) {
      size_t at = pick(path.size() + 1);
      size_t what = at > 0 && unit(rng) < 0.5 ? path[at - 1] : column("-");
      path.insert(path.begin() + at, what);
    }
    if (path.size() == frames) hot = path;
  }
  for (size_t f = 0; f < frames; ++f) {
    std::vector<double> row(num_labels);
    double sum = 0.0;
    for (double &p : row) sum += (p = -std::log(1.0 - unit(rng)));
    for (double &p : row) p /= sum;
    if (!hot.empty()) {
      double boost = 0.4 + 0.5 * unit(rng);
      for (double &p : row) p *= 1.0 - boost;
      row[hot[f]] += boost;
    }
    t.frames.push_back(row);
  }
  return t;
}

}  // namespace slufst::testing

#endif  // SLUFST_TESTS_DECODE_ORACLE_H_
