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

#include "slufst/logit-matrix.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "binary-io.h"
#include "slufst/error.h"

namespace slufst {
namespace {

constexpr char kMagic[4] = {'F', 'L', 'G', 'T'};
constexpr double kRowSumTolerance = 1e-3;

}  // namespace

LogitMatrix::LogitMatrix(std::vector<std::string> symbols,
                         const std::vector<std::vector<double>> &frames)
    : symbols_(std::move(symbols)) {
  if (symbols_.size() < 2) {
    throw Error(ErrorKind::kInput, "logit matrix needs at least two labels");
  }
  if (frames.empty()) {
    throw Error(ErrorKind::kInput, "logit matrix has no frames");
  }
  std::set<std::string> seen;
  for (const auto &s : symbols_) {
    if (!seen.insert(s).second) {
      throw Error(ErrorKind::kInput, "duplicate logit symbol '" + s + "'");
    }
  }
  values_.reserve(frames.size() * symbols_.size());
  for (size_t t = 0; t < frames.size(); ++t) {
    const auto &row = frames[t];
    if (row.size() != symbols_.size()) {
      throw Error(ErrorKind::kInput,
                  "frame " + std::to_string(t) + " has " +
                      std::to_string(row.size()) + " values, expected " +
                      std::to_string(symbols_.size()));
    }
    double sum = 0.0;
    for (double p : row) {
      if (!std::isfinite(p) || p < 0.0) {
        throw Error(ErrorKind::kInput, "frame " + std::to_string(t) +
                                           " has an invalid probability");
      }
      sum += p;
    }
    if (sum <= 0.0) {
      throw Error(ErrorKind::kInput,
                  "frame " + std::to_string(t) + " sums to zero");
    }
    const double scale = std::fabs(sum - 1.0) > kRowSumTolerance ? sum : 1.0;
    for (double p : row) values_.push_back(p / scale);
  }
}

std::vector<double> LogitMatrix::Row(size_t frame) const {
  auto begin = values_.begin() + frame * symbols_.size();
  return std::vector<double>(begin, begin + symbols_.size());
}

void WriteLogits(const LogitMatrix &m, std::ostream &os) {
  os.write(kMagic, 4);
  internal::WriteU32(os, static_cast<uint32_t>(m.NumFrames()));
  internal::WriteU32(os, static_cast<uint32_t>(m.NumLabels()));
  for (size_t t = 0; t < m.NumFrames(); ++t) {
    for (size_t v = 0; v < m.NumLabels(); ++v) {
      internal::WriteF32(os, static_cast<float>(m.At(t, v)));
    }
  }
  for (const auto &s : m.Symbols()) internal::WriteString(os, s);
  if (!os) throw Error(ErrorKind::kIo, "failed to write logits");
}

LogitMatrix ReadLogits(std::istream &is) {
  char magic[4];
  internal::ReadExact(is, magic, 4);
  if (!std::equal(magic, magic + 4, kMagic)) {
    throw Error(ErrorKind::kIo, "not an FLGT file (bad magic)");
  }
  uint32_t frames = internal::ReadU32(is);
  uint32_t labels = internal::ReadU32(is);
  if (static_cast<uint64_t>(frames) * labels > (1ull << 32)) {
    throw Error(ErrorKind::kIo, "logit matrix too large");
  }
  std::vector<std::vector<double>> rows(frames, std::vector<double>(labels));
  for (auto &row : rows) {
    for (auto &p : row) p = internal::ReadF32(is);
  }
  std::vector<std::string> symbols(labels);
  for (auto &s : symbols) s = internal::ReadString(is);
  return LogitMatrix(std::move(symbols), rows);
}

nlohmann::json LogitsToJson(const LogitMatrix &m) {
  nlohmann::json doc;
  doc["symbols"] = m.Symbols();
  doc["frames"] = nlohmann::json::array();
  for (size_t t = 0; t < m.NumFrames(); ++t) doc["frames"].push_back(m.Row(t));
  return doc;
}

LogitMatrix LogitsFromJson(const nlohmann::json &doc) {
  try {
    return LogitMatrix(doc.at("symbols").get<std::vector<std::string>>(),
                       doc.at("frames").get<std::vector<std::vector<double>>>());
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::kInput, std::string("bad logits JSON: ") + e.what());
  }
}

LogitMatrix ReadLogitsFile(const std::filesystem::path &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  char head[4] = {};
  is.read(head, 4);
  is.clear();
  is.seekg(0);
  if (std::equal(head, head + 4, kMagic)) return ReadLogits(is);
  std::stringstream ss;
  ss << is.rdbuf();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::parse_error &e) {
    throw Error(ErrorKind::kIo, path.string() +
                                    " is neither FLGT nor JSON: " + e.what());
  }
  return LogitsFromJson(doc);
}

void WriteLogitsFile(const LogitMatrix &m, const std::filesystem::path &path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  if (path.extension() == ".json") {
    os << LogitsToJson(m).dump() << '\n';
  } else {
    WriteLogits(m, os);
  }
}

}  // namespace slufst
