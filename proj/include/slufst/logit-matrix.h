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

#ifndef SLUFST_LOGIT_MATRIX_H_
#define SLUFST_LOGIT_MATRIX_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace slufst {

// T x V per-frame label probabilities with the column symbols.
class LogitMatrix {
 public:
  // Throws Error(kInput) when T < 1, V < 2, a row has the wrong width, a
  // value is negative or not finite, a row sums to zero, or symbols repeat.
  // Rows whose sum is off by more than 1e-3 are renormalized.
  LogitMatrix(std::vector<std::string> symbols,
              const std::vector<std::vector<double>> &frames);

  size_t NumFrames() const { return values_.size() / symbols_.size(); }
  size_t NumLabels() const { return symbols_.size(); }
  double At(size_t frame, size_t column) const {
    return values_[frame * symbols_.size() + column];
  }
  const std::vector<std::string> &Symbols() const { return symbols_; }
  std::vector<double> Row(size_t frame) const;

 private:
  std::vector<std::string> symbols_;
  std::vector<double> values_;
};

// Binary layout, little-endian: "FLGT", u32 T, u32 V, T*V f32 row-major,
// then V x (u32 length, UTF-8 bytes).
void WriteLogits(const LogitMatrix &m, std::ostream &os);
LogitMatrix ReadLogits(std::istream &is);

// {"symbols": [...], "frames": [[...], ...]}
nlohmann::json LogitsToJson(const LogitMatrix &m);
LogitMatrix LogitsFromJson(const nlohmann::json &doc);

// Detects the format from the first bytes.
LogitMatrix ReadLogitsFile(const std::filesystem::path &path);
// Writes JSON when the extension is .json, binary otherwise.
void WriteLogitsFile(const LogitMatrix &m, const std::filesystem::path &path);

}  // namespace slufst

#endif  // SLUFST_LOGIT_MATRIX_H_
