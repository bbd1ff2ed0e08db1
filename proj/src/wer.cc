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

#include "slufst/wer.h"

#include <algorithm>
#include <numeric>

#include "slufst/error.h"

namespace slufst {

size_t WordEditDistance(const std::vector<std::string> &reference,
                        const std::vector<std::string> &hypothesis) {
  // Single-row DP over the hypothesis.
  std::vector<size_t> row(hypothesis.size() + 1);
  std::iota(row.begin(), row.end(), 0);
  for (size_t i = 1; i <= reference.size(); ++i) {
    size_t diagonal = row[0];
    row[0] = i;
    for (size_t j = 1; j <= hypothesis.size(); ++j) {
      size_t above = row[j];
      size_t substitute =
          diagonal + (reference[i - 1] == hypothesis[j - 1] ? 0 : 1);
      row[j] = std::min({above + 1, row[j - 1] + 1, substitute});
      diagonal = above;
    }
  }
  return row.back();
}

double WordErrorRate(const std::vector<std::string> &reference,
                     const std::vector<std::string> &hypothesis) {
  if (reference.empty()) {
    throw Error(ErrorKind::kInput, "WER is undefined for an empty reference");
  }
  return static_cast<double>(WordEditDistance(reference, hypothesis)) /
         static_cast<double>(reference.size());
}

}  // namespace slufst
