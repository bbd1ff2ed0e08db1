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

#ifndef SLUFST_WER_H_
#define SLUFST_WER_H_

#include <string>
#include <vector>

namespace slufst {

// Word-level Levenshtein distance (unit substitution/insertion/deletion).
size_t WordEditDistance(const std::vector<std::string> &reference,
                        const std::vector<std::string> &hypothesis);

// Edit distance divided by the reference length. Throws Error(kInput) for
// an empty reference.
double WordErrorRate(const std::vector<std::string> &reference,
                     const std::vector<std::string> &hypothesis);

}  // namespace slufst

#endif  // SLUFST_WER_H_
