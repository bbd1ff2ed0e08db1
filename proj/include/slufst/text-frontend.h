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

#ifndef SLUFST_TEXT_FRONTEND_H_
#define SLUFST_TEXT_FRONTEND_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "slufst/alphabet.h"
#include "slufst/logit-matrix.h"

namespace slufst {

struct TextEncodeParams {
  double p_hit = 0.99;
  double p_floor = 0.001;
  // Floors get uniform jitter in [0, noise_amplitude] before renormalizing.
  double noise_amplitude = 0.0005;
  uint64_t seed = 0;
};

// Label sequence spelling `text` after NormalizeText. Characters map one to
// one; pieces are chosen by greedy longest match, each word starting with
// the word boundary. Throws Error(kInput) listing unencodable characters.
std::vector<std::string> EncodeText(std::string_view text,
                                    const Alphabet &alphabet);

// One hit frame per label of EncodeText, each followed by a blank frame.
// Empty text gives a single blank frame. Throws Error(kConfig) for
// parameters that would not make the hit label the clear argmax.
LogitMatrix TextToLogits(std::string_view text, const Alphabet &alphabet,
                         const TextEncodeParams &params = {});

}  // namespace slufst

#endif  // SLUFST_TEXT_FRONTEND_H_
