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

#ifndef SLUFST_DECODE_PARAMS_H_
#define SLUFST_DECODE_PARAMS_H_

#include <optional>
#include <string>
#include <vector>

namespace slufst {

struct DecodeParams {
  // Labels kept per frame; nullopt disables this pruning. Clamped to the
  // label count.
  std::optional<int> top_k = 8;
  // Rank whose probability, averaged over all frames, gives the global
  // pruning threshold; nullopt disables it. Clamped to the label count.
  std::optional<int> mean_k = 21;
  // Frame probabilities are raised to this power and renormalized.
  double gamma = 1.0;
  // Multiplies every input (acoustic) cost; grammar costs are unscaled.
  double acoustic_scale = 1.0;
  // Restrict decoding to these intents; nullopt means all.
  std::optional<std::vector<std::string>> intent_filter;
  // Intents searched concurrently.
  int num_threads = 1;
};

// Throws Error(kConfig) for non-positive k values, gamma <= 0, negative
// acoustic_scale or num_threads < 1.
void ValidateDecodeParams(const DecodeParams &params);

}  // namespace slufst

#endif  // SLUFST_DECODE_PARAMS_H_
