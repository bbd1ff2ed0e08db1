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

#ifndef SLUFST_UTF8_H_
#define SLUFST_UTF8_H_

#include <string>
#include <string_view>
#include <vector>

namespace slufst {

// Splits UTF-8 text into code points, each returned as its byte string.
// Throws Error(kInput) on malformed sequences.
std::vector<std::string> SplitCodePoints(std::string_view text);

// Splits on ASCII whitespace, dropping empty pieces.
std::vector<std::string> SplitWords(std::string_view text);

std::string JoinWords(const std::vector<std::string> &words);

// ASCII lowercase, whitespace runs squeezed to one space, ends trimmed.
std::string NormalizeText(std::string_view text);

}  // namespace slufst

#endif  // SLUFST_UTF8_H_
