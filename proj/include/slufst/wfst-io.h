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

#ifndef SLUFST_WFST_IO_H_
#define SLUFST_WFST_IO_H_

#include <filesystem>
#include <iosfwd>
#include <string>

#include "slufst/wfst.h"

namespace slufst {

// Binary layout, all integers little-endian:
//
//   "FWF1"
//   u32 num_states
//   u32 start                       (0xFFFFFFFF when there is none)
//   table input, table output       (see below)
//   per state:
//     f64 final cost                (+inf when not final)
//     u32 num_arcs
//     num_arcs x (u32 ilabel, u32 olabel, f64 cost, u32 nextstate)
//
//   table := u8 present
//            [u32 count, count x (u32 length, bytes), u32 blank]
//
// Table entry 0 is always "<eps>"; blank is 0xFFFFFFFF when unset.
void WriteWfst(const Wfst &fst, std::ostream &os);
Wfst ReadWfst(std::istream &is);

void WriteWfstFile(const Wfst &fst, const std::filesystem::path &path);
Wfst ReadWfstFile(const std::filesystem::path &path);

// "symbol<TAB>id" lines, epsilon included.
std::string SymbolTableToText(const SymbolTable &table);

}  // namespace slufst

#endif  // SLUFST_WFST_IO_H_
