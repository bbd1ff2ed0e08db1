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

#ifndef SLUFST_WFST_H_
#define SLUFST_WFST_H_

#include <memory>
#include <span>
#include <vector>

#include "slufst/symbol-table.h"
#include "slufst/weight.h"

namespace slufst {

struct Arc {
  Label ilabel = kEpsilon;
  Label olabel = kEpsilon;
  TropicalWeight weight;
  StateId nextstate = kNoStateId;
};

// Vector-backed mutable transducer. Operations in wfst-ops.h take it by
// const reference and return fresh values; a built Wfst is treated as
// immutable and may be shared across threads.
class Wfst {
 public:
  Wfst() = default;
  Wfst(std::shared_ptr<const SymbolTable> isyms,
       std::shared_ptr<const SymbolTable> osyms)
      : isyms_(std::move(isyms)), osyms_(std::move(osyms)) {}

  StateId AddState();
  void AddArc(StateId state, const Arc &arc);
  void SetStart(StateId state);
  void SetFinal(StateId state, TropicalWeight weight = TropicalWeight::One());
  void ReserveStates(size_t n);

  StateId Start() const { return start_; }
  TropicalWeight Final(StateId state) const { return finals_[state]; }
  bool IsFinal(StateId state) const { return !finals_[state].IsZero(); }
  size_t NumStates() const { return arcs_.size(); }
  size_t NumArcs(StateId state) const { return arcs_[state].size(); }
  size_t TotalArcs() const;
  std::span<const Arc> Arcs(StateId state) const { return arcs_[state]; }
  std::vector<Arc> &MutableArcs(StateId state) { return arcs_[state]; }

  const std::shared_ptr<const SymbolTable> &InputSymbols() const {
    return isyms_;
  }
  const std::shared_ptr<const SymbolTable> &OutputSymbols() const {
    return osyms_;
  }
  void SetInputSymbols(std::shared_ptr<const SymbolTable> syms) {
    isyms_ = std::move(syms);
  }
  void SetOutputSymbols(std::shared_ptr<const SymbolTable> syms) {
    osyms_ = std::move(syms);
  }

  bool IsILabelSorted() const;

 private:
  std::vector<std::vector<Arc>> arcs_;
  std::vector<TropicalWeight> finals_;
  StateId start_ = kNoStateId;
  std::shared_ptr<const SymbolTable> isyms_;
  std::shared_ptr<const SymbolTable> osyms_;
};

}  // namespace slufst

#endif  // SLUFST_WFST_H_
