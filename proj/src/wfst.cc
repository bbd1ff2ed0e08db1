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

#include "slufst/wfst.h"

#include "slufst/error.h"

namespace slufst {

StateId Wfst::AddState() {
  arcs_.emplace_back();
  finals_.push_back(TropicalWeight::Zero());
  return static_cast<StateId>(arcs_.size() - 1);
}

void Wfst::AddArc(StateId state, const Arc &arc) {
  if (state >= arcs_.size() || arc.nextstate >= arcs_.size()) {
    throw Error(ErrorKind::kInternal, "arc references a missing state");
  }
  arcs_[state].push_back(arc);
}

void Wfst::SetStart(StateId state) {
  if (state >= arcs_.size()) {
    throw Error(ErrorKind::kInternal, "start state out of range");
  }
  start_ = state;
}

void Wfst::SetFinal(StateId state, TropicalWeight weight) {
  if (state >= arcs_.size()) {
    throw Error(ErrorKind::kInternal, "final state out of range");
  }
  finals_[state] = weight;
}

void Wfst::ReserveStates(size_t n) {
  arcs_.reserve(n);
  finals_.reserve(n);
}

size_t Wfst::TotalArcs() const {
  size_t n = 0;
  for (const auto &arcs : arcs_) n += arcs.size();
  return n;
}

bool Wfst::IsILabelSorted() const {
  for (const auto &arcs : arcs_) {
    for (size_t i = 1; i < arcs.size(); ++i) {
      if (arcs[i].ilabel < arcs[i - 1].ilabel) return false;
    }
  }
  return true;
}

}  // namespace slufst
