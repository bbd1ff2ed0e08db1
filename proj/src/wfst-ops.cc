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

#include "slufst/wfst-ops.h"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <sstream>
#include <tuple>

#include "path-search.h"
#include "slufst/error.h"

namespace slufst {
namespace {

// Appends all states of `src` to `dst`; returns the id offset.
StateId AppendStates(const Wfst &src, Wfst *dst) {
  StateId offset = static_cast<StateId>(dst->NumStates());
  for (StateId s = 0; s < src.NumStates(); ++s) dst->AddState();
  for (StateId s = 0; s < src.NumStates(); ++s) {
    for (Arc arc : src.Arcs(s)) {
      arc.nextstate += offset;
      dst->AddArc(s + offset, arc);
    }
    if (src.IsFinal(s)) dst->SetFinal(s + offset, src.Final(s));
  }
  return offset;
}

void CheckSameTables(const Wfst &a, const Wfst &b) {
  internal::CheckCompatibleTables(a.InputSymbols().get(),
                                  b.InputSymbols().get());
  internal::CheckCompatibleTables(a.OutputSymbols().get(),
                                  b.OutputSymbols().get());
}

std::string FormatCost(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::string DotEscape(const std::string &s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string LabelText(const SymbolTable *table, Label label) {
  if (table == nullptr) return std::to_string(label);
  if (label == kEpsilon) return "<eps>";
  const std::string &s = table->Symbol(label);
  return s == " " ? "<space>" : s;
}

}  // namespace

Wfst Connect(const Wfst &fst) {
  Wfst out(fst.InputSymbols(), fst.OutputSymbols());
  const size_t n = fst.NumStates();
  if (fst.Start() == kNoStateId) return out;

  std::vector<bool> accessible(n, false);
  std::vector<StateId> stack = {fst.Start()};
  accessible[fst.Start()] = true;
  std::vector<std::vector<StateId>> incoming(n);
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (const Arc &arc : fst.Arcs(s)) {
      incoming[arc.nextstate].push_back(s);
      if (!accessible[arc.nextstate]) {
        accessible[arc.nextstate] = true;
        stack.push_back(arc.nextstate);
      }
    }
  }
  std::vector<bool> coaccessible(n, false);
  for (StateId s = 0; s < n; ++s) {
    if (accessible[s] && fst.IsFinal(s)) {
      coaccessible[s] = true;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (StateId p : incoming[s]) {
      if (!coaccessible[p]) {
        coaccessible[p] = true;
        stack.push_back(p);
      }
    }
  }
  if (!coaccessible[fst.Start()]) return out;

  std::vector<StateId> remap(n, kNoStateId);
  for (StateId s = 0; s < n; ++s) {
    if (accessible[s] && coaccessible[s]) remap[s] = out.AddState();
  }
  for (StateId s = 0; s < n; ++s) {
    if (remap[s] == kNoStateId) continue;
    for (Arc arc : fst.Arcs(s)) {
      if (remap[arc.nextstate] == kNoStateId) continue;
      arc.nextstate = remap[arc.nextstate];
      out.AddArc(remap[s], arc);
    }
    if (fst.IsFinal(s)) out.SetFinal(remap[s], fst.Final(s));
  }
  out.SetStart(remap[fst.Start()]);
  return out;
}

Wfst RmEpsilon(const Wfst &fst) {
  Wfst out(fst.InputSymbols(), fst.OutputSymbols());
  const size_t n = fst.NumStates();
  if (fst.Start() == kNoStateId) return out;
  for (StateId s = 0; s < n; ++s) out.AddState();
  out.SetStart(fst.Start());

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, kInf);
  std::vector<StateId> touched;
  using Item = std::pair<double, StateId>;
  for (StateId s = 0; s < n; ++s) {
    // Shortest epsilon-closure distances from s.
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[s] = 0.0;
    touched.push_back(s);
    heap.emplace(0.0, s);
    std::vector<std::pair<StateId, double>> closure;
    while (!heap.empty()) {
      auto [d, q] = heap.top();
      heap.pop();
      if (d > dist[q]) continue;
      closure.emplace_back(q, d);
      for (const Arc &arc : fst.Arcs(q)) {
        if (arc.ilabel != kEpsilon || arc.olabel != kEpsilon) continue;
        double nd = d + arc.weight.Value();
        if (nd < dist[arc.nextstate]) {
          if (dist[arc.nextstate] == kInf) touched.push_back(arc.nextstate);
          dist[arc.nextstate] = nd;
          heap.emplace(nd, arc.nextstate);
        }
      }
    }
    std::sort(closure.begin(), closure.end());

    // Parallel arcs with identical labels and destination collapse to the
    // cheapest one; first-seen order is kept.
    std::map<std::tuple<Label, Label, StateId>, size_t> seen;
    std::vector<Arc> arcs;
    TropicalWeight final = TropicalWeight::Zero();
    for (auto [q, d] : closure) {
      final = Plus(final, Times(TropicalWeight(d), fst.Final(q)));
      for (const Arc &arc : fst.Arcs(q)) {
        if (arc.ilabel == kEpsilon && arc.olabel == kEpsilon) continue;
        Arc copy = arc;
        copy.weight = Times(TropicalWeight(d), arc.weight);
        auto key = std::make_tuple(copy.ilabel, copy.olabel, copy.nextstate);
        auto [it, inserted] = seen.try_emplace(key, arcs.size());
        if (inserted) {
          arcs.push_back(copy);
        } else {
          arcs[it->second].weight = Plus(arcs[it->second].weight, copy.weight);
        }
      }
    }
    for (const Arc &arc : arcs) out.AddArc(s, arc);
    if (!final.IsZero()) out.SetFinal(s, final);
    for (StateId q : touched) dist[q] = kInf;
    touched.clear();
  }
  return Connect(out);
}

Wfst ArcSort(const Wfst &fst) {
  Wfst out = fst;
  for (StateId s = 0; s < out.NumStates(); ++s) {
    auto &arcs = out.MutableArcs(s);
    std::stable_sort(arcs.begin(), arcs.end(), [](const Arc &x, const Arc &y) {
      return std::tie(x.ilabel, x.olabel, x.nextstate) <
             std::tie(y.ilabel, y.olabel, y.nextstate);
    });
  }
  return out;
}

Wfst Union(const Wfst &a, const Wfst &b) {
  CheckSameTables(a, b);
  if (a.Start() == kNoStateId) return b;
  if (b.Start() == kNoStateId) return a;
  Wfst out(a.InputSymbols(), a.OutputSymbols());
  StateId start = out.AddState();
  StateId off_a = AppendStates(a, &out);
  StateId off_b = AppendStates(b, &out);
  out.SetStart(start);
  out.AddArc(start, {kEpsilon, kEpsilon, TropicalWeight::One(),
                     a.Start() + off_a});
  out.AddArc(start, {kEpsilon, kEpsilon, TropicalWeight::One(),
                     b.Start() + off_b});
  return out;
}

Wfst Concat(const Wfst &a, const Wfst &b) {
  CheckSameTables(a, b);
  Wfst out(a.InputSymbols(), a.OutputSymbols());
  if (a.Start() == kNoStateId || b.Start() == kNoStateId) return out;
  AppendStates(a, &out);
  StateId off_b = AppendStates(b, &out);
  out.SetStart(a.Start());
  for (StateId s = 0; s < a.NumStates(); ++s) {
    if (!a.IsFinal(s)) continue;
    out.AddArc(s, {kEpsilon, kEpsilon, a.Final(s), b.Start() + off_b});
    out.SetFinal(s, TropicalWeight::Zero());
  }
  return out;
}

std::string ToDot(const Wfst &fst, const std::string &title) {
  std::ostringstream os;
  os << "digraph FST {\n"
     << "rankdir = LR;\n"
     << "label = \"" << DotEscape(title) << "\";\n"
     << "center = 1;\n"
     << "ranksep = \"0.4\";\n"
     << "nodesep = \"0.25\";\n";
  const SymbolTable *isyms = fst.InputSymbols().get();
  const SymbolTable *osyms = fst.OutputSymbols().get();
  for (StateId s = 0; s < fst.NumStates(); ++s) {
    os << s << " [label = \"" << s;
    if (fst.IsFinal(s)) os << "/" << FormatCost(fst.Final(s).Value());
    os << "\", shape = " << (fst.IsFinal(s) ? "doublecircle" : "circle");
    if (s == fst.Start()) os << ", style = bold";
    os << ", fontsize = 14]\n";
    for (const Arc &arc : fst.Arcs(s)) {
      os << "\t" << s << " -> " << arc.nextstate << " [label = \""
         << DotEscape(LabelText(isyms, arc.ilabel)) << ":"
         << DotEscape(LabelText(osyms, arc.olabel)) << "/"
         << FormatCost(arc.weight.Value()) << "\", fontsize = 14];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace slufst
