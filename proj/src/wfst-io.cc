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

#include "slufst/wfst-io.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "binary-io.h"
#include "slufst/error.h"

namespace slufst {
namespace {

constexpr char kMagic[4] = {'F', 'W', 'F', '1'};
constexpr uint32_t kNone = 0xFFFFFFFFu;

void WriteTable(const SymbolTable *table, std::ostream &os) {
  internal::WriteU8(os, table != nullptr ? 1 : 0);
  if (table == nullptr) return;
  internal::WriteU32(os, static_cast<uint32_t>(table->NumSymbols()));
  for (const std::string &s : table->Symbols()) internal::WriteString(os, s);
  internal::WriteU32(os, table->Blank().value_or(kNone));
}

std::shared_ptr<const SymbolTable> ReadTable(std::istream &is) {
  if (internal::ReadU8(is) == 0) return nullptr;
  auto table = std::make_shared<SymbolTable>();
  uint32_t count = internal::ReadU32(is);
  if (count == 0) throw Error(ErrorKind::kIo, "symbol table without epsilon");
  for (uint32_t i = 0; i < count; ++i) {
    std::string s = internal::ReadString(is);
    if (i == 0) {
      if (s != SymbolTable::kEpsilonSymbol) {
        throw Error(ErrorKind::kIo, "symbol table entry 0 must be <eps>");
      }
      continue;
    }
    if (table->AddSymbol(s) != i) {
      throw Error(ErrorKind::kIo, "duplicate symbol '" + s + "'");
    }
  }
  uint32_t blank = internal::ReadU32(is);
  if (blank != kNone) table->SetBlank(blank);
  return table;
}

}  // namespace

void WriteWfst(const Wfst &fst, std::ostream &os) {
  os.write(kMagic, 4);
  internal::WriteU32(os, static_cast<uint32_t>(fst.NumStates()));
  internal::WriteU32(os, fst.Start() == kNoStateId ? kNone : fst.Start());
  WriteTable(fst.InputSymbols().get(), os);
  WriteTable(fst.OutputSymbols().get(), os);
  for (StateId s = 0; s < fst.NumStates(); ++s) {
    internal::WriteF64(os, fst.Final(s).Value());
    internal::WriteU32(os, static_cast<uint32_t>(fst.NumArcs(s)));
    for (const Arc &arc : fst.Arcs(s)) {
      internal::WriteU32(os, arc.ilabel);
      internal::WriteU32(os, arc.olabel);
      internal::WriteF64(os, arc.weight.Value());
      internal::WriteU32(os, arc.nextstate);
    }
  }
  if (!os) throw Error(ErrorKind::kIo, "failed to write FST");
}

Wfst ReadWfst(std::istream &is) {
  char magic[4];
  internal::ReadExact(is, magic, 4);
  if (!std::equal(magic, magic + 4, kMagic)) {
    throw Error(ErrorKind::kIo, "not an FWF1 file (bad magic)");
  }
  uint32_t num_states = internal::ReadU32(is);
  uint32_t start = internal::ReadU32(is);
  auto isyms = ReadTable(is);
  auto osyms = ReadTable(is);
  Wfst fst(isyms, osyms);
  fst.ReserveStates(num_states);
  for (uint32_t s = 0; s < num_states; ++s) fst.AddState();
  for (uint32_t s = 0; s < num_states; ++s) {
    double final = internal::ReadF64(is);
    if (!(final >= 0)) throw Error(ErrorKind::kIo, "invalid final weight");
    fst.SetFinal(s, TropicalWeight(final));
    uint32_t num_arcs = internal::ReadU32(is);
    auto &arcs = fst.MutableArcs(s);
    arcs.reserve(num_arcs);
    for (uint32_t i = 0; i < num_arcs; ++i) {
      Arc arc;
      arc.ilabel = internal::ReadU32(is);
      arc.olabel = internal::ReadU32(is);
      arc.weight = TropicalWeight(internal::ReadF64(is));
      arc.nextstate = internal::ReadU32(is);
      if (arc.nextstate >= num_states || !(arc.weight.Value() >= 0) ||
          (isyms && !isyms->Contains(arc.ilabel)) ||
          (osyms && !osyms->Contains(arc.olabel))) {
        throw Error(ErrorKind::kIo, "corrupt arc in state " + std::to_string(s));
      }
      arcs.push_back(arc);
    }
  }
  if (start != kNone) {
    if (start >= num_states) throw Error(ErrorKind::kIo, "bad start state");
    fst.SetStart(start);
  }
  return fst;
}

void WriteWfstFile(const Wfst &fst, const std::filesystem::path &path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  WriteWfst(fst, os);
}

Wfst ReadWfstFile(const std::filesystem::path &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  return ReadWfst(is);
}

std::string SymbolTableToText(const SymbolTable &table) {
  std::ostringstream os;
  for (Label i = 0; i < table.NumSymbols(); ++i) {
    os << table.Symbol(i) << '\t' << i << '\n';
  }
  return os.str();
}

}  // namespace slufst
