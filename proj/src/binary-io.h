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

// Little-endian primitives shared by the binary file formats.

#ifndef SLUFST_SRC_BINARY_IO_H_
#define SLUFST_SRC_BINARY_IO_H_

#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

#include "slufst/error.h"

namespace slufst::internal {

inline void WriteU8(std::ostream &os, uint8_t v) {
  os.put(static_cast<char>(v));
}

inline void WriteU32(std::ostream &os, uint32_t v) {
  char buf[4];
  for (int i = 0; i < 4; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  os.write(buf, 4);
}

inline void WriteU64(std::ostream &os, uint64_t v) {
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  os.write(buf, 8);
}

inline void WriteF32(std::ostream &os, float v) {
  WriteU32(os, std::bit_cast<uint32_t>(v));
}

inline void WriteF64(std::ostream &os, double v) {
  WriteU64(os, std::bit_cast<uint64_t>(v));
}

inline void WriteString(std::ostream &os, const std::string &s) {
  WriteU32(os, static_cast<uint32_t>(s.size()));
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

inline void ReadExact(std::istream &is, char *buf, size_t n) {
  is.read(buf, static_cast<std::streamsize>(n));
  if (static_cast<size_t>(is.gcount()) != n) {
    throw Error(ErrorKind::kIo, "unexpected end of binary data");
  }
}

inline uint8_t ReadU8(std::istream &is) {
  char c;
  ReadExact(is, &c, 1);
  return static_cast<uint8_t>(c);
}

inline uint32_t ReadU32(std::istream &is) {
  unsigned char buf[4];
  ReadExact(is, reinterpret_cast<char *>(buf), 4);
  uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | buf[i];
  return v;
}

inline uint64_t ReadU64(std::istream &is) {
  unsigned char buf[8];
  ReadExact(is, reinterpret_cast<char *>(buf), 8);
  uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | buf[i];
  return v;
}

inline float ReadF32(std::istream &is) {
  return std::bit_cast<float>(ReadU32(is));
}

inline double ReadF64(std::istream &is) {
  return std::bit_cast<double>(ReadU64(is));
}

// `limit` guards against absurd lengths in corrupt files.
inline std::string ReadString(std::istream &is, uint32_t limit = 1u << 20) {
  uint32_t n = ReadU32(is);
  if (n > limit) throw Error(ErrorKind::kIo, "string length out of range");
  std::string s(n, '\0');
  if (n > 0) ReadExact(is, s.data(), n);
  return s;
}

}  // namespace slufst::internal

#endif  // SLUFST_SRC_BINARY_IO_H_
