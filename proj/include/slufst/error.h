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

#ifndef SLUFST_ERROR_H_
#define SLUFST_ERROR_H_

#include <stdexcept>
#include <string>

namespace slufst {

enum class ErrorKind {
  kConfig,    // incompatible symbol tables, bad alphabet, bad parameters
  kInput,     // malformed or out-of-range user input
  kBuild,     // dialog spec / grammar construction failures
  kIo,        // unreadable or corrupt files
  kInternal,  // broken invariant; always a bug
};

const char *ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace slufst

#endif  // SLUFST_ERROR_H_
