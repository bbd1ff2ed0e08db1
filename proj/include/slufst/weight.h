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

#ifndef SLUFST_WEIGHT_H_
#define SLUFST_WEIGHT_H_

#include <algorithm>
#include <cmath>
#include <limits>

namespace slufst {

// Tropical semiring over non-negative costs: Plus is min, Times is +.
// Lower values are better; Zero() (infinity) marks "no path".
class TropicalWeight {
 public:
  constexpr TropicalWeight() : value_(0.0) {}
  constexpr explicit TropicalWeight(double value) : value_(value) {}

  static constexpr TropicalWeight Zero() {
    return TropicalWeight(std::numeric_limits<double>::infinity());
  }
  static constexpr TropicalWeight One() { return TropicalWeight(0.0); }

  constexpr double Value() const { return value_; }
  bool IsZero() const { return std::isinf(value_) && value_ > 0; }

  friend constexpr bool operator==(TropicalWeight a, TropicalWeight b) {
    return a.value_ == b.value_;
  }

 private:
  double value_;
};

inline TropicalWeight Plus(TropicalWeight a, TropicalWeight b) {
  return a.Value() <= b.Value() ? a : b;
}

inline TropicalWeight Times(TropicalWeight a, TropicalWeight b) {
  if (a.IsZero() || b.IsZero()) return TropicalWeight::Zero();
  return TropicalWeight(a.Value() + b.Value());
}

inline bool ApproxEqual(TropicalWeight a, TropicalWeight b,
                        double delta = 1e-9) {
  if (a.IsZero() || b.IsZero()) return a.IsZero() == b.IsZero();
  return std::fabs(a.Value() - b.Value()) <= delta;
}

}  // namespace slufst

#endif  // SLUFST_WEIGHT_H_
