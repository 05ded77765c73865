// Copyright 2026 The lfmark Authors. All rights reserved.
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

#ifndef LFMARK_NUMERIC_HPP_
#define LFMARK_NUMERIC_HPP_

#include <cmath>
#include <cstddef>

namespace lfmark {

/// Neumaier-compensated accumulator. Used for every reported mean so that
/// aggregates do not depend on summation order beyond rounding of the final
/// division.
class KahanSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
    ++count_;
  }
  KahanSum& operator+=(double v) {
    add(v);
    return *this;
  }
  double sum() const { return sum_ + comp_; }
  std::size_t count() const { return count_; }
  double mean() const { return count_ ? sum() / static_cast<double>(count_) : 0.0; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  std::size_t count_ = 0;
};

}  // namespace lfmark

#endif  // LFMARK_NUMERIC_HPP_
