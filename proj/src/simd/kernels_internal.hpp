// Copyright 2026 The lpclt Authors.
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


#pragma once

#include "lpclt/simd/kernels.hpp"

namespace lpclt::simd::detail {

const KernelTable& scalar_table();
#if defined(LPCLT_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

// |x|^p for integer p >= 1 by binary exponentiation. Both kernel variants
// follow this exact multiplication order so the power itself is identical.
static inline double ipow_abs(double x, int p) {
  double base = x < 0 ? -x : x;
  double result = 1.0;
  bool first = true;
  while (p > 0) {
    if (p & 1) {
      result = first ? base : result * base;
      first = false;
    }
    p >>= 1;
    if (p > 0) base *= base;
  }
  return result;
}

}  // namespace lpclt::simd::detail
