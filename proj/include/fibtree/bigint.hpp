/* Copyright 2026 The fibtree authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>

namespace fibtree {

// Exact nonnegative pattern counts grow doubly exponentially in the tree
// height, so every count in the library is an arbitrary-precision integer.
using BigInt = mpz_class;

// Natural log of a positive BigInt.  mpz_get_d_2exp returns d in [0.5, 1)
// with x = d * 2^e exactly (up to double rounding of d), so ln x is accurate
// to a few ulp regardless of how many digits x has.
inline double log_big(const BigInt& x) {
  signed long exp = 0;
  const double d = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(d) + static_cast<double>(exp) * M_LN2;
}

inline std::string to_string(const BigInt& x) { return x.get_str(); }

}  // namespace fibtree
