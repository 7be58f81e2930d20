//
// Copyright 2026 The RobustAnon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef ROBUSTANON_RATIONAL_H_
#define ROBUSTANON_RATIONAL_H_

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace robustanon {

// All probabilities are exact. mpq_class values are kept canonical (lowest
// terms, positive denominator) by every function in this library.
using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational MakeRational(int64_t num, int64_t den) {
  Rational q(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
  q.canonicalize();
  return q;
}

// "num/den" in lowest terms; integers render without a denominator.
std::string FormatFraction(const Rational& q);

// Decimal rendering with `significant_digits` significant digits, rounding
// half to even on the exact value. Follows printf's %g layout: fixed notation
// for exponents in [-4, significant_digits), scientific otherwise, trailing
// zeros stripped.
std::string FormatDecimal(const Rational& q, int significant_digits = 6);

// Accepts "3", "-2", "5/2", "0.25", "1e-3".
absl::StatusOr<Rational> ParseRational(absl::string_view text);

double ToDouble(const Rational& q);

// Smallest integer >= q.
BigInt Ceil(const Rational& q);

}  // namespace robustanon

#endif  // ROBUSTANON_RATIONAL_H_
