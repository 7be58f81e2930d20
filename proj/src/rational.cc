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

#include "robustanon/rational.h"

#include <cctype>
#include <cstdlib>
#include <string>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"

namespace robustanon {

std::string FormatFraction(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

BigInt Pow10(long e) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e));
  return p;
}

// Rounds a non-negative rational to the nearest integer, ties to even.
BigInt RoundHalfEven(const Rational& q) {
  BigInt floor_value;
  mpz_fdiv_q(floor_value.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  Rational frac = q - Rational(floor_value);
  const int c = cmp(frac, Rational(1, 2));
  if (c > 0 || (c == 0 && mpz_odd_p(floor_value.get_mpz_t()))) {
    return floor_value + 1;
  }
  return floor_value;
}

}  // namespace

std::string FormatDecimal(const Rational& q, int significant_digits) {
  if (sgn(q) == 0) return "0";
  const bool negative = sgn(q) < 0;
  Rational a = abs(q);

  // Decimal exponent e with 10^e <= a < 10^(e+1).
  long e = static_cast<long>(a.get_num().get_str().size()) -
           static_cast<long>(a.get_den().get_str().size());
  auto scale = [](const Rational& v, long power) {
    return power >= 0 ? Rational(v * Rational(Pow10(power)))
                      : Rational(v / Rational(Pow10(-power)));
  };
  while (scale(a, -e) >= 1) ++e;
  while (scale(a, -e) < 1) --e;

  const long p = significant_digits;
  BigInt digits = RoundHalfEven(scale(a, p - 1 - e));
  if (digits == Pow10(p)) {
    digits /= 10;
    ++e;
  }
  std::string ds = digits.get_str();  // exactly p digits

  std::string out;
  if (e < -4 || e >= p) {
    std::string mant = ds.substr(0, 1);
    std::string rest = ds.substr(1);
    while (!rest.empty() && rest.back() == '0') rest.pop_back();
    if (!rest.empty()) mant += "." + rest;
    std::string exp = std::to_string(e < 0 ? -e : e);
    if (exp.size() < 2) exp = "0" + exp;
    out = mant + (e < 0 ? "e-" : "e+") + exp;
  } else if (e >= 0) {
    std::string int_part = ds.substr(0, e + 1);
    std::string frac_part = ds.substr(e + 1);
    while (!frac_part.empty() && frac_part.back() == '0') frac_part.pop_back();
    out = frac_part.empty() ? int_part : int_part + "." + frac_part;
  } else {
    std::string frac_part = std::string(-e - 1, '0') + ds;
    while (!frac_part.empty() && frac_part.back() == '0') frac_part.pop_back();
    out = "0." + frac_part;
  }
  return negative ? "-" + out : out;
}

absl::StatusOr<Rational> ParseRational(absl::string_view text) {
  std::string s(absl::StripAsciiWhitespace(text));
  if (s.empty()) return absl::InvalidArgumentError("empty rational");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    BigInt num, den;
    if (num.set_str(s.substr(0, slash), 10) != 0 ||
        den.set_str(s.substr(slash + 1), 10) != 0) {
      return absl::InvalidArgumentError(absl::StrCat("bad fraction: ", s));
    }
    if (den == 0) return absl::InvalidArgumentError("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  // Decimal with optional exponent, parsed exactly.
  size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false, seen_digit = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      seen_digit = true;
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) return absl::InvalidArgumentError(absl::StrCat("bad number: ", s));
  long exponent = 0;
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') {
      return absl::InvalidArgumentError(absl::StrCat("bad number: ", s));
    }
    int64_t parsed;
    if (!absl::SimpleAtoi(s.substr(pos + 1), &parsed) || parsed > 4096 ||
        parsed < -4096) {
      return absl::InvalidArgumentError(absl::StrCat("bad exponent: ", s));
    }
    exponent = static_cast<long>(parsed);
  }
  Rational q{BigInt(digits, 10)};
  long shift = exponent - frac_digits;
  if (shift >= 0) {
    q *= Rational(Pow10(shift));
  } else {
    q /= Rational(Pow10(-shift));
  }
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

double ToDouble(const Rational& q) { return q.get_d(); }

BigInt Ceil(const Rational& q) {
  BigInt c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return c;
}

}  // namespace robustanon
