// Copyright (c) 2026 the rta-verify authors
// SPDX-License-Identifier: Apache-2.0
//
// Exact rational arithmetic used throughout the engine.  All quantities the
// engine reasons about (positions, speeds, thresholds, time splits) are exact
// rationals; doubles appear only in reports as human-oriented approximations.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rta {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Error category carried across the C API boundary.
enum class ErrCode : int {
  Ok = 0,
  Invalid = 1,   // bad arguments / malformed input
  Config = 2,    // scenario configuration rejected
  Solver = 3,    // external solver failed or produced garbage
  Internal = 4,  // invariant violation inside the engine
};

class Error : public std::runtime_error {
 public:
  Error(ErrCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrCode code() const { return code_; }

 private:
  ErrCode code_;
};

// Parses "123", "-4.75", "1e-3", "2.5e2" or a fraction "350/9" into an exact
// rational.  Decimal text is interpreted exactly (0.1 -> 1/10).
inline Rat rat_from_string(std::string_view s) {
  auto fail = [&] { throw Error(ErrCode::Invalid, "not a rational literal: '" + std::string(s) + "'"); };
  if (s.empty()) fail();

  // Fraction form p/q with integer p, q.
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (num.empty() || den.empty()) fail();
    try {
      Rat r{BigInt(num), BigInt(den)};
      return r;
    } catch (const std::exception&) {
      fail();
    }
  }

  bool negative = false;
  size_t i = 0;
  if (s[i] == '+' || s[i] == '-') {
    negative = (s[i] == '-');
    ++i;
  }
  std::string digits;       // integer and fractional digits concatenated
  long frac_digits = 0;     // number of digits after the decimal point
  bool seen_digit = false, seen_dot = false;
  for (; i < s.size() && s[i] != 'e' && s[i] != 'E'; ++i) {
    if (s[i] == '.') {
      if (seen_dot) fail();
      seen_dot = true;
    } else if (s[i] >= '0' && s[i] <= '9') {
      digits.push_back(s[i]);
      if (seen_dot) ++frac_digits;
      seen_digit = true;
    } else {
      fail();
    }
  }
  if (!seen_digit) fail();

  long exp10 = 0;
  if (i < s.size()) {  // exponent part
    ++i;
    if (i >= s.size()) fail();
    bool exp_neg = false;
    if (s[i] == '+' || s[i] == '-') {
      exp_neg = (s[i] == '-');
      ++i;
    }
    if (i >= s.size()) fail();
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') fail();
      exp10 = exp10 * 10 + (s[i] - '0');
      if (exp10 > 100000) fail();
    }
    if (exp_neg) exp10 = -exp10;
  }

  BigInt mantissa(digits.empty() ? "0" : digits);
  if (negative) mantissa = -mantissa;
  long shift = exp10 - frac_digits;
  Rat r(mantissa);
  if (shift > 0) {
    BigInt pow10 = 1;
    for (long k = 0; k < shift; ++k) pow10 *= 10;
    r *= Rat(pow10);
  } else if (shift < 0) {
    BigInt pow10 = 1;
    for (long k = 0; k < -shift; ++k) pow10 *= 10;
    r /= Rat(pow10);
  }
  return r;
}

// Exact rational from a double via its shortest round-tripping decimal form,
// so that a JSON literal 0.1 becomes 1/10 (what the author wrote), not the
// binary expansion of the nearest double.
inline Rat rat_from_double(double d) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), d);
  if (ec != std::errc()) throw Error(ErrCode::Invalid, "unrepresentable double");
  return rat_from_string(std::string_view(buf, static_cast<size_t>(ptr - buf)));
}

// "p" for integers, "p/q" otherwise.
inline std::string rat_to_string(const Rat& r) {
  const BigInt num = numerator(r), den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline double rat_to_double(const Rat& r) { return r.template convert_to<double>(); }

}  // namespace rta
