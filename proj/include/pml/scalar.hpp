// Copyright 2026 The PML Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef PML_SCALAR_HPP_
#define PML_SCALAR_HPP_

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace pml {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Single tolerance used for every float-mode equality and stochasticity check.
inline constexpr double kFloatRelTol = 1e-9;

enum class Mode { kRational, kFloat };

inline std::string mode_name(Mode m) {
  return m == Mode::kRational ? "rational" : "float";
}

// A probability/ratio value in one of two computation modes.  A model never
// mixes modes; mixing raises std::logic_error (a programming error, not a
// data error).  Rational mode stores the canonical reduced fraction.
class Scalar {
 public:
  Scalar() : mode_(Mode::kRational), q_(0), f_(0.0) {}

  static Scalar rational(Rational q) {
    Scalar s;
    s.mode_ = Mode::kRational;
    s.q_ = std::move(q);
    return s;
  }
  static Scalar rational(long long num, long long den = 1) {
    return rational(Rational(BigInt(num), BigInt(den)));
  }
  static Scalar real(double v) {
    Scalar s;
    s.mode_ = Mode::kFloat;
    s.f_ = v;
    return s;
  }
  static Scalar zero(Mode m) {
    return m == Mode::kRational ? rational(0) : real(0.0);
  }
  static Scalar one(Mode m) {
    return m == Mode::kRational ? rational(1) : real(1.0);
  }

  // Parses "a/b", integer, or decimal text.  In rational mode decimal
  // literals convert exactly (e.g. "0.6" -> 3/5).
  static Scalar parse(const std::string& text, Mode mode);

  Mode mode() const { return mode_; }
  bool is_rational() const { return mode_ == Mode::kRational; }

  const Rational& rat() const {
    require_mode(Mode::kRational);
    return q_;
  }
  double flt() const {
    require_mode(Mode::kFloat);
    return f_;
  }

  double to_double() const {
    return mode_ == Mode::kRational ? static_cast<double>(q_) : f_;
  }

  // Natural log for presentation; never used in internal arithmetic.
  double log_value() const { return std::log(to_double()); }

  Scalar to_mode(Mode m) const {
    if (m == mode_) return *this;
    if (m == Mode::kFloat) return real(to_double());
    // Doubles are dyadic rationals, so this conversion is exact.
    Scalar s;
    s.mode_ = Mode::kRational;
    s.q_ = Rational(f_);
    return s;
  }

  bool is_zero() const {
    return mode_ == Mode::kRational ? q_.is_zero() : f_ == 0.0;
  }
  bool is_negative() const {
    return mode_ == Mode::kRational ? q_ < 0 : f_ < 0.0;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    a.require_mode(b.mode_);
    return a.is_rational() ? rational(a.q_ + b.q_) : real(a.f_ + b.f_);
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    a.require_mode(b.mode_);
    return a.is_rational() ? rational(a.q_ - b.q_) : real(a.f_ - b.f_);
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    a.require_mode(b.mode_);
    return a.is_rational() ? rational(a.q_ * b.q_) : real(a.f_ * b.f_);
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    a.require_mode(b.mode_);
    if (b.is_zero()) throw std::domain_error("scalar division by zero");
    return a.is_rational() ? rational(a.q_ / b.q_) : real(a.f_ / b.f_);
  }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  friend bool operator<(const Scalar& a, const Scalar& b) {
    a.require_mode(b.mode_);
    return a.is_rational() ? a.q_ < b.q_ : a.f_ < b.f_;
  }
  friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return !(b < a); }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return !(a < b); }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    a.require_mode(b.mode_);
    return a.is_rational() ? a.q_ == b.q_ : a.f_ == b.f_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // Mode-aware equality: exact in rational mode, 1e-9 relative in float mode.
  bool approx_equals(const Scalar& o) const {
    require_mode(o.mode_);
    if (is_rational()) return q_ == o.q_;
    const double scale =
        std::max({std::fabs(f_), std::fabs(o.f_), 1.0});
    return std::fabs(f_ - o.f_) <= kFloatRelTol * scale;
  }

  std::string str() const {
    if (mode_ == Mode::kFloat) {
      std::ostringstream os;
      os.precision(17);
      os << f_;
      return os.str();
    }
    std::ostringstream os;
    os << boost::multiprecision::numerator(q_);
    if (boost::multiprecision::denominator(q_) != 1) {
      os << '/' << boost::multiprecision::denominator(q_);
    }
    return os.str();
  }

 private:
  void require_mode(Mode m) const {
    if (mode_ != m) throw std::logic_error("mixed scalar modes in expression");
  }

  Mode mode_;
  Rational q_;
  double f_;
};

inline Scalar Scalar::parse(const std::string& text, Mode mode) {
  std::string t = text;
  // trim
  const auto b = t.find_first_not_of(" \t");
  const auto e = t.find_last_not_of(" \t");
  if (b == std::string::npos) throw std::invalid_argument("empty scalar text");
  t = t.substr(b, e - b + 1);

  const auto parse_double = [&text](const std::string& s) {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) {
      throw std::invalid_argument("bad numeric literal: " + text);
    }
    return v;
  };
  // Decimal integer in base 10.  BigInt's string constructor would read a
  // leading zero as an octal prefix, so strip redundant zeros first.
  const auto parse_int = [&text](std::string s) {
    std::string sign;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
      sign = s[0] == '-' ? "-" : "";
      s.erase(0, 1);
    }
    std::size_t nz = 0;
    while (nz + 1 < s.size() && s[nz] == '0') ++nz;
    s.erase(0, nz);
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("bad numeric literal: " + text);
    }
    return BigInt(sign + s);
  };

  const auto slash = t.find('/');
  if (mode == Mode::kFloat) {
    if (slash != std::string::npos) {
      const double den = parse_double(t.substr(slash + 1));
      if (den == 0.0) throw std::invalid_argument("zero denominator: " + text);
      return real(parse_double(t.substr(0, slash)) / den);
    }
    return real(parse_double(t));
  }

  if (slash != std::string::npos) {
    const BigInt num = parse_int(t.substr(0, slash));
    const BigInt den = parse_int(t.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + text);
    return rational(Rational(num, den));
  }
  const auto dot = t.find('.');
  if (dot == std::string::npos) {
    return rational(Rational(parse_int(t)));
  }
  // Exact decimal expansion: digits over a power of ten.
  const std::string digits = t.substr(0, dot) + t.substr(dot + 1);
  const std::size_t frac_len = t.size() - dot - 1;
  BigInt den = 1;
  for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
  return rational(Rational(parse_int(digits), den));
}

}  // namespace pml

#endif  // PML_SCALAR_HPP_
