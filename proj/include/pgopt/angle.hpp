// Copyright 2026 The pgopt Authors
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

#include <charconv>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace pgopt {

/// Reduced fraction with positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    return {num, den};
  }

  /// "p/q" or "p".
  static Rational parse(std::string_view s) {
    const auto slash = s.find('/');
    const auto num = parse_int(s.substr(0, slash));
    const auto den = slash == std::string_view::npos ? std::int64_t{1} : parse_int(s.substr(slash + 1));
    return make(num, den);
  }

  [[nodiscard]] double value() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }

  friend bool operator==(const Rational&, const Rational&) = default;

 private:
  static std::int64_t parse_int(std::string_view s) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
      throw std::invalid_argument("bad rational '" + std::string(s) + "'");
    return v;
  }
};

/// Symbolic angle coeff * name, left opaque by every rewrite.
struct Parameter {
  std::string name;
  Rational coeff{1, 1};

  friend bool operator==(const Parameter&, const Parameter&) = default;
};

/// Gadget angle: either an exact multiple of pi reduced into [0, 2pi), or a
/// named parameter.
class Angle {
 public:
  Angle() = default;

  /// (num/den) * pi, normalised into [0, 2pi).
  static Angle pi_fraction(std::int64_t num, std::int64_t den = 1) {
    Rational r = Rational::make(num, den);
    const std::int64_t period = 2 * r.den;
    r.num = ((r.num % period) + period) % period;
    Angle a;
    a.value_ = r;
    return a;
  }

  static Angle parameter(std::string name, Rational coeff = {1, 1}) {
    if (name.empty()) throw std::invalid_argument("parameter name must be non-empty");
    Angle a;
    a.value_ = Parameter{std::move(name), Rational::make(coeff.num, coeff.den)};
    return a;
  }

  /// Parses "p/q pi", "p pi", "pi", "-pi/4", "3*pi/2", "0" and similar.
  static Angle parse(std::string_view text) {
    std::string s;
    for (char c : text)
      if (c != ' ' && c != '\t' && c != '*') s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty angle string");
    bool negative = false;
    if (s.front() == '-' || s.front() == '+') {
      negative = s.front() == '-';
      s.erase(0, 1);
    }
    std::int64_t num = 1;
    std::int64_t den = 1;
    const auto pi = s.find("pi");
    if (pi == std::string::npos) {
      num = parse_int(s, text);
      if (num != 0) throw std::invalid_argument("angle '" + std::string(text) + "' must be a multiple of pi");
    } else {
      const std::string before = s.substr(0, pi);
      const std::string after = s.substr(pi + 2);
      const auto slash = before.find('/');
      if (slash != std::string::npos) {
        if (!after.empty()) throw std::invalid_argument("bad angle '" + std::string(text) + "'");
        num = parse_int(before.substr(0, slash), text);
        den = parse_int(before.substr(slash + 1), text);
      } else {
        if (!before.empty()) num = parse_int(before, text);
        if (!after.empty()) {
          if (after.front() != '/') throw std::invalid_argument("bad angle '" + std::string(text) + "'");
          den = parse_int(after.substr(1), text);
        }
      }
    }
    if (den <= 0) throw std::invalid_argument("bad angle denominator in '" + std::string(text) + "'");
    return pi_fraction(negative ? -num : num, den);
  }

  [[nodiscard]] bool is_concrete() const { return std::holds_alternative<Rational>(value_); }
  [[nodiscard]] const Rational& pi_multiple() const { return std::get<Rational>(value_); }
  [[nodiscard]] const Parameter& param() const { return std::get<Parameter>(value_); }

  [[nodiscard]] double radians() const {
    if (!is_concrete()) throw std::invalid_argument("parametric angle has no numeric value");
    return pi_multiple().value() * std::numbers::pi;
  }

  /// "p/q pi" for concrete angles ("0" for zero, "p pi" when q = 1); the
  /// parameter name (prefixed by its coefficient when not 1) otherwise.
  [[nodiscard]] std::string to_string() const {
    if (is_concrete()) {
      const auto& r = pi_multiple();
      if (r.num == 0) return "0";
      if (r.den == 1) return std::to_string(r.num) + " pi";
      return std::to_string(r.num) + "/" + std::to_string(r.den) + " pi";
    }
    const auto& p = param();
    if (p.coeff == Rational{1, 1}) return p.name;
    return std::to_string(p.coeff.num) + "/" + std::to_string(p.coeff.den) + "*" + p.name;
  }

  friend bool operator==(const Angle&, const Angle&) = default;

 private:
  static std::int64_t parse_int(std::string_view s, std::string_view whole) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
      throw std::invalid_argument("bad angle '" + std::string(whole) + "'");
    return v;
  }

  std::variant<Rational, Parameter> value_{Rational{0, 1}};
};

}  // namespace pgopt
