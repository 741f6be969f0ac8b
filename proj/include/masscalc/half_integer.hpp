#pragma once

#include <cstdint>
#include <string>

#include "masscalc/rational.hpp"

namespace masscalc {

// Exact element of (1/2)Z, stored as twice its value.
struct HalfInt {
  std::int64_t doubled = 0;

  HalfInt() = default;
  static HalfInt from_doubled(std::int64_t d) { HalfInt h; h.doubled = d; return h; }
  static HalfInt whole(std::int64_t k) { return from_doubled(2 * k); }
  static HalfInt half_odd(std::int64_t k) { return from_doubled(2 * k + 1); }

  bool is_integer() const { return doubled % 2 == 0; }
  Rational to_rational() const { return Rational(static_cast<long>(doubled), 2); }
  double to_double() const { return 0.5 * static_cast<double>(doubled); }

  // "k" for integers, "d/2" otherwise; matches the CLI weight text format.
  std::string str() const {
    if (is_integer()) return std::to_string(doubled / 2);
    return std::to_string(doubled) + "/2";
  }

  friend HalfInt operator+(HalfInt a, HalfInt b) { return from_doubled(a.doubled + b.doubled); }
  friend HalfInt operator-(HalfInt a, HalfInt b) { return from_doubled(a.doubled - b.doubled); }
  HalfInt operator-() const { return from_doubled(-doubled); }

  friend bool operator==(HalfInt a, HalfInt b) { return a.doubled == b.doubled; }
  friend bool operator!=(HalfInt a, HalfInt b) { return a.doubled != b.doubled; }
  friend bool operator<(HalfInt a, HalfInt b) { return a.doubled < b.doubled; }
  friend bool operator>(HalfInt a, HalfInt b) { return a.doubled > b.doubled; }
  friend bool operator<=(HalfInt a, HalfInt b) { return a.doubled <= b.doubled; }
  friend bool operator>=(HalfInt a, HalfInt b) { return a.doubled >= b.doubled; }
};

}  // namespace masscalc
