#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace masscalc {

using BigInt = mpz_class;

// Exact rational with arbitrary-precision numerator and denominator.
// Thin wrapper over mpq_class that keeps the value canonical (reduced,
// denominator > 0) at every construction site.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit by design for literals
  Rational(const BigInt& n) : v_(n) {}
  Rational(long num, long den) : v_(num, den) { v_.canonicalize(); }
  Rational(const BigInt& num, const BigInt& den) : v_(num, den) { v_.canonicalize(); }
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  BigInt num() const { return v_.get_num(); }
  BigInt den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  bool is_integer() const { return v_.get_den() == 1; }

  double to_double() const { return v_.get_d(); }

  // "p/q", or just "p" when the value is an integer.
  std::string str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  // Inverse of str(): accepts "p" and "p/q", rejects everything else.
  static Rational parse(const std::string& text) {
    mpq_class q;
    if (text.empty() || q.set_str(text, 10) != 0)
      throw std::invalid_argument("not a rational number: '" + text + "'");
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    q.canonicalize();
    return Rational(q);
  }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
  friend Rational operator/(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ / b.v_)); }
  Rational operator-() const { return Rational(mpq_class(-v_)); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

private:
  mpq_class v_;
};

}  // namespace masscalc
