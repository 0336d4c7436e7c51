#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace superpat {

// 50 significant decimal digits.
using Real = boost::multiprecision::cpp_bin_float_50;

// Parses a decimal literal, or "exp(<decimal>)" for quantities such as
// exp(-290) whose value underflows any hardware float.
Real parse_real_log(std::string_view text, int& sign);

// Signed number stored as sign and ln|x|. Numbers like exp(-1000) and
// 1 - exp(-600) are both representable without loss.
class TinyLog {
 public:
  TinyLog() = default;  // zero

  static TinyLog from_log(Real log_magnitude, int sign = 1);
  static TinyLog from_value(const Real& x);
  static TinyLog from_double(double x) { return from_value(Real(x)); }
  // 1 + x with x given in log form: uses log1p so 1 + exp(-600) keeps its
  // tail.
  static TinyLog one_plus(const TinyLog& x);
  static TinyLog parse(std::string_view text);
  static TinyLog one() { return from_log(0); }

  int sign() const noexcept { return sign_; }
  bool is_zero() const noexcept { return sign_ == 0; }
  const Real& log_magnitude() const noexcept { return log_; }

  Real value() const;
  double to_double() const;
  std::string to_string(int digits = 30) const;

  TinyLog operator-() const;
  TinyLog operator*(const TinyLog& rhs) const;
  TinyLog operator/(const TinyLog& rhs) const;
  TinyLog operator+(const TinyLog& rhs) const;
  TinyLog operator-(const TinyLog& rhs) const { return *this + (-rhs); }
  TinyLog pow(const Real& exponent) const;  // requires a nonnegative base

  friend std::partial_ordering operator<=>(const TinyLog& a, const TinyLog& b);
  friend bool operator==(const TinyLog& a, const TinyLog& b) {
    return (a <=> b) == std::partial_ordering::equivalent;
  }

 private:
  int sign_ = 0;
  Real log_ = 0;
};

}  // namespace superpat
