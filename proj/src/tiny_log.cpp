#include "superpat/tiny_log.hpp"

#include <cctype>
#include <regex>
#include <sstream>

#include <boost/math/special_functions/log1p.hpp>

#include "superpat/error.hpp"

namespace superpat {

namespace {

Real parse_decimal(std::string_view text) {
  static const std::regex decimal(R"([+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)");
  const std::string s(text);
  if (!std::regex_match(s, decimal)) fail(ErrorCode::Parse, "not a decimal number: '" + s + "'");
  try {
    return Real(s);
  } catch (const std::exception&) {
    fail(ErrorCode::Parse, "not a decimal number: '" + s + "'");
  }
}

// log(1 + e^{-delta}) and log(1 - e^{-delta}) for delta >= 0.
Real log1p_exp_neg(const Real& delta) { return boost::math::log1p(Real(exp(-delta))); }
Real log1m_exp_neg(const Real& delta) { return boost::math::log1p(Real(-exp(-delta))); }

}  // namespace

Real parse_real_log(std::string_view text, int& sign) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  sign = 1;
  if (!text.empty() && text.front() == '-' && text.substr(1, 4) == "exp(") {
    sign = -1;
    text.remove_prefix(1);
  }
  if (text.substr(0, 4) == "exp(" && text.size() > 5 && text.back() == ')') {
    return parse_decimal(text.substr(4, text.size() - 5));
  }
  const Real x = parse_decimal(text);
  if (x == 0) {
    sign = 0;
    return 0;
  }
  sign = x < 0 ? -1 : 1;
  return log(abs(x));
}

TinyLog TinyLog::from_log(Real log_magnitude, int sign) {
  TinyLog t;
  t.sign_ = sign == 0 ? 0 : (sign > 0 ? 1 : -1);
  t.log_ = t.sign_ == 0 ? Real(0) : std::move(log_magnitude);
  return t;
}

TinyLog TinyLog::from_value(const Real& x) {
  if (x == 0) return {};
  return from_log(log(abs(x)), x < 0 ? -1 : 1);
}

TinyLog TinyLog::one_plus(const TinyLog& x) {
  if (x.is_zero()) return one();
  if (x.log_ < 0) {
    const Real arg = x.sign_ * exp(x.log_);
    if (arg <= -1) fail(ErrorCode::Domain, "1 + x must be nonnegative");
    return from_log(boost::math::log1p(arg));
  }
  return one() + x;
}

TinyLog TinyLog::parse(std::string_view text) {
  int sign = 0;
  Real l = parse_real_log(text, sign);
  return from_log(std::move(l), sign);
}

Real TinyLog::value() const { return sign_ == 0 ? Real(0) : Real(sign_ * exp(log_)); }

double TinyLog::to_double() const { return value().convert_to<double>(); }

std::string TinyLog::to_string(int digits) const {
  std::ostringstream os;
  os.precision(digits);
  if (sign_ == 0) return "0";
  os << (sign_ < 0 ? "-" : "") << "exp(" << log_ << ")";
  return os.str();
}

TinyLog TinyLog::operator-() const {
  TinyLog t = *this;
  t.sign_ = -t.sign_;
  return t;
}

TinyLog TinyLog::operator*(const TinyLog& rhs) const {
  if (is_zero() || rhs.is_zero()) return {};
  return from_log(log_ + rhs.log_, sign_ * rhs.sign_);
}

TinyLog TinyLog::operator/(const TinyLog& rhs) const {
  if (rhs.is_zero()) fail(ErrorCode::Domain, "division by zero");
  if (is_zero()) return {};
  return from_log(log_ - rhs.log_, sign_ * rhs.sign_);
}

TinyLog TinyLog::operator+(const TinyLog& rhs) const {
  if (is_zero()) return rhs;
  if (rhs.is_zero()) return *this;
  const bool this_larger = log_ >= rhs.log_;
  const TinyLog& big = this_larger ? *this : rhs;
  const TinyLog& small = this_larger ? rhs : *this;
  const Real delta = big.log_ - small.log_;
  if (big.sign_ == small.sign_) return from_log(big.log_ + log1p_exp_neg(delta), big.sign_);
  if (delta == 0) return {};
  return from_log(big.log_ + log1m_exp_neg(delta), big.sign_);
}

TinyLog TinyLog::pow(const Real& exponent) const {
  if (sign_ < 0) fail(ErrorCode::Domain, "pow needs a nonnegative base");
  if (sign_ == 0) {
    if (exponent <= 0) fail(ErrorCode::Domain, "0 raised to a nonpositive power");
    return {};
  }
  return from_log(log_ * exponent, 1);
}

std::partial_ordering operator<=>(const TinyLog& a, const TinyLog& b) {
  if (a.sign_ != b.sign_) return a.sign_ <=> b.sign_;
  if (a.sign_ == 0) return std::partial_ordering::equivalent;
  // Same sign: larger magnitude is larger for positives, smaller for negatives.
  const auto by_magnitude = a.log_ < b.log_   ? std::partial_ordering::less
                            : a.log_ > b.log_ ? std::partial_ordering::greater
                                              : std::partial_ordering::equivalent;
  if (a.sign_ > 0) return by_magnitude;
  if (by_magnitude == std::partial_ordering::less) return std::partial_ordering::greater;
  if (by_magnitude == std::partial_ordering::greater) return std::partial_ordering::less;
  return std::partial_ordering::equivalent;
}

}  // namespace superpat
