#include "normdeg/exact_ratio.hpp"

#include <ostream>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace normdeg {

std::string to_string(const BigInt& value) { return value.str(); }

ExactRatio::ExactRatio(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) {
    throw std::domain_error("ExactRatio: zero denominator");
  }
  normalize();
}

void ExactRatio::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  BigInt g = boost::multiprecision::gcd(boost::multiprecision::abs(num_), den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_.is_zero()) den_ = 1;
}

ExactRatio ExactRatio::parse(std::string_view text) {
  auto parse_int = [](std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty integer");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("bad integer: " + std::string(s));
    for (std::size_t j = i; j < s.size(); ++j) {
      if (s[j] < '0' || s[j] > '9') throw std::invalid_argument("bad integer: " + std::string(s));
    }
    return BigInt(std::string(s));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return ExactRatio(parse_int(text), BigInt(1));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den.is_zero()) throw std::invalid_argument("zero denominator");
  return ExactRatio(parse_int(text.substr(0, slash)), den);
}

ExactRatio& ExactRatio::operator+=(const ExactRatio& rhs) {
  num_ = num_ * rhs.den_ + rhs.num_ * den_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

ExactRatio& ExactRatio::operator-=(const ExactRatio& rhs) {
  num_ = num_ * rhs.den_ - rhs.num_ * den_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

ExactRatio& ExactRatio::operator*=(const ExactRatio& rhs) {
  num_ *= rhs.num_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

ExactRatio& ExactRatio::operator/=(const ExactRatio& rhs) {
  if (rhs.num_.is_zero()) throw std::domain_error("ExactRatio: division by zero");
  num_ *= rhs.den_;
  den_ *= rhs.num_;
  normalize();
  return *this;
}

ExactRatio ExactRatio::operator-() const {
  ExactRatio r = *this;
  r.num_ = -r.num_;
  return r;
}

std::strong_ordering operator<=>(const ExactRatio& a, const ExactRatio& b) {
  BigInt lhs = a.num_ * b.den_;
  BigInt rhs = b.num_ * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExactRatio ExactRatio::abs() const { return num_ < 0 ? -*this : *this; }

std::string ExactRatio::str() const { return num_.str() + "/" + den_.str(); }

double ExactRatio::to_double() const {
  using Float = boost::multiprecision::cpp_bin_float_double_extended;
  return static_cast<double>(Float(num_) / Float(den_));
}

std::ostream& operator<<(std::ostream& os, const ExactRatio& r) { return os << r.str(); }

}  // namespace normdeg
