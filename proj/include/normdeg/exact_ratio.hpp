#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace normdeg {

using BigInt = boost::multiprecision::cpp_int;

std::string to_string(const BigInt& value);

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
class ExactRatio {
 public:
  ExactRatio() : num_(0), den_(1) {}
  ExactRatio(BigInt num, BigInt den = 1);  // NOLINT(google-explicit-constructor)
  ExactRatio(std::int64_t num, std::int64_t den = 1)  // NOLINT
      : ExactRatio(BigInt(num), BigInt(den)) {}
  ExactRatio(int num) : ExactRatio(BigInt(num), BigInt(1)) {}  // NOLINT

  /// Parses "num/den" or a bare integer. Throws std::invalid_argument.
  static ExactRatio parse(std::string_view text);

  const BigInt& num() const noexcept { return num_; }
  const BigInt& den() const noexcept { return den_; }

  bool is_zero() const { return num_.is_zero(); }

  ExactRatio& operator+=(const ExactRatio& rhs);
  ExactRatio& operator-=(const ExactRatio& rhs);
  ExactRatio& operator*=(const ExactRatio& rhs);
  ExactRatio& operator/=(const ExactRatio& rhs);

  friend ExactRatio operator+(ExactRatio a, const ExactRatio& b) { return a += b; }
  friend ExactRatio operator-(ExactRatio a, const ExactRatio& b) { return a -= b; }
  friend ExactRatio operator*(ExactRatio a, const ExactRatio& b) { return a *= b; }
  friend ExactRatio operator/(ExactRatio a, const ExactRatio& b) { return a /= b; }
  ExactRatio operator-() const;

  friend bool operator==(const ExactRatio& a, const ExactRatio& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const ExactRatio& a, const ExactRatio& b);

  ExactRatio abs() const;

  /// "num/den", including integers ("1/1").
  std::string str() const;
  double to_double() const;

 private:
  void normalize();

  BigInt num_;
  BigInt den_;
};

std::ostream& operator<<(std::ostream& os, const ExactRatio& r);

}  // namespace normdeg
