#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "surfhom/checked.hpp"
#include "surfhom/error.hpp"

namespace surfhom {

/// Exact rational number over checked int64. Always normalized: gcd(num, den) = 1, den > 0.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
    if (d == 0) throw DomainError("rational with zero denominator");
    normalize();
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  /// Parses "p/q" or "p".
  static Rational parse(std::string_view text) {
    auto read = [&](std::string_view part) {
      std::int64_t v = 0;
      if (!part.empty() && part.front() == '+') part.remove_prefix(1);
      auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
      if (ec != std::errc() || ptr != part.data() + part.size() || part.empty())
        throw ValidationError("malformed rational '" + std::string(text) + "'");
      return v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(read(text));
    return Rational(read(text.substr(0, slash)), read(text.substr(slash + 1)));
  }

  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  Rational operator-() const { return Rational(checked::neg(num_), den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    std::int64_t g = std::gcd(a.den_, b.den_);
    std::int64_t lhs = checked::mul(a.num_, b.den_ / g);
    std::int64_t rhs = checked::mul(b.num_, a.den_ / g);
    return Rational(checked::add(lhs, rhs), checked::mul(a.den_, b.den_ / g));
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    std::int64_t g1 = checked::gcd(a.num_, b.den_);
    std::int64_t g2 = checked::gcd(b.num_, a.den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    return Rational(checked::mul(a.num_ / g1, b.num_ / g2), checked::mul(a.den_ / g2, b.den_ / g1));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw DomainError("rational division by zero");
    return a * Rational(b.den_, b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    __int128 l = static_cast<__int128>(a.num_) * b.den_;
    __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l <=> r;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  void normalize() {
    if (den_ < 0) {
      num_ = checked::neg(num_);
      den_ = checked::neg(den_);
    }
    std::int64_t g = checked::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace surfhom
