#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace murank {

using Integer = boost::multiprecision::cpp_int;

/// Exact rational number with a positive, coprime denominator.
///
/// Every certified quantity in the bound engine is carried as a Rational;
/// floors are only taken when a bound is exported as an integer claim.
class Rational {
public:
  Rational() = default;
  Rational(int v) : num_(v) {}
  Rational(unsigned v) : num_(v) {}
  Rational(long v) : num_(v) {}
  Rational(long long v) : num_(v) {}
  Rational(unsigned long v) : num_(v) {}
  Rational(unsigned long long v) : num_(v) {}
  Rational(Integer v) : num_(std::move(v)) {}
  Rational(Integer num, Integer den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    normalize();
  }

  const Integer& num() const { return num_; }
  const Integer& den() const { return den_; }
  bool is_integer() const { return den_ == 1; }

  Integer floor() const {
    Integer q = num_ / den_;  // truncates toward zero
    if (num_ < 0 && q * den_ != num_) q -= 1;
    return q;
  }
  Integer ceil() const { return -Rational(-num_, den_).floor(); }

  Rational operator-() const { return Rational(-num_, den_, raw_tag{}); }

  Rational& operator+=(const Rational& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  Rational& operator-=(const Rational& o) { return *this += -o; }
  Rational& operator*=(const Rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
    num_ *= o.den_;
    den_ *= o.num_;
    normalize();
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const Integer lhs = a.num_ * b.den_;
    const Integer rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// "num/den", or just "num" for integers.
  std::string str() const {
    return is_integer() ? num_.str() : num_.str() + "/" + den_.str();
  }

  /// Accepts "a", "-a" and "a/b".
  static Rational parse(std::string_view text) {
    const auto slash = text.find('/');
    try {
      if (slash == std::string_view::npos) return Rational(Integer(std::string(text)));
      return Rational(Integer(std::string(text.substr(0, slash))),
                      Integer(std::string(text.substr(slash + 1))));
    } catch (const std::domain_error&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("Rational: cannot parse '" + std::string(text) + "'");
    }
  }

  double to_double() const {
    return static_cast<double>(num_.convert_to<long double>() / den_.convert_to<long double>());
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
  struct raw_tag {};
  Rational(Integer num, Integer den, raw_tag) : num_(std::move(num)), den_(std::move(den)) {}

  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const Integer g = boost::multiprecision::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  Integer num_ = 0;
  Integer den_ = 1;
};

inline Integer ipow(const Integer& base, unsigned exp) { return boost::multiprecision::pow(base, exp); }

inline Integer isqrt(const Integer& v) {
  if (v < 0) throw std::domain_error("isqrt of negative value");
  return boost::multiprecision::sqrt(v);
}

inline bool is_perfect_square(const Integer& v) {
  if (v < 0) return false;
  const Integer s = isqrt(v);
  return s * s == v;
}

/// Exact test of  a <= sqrt(x) - sqrt(y)  for integers a, x, y >= 0.
///
/// a + sqrt(y) <= sqrt(x)  <=>  a^2 + y + 2a sqrt(y) <= x
///                          <=>  t := x - a^2 - y >= 0  and  4 a^2 y <= t^2.
inline bool le_sqrt_difference(const Integer& a, const Integer& x, const Integer& y) {
  if (a < 0) throw std::domain_error("le_sqrt_difference: negative left side");
  const Integer t = x - a * a - y;
  if (t < 0) return false;
  return 4 * a * a * y <= t * t;
}

/// floor((a - b*sqrt(c)) / d) for integers b, c >= 0 and d > 0.
inline Integer floor_sub_sqrt(const Integer& a, const Integer& b, const Integer& c, const Integer& d) {
  // b*sqrt(c) lies in [b*s, b*(s+1)) with s = isqrt(c); walk down from the optimistic end.
  const Integer s = isqrt(c);
  Integer g = Rational(a - b * s, d).floor();
  // g is admissible iff g*d <= a - b*sqrt(c)  <=>  b*sqrt(c) <= a - g*d.
  auto admissible = [&](const Integer& cand) {
    const Integer rhs = a - cand * d;
    if (rhs < 0) return false;
    return b * b * c <= rhs * rhs;
  };
  while (!admissible(g)) g -= 1;
  return g;
}

}  // namespace murank
