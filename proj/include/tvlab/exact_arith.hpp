#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>

namespace tvlab {

using BigInt = mpz_class;

/// Exact rational number kept in lowest terms with a positive denominator.
/// Zero is 0/1. Immutable from the outside; all arithmetic is exact.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(const BigInt& integer) : value_(integer) {}
  Rational(const BigInt& numerator, const BigInt& denominator);
  explicit Rational(const mpq_class& q);

  /// Adopts num/den without a gcd pass. The caller guarantees den > 0 and
  /// gcd(num, den) = 1.
  static Rational from_reduced(BigInt numerator, BigInt denominator);

  /// Parses "a/b" or "a" (optional leading '-'). Throws DomainError.
  static Rational parse(std::string_view text);

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  bool in_unit_interval() const;
  int sign() const { return sgn(value_); }

  Rational complement() const;  // 1 - r

  /// Reduced "a/b"; "/b" omitted when b == 1.
  std::string str() const;
  /// Fixed-point rendering with `digits` fractional digits, rounded to nearest.
  std::string decimal(int digits = 12) const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_;  // canonical by construction
};

Rational abs(const Rational& r);
/// 2^k for any integer k (negative k gives 1/2^|k|).
Rational pow2(long k);

struct DyadicInfo {
  bool dyadic = false;
  unsigned bits = 0;  // minimal k with r = a/2^k; meaningful only if dyadic
};

/// Whether r = a/2^k for some integer a, and the minimal such k.
DyadicInfo is_dyadic(const Rational& r);

/// Product of the reduced denominators of every value and of its complement
/// 1 - value, with multiplicity. Throws DomainError if a value is outside
/// [0,1] or the list is empty.
BigInt common_denominator(std::span<const Rational> values);

/// Bit accounting for a coordinate vector plus any extra tracked values.
struct BitProfile {
  std::size_t n = 0;
  unsigned m = 1;       // max bit budget over tracked values, at least 1
  bool dyadic = true;   // all tracked values are m-bit binary fractions
};

BitProfile bit_profile(std::span<const Rational> params, std::span<const Rational> extra = {});

}  // namespace tvlab

template <>
struct std::hash<tvlab::Rational> {
  std::size_t operator()(const tvlab::Rational& r) const noexcept {
    const auto& q = r.raw();
    const std::size_t h = mpz_get_ui(q.get_num_mpz_t()) * 0x9E3779B97F4A7C15ULL;
    return h ^ (mpz_get_ui(q.get_den_mpz_t()) + (h << 6) + (h >> 2)) ^
           static_cast<std::size_t>(mpz_sgn(q.get_num_mpz_t()) + 1);
  }
};
