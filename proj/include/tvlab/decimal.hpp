#pragma once

#include <mpfr.h>

#include <string>

#include "tvlab/exact_arith.hpp"

namespace tvlab {

inline constexpr unsigned kDefaultDigits = 50;

/// Fixed-precision binary floating point sized for a requested number of
/// significant decimal digits (plus guard bits). Owns its mpfr_t.
class Decimal {
 public:
  explicit Decimal(unsigned digits10 = kDefaultDigits);
  Decimal(const Rational& value, unsigned digits10);
  Decimal(const Decimal& other);
  Decimal(Decimal&& other) noexcept;
  Decimal& operator=(const Decimal& other);
  Decimal& operator=(Decimal&& other) noexcept;
  ~Decimal();

  static Decimal infinity(unsigned digits10);
  static Decimal ln2(unsigned digits10);

  unsigned digits() const { return digits_; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

  /// Scientific rendering with `sig` significant digits; "inf" when infinite.
  std::string str(int sig = 20) const;

  Decimal& operator+=(const Decimal& rhs);
  Decimal& operator-=(const Decimal& rhs);
  Decimal& operator*=(const Decimal& rhs);
  Decimal& operator/=(const Decimal& rhs);
  Decimal& operator*=(const Rational& rhs);

  friend Decimal operator+(Decimal a, const Decimal& b) { return a += b; }
  friend Decimal operator-(Decimal a, const Decimal& b) { return a -= b; }
  friend Decimal operator*(Decimal a, const Decimal& b) { return a *= b; }
  friend Decimal operator/(Decimal a, const Decimal& b) { return a /= b; }
  friend Decimal operator*(Decimal a, const Rational& b) { return a *= b; }

  friend Decimal log(const Decimal& x);
  friend Decimal sqrt(const Decimal& x);
  friend Decimal pow(const Decimal& x, unsigned long k);
  friend Decimal abs(const Decimal& x);

  friend bool operator<(const Decimal& a, const Decimal& b) { return mpfr_less_p(a.value_, b.value_); }
  friend bool operator<=(const Decimal& a, const Decimal& b) {
    return mpfr_lessequal_p(a.value_, b.value_);
  }

  mpfr_srcptr raw() const { return value_; }

 private:
  unsigned digits_;
  mpfr_t value_;
};

/// Precision in bits used for `digits10` decimal digits.
mpfr_prec_t precision_bits(unsigned digits10);

}  // namespace tvlab
