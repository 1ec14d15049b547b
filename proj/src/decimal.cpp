#include "tvlab/decimal.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace tvlab {

mpfr_prec_t precision_bits(unsigned digits10) {
  // log2(10) bits per digit plus guard bits against accumulated rounding.
  return static_cast<mpfr_prec_t>(std::ceil(digits10 * 3.3219280948873623)) + 32;
}

Decimal::Decimal(unsigned digits10) : digits_(digits10) {
  mpfr_init2(value_, precision_bits(digits10));
  mpfr_set_zero(value_, 1);
}

Decimal::Decimal(const Rational& value, unsigned digits10) : digits_(digits10) {
  mpfr_init2(value_, precision_bits(digits10));
  mpfr_set_q(value_, value.raw().get_mpq_t(), MPFR_RNDN);
}

Decimal::Decimal(const Decimal& other) : digits_(other.digits_) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Decimal::Decimal(Decimal&& other) noexcept : digits_(other.digits_) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_swap(value_, other.value_);
}

Decimal& Decimal::operator=(const Decimal& other) {
  if (this != &other) {
    digits_ = other.digits_;
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Decimal& Decimal::operator=(Decimal&& other) noexcept {
  std::swap(digits_, other.digits_);
  mpfr_swap(value_, other.value_);
  return *this;
}

Decimal::~Decimal() { mpfr_clear(value_); }

Decimal Decimal::infinity(unsigned digits10) {
  Decimal d(digits10);
  mpfr_set_inf(d.value_, 1);
  return d;
}

Decimal Decimal::ln2(unsigned digits10) {
  Decimal d(digits10);
  mpfr_const_log2(d.value_, MPFR_RNDN);
  return d;
}

std::string Decimal::str(int sig) const {
  if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
  if (mpfr_nan_p(value_)) return "nan";
  sig = std::max(sig, 1);
  std::vector<char> buf(static_cast<std::size_t>(sig) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", sig - 1, value_);
  return buf.data();
}

Decimal& Decimal::operator+=(const Decimal& rhs) {
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Decimal& Decimal::operator-=(const Decimal& rhs) {
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Decimal& Decimal::operator*=(const Decimal& rhs) {
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Decimal& Decimal::operator/=(const Decimal& rhs) {
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Decimal& Decimal::operator*=(const Rational& rhs) {
  mpfr_mul_q(value_, value_, rhs.raw().get_mpq_t(), MPFR_RNDN);
  return *this;
}

Decimal log(const Decimal& x) {
  Decimal r(x.digits_);
  mpfr_log(r.value_, x.value_, MPFR_RNDN);
  return r;
}

Decimal sqrt(const Decimal& x) {
  Decimal r(x.digits_);
  mpfr_sqrt(r.value_, x.value_, MPFR_RNDN);
  return r;
}

Decimal pow(const Decimal& x, unsigned long k) {
  Decimal r(x.digits_);
  mpfr_pow_ui(r.value_, x.value_, k, MPFR_RNDN);
  return r;
}

Decimal abs(const Decimal& x) {
  Decimal r(x.digits_);
  mpfr_abs(r.value_, x.value_, MPFR_RNDN);
  return r;
}

}  // namespace tvlab
