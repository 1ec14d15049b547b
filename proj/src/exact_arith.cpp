#include "tvlab/exact_arith.hpp"

#include <algorithm>
#include <cctype>

#include "tvlab/error.hpp"

namespace tvlab {

Rational::Rational(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) throw DomainError("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(const mpq_class& q) : value_(q) { value_.canonicalize(); }

Rational Rational::from_reduced(BigInt numerator, BigInt denominator) {
  Rational r;
  mpz_swap(mpq_numref(r.value_.get_mpq_t()), numerator.get_mpz_t());
  mpz_swap(mpq_denref(r.value_.get_mpq_t()), denominator.get_mpz_t());
  return r;
}

namespace {

bool valid_integer_text(std::string_view s, bool allow_sign) {
  if (!s.empty() && allow_sign && s.front() == '-') s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"}
                                                                : text.substr(slash + 1);
  if (!valid_integer_text(num, true) || !valid_integer_text(den, false)) {
    throw DomainError("malformed rational \"" + std::string(text) + "\"");
  }
  return Rational(BigInt(std::string(num)), BigInt(std::string(den)));
}

bool Rational::in_unit_interval() const { return sgn(value_) >= 0 && value_ <= 1; }

Rational Rational::complement() const {
  Rational r;
  r.value_ = 1 - value_;
  return r;
}

std::string Rational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::decimal(int digits) const {
  digits = std::max(digits, 0);
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  const BigInt num = abs(value_.get_num());
  const BigInt& den = value_.get_den();
  BigInt scaled = (2 * num * scale + den) / (2 * den);  // round half up on |r|
  std::string s = scaled.get_str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
  if (digits > 0) s.insert(s.size() - digits, ".");
  if (sgn(value_) < 0 && scaled != 0) s.insert(0, "-");
  return s;
}

Rational Rational::operator-() const {
  Rational r;
  r.value_ = -value_;
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw DomainError("division by zero rational");
  value_ /= rhs.value_;
  return *this;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational pow2(long k) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(k < 0 ? -k : k));
  return k < 0 ? Rational(BigInt(1), p) : Rational(p);
}

DyadicInfo is_dyadic(const Rational& r) {
  const auto den = r.raw().get_den_mpz_t();
  // A positive integer is a power of two iff it has exactly one set bit.
  if (mpz_popcount(den) != 1) return {false, 0};
  return {true, static_cast<unsigned>(mpz_scan1(den, 0))};
}

BigInt common_denominator(std::span<const Rational> values) {
  if (values.empty()) throw DomainError("common_denominator of an empty list");
  BigInt m = 1;
  for (const Rational& v : values) {
    if (!v.in_unit_interval()) {
      throw DomainError("value " + v.str() + " outside [0,1]");
    }
    m *= v.raw().get_den();
    m *= v.complement().raw().get_den();
  }
  return m;
}

BitProfile bit_profile(std::span<const Rational> params, std::span<const Rational> extra) {
  BitProfile profile;
  profile.n = params.size();
  auto track = [&profile](const Rational& r) {
    const DyadicInfo d = is_dyadic(r);
    if (d.dyadic) {
      profile.m = std::max(profile.m, d.bits);
    } else {
      profile.dyadic = false;
      profile.m = std::max(profile.m,
                           static_cast<unsigned>(mpz_sizeinbase(r.raw().get_den_mpz_t(), 2)));
    }
  };
  for (const Rational& r : params) track(r);
  for (const Rational& r : extra) track(r);
  return profile;
}

}  // namespace tvlab
