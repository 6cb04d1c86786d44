#pragma once

// Arbitrary-precision real and complex scalars on top of MPFR.
//
// Precision is always explicit and travels with the value: every Real
// carries its own mpfr precision, and the result of a binary operation
// uses the larger precision of the two operands, so arithmetic never
// silently downgrades. There is no ambient/thread-local precision state.

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace kfib::hp {

// Bits needed to carry `digits10` decimal digits, plus a little headroom
// so decimal round-trips do not chew into the requested digits.
mpfr_prec_t bits_for_digits(long digits10);

// Releases mpfr's thread-local constant caches. Worker threads that used
// these types should call it before terminating.
void free_thread_caches();

class Real {
 public:
  Real();  // zero at double-equivalent precision
  explicit Real(long digits10);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  static Real of(long value, long digits10);
  static Real of(const mpz_class& value, long digits10);
  static Real of(const mpq_class& value, long digits10);
  static Real of_double(double value, long digits10);
  static Real parse(const std::string& text, long digits10);
  static Real pi(long digits10);
  // 2^e, exact in binary floating point.
  static Real pow2(long e, long digits10);
  // 10^e to `digits10` digits (e may be negative); used for tolerances.
  static Real pow10(long e, long digits10);

  mpfr_prec_t prec_bits() const { return mpfr_get_prec(v_); }
  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  // Binary exponent of the value (undefined for zero/NaN).
  long exponent2() const { return static_cast<long>(mpfr_get_exp(v_)); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  mpz_class integer_nearest() const;
  mpz_class integer_floor() const;

  // `value` carried at this Real's precision.
  Real same_prec(long value) const;

  // Deterministic normalized scientific form, e.g. "-1.6180339887e+00".
  std::string str(long digits10) const;

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  Real operator-() const;
  Real& operator+=(const Real& b) { return *this = *this + b; }
  Real& operator-=(const Real& b) { return *this = *this - b; }
  Real& operator*=(const Real& b) { return *this = *this * b; }
  Real& operator/=(const Real& b) { return *this = *this / b; }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }

  friend Real abs(const Real& a);
  friend Real sqrt(const Real& a);
  friend Real rootn(const Real& a, unsigned long n);
  friend Real exp(const Real& a);
  friend Real log(const Real& a);
  friend Real cos(const Real& a);
  friend Real sin(const Real& a);
  friend Real atan2(const Real& y, const Real& x);
  friend Real hypot(const Real& x, const Real& y);
  friend Real floor(const Real& a);
  friend Real pow_si(const Real& a, long e);

 private:
  explicit Real(mpfr_prec_t bits, bool /*bits_tag*/);
  static Real blank_like(const Real& a, const Real& b);

  mpfr_t v_;
};

struct Complex {
  Real re;
  Real im;

  Complex() = default;
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  static Complex of(const Real& r) { return Complex(r, r - r); }

  Complex conj() const { return Complex(re, -im); }
  Real abs() const { return hypot(re, im); }
  // Principal argument in (-pi, pi].
  Real arg() const { return atan2(im, re); }

  friend Complex operator+(const Complex& a, const Complex& b) {
    return Complex(a.re + b.re, a.im + b.im);
  }
  friend Complex operator-(const Complex& a, const Complex& b) {
    return Complex(a.re - b.re, a.im - b.im);
  }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return Complex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend Complex operator/(const Complex& a, const Complex& b);
  Complex operator-() const { return Complex(-re, -im); }
  Complex& operator+=(const Complex& b) { return *this = *this + b; }
  Complex& operator-=(const Complex& b) { return *this = *this - b; }
  Complex& operator*=(const Complex& b) { return *this = *this * b; }
  Complex& operator/=(const Complex& b) { return *this = *this / b; }
};

// a^e by binary exponentiation; negative e inverts first.
Complex pow_si(const Complex& a, long e);

}  // namespace kfib::hp
