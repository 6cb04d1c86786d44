#include "kfib/hp.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace kfib::hp {

mpfr_prec_t bits_for_digits(long digits10) {
  if (digits10 < 1) digits10 = 1;
  // log2(10) = 3.3219...
  const double bits = static_cast<double>(digits10) * 3.3219280948873623 + 16.0;
  return static_cast<mpfr_prec_t>(bits) + 1;
}

void free_thread_caches() { mpfr_free_cache(); }

Real::Real() {
  mpfr_init2(v_, 53);
  mpfr_set_zero(v_, 1);
}

Real::Real(long digits10) {
  mpfr_init2(v_, bits_for_digits(digits10));
  mpfr_set_zero(v_, 1);
}

Real::Real(mpfr_prec_t bits, bool) { mpfr_init2(v_, bits); }

Real::Real(const Real& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(v_, 53);
  mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) mpfr_swap(v_, other.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::of(long value, long digits10) {
  Real r(digits10);
  mpfr_set_si(r.v_, value, MPFR_RNDN);
  return r;
}

Real Real::of(const mpz_class& value, long digits10) {
  Real r(digits10);
  mpfr_set_z(r.v_, value.get_mpz_t(), MPFR_RNDN);
  return r;
}

Real Real::of(const mpq_class& value, long digits10) {
  Real r(digits10);
  mpfr_set_q(r.v_, value.get_mpq_t(), MPFR_RNDN);
  return r;
}

Real Real::of_double(double value, long digits10) {
  Real r(digits10);
  mpfr_set_d(r.v_, value, MPFR_RNDN);
  return r;
}

Real Real::parse(const std::string& text, long digits10) {
  Real r(digits10);
  if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0) {
    throw std::invalid_argument("unparseable decimal literal: " + text);
  }
  return r;
}

Real Real::pi(long digits10) {
  Real r(digits10);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

Real Real::pow2(long e, long digits10) {
  Real r(digits10);
  mpfr_set_si(r.v_, 1, MPFR_RNDN);
  mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
  return r;
}

Real Real::pow10(long e, long digits10) {
  Real r(digits10);
  mpfr_set_si(r.v_, 10, MPFR_RNDN);
  mpfr_pow_si(r.v_, r.v_, e, MPFR_RNDN);
  return r;
}

mpz_class Real::integer_nearest() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
  return z;
}

mpz_class Real::integer_floor() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
  return z;
}

Real Real::same_prec(long value) const {
  Real r(mpfr_get_prec(v_), true);
  mpfr_set_si(r.v_, value, MPFR_RNDN);
  return r;
}

std::string Real::str(long digits10) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) < 0 ? "-inf" : "inf";
  if (digits10 < 2) digits10 = 2;
  if (mpfr_zero_p(v_)) {
    std::string s = "0.";
    s.append(static_cast<size_t>(digits10 - 1), '0');
    s += "e+00";
    return s;
  }
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits10), v_, MPFR_RNDN);
  std::string digits(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (!digits.empty() && digits[0] == '-') {
    sign = "-";
    digits.erase(digits.begin());
  }
  // mpfr_get_str semantics: value = 0.digits * 10^e.
  long exp10 = static_cast<long>(e) - 1;
  std::string out = sign + digits.substr(0, 1) + "." + digits.substr(1);
  out += 'e';
  out += (exp10 < 0) ? '-' : '+';
  long a = std::labs(exp10);
  std::string es = std::to_string(a);
  if (es.size() < 2) es.insert(es.begin(), '0');
  return out + es;
}

Real Real::blank_like(const Real& a, const Real& b) {
  return Real(std::max(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_)), true);
}

Real operator+(const Real& a, const Real& b) {
  Real r = Real::blank_like(a, b);
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r = Real::blank_like(a, b);
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r = Real::blank_like(a, b);
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  Real r = Real::blank_like(a, b);
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real Real::operator-() const {
  Real r(mpfr_get_prec(v_), true);
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

Real abs(const Real& a) {
  Real r(mpfr_get_prec(a.v_), true);
  mpfr_abs(r.v_, a.v_, MPFR_RNDN);
  return r;
}

Real sqrt(const Real& a) {
  Real r(mpfr_get_prec(a.v_), true);
  mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
  return r;
}

Real rootn(const Real& a, unsigned long n) {
  Real r(mpfr_get_prec(a.v_), true);
  mpfr_rootn_ui(r.v_, a.v_, n, MPFR_RNDN);
  return r;
}

Real exp(const Real& a) {
  Real r(mpfr_get_prec(a.v_), true);
  mpfr_exp(r.v_, a.v_, MPFR_RNDN);
  return r;
}

Real log(const Real& a) {
  Real r(mpfr_get_prec(a.v_), true);
  mpfr_log(r.v_, a.v_, MPFR_RNDN);
  return r;
}

Real cos(const Real& a) {
  Real r(mpfr_get_prec(a.v_), true);
  mpfr_cos(r.v_, a.v_, MPFR_RNDN);
  return r;
}

Real sin(const Real& a) {
  Real r(mpfr_get_prec(a.v_), true);
  mpfr_sin(r.v_, a.v_, MPFR_RNDN);
  return r;
}

Real atan2(const Real& y, const Real& x) {
  Real r = Real::blank_like(y, x);
  mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
  return r;
}

Real hypot(const Real& x, const Real& y) {
  Real r = Real::blank_like(x, y);
  mpfr_hypot(r.v_, x.v_, y.v_, MPFR_RNDN);
  return r;
}

Real floor(const Real& a) {
  Real r(mpfr_get_prec(a.v_), true);
  mpfr_floor(r.v_, a.v_);
  return r;
}

Real pow_si(const Real& a, long e) {
  Real r(mpfr_get_prec(a.v_), true);
  mpfr_pow_si(r.v_, a.v_, e, MPFR_RNDN);
  return r;
}

Complex operator/(const Complex& a, const Complex& b) {
  const Real den = b.re * b.re + b.im * b.im;
  return Complex((a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den);
}

Complex pow_si(const Complex& a, long e) {
  const Complex one(a.re.same_prec(1), a.re.same_prec(0));
  bool invert = false;
  unsigned long n;
  if (e < 0) {
    invert = true;
    n = static_cast<unsigned long>(-(e + 1)) + 1;
  } else {
    n = static_cast<unsigned long>(e);
  }
  Complex result = one;
  Complex base = a;
  while (n > 0) {
    if (n & 1UL) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return invert ? one / result : result;
}

}  // namespace kfib::hp
