#include "kfib/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "kfib/combinatorics.hpp"

namespace kfib::spectral {

namespace {

using hp::Complex;
using hp::Real;

long working_digits(long digits) {
  if (digits < 16) throw std::invalid_argument("precision must be at least 16 digits");
  return digits + kGuardDigits;
}

void require_order(int k) {
  if (k < 2) throw std::invalid_argument("spectral routines require k >= 2");
}

// Limit of the term ratio of the principal series: ((k+1)^{k+1}/k^k)/2^{k+1}.
// The per-term ratio increases toward this value, so term * r/(1-r) bounds
// the tail. Always < 1 for k >= 2 (max 27/32 at k = 2).
double principal_tail_ratio(int k) {
  return std::exp((k + 1) * std::log(double(k + 1)) - k * std::log(double(k)) -
                  (k + 1) * std::log(2.0));
}

// Same for the secondary series: |x| * lim b_{n+1}/b_n = ((k+1)/2)^{(k+1)/k} / k.
// Max 1.5^1.5/2 = 0.9186 at k = 2.
double secondary_tail_ratio(int k) {
  return std::exp((double(k + 1) / k) * std::log((k + 1) / 2.0)) / k;
}

// Exact b_n generator. Values advance within each residue class mod k:
//   b_{n} = b_{n-k} * prod_{j=s-1}^{s+k-1} (s + j k) / (k^k * s * prod_{t=s+1}^{s+k} t),
// s = n - k, which is the rising-product identity applied incrementally.
// Seeds b_1..b_k come from the direct product form.
class FussCatalanLadder {
 public:
  explicit FussCatalanLadder(int k) : k_(static_cast<unsigned long>(k)) {
    mpz_ui_pow_ui(k_pow_k_.get_mpz_t(), k_, k_);
    recent_.resize(k_);
  }

  // b_1, b_2, ... on successive calls.
  const Rat& next() {
    const unsigned long n = ++n_;
    Rat& slot = recent_[n % k_];
    if (n <= k_) {
      slot = fuss_catalan_b(n, static_cast<int>(k_));
      return slot;
    }
    const unsigned long s = n - k_;
    Int num = 1;
    for (unsigned long j = s - 1; j <= s + k_ - 1; ++j) {
      mpz_mul_ui(num.get_mpz_t(), num.get_mpz_t(), s + j * k_);
    }
    Int den = k_pow_k_;
    mpz_mul_ui(den.get_mpz_t(), den.get_mpz_t(), s);
    for (unsigned long t = s + 1; t <= s + k_; ++t) {
      mpz_mul_ui(den.get_mpz_t(), den.get_mpz_t(), t);
    }
    Rat step(num, den);
    step.canonicalize();
    slot *= step;  // slot held b_{n-k}
    return slot;
  }

 private:
  unsigned long k_;
  unsigned long n_ = 0;
  Int k_pow_k_;
  std::vector<Rat> recent_;
};

Complex complex_one_like(const Real& sample) {
  return Complex(sample.same_prec(1), sample.same_prec(0));
}

}  // namespace

hp::Real principal_root(int k, long digits) {
  require_order(k);
  const long w = working_digits(digits);
  const Real thr = Real::pow10(-(digits + 2), w);
  const double r = principal_tail_ratio(k);
  const Real tail_factor = Real::of_double(r / (1.0 - r), w);

  const Real x = Real::pow2(-(k + 1), w);
  Real xpow = x;
  const Real two_k = Real::of(2L * k, w);

  // b_{mk} stepped exactly within residue class 0.
  Rat b(1, static_cast<unsigned long>(k));  // b_k = 1/k
  b.canonicalize();
  Int k_pow_k;
  mpz_ui_pow_ui(k_pow_k.get_mpz_t(), static_cast<unsigned long>(k),
                static_cast<unsigned long>(k));

  Real sum(w);
  for (long m = 1;; ++m) {
    const Real term = two_k * Real::of(b, w) * xpow;
    sum += term;
    if (term < thr && term * tail_factor < thr) break;
    if (m >= kMaxSeriesTerms) {
      throw ConvergenceBudgetExceeded("principal root series: term cap reached for k=" +
                                      std::to_string(k));
    }
    const unsigned long s = static_cast<unsigned long>(m) * static_cast<unsigned long>(k);
    Int num = 1;
    for (unsigned long j = s - 1; j <= s + static_cast<unsigned long>(k) - 1; ++j) {
      mpz_mul_ui(num.get_mpz_t(), num.get_mpz_t(), s + j * static_cast<unsigned long>(k));
    }
    Int den = k_pow_k;
    mpz_mul_ui(den.get_mpz_t(), den.get_mpz_t(), s);
    for (unsigned long t = s + 1; t <= s + static_cast<unsigned long>(k); ++t) {
      mpz_mul_ui(den.get_mpz_t(), den.get_mpz_t(), t);
    }
    Rat step(num, den);
    step.canonicalize();
    b *= step;
    xpow *= x;
  }
  return Real::of(2, w) - sum;
}

hp::Complex secondary_root(int k, int j, long digits) {
  require_order(k);
  if (j < 1 || j > k - 1) {
    throw std::invalid_argument("secondary root index must satisfy 1 <= j <= k-1");
  }
  const long w = working_digits(digits);
  const Real thr = Real::pow10(-(digits + 2), w);
  const double r = secondary_tail_ratio(k);
  const Real tail_factor = Real::of_double(r / (1.0 - r), w);
  const Real two = Real::of(2, w);

  // |x| = 2^{-(k+1)/k} = 1 / (2 * 2^{1/k})
  const Real abs_x =
      Real::of(1, w) / (two * rootn(Real::of(2, w), static_cast<unsigned long>(k)));

  const bool real_axis = (2 * j == k);  // series argument is -|x|, root is real
  Complex x(abs_x, abs_x.same_prec(0));
  if (real_axis) {
    x.re = -abs_x;
  } else {
    const Real theta = Real::pi(w) * Real::of(2L * j, w) / Real::of(k, w);
    x = Complex(cos(theta) * abs_x, sin(theta) * abs_x);
  }

  FussCatalanLadder ladder(k);
  Complex zpow = x;
  Real abspow = abs_x;
  Complex sum(abs_x.same_prec(0), abs_x.same_prec(0));
  for (long n = 1;; ++n) {
    const Real b = Real::of(ladder.next(), w);
    sum += Complex(two * b * zpow.re, two * b * zpow.im);
    const Real mag = two * b * abspow;
    if (mag < thr && mag * tail_factor < thr) break;
    if (n >= kMaxSeriesTerms) {
      throw ConvergenceBudgetExceeded("secondary root series: term cap reached for k=" +
                                      std::to_string(k) + ", j=" + std::to_string(j));
    }
    zpow *= x;
    abspow *= abs_x;
  }
  if (real_axis) sum.im = abs_x.same_prec(0);
  return sum;
}

hp::Real wolfram_epsilon(int k, long digits) {
  require_order(k);
  const long w = working_digits(digits);
  const Real thr = Real::pow10(-(digits + 2), w);
  const double r = principal_tail_ratio(k);  // identical term decay
  const Real tail_factor = Real::of_double(r / (1.0 - r), w);

  Real sum(w);
  for (unsigned long i = 1;; ++i) {
    Int binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(k + 1) * i - 2, i - 1);
    Int den = static_cast<long>(i);
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(k + 1) * i);
    const Real term = Real::of(binom, w) / Real::of(den, w);
    sum += term;
    if (term < thr && term * tail_factor < thr) break;
    if (static_cast<long>(i) >= kMaxSeriesTerms) {
      throw ConvergenceBudgetExceeded("epsilon series: term cap reached for k=" +
                                      std::to_string(k));
    }
  }
  return sum;
}

hp::Complex trinomial_eval(int k, const hp::Complex& z) {
  const Complex zk = pow_si(z, k);
  const Complex one = complex_one_like(z.re);
  const Real two = z.re.same_prec(2);
  return zk * z - Complex(two * zk.re, two * zk.im) + one;
}

hp::Complex charpoly_eval(int k, const hp::Complex& z) {
  // Horner on x^k - x^{k-1} - ... - 1.
  Complex acc = complex_one_like(z.re);
  const Complex one = acc;
  for (int i = 0; i < k; ++i) acc = acc * z - one;
  return acc;
}

namespace {

// Up to `steps` Newton iterations on B; the seed fixes which root we are
// refining. Keeps the iterate real when the seed is real.
Complex newton_polish(int k, Complex z, int steps) {
  const bool real_axis = z.im.is_zero();
  for (int s = 0; s < steps; ++s) {
    const Complex zk1 = pow_si(z, k - 1);
    const Complex zk = zk1 * z;
    const Real kp1 = z.re.same_prec(k + 1);
    const Real twok = z.re.same_prec(2 * k);
    const Complex b = trinomial_eval(k, z);
    const Complex bp =
        Complex(kp1 * zk.re, kp1 * zk.im) - Complex(twok * zk1.re, twok * zk1.im);
    z = z - b / bp;
    if (real_axis) z.im = z.re.same_prec(0);
  }
  return z;
}

}  // namespace

RootSet all_roots(int k, long digits, std::optional<bool> polish) {
  require_order(k);
  const bool do_polish = polish.value_or(k > 20);

  RootSet rs;
  rs.k = k;
  rs.digits = digits;
  rs.roots.reserve(static_cast<size_t>(k));
  rs.roots.push_back(Complex(principal_root(k, digits), Real(working_digits(digits))));
  for (int j = 1; j <= k - 1; ++j) {
    rs.roots.push_back(secondary_root(k, j, digits));
  }
  if (do_polish) {
    for (auto& z : rs.roots) z = newton_polish(k, z, 3);
  }

  rs.principal_index = 0;
  rs.negative_real_index = (k % 2 == 0) ? k / 2 : -1;
  rs.conjugate_pair.resize(static_cast<size_t>(k));
  rs.conjugate_pair[0] = 0;
  for (int j = 1; j <= k - 1; ++j) rs.conjugate_pair[static_cast<size_t>(j)] = k - j;

  const Real residual_tol = Real::pow10(-(digits - 4), working_digits(digits));
  rs.residuals.reserve(static_cast<size_t>(k));
  for (int j = 0; j < k; ++j) {
    Real res = trinomial_eval(k, rs.roots[static_cast<size_t>(j)]).abs();
    if (!(res < residual_tol)) {
      throw ConvergenceBudgetExceeded("root residual above tolerance at k=" +
                                      std::to_string(k) + ", j=" + std::to_string(j));
    }
    rs.residuals.push_back(std::move(res));
  }

  // Structural sanity; these hold mathematically, so a violation means a
  // series or precision defect.
  const Real& p = rs.roots[0].re;
  if (!(p.sign() > 0) || !rs.roots[0].im.is_zero()) {
    throw Error("principal root is not real positive");
  }
  const Real pabs = rs.roots[0].abs();
  for (int j = 1; j <= k - 1; ++j) {
    if (!(rs.roots[static_cast<size_t>(j)].abs() < pabs)) {
      throw Error("principal root magnitude is not strictly dominant");
    }
  }
  if (rs.negative_real_index > 0) {
    const Complex& neg = rs.roots[static_cast<size_t>(rs.negative_real_index)];
    if (!(neg.re.sign() < 0) || !neg.im.is_zero()) {
      throw Error("expected a real negative root at j=k/2");
    }
  }
  return rs;
}

namespace {

// ((k+1) z - 2k) z^{k-1}, the trinomial derivative divided by nothing --
// shared denominator of every coefficient formula here.
Complex coefficient_denominator(const RootSet& rs, const Complex& z) {
  const int k = rs.k;
  const Real kp1 = z.re.same_prec(k + 1);
  const Real twok = z.re.same_prec(2 * k);
  const Complex lin(kp1 * z.re - twok, kp1 * z.im);
  const Real lin_tol = Real::pow10(-(rs.digits / 2), working_digits(rs.digits));
  if (lin.abs() < lin_tol) {
    throw DegenerateDenominator("(k+1) zeta - 2k vanished; input is not a valid root set");
  }
  return lin * pow_si(z, k - 1);
}

}  // namespace

BinetCoefficients binet_coefficients(const RootSet& rs) {
  BinetCoefficients out;
  out.kind = BinetCoefficients::Kind::Standard;
  out.c.reserve(rs.roots.size());
  for (const Complex& z : rs.roots) {
    const Complex num(z.re - z.re.same_prec(1), z.im);
    out.c.push_back(num / coefficient_denominator(rs, z));
  }
  return out;
}

BinetCoefficients basis_coefficients(const RootSet& rs, int m) {
  if (m < 1 || m > rs.k) {
    throw std::invalid_argument("basis coefficient index must satisfy 1 <= m <= k");
  }
  BinetCoefficients out;
  out.kind = BinetCoefficients::Kind::Basis;
  out.basis_m = m;
  out.c.reserve(rs.roots.size());
  for (const Complex& z : rs.roots) {
    const Complex zm1 = pow_si(z, m - 1);
    const Complex zm = zm1 * z;
    const Real two = z.re.same_prec(2);
    const Complex num = zm - Complex(two * zm1.re, two * zm1.im) +
                        Complex(z.re.same_prec(1), z.re.same_prec(0));
    out.c.push_back(num / coefficient_denominator(rs, z));
  }
  return out;
}

BinetCoefficients sj_coefficients(const RootSet& rs, const Rat& mu) {
  const int k = rs.k;
  const long w = working_digits(rs.digits);
  BinetCoefficients out;
  out.kind = BinetCoefficients::Kind::SpickermanJoyner;
  out.mu = mu;

  // mu equal to a root (numerically): Lagrange interpolation at a node.
  const Real root_tol = Real::pow10(-(rs.digits / 2), w);
  const Real mu_r = Real::of(mu, w);
  int hit = -1;
  for (int j = 0; j < k; ++j) {
    const Complex& z = rs.roots[static_cast<size_t>(j)];
    if (Complex(z.re - mu_r, z.im).abs() < root_tol) {
      hit = j;
      break;
    }
  }
  if (hit >= 0) {
    for (int j = 0; j < k; ++j) {
      out.c.push_back(Complex(mu_r.same_prec(j == hit ? 1 : 0), mu_r.same_prec(0)));
    }
    return out;
  }

  if (mu == 1) {
    // limit mu -> 1 of the Lagrange form
    for (const Complex& z : rs.roots) {
      const Complex num(z.re.same_prec(k - 1), z.re.same_prec(0));
      out.c.push_back(num / coefficient_denominator(rs, z));
    }
    return out;
  }

  // B(mu) / ((mu - 1)(mu - zeta_j)) * (zeta_j - 1) / (((k+1) zeta_j - 2k) zeta_j^{k-1})
  Rat b_mu_q = 0;
  {
    Rat mu_k = 1;
    for (int i = 0; i < k; ++i) mu_k *= mu;
    b_mu_q = mu_k * mu - 2 * mu_k + 1;  // exact, no cancellation loss
  }
  const Real b_mu = Real::of(b_mu_q, w);
  const Real mu_minus_1 = Real::of(mu - 1, w);
  for (const Complex& z : rs.roots) {
    const Complex mu_minus_z(mu_r - z.re, -z.im);
    const Complex lagrange_num(b_mu / mu_minus_1, mu_r.same_prec(0));
    const Complex num(z.re - z.re.same_prec(1), z.im);
    out.c.push_back(lagrange_num / mu_minus_z * num / coefficient_denominator(rs, z));
  }
  return out;
}

Int binet_eval(const RootSet& rs, const BinetCoefficients& coeffs, long n) {
  if (coeffs.c.size() != rs.roots.size()) {
    throw std::invalid_argument("coefficient/root count mismatch");
  }
  const long w = working_digits(rs.digits);
  Complex sum{Real(w), Real(w)};
  for (size_t j = 0; j < rs.roots.size(); ++j) {
    sum += coeffs.c[j] * pow_si(rs.roots[j], n);
  }
  const Real quarter = Real::of(1, w) / Real::of(4, w);
  if (!(abs(sum.im) < quarter)) {
    throw PrecisionExhausted("imaginary part too large to round at n=" + std::to_string(n));
  }
  if (!sum.re.is_zero() && sum.re.exponent2() > static_cast<long>(sum.re.prec_bits()) - 8) {
    throw PrecisionExhausted("value magnitude exceeds working precision at n=" +
                             std::to_string(n));
  }
  mpz_class nearest = sum.re.integer_nearest();
  if (!(abs(sum.re - Real::of(nearest, w)) < quarter)) {
    throw PrecisionExhausted("rounding gap too large at n=" + std::to_string(n));
  }
  return nearest;
}

Int basis_binet(const RootSet& rs, int m, long n) {
  return binet_eval(rs, basis_coefficients(rs, m), n);
}

SJEquivalence sj_equivalence_check(const RootSet& rs) {
  const int k = rs.k;
  const long w = working_digits(rs.digits);
  const BinetCoefficients coeffs = sj_coefficients(rs, Rat(2));
  Real max_dev(w);
  for (int j = 0; j < k; ++j) {
    const Complex& z = rs.roots[static_cast<size_t>(j)];
    const Complex zk = pow_si(z, k);
    const Real two = z.re.same_prec(2);
    const Complex den(two * zk.re - z.re.same_prec(k + 1), two * zk.im);
    const Complex num = zk * Complex(z.re - z.re.same_prec(1), z.im);
    const Complex d = num / den;
    const Real dev = (coeffs.c[static_cast<size_t>(j)] - d * z).abs();
    if (dev > max_dev) max_dev = dev;
  }
  SJEquivalence out;
  out.max_deviation = max_dev.to_double();
  out.ok = max_dev < Real::pow10(-(rs.digits - 6), w);
  return out;
}

hp::Real asymptotic_estimate(const RootSet& rs, long n) {
  const Real& z0 = rs.roots[static_cast<size_t>(rs.principal_index)].re;
  const Real two = z0.same_prec(2);
  const Real one = z0.same_prec(1);
  const Real den = z0.same_prec(rs.k + 1) * z0 - z0.same_prec(2 * rs.k);
  return (two - z0) * (z0 - one) / den * pow_si(z0, n + 1);
}

Int dresden_du_round(const RootSet& rs, long n) {
  if (n < 0) throw std::invalid_argument("rounded principal-term form requires n >= 0");
  const Real& z0 = rs.roots[static_cast<size_t>(rs.principal_index)].re;
  const Real one = z0.same_prec(1);
  const Real den = z0.same_prec(rs.k + 1) * z0 - z0.same_prec(2 * rs.k);
  const Real t = (z0 - one) / den * pow_si(z0, n - rs.k + 1);
  if (!t.is_zero() && t.exponent2() > static_cast<long>(t.prec_bits()) - 8) {
    throw PrecisionExhausted("principal term outruns working precision at n=" +
                             std::to_string(n));
  }
  return (t + one / z0.same_prec(2)).integer_floor();
}

Threshold n_threshold(int k, double eps) {
  require_order(k);
  if (!(eps > 0.0) || !(eps < 1.0)) {
    throw std::invalid_argument("eps must lie in (0, 1)");
  }
  Threshold t;
  const double kd = k;
  const double a = std::pow(2.0, (kd + 1.0) / kd);
  t.delta = std::pow(kd + 1.0, -1.0 / kd) *
            (1.0 + 1.0 / (a * kd) -
             std::sqrt(1.0 + 1.0 / (a * a * kd * kd) +
                       std::cos(2.0 * M_PI / kd) / (std::pow(2.0, 1.0 / kd) * kd)));
  const double kappa_simple = (kd + 1.0) / (2.0 * kd);
  t.kappa = std::min(kappa_simple, 1.0 - t.delta);
  const double num = std::log(eps / (kd - 1.0));
  t.n_threshold = kd + num / std::log(t.kappa);
  t.n_simplified = kd + num / std::log(kappa_simple);
  return t;
}

std::vector<RootRow> root_figure_data(const RootSet& rs) {
  const long w = working_digits(rs.digits);
  const Real two_pi = Real::of(2, w) * Real::pi(w);
  const Real one = Real::of(1, w);
  const Real zero(w);
  std::vector<RootRow> rows;
  rows.reserve(rs.roots.size());
  for (int j = 0; j < rs.k; ++j) {
    const Complex& z = rs.roots[static_cast<size_t>(j)];
    RootRow row;
    row.j = j;
    row.re = z.re;
    row.im = z.im;
    row.abs = z.abs();
    Real a = z.arg() / two_pi;
    if (a < zero) a += one;
    row.arg_over_2pi = std::move(a);
    row.residual = rs.residuals[static_cast<size_t>(j)];
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<RootRow> root_figure_data(int k, long digits) {
  return root_figure_data(all_roots(k, digits));
}

}  // namespace kfib::spectral
