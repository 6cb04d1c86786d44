#pragma once

// High-precision spectral route for the k-generalized Fibonacci recurrence
// (coefficient pattern beta = 1^k). The characteristic polynomial
//   A(x) = x^k - x^{k-1} - ... - 1
// is handled through the trinomial B(x) = (x-1) A(x) = x^{k+1} - 2 x^k + 1.
// All k roots are produced by convergent series whose coefficients are
// Fuss-Catalan numbers:
//   principal:  zeta_0 = 2 - 2k sum_{m>=1} b_{mk} / 2^{m(k+1)}
//   secondary:  zeta_j = 2 sum_{n>=1} b_n (e^{2 pi i j / k} 2^{-(k+1)/k})^n
// On top of the roots sit Binet-style evaluators for the sequence, its
// basis (fundamental) solutions, Spickerman-Joyner style geometric initial
// conditions, and principal-root asymptotics.
//
// `digits` is the requested decimal precision; computations run with a
// fixed number of guard digits on top and results carry the working
// precision. Precision is a per-call parameter, never ambient state.

#include <optional>
#include <vector>

#include "kfib/errors.hpp"
#include "kfib/hp.hpp"
#include "kfib/recurrence.hpp"

namespace kfib::spectral {

inline constexpr long kDefaultDigits = 64;
inline constexpr long kMaxDigits = 1024;
inline constexpr long kGuardDigits = 15;
inline constexpr long kMaxSeriesTerms = 100000;

// zeta_0: real, positive, strictly largest-magnitude root.
hp::Real principal_root(int k, long digits = kDefaultDigits);

// zeta_j for 1 <= j <= k-1. For even k and j = k/2 the series argument is
// real negative and the root is computed in real arithmetic (imaginary
// part exactly zero).
hp::Complex secondary_root(int k, int j, long digits = kDefaultDigits);

// Wolfram's form of the principal root: zeta_0 = 2 (1 - epsilon_k) with
//   epsilon_k = sum_{i>=1} C((k+1)i - 2, i-1) / (i 2^{(k+1)i}).
// Computed from the binomial terms directly, independently of the
// Fuss-Catalan route in principal_root, so the two can cross-check.
hp::Real wolfram_epsilon(int k, long digits = kDefaultDigits);

struct RootSet {
  int k = 0;
  long digits = 0;  // requested decimal precision
  std::vector<hp::Complex> roots;      // zeta_0..zeta_{k-1}, series order
  std::vector<hp::Real> residuals;     // |B(zeta_j)|
  int principal_index = 0;
  int negative_real_index = -1;        // k/2 for even k, else -1
  std::vector<int> conjugate_pair;     // involution; j <-> k-j

  const hp::Complex& principal() const {
    return roots[static_cast<size_t>(principal_index)];
  }
};

// All k roots with classification, each computed from its own series.
// `polish` defaults to on for k > 20, where a few Newton steps on B(x)
// (seeded by the series value, which fixes the root identity) sharpen
// slow series tails.
RootSet all_roots(int k, long digits = kDefaultDigits,
                  std::optional<bool> polish = std::nullopt);

struct BinetCoefficients {
  enum class Kind { Standard, SpickermanJoyner, Basis };
  Kind kind = Kind::Standard;
  int basis_m = 0;   // for Kind::Basis
  Rat mu = 0;        // for Kind::SpickermanJoyner
  // f(n) = sum_j c[j] * zeta_j^n
  std::vector<hp::Complex> c;
};

// Standard initials (0,...,0,1):
//   c_j = (zeta_j - 1) / (((k+1) zeta_j - 2k) zeta_j^{k-1}).
BinetCoefficients binet_coefficients(const RootSet& rs);

// Coefficients of the basis sequence with index i = k - m, 1 <= m <= k:
//   c_j = (zeta_j^m - 2 zeta_j^{m-1} + 1) / (((k+1) zeta_j - 2k) zeta_j^{k-1}).
// m = 1 reproduces binet_coefficients.
BinetCoefficients basis_coefficients(const RootSet& rs, int m);

// Geometric initials w_n = mu^n, 0 <= n <= k-1. Three cases:
//   mu within 10^{-digits/2} of a root  ->  c = indicator of that root;
//   mu == 1                             ->  c_j = (k-1)/(((k+1)zeta_j-2k) zeta_j^{k-1});
//   otherwise                           ->  Lagrange value
//       c_j = B(mu) / ((mu-1)(mu-zeta_j)) * (zeta_j-1)/(((k+1)zeta_j-2k) zeta_j^{k-1}).
BinetCoefficients sj_coefficients(const RootSet& rs, const Rat& mu);

// Evaluates sum_j c_j zeta_j^n, takes the real part and rounds to the
// nearest integer. Throws PrecisionExhausted when the imaginary part or
// the rounding gap reaches 0.25, or when the magnitude outruns the
// working precision.
Int binet_eval(const RootSet& rs, const BinetCoefficients& coeffs, long n);

// B_{k,k-m}(n) rounded to an exact integer.
Int basis_binet(const RootSet& rs, int m, long n);

struct SJEquivalence {
  bool ok = false;
  double max_deviation = 0.0;
};

// Checks c_j = d_j zeta_j for mu = 2, where
// d_j = zeta_j^k (zeta_j - 1) / (2 zeta_j^k - (k+1)), to 10^{-(digits-6)}.
SJEquivalence sj_equivalence_check(const RootSet& rs);

// Principal-term approximation
//   (2 - zeta_0)(zeta_0 - 1) / ((k+1) zeta_0 - 2k) * zeta_0^{n+1},
// using zeta_0^{-k} = 2 - zeta_0.
hp::Real asymptotic_estimate(const RootSet& rs, long n);

// floor(principal term + 1/2); equals F_k(n) exactly for n >= 0 since the
// combined secondary contribution stays below 1/2 in magnitude.
Int dresden_du_round(const RootSet& rs, long n);

struct Threshold {
  double delta = 0.0;
  double kappa = 0.0;        // min{(k+1)/(2k), 1 - delta}
  double n_threshold = 0.0;  // k + ln(eps/(k-1)) / ln(kappa)
  double n_simplified = 0.0; // same with kappa = (k+1)/(2k)
};

// Index past which the combined secondary-root contribution is below
// eps times the principal contribution. Requires 0 < eps < 1.
Threshold n_threshold(int k, double eps);

struct RootRow {
  int j = 0;
  hp::Real re, im, abs, arg_over_2pi, residual;
};

// One row per root, ordered by series index j; argument normalized to
// [0, 1). Suitable for plotting the root constellation and the argument
// staircase.
std::vector<RootRow> root_figure_data(int k, long digits = kDefaultDigits);
std::vector<RootRow> root_figure_data(const RootSet& rs);

// B(z) = z^{k+1} - 2 z^k + 1 and A(z) = z^k - z^{k-1} - ... - 1.
hp::Complex trinomial_eval(int k, const hp::Complex& z);
hp::Complex charpoly_eval(int k, const hp::Complex& z);

// Retries f(digits) with doubled precision while it throws
// PrecisionExhausted; gives up past kMaxDigits and rethrows.
template <typename F>
auto with_precision_escalation(long digits, F&& f) {
  for (;;) {
    try {
      return f(digits);
    } catch (const PrecisionExhausted&) {
      if (digits >= kMaxDigits) throw;
      digits = std::min(digits * 2, kMaxDigits);
    }
  }
}

}  // namespace kfib::spectral
