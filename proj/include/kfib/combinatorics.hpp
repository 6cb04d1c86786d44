#pragma once

// Exact rational Fuss-Catalan numbers, weighted-composition enumeration,
// and the multinomial-sum (Dickson polynomial) sequence evaluators.
//
// Gamma-function ratios are never evaluated in floating point: with
// integer-length gaps they reduce to rising products of rational factors,
//   Gamma(x+m-1)/Gamma(x) = prod_{i=0}^{m-2} (x+i),
// which is how everything here stays exact.

#include <gmpxx.h>

#include <vector>

#include "kfib/recurrence.hpp"

namespace kfib {

// Nonnegative parts (i_1,...,i_k) with weight i_1 + 2 i_2 + ... + k i_k.
struct Composition {
  std::vector<unsigned> parts;

  unsigned long weight() const;
  unsigned long total() const;  // i_1 + ... + i_k

  friend bool operator==(const Composition&, const Composition&) = default;
  friend auto operator<=>(const Composition& a, const Composition& b) {
    return a.parts <=> b.parts;
  }
};

// Fuss-Catalan number A_m(nu, r) = r/Gamma(m+1) * Gamma(m nu + r)/Gamma(m(nu-1)+r+1),
// evaluated exactly through the rising-product identity. Total for all
// rational nu, r and m >= 0 (apparent poles cancel against the r prefactor
// or a zero factor in the product).
Rat fuss_catalan(unsigned long m, const Rat& nu, const Rat& r);

// b_n = Gamma(n-1+n/k) / (n! Gamma(n/k)) = -A_n(1+1/k, -1), n >= 1.
// These are the root-series coefficients.
Rat fuss_catalan_b(unsigned long n, int k);

// Every composition of weight n into k part-sizes, ascending lexicographic
// by (i_1,...,i_k).
std::vector<Composition> compositions(unsigned long n, int k);

// Visits each composition of weight n in unspecified order; cheaper than
// materializing when only a fold is needed. F: void(const Composition&).
template <typename F>
void for_each_composition(unsigned long n, int k, F&& visit) {
  Composition c;
  c.parts.assign(static_cast<size_t>(k), 0);
  // Odometer over (i_2..i_k); i_1 absorbs the remainder since its part
  // size is 1.
  unsigned long rem = n;
  for (;;) {
    c.parts[0] = static_cast<unsigned>(rem);
    visit(static_cast<const Composition&>(c));
    int j = 2;
    for (; j <= k; ++j) {
      if (rem >= static_cast<unsigned long>(j)) {
        c.parts[static_cast<size_t>(j - 1)] += 1;
        rem -= static_cast<unsigned long>(j);
        break;
      }
      rem += static_cast<unsigned long>(j) * c.parts[static_cast<size_t>(j - 1)];
      c.parts[static_cast<size_t>(j - 1)] = 0;
    }
    if (j > k) break;
  }
}

// Multinomial coefficient (i_1+...+i_k)! / (i_1! ... i_k!), exact.
Int multinomial(const Composition& c);

// sum over weight-n compositions of multinomial * beta_1^{i_1}...beta_k^{i_k};
// equals the value at index n+k-1 of the recurrence with initials (0,..,0,1),
// i.e. a Dickson polynomial of the second kind in beta_1..beta_k, and the
// (1,1) entry of the n-th companion-matrix power.
Int multinomial_sum(unsigned long n, const std::vector<Int>& beta);

// Narayana closed form: sum_{i_3 <= n/3} C(n-2 i_3, i_3); equals N(n).
Int narayana_sum(unsigned long n);

// F_k at index n+k-1 via the all-ones multinomial sum.
Int kfib_multinomial(unsigned long n, int k);

}  // namespace kfib
