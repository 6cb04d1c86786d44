#include "kfib/combinatorics.hpp"

#include <algorithm>
#include <stdexcept>

namespace kfib {

unsigned long Composition::weight() const {
  unsigned long w = 0;
  for (size_t j = 0; j < parts.size(); ++j) {
    w += (j + 1) * static_cast<unsigned long>(parts[j]);
  }
  return w;
}

unsigned long Composition::total() const {
  unsigned long t = 0;
  for (unsigned p : parts) t += p;
  return t;
}

namespace {

// prod_{i=0}^{m-2} (x + i), the Gamma(x+m-1)/Gamma(x) rising product.
Rat rising_product(const Rat& x, unsigned long m) {
  Rat p = 1;
  Rat f = x;
  for (unsigned long i = 0; i + 1 < m; ++i) {
    p *= f;
    f += 1;
  }
  return p;
}

Rat factorial(unsigned long m) {
  Int f = 1;
  for (unsigned long i = 2; i <= m; ++i) f *= static_cast<unsigned long>(i);
  return Rat(f);
}

}  // namespace

Rat fuss_catalan(unsigned long m, const Rat& nu, const Rat& r) {
  if (m == 0) return 1;  // r * Gamma(r)/Gamma(r+1) = 1, also in the r -> 0 limit
  Rat x = Rat(m) * (nu - 1) + r + 1;
  Rat value = r * rising_product(x, m) / factorial(m);
  value.canonicalize();
  return value;
}

Rat fuss_catalan_b(unsigned long n, int k) {
  if (n < 1) throw std::invalid_argument("b_n requires n >= 1");
  if (k < 2) throw std::invalid_argument("b_n requires k >= 2");
  Rat x(static_cast<long>(n), k);
  x.canonicalize();
  Rat value = rising_product(x, n) / factorial(n);
  value.canonicalize();
  return value;
}

std::vector<Composition> compositions(unsigned long n, int k) {
  if (k < 2) throw std::invalid_argument("compositions require k >= 2");
  std::vector<Composition> out;
  for_each_composition(n, k, [&](const Composition& c) { out.push_back(c); });
  std::sort(out.begin(), out.end());
  return out;
}

Int multinomial(const Composition& c) {
  Int result = 1;
  unsigned long upto = 0;
  for (unsigned p : c.parts) {
    upto += p;
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), upto, p);
    result *= b;
  }
  return result;
}

Int multinomial_sum(unsigned long n, const std::vector<Int>& beta) {
  const int k = static_cast<int>(beta.size());
  if (k < 2) throw std::invalid_argument("multinomial_sum requires k >= 2");
  Int sum = 0;
  for_each_composition(n, k, [&](const Composition& c) {
    Int term = multinomial(c);
    for (int j = 0; j < k; ++j) {
      const unsigned e = c.parts[static_cast<size_t>(j)];
      if (e == 0) continue;  // beta_j^0 = 1 even for beta_j = 0
      Int p;
      mpz_pow_ui(p.get_mpz_t(), beta[static_cast<size_t>(j)].get_mpz_t(), e);
      term *= p;
      if (term == 0) break;
    }
    sum += term;
  });
  return sum;
}

Int narayana_sum(unsigned long n) {
  Int sum = 0;
  for (unsigned long i3 = 0; 3 * i3 <= n; ++i3) {
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), n - 2 * i3, i3);
    sum += b;
  }
  return sum;
}

Int kfib_multinomial(unsigned long n, int k) {
  return multinomial_sum(n, std::vector<Int>(static_cast<size_t>(k), 1));
}

}  // namespace kfib
