#pragma once

// Test-only oracle: simultaneous (Durand-Kerner) root iteration on the
// characteristic polynomial x^k - x^{k-1} - ... - 1. Self-contained --
// shares only the scalar type with the library, not any root-finding or
// series code, so it can cross-check the series route independently.

#include <stdexcept>
#include <string>
#include <vector>

#include "kfib/hp.hpp"

namespace kfib::test {

inline hp::Complex dk_charpoly(int k, const hp::Complex& z) {
  hp::Complex acc(z.re.same_prec(1), z.re.same_prec(0));
  const hp::Complex one = acc;
  for (int i = 0; i < k; ++i) acc = acc * z - one;
  return acc;
}

inline std::vector<hp::Complex> durand_kerner_charpoly(int k, long digits,
                                                       int max_iter = 1000) {
  using hp::Complex;
  using hp::Real;
  const long w = digits + 10;
  const Real tol = Real::pow10(-(digits + 2), w);

  // classic distinct starting points (0.4 + 0.9i)^(p+1)
  std::vector<Complex> roots;
  Complex seed(Real::parse("0.4", w), Real::parse("0.9", w));
  Complex p = seed;
  for (int i = 0; i < k; ++i) {
    roots.push_back(p);
    p = p * seed;
  }

  for (int iter = 0; iter < max_iter; ++iter) {
    Real worst(w);
    for (int r = 0; r < k; ++r) {
      Complex denom(roots[0].re.same_prec(1), roots[0].re.same_prec(0));
      for (int s = 0; s < k; ++s) {
        if (s != r) denom = denom * (roots[static_cast<size_t>(r)] - roots[static_cast<size_t>(s)]);
      }
      const Complex delta = dk_charpoly(k, roots[static_cast<size_t>(r)]) / denom;
      roots[static_cast<size_t>(r)] = roots[static_cast<size_t>(r)] - delta;
      const Real mag = delta.abs();
      if (mag > worst) worst = mag;
    }
    if (worst < tol) return roots;
  }
  throw std::runtime_error("durand-kerner failed to converge for k=" + std::to_string(k));
}

}  // namespace kfib::test
