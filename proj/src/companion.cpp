#include "kfib/companion.hpp"

#include <algorithm>
#include <stdexcept>

namespace kfib::companion {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n);
  for (int i = 1; i <= n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
  IntMatrix out(n_);
  for (int i = 1; i <= n_; ++i) {
    for (int l = 1; l <= n_; ++l) {
      const Int& f = at(i, l);
      if (f == 0) continue;
      for (int j = 1; j <= n_; ++j) {
        out.at(i, j) += f * other.at(l, j);
      }
    }
  }
  return out;
}

CompanionMatrix::CompanionMatrix(std::vector<Int> beta) : beta_(std::move(beta)) {
  if (beta_.size() < 2) throw std::invalid_argument("companion order must be at least 2");
  if (beta_.back() == 0) throw std::invalid_argument("beta_k must be nonzero");
}

IntMatrix CompanionMatrix::matrix() const {
  const int k = order();
  IntMatrix m(k);
  for (int j = 1; j <= k; ++j) m.at(1, j) = beta_[static_cast<size_t>(j - 1)];
  for (int i = 2; i <= k; ++i) m.at(i, i - 1) = 1;
  return m;
}

IntMatrix CompanionMatrix::power(unsigned long n) const {
  IntMatrix result = IntMatrix::identity(order());
  IntMatrix base = matrix();
  while (n > 0) {
    if (n & 1UL) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

Int entry_multinomial(const std::vector<Int>& beta, long n, int i, int j) {
  const int k = static_cast<int>(beta.size());
  if (k < 2) throw std::invalid_argument("entry formula requires k >= 2");
  if (i < 1 || i > k || j < 1 || j > k) {
    throw std::invalid_argument("entry indices must lie in 1..k");
  }
  if (n < 0) throw std::invalid_argument("entry formula requires n >= 0");
  if (n == static_cast<long>(i) - static_cast<long>(j)) return 1;
  const long weight = n - i + j;
  if (weight < 0) return 0;

  Rat sum = 0;
  for_each_composition(static_cast<unsigned long>(weight), k, [&](const Composition& c) {
    const unsigned long total = c.total();
    // weight > 0 here, so every composition has at least one part
    unsigned long tail = 0;
    for (int t = j; t <= k; ++t) tail += c.parts[static_cast<size_t>(t - 1)];
    if (tail == 0) return;
    Int term = multinomial(c);
    for (int t = 0; t < k; ++t) {
      const unsigned e = c.parts[static_cast<size_t>(t)];
      if (e == 0) continue;
      Int p;
      mpz_pow_ui(p.get_mpz_t(), beta[static_cast<size_t>(t)].get_mpz_t(), e);
      term *= p;
      if (term == 0) break;
    }
    if (term == 0) return;
    Rat w(term * static_cast<long>(tail), Int(static_cast<long>(total)));
    w.canonicalize();
    sum += w;
  });
  sum.canonicalize();
  if (sum.get_den() != 1) {
    throw std::logic_error("weighted composition sum did not reduce to an integer");
  }
  return sum.get_num();
}

ColumnIdentityReport column_identity_check(const std::vector<Int>& beta, long n_max) {
  const int k = static_cast<int>(beta.size());
  if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
  const CompanionMatrix cm(beta);

  ColumnIdentityReport report;
  std::vector<IntMatrix> powers;
  powers.reserve(static_cast<size_t>(n_max + 1));
  powers.push_back(IntMatrix::identity(k));
  const IntMatrix base = cm.matrix();
  for (long n = 1; n <= n_max; ++n) powers.push_back(powers.back() * base);

  for (long n = 1; n <= n_max; ++n) {
    for (int j = 2; j <= k; ++j) {
      const long s_max = std::min<long>(k - j, n - 1);
      for (int i = 1; i <= k; ++i) {
        // On the band n = i-j the truncated combination is empty-in-effect
        // and the entry is fixed at 1 by the unity convention; off the band
        // the first-column combination is exact.
        Int rhs;
        if (n == static_cast<long>(i) - static_cast<long>(j)) {
          rhs = 1;
        } else {
          rhs = 0;
          for (long s = 0; s <= s_max; ++s) {
            rhs += beta[static_cast<size_t>(j + s - 1)] *
                   powers[static_cast<size_t>(n - s - 1)].at(i, 1);
          }
        }
        const Int& lhs = powers[static_cast<size_t>(n)].at(i, j);
        ++report.checks;
        if (lhs != rhs) {
          report.passed = false;
          report.violations.push_back({n, i, j, lhs, rhs});
        }
      }
    }
  }
  return report;
}

Int iterate_via_matrix(const RecurrenceSpec& spec, unsigned long n) {
  const int k = spec.order();
  if (n < static_cast<unsigned long>(k)) {
    return spec.gamma()[static_cast<size_t>(n)];
  }
  const CompanionMatrix cm(spec.beta());
  const IntMatrix p = cm.power(n);
  // state vector (f(k-1), ..., f(0)); bottom row of C^n yields f(n)
  Int out = 0;
  for (int j = 1; j <= k; ++j) {
    out += p.at(k, j) * spec.gamma()[static_cast<size_t>(k - j)];
  }
  return out;
}

}  // namespace kfib::companion
