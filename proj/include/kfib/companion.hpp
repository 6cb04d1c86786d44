#pragma once

// Companion-matrix route: exact integer powers, the weighted-composition
// closed form for individual entries, the first-column identity that
// reconstructs every other column, and sequence iteration by
// matrix-vector product.

#include <vector>

#include "kfib/combinatorics.hpp"
#include "kfib/recurrence.hpp"

namespace kfib::companion {

// Dense k x k exact-integer matrix, row-major.
class IntMatrix {
 public:
  explicit IntMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * static_cast<size_t>(n), 0) {}

  static IntMatrix identity(int n);

  int size() const { return n_; }
  // 1-based accessors, matching the usual companion-entry indexing.
  Int& at(int i, int j) { return a_[idx(i, j)]; }
  const Int& at(int i, int j) const { return a_[idx(i, j)]; }

  IntMatrix operator*(const IntMatrix& other) const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  size_t idx(int i, int j) const {
    return static_cast<size_t>(i - 1) * static_cast<size_t>(n_) + static_cast<size_t>(j - 1);
  }
  int n_;
  std::vector<Int> a_;
};

// First row beta_1..beta_k, ones on the subdiagonal, zeros elsewhere.
class CompanionMatrix {
 public:
  explicit CompanionMatrix(std::vector<Int> beta);

  int order() const { return static_cast<int>(beta_.size()); }
  const std::vector<Int>& beta() const { return beta_; }
  IntMatrix matrix() const;

  // C^n by binary exponentiation; C^0 is the identity.
  IntMatrix power(unsigned long n) const;

 private:
  std::vector<Int> beta_;
};

// Entry (i,j) of C^n from the weighted composition sum
//   sum over i_1 + 2 i_2 + ... + k i_k = n-i+j of
//     (i_j+...+i_k)/(i_1+...+i_k) * multinomial * beta_1^{i_1}..beta_k^{i_k},
// with the conventions entry = 1 when n = i-j and 0 when n-i+j < 0.
// The weight is rational per term; the total is an exact integer.
Int entry_multinomial(const std::vector<Int>& beta, long n, int i, int j);

struct ColumnIdentityReport {
  struct Violation {
    long n;
    int i, j;
    Int lhs, rhs;
  };
  bool passed = true;
  unsigned long checks = 0;
  std::vector<Violation> violations;
};

// Verifies, against exact matrix powers, that every column j >= 2 is a
// beta-weighted combination of first-column entries:
//   c_{i,j}^{(n)} = sum_{s=0}^{min(k-j, n-1)} beta_{j+s} c_{i,1}^{(n-s-1)}
// for 1 <= n <= n_max and all (i, j).
ColumnIdentityReport column_identity_check(const std::vector<Int>& beta, long n_max);

// f(n) read off C^n applied to the reversed initial tuple; O(k^3 log n).
Int iterate_via_matrix(const RecurrenceSpec& spec, unsigned long n);

}  // namespace kfib::companion
