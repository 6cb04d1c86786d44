#pragma once

// Exact big-integer engine for constant-coefficient linear recurrences
//   f(n) = beta_1 f(n-1) + ... + beta_k f(n-k),
// including backward extension, basis (fundamental-solution) sequences,
// and the classic named instances. This module is the ground truth the
// spectral and companion-matrix routes are validated against.

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace kfib {

using Int = mpz_class;
using Rat = mpq_class;

class RecurrenceSpec {
 public:
  // beta = (beta_1..beta_k), gamma = initial values at n = 0..k-1.
  // Requires k >= 2, beta_k != 0, and matching lengths.
  RecurrenceSpec(std::vector<Int> beta, std::vector<Int> gamma);

  int order() const { return static_cast<int>(beta_.size()); }
  const std::vector<Int>& beta() const { return beta_; }
  const std::vector<Int>& gamma() const { return gamma_; }
  // beta_j with 1-based j as in the recurrence.
  const Int& beta_at(int j) const { return beta_[static_cast<size_t>(j - 1)]; }
  bool unit_trailing() const;

  RecurrenceSpec with_initials(std::vector<Int> gamma) const {
    return RecurrenceSpec(beta_, std::move(gamma));
  }

 private:
  std::vector<Int> beta_;
  std::vector<Int> gamma_;
};

// Dense run of exact sequence values over a contiguous index range.
struct SequenceWindow {
  long start = 0;
  std::vector<Int> values;

  long end() const { return start + static_cast<long>(values.size()) - 1; }
  bool contains(long n) const { return n >= start && n <= end(); }
  const Int& at(long n) const { return values[static_cast<size_t>(n - start)]; }
};

// Window over n = 0..n_max (n_max >= k-1), seeded with gamma.
SequenceWindow iterate_forward(const RecurrenceSpec& spec, long n_max);

// Window over n = n_min..k-1 (n_min < 0), extending the sequence to
// negative indices. Requires |beta_k| == 1, otherwise throws
// NonUnitTrailingCoefficient: division by any other beta_k would leave
// the integers.
SequenceWindow iterate_backward(const RecurrenceSpec& spec, long n_min);

// The i-th fundamental solution: initial tuple delta_{in}, 0 <= i <= k-1.
// gamma of `spec` is ignored.
SequenceWindow basis_sequence(const RecurrenceSpec& spec, int i, long n_max);

// Precomputed combination weights: f(n) = sum_i delta_i W_{k-1}(n-i)
// with delta_0 = gamma_{k-1} and
// delta_i = sum_{j=2}^{k-i+1} beta_{j+i-1} gamma_{k-j}.
std::vector<Int> initial_combination(const RecurrenceSpec& spec);

// Evaluates the delta-combination above for n = 0..n_max. Agrees with
// iterate_forward exactly for every spec (the last basis sequence is
// extended to negative indices in exact rationals internally).
SequenceWindow combine_initials(const RecurrenceSpec& spec, long n_max);

// Named instances.
RecurrenceSpec kfib_spec(int k);                       // beta = 1^k, gamma = (0,..,0,1)
RecurrenceSpec narayana_spec();                        // k=3, beta=(1,0,1), gamma=(1,1,1)
RecurrenceSpec padovan_spec();                         // k=3, beta=(0,1,1), gamma=(1,1,1)
RecurrenceSpec perrin_spec();                          // k=3, beta=(0,1,1), gamma=(3,0,2)
RecurrenceSpec sj_powers_spec(int k, const Int& mu);   // beta = 1^k, gamma = (1,mu,..,mu^{k-1})

// Tag lookup used by the CLI and bindings: one of
// "kfib", "narayana", "padovan", "perrin", "sj-powers".
// k is required for kfib and sj-powers; mu for sj-powers.
RecurrenceSpec named_spec(std::string_view tag, int k = 0, const Int& mu = 2);

}  // namespace kfib
