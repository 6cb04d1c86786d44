#include "kfib/recurrence.hpp"

#include <stdexcept>
#include <utility>

#include "kfib/errors.hpp"

namespace kfib {

RecurrenceSpec::RecurrenceSpec(std::vector<Int> beta, std::vector<Int> gamma)
    : beta_(std::move(beta)), gamma_(std::move(gamma)) {
  if (beta_.size() < 2) {
    throw std::invalid_argument("recurrence order must be at least 2");
  }
  if (gamma_.size() != beta_.size()) {
    throw std::invalid_argument("initial tuple length must equal the order");
  }
  if (beta_.back() == 0) {
    throw std::invalid_argument("trailing coefficient beta_k must be nonzero");
  }
}

bool RecurrenceSpec::unit_trailing() const {
  return beta_.back() == 1 || beta_.back() == -1;
}

SequenceWindow iterate_forward(const RecurrenceSpec& spec, long n_max) {
  const int k = spec.order();
  if (n_max < k - 1) {
    throw std::invalid_argument("n_max must cover the initial tuple (n_max >= k-1)");
  }
  SequenceWindow w;
  w.start = 0;
  w.values = spec.gamma();
  w.values.reserve(static_cast<size_t>(n_max + 1));
  for (long n = k; n <= n_max; ++n) {
    Int v = 0;
    for (int j = 1; j <= k; ++j) {
      v += spec.beta_at(j) * w.values[static_cast<size_t>(n - j)];
    }
    w.values.push_back(std::move(v));
  }
  return w;
}

SequenceWindow iterate_backward(const RecurrenceSpec& spec, long n_min) {
  const int k = spec.order();
  if (n_min >= 0) {
    throw std::invalid_argument("n_min must be negative");
  }
  if (!spec.unit_trailing()) {
    throw NonUnitTrailingCoefficient("backward iteration requires beta_k = +/-1, got " +
                                     spec.beta().back().get_str());
  }
  // Solve beta_k f(n-k) = f(n) - sum_{j<k} beta_j f(n-j), walking n-k
  // downward from -1. Window is built back-to-front then reversed.
  std::vector<Int> rev(spec.gamma().rbegin(), spec.gamma().rend());  // f(k-1)..f(0)
  const bool negate = spec.beta().back() == -1;
  for (long m = -1; m >= n_min; --m) {
    // rev holds f(k-1), f(k-2), ..., f(m+1); compute f(m) from the
    // recurrence anchored at n = m + k.
    Int v = rev[static_cast<size_t>(k - 1 - (m + k))];  // f(m+k)
    for (int j = 1; j <= k - 1; ++j) {
      v -= spec.beta_at(j) * rev[static_cast<size_t>(k - 1 - (m + k - j))];
    }
    if (negate) v = -v;
    rev.push_back(std::move(v));
  }
  SequenceWindow w;
  w.start = n_min;
  w.values.assign(rev.rbegin(), rev.rend());
  return w;
}

SequenceWindow basis_sequence(const RecurrenceSpec& spec, int i, long n_max) {
  const int k = spec.order();
  if (i < 0 || i >= k) {
    throw std::invalid_argument("basis index out of range");
  }
  std::vector<Int> initials(static_cast<size_t>(k), 0);
  initials[static_cast<size_t>(i)] = 1;
  return iterate_forward(spec.with_initials(std::move(initials)), n_max);
}

std::vector<Int> initial_combination(const RecurrenceSpec& spec) {
  const int k = spec.order();
  std::vector<Int> delta(static_cast<size_t>(k), 0);
  delta[0] = spec.gamma()[static_cast<size_t>(k - 1)];
  for (int i = 1; i <= k - 1; ++i) {
    Int d = 0;
    for (int j = 2; j <= k - i + 1; ++j) {
      d += spec.beta_at(j + i - 1) * spec.gamma()[static_cast<size_t>(k - j)];
    }
    delta[static_cast<size_t>(i)] = std::move(d);
  }
  return delta;
}

SequenceWindow combine_initials(const RecurrenceSpec& spec, long n_max) {
  const int k = spec.order();
  if (n_max < k - 1) {
    throw std::invalid_argument("n_max must cover the initial tuple (n_max >= k-1)");
  }
  const std::vector<Int> delta = initial_combination(spec);

  // Last basis sequence W_{k-1} on [-(k-1), n_max]. The combination needs
  // values at n - i down to -(k-1); those are extended in exact rationals
  // so the construction also works when |beta_k| != 1. The combined
  // result is always an integer.
  const long lo = -(k - 1);
  std::vector<Rat> wlast(static_cast<size_t>(n_max - lo + 1));
  auto wl = [&](long n) -> Rat& { return wlast[static_cast<size_t>(n - lo)]; };
  for (int n = 0; n < k - 1; ++n) wl(n) = 0;
  wl(k - 1) = 1;
  for (long n = k; n <= n_max; ++n) {
    Rat v = 0;
    for (int j = 1; j <= k; ++j) v += Rat(spec.beta_at(j)) * wl(n - j);
    wl(n) = std::move(v);
  }
  const Rat bk(spec.beta().back());
  for (long m = -1; m >= lo; --m) {
    Rat v = wl(m + k);
    for (int j = 1; j <= k - 1; ++j) v -= Rat(spec.beta_at(j)) * wl(m + k - j);
    wl(m) = v / bk;
  }

  SequenceWindow out;
  out.start = 0;
  out.values.reserve(static_cast<size_t>(n_max + 1));
  for (long n = 0; n <= n_max; ++n) {
    Rat v = 0;
    for (int i = 0; i < k; ++i) v += Rat(delta[static_cast<size_t>(i)]) * wl(n - i);
    v.canonicalize();
    if (v.get_den() != 1) {
      throw std::logic_error("initial-value combination produced a non-integer");
    }
    out.values.emplace_back(v.get_num());
  }
  return out;
}

RecurrenceSpec kfib_spec(int k) {
  if (k < 2) throw std::invalid_argument("kfib requires k >= 2");
  std::vector<Int> beta(static_cast<size_t>(k), 1);
  std::vector<Int> gamma(static_cast<size_t>(k), 0);
  gamma.back() = 1;
  return RecurrenceSpec(std::move(beta), std::move(gamma));
}

RecurrenceSpec narayana_spec() { return RecurrenceSpec({1, 0, 1}, {1, 1, 1}); }

RecurrenceSpec padovan_spec() { return RecurrenceSpec({0, 1, 1}, {1, 1, 1}); }

RecurrenceSpec perrin_spec() { return RecurrenceSpec({0, 1, 1}, {3, 0, 2}); }

RecurrenceSpec sj_powers_spec(int k, const Int& mu) {
  if (k < 2) throw std::invalid_argument("sj-powers requires k >= 2");
  std::vector<Int> beta(static_cast<size_t>(k), 1);
  std::vector<Int> gamma;
  gamma.reserve(static_cast<size_t>(k));
  Int p = 1;
  for (int i = 0; i < k; ++i) {
    gamma.push_back(p);
    p *= mu;
  }
  return RecurrenceSpec(std::move(beta), std::move(gamma));
}

RecurrenceSpec named_spec(std::string_view tag, int k, const Int& mu) {
  if (tag == "kfib") return kfib_spec(k);
  if (tag == "narayana") return narayana_spec();
  if (tag == "padovan") return padovan_spec();
  if (tag == "perrin") return perrin_spec();
  if (tag == "sj-powers") return sj_powers_spec(k, mu);
  throw std::invalid_argument("unknown sequence tag: " + std::string(tag));
}

}  // namespace kfib
