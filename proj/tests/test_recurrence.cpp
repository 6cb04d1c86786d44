#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "kfib/errors.hpp"
#include "kfib/recurrence.hpp"

using namespace kfib;

namespace {

std::vector<Int> ints(std::initializer_list<long> xs) {
  return std::vector<Int>(xs.begin(), xs.end());
}

// deterministic small-value generator for property boxes
struct SmallRng {
  unsigned long state = 0x853c49e6748fea9bULL;
  long next(long lo, long hi) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return lo + static_cast<long>((state >> 33) % static_cast<unsigned long>(hi - lo + 1));
  }
};

}  // namespace

TEST_CASE("spec construction validates order, lengths, trailing coefficient") {
  CHECK_THROWS_AS(RecurrenceSpec({Int(1)}, {Int(1)}), std::invalid_argument);
  CHECK_THROWS_AS(RecurrenceSpec(ints({1, 1}), ints({1})), std::invalid_argument);
  CHECK_THROWS_AS(RecurrenceSpec(ints({1, 0}), ints({0, 1})), std::invalid_argument);
  CHECK_THROWS_AS(kfib_spec(1), std::invalid_argument);
  const RecurrenceSpec spec = kfib_spec(4);
  CHECK(spec.order() == 4);
  CHECK(spec.unit_trailing());
}

TEST_CASE("forward iteration reproduces the hand-derived tribonacci window") {
  const SequenceWindow w = iterate_forward(kfib_spec(3), 10);
  CHECK(w.start == 0);
  CHECK(w.values == ints({0, 0, 1, 1, 2, 4, 7, 13, 24, 44, 81}));
  CHECK(w.at(10) == 81);
  CHECK(w.contains(10));
  CHECK(!w.contains(11));
}

TEST_CASE("named sequences match their published openings") {
  CHECK(iterate_forward(narayana_spec(), 9).values == ints({1, 1, 1, 2, 3, 4, 6, 9, 13, 19}));
  CHECK(iterate_forward(padovan_spec(), 11).values ==
        ints({1, 1, 1, 2, 2, 3, 4, 5, 7, 9, 12, 16}));
  CHECK(iterate_forward(perrin_spec(), 11).values ==
        ints({3, 0, 2, 3, 2, 5, 5, 7, 10, 12, 17, 22}));
}

TEST_CASE("named_spec lookup table") {
  const RecurrenceSpec nar = named_spec("narayana");
  CHECK(nar.beta() == ints({1, 0, 1}));
  CHECK(nar.gamma() == ints({1, 1, 1}));
  const RecurrenceSpec per = named_spec("perrin");
  CHECK(per.beta() == ints({0, 1, 1}));
  CHECK(per.gamma() == ints({3, 0, 2}));
  const RecurrenceSpec sj = named_spec("sj-powers", 4, 2);
  CHECK(sj.beta() == ints({1, 1, 1, 1}));
  CHECK(sj.gamma() == ints({1, 2, 4, 8}));
  CHECK(named_spec("kfib", 5).gamma() == ints({0, 0, 0, 0, 1}));
  CHECK_THROWS_AS(named_spec("nope"), std::invalid_argument);
}

TEST_CASE("backward iteration: frozen windows from backward substitution") {
  // f(n-2) = f(n) - f(n-1) walked down by hand
  const SequenceWindow fib = iterate_backward(kfib_spec(2), -3);
  CHECK(fib.start == -3);
  CHECK(fib.values == ints({2, -1, 1, 0, 1}));

  // F_3(2) = F_3(1) + F_3(0) + F_3(-1) forces F_3(-1) = 1
  const SequenceWindow tri = iterate_backward(kfib_spec(3), -1);
  CHECK(tri.at(-1) == 1);

  // Q(2) = Q(0) + Q(-1): 2 = 3 + Q(-1)
  const SequenceWindow per = iterate_backward(perrin_spec(), -1);
  CHECK(per.at(-1) == -1);
}

TEST_CASE("backward iteration demands a unit trailing coefficient") {
  const RecurrenceSpec spec(ints({1, 2}), ints({0, 1}));
  CHECK_THROWS_AS(iterate_backward(spec, -1), NonUnitTrailingCoefficient);
  CHECK_THROWS_AS(iterate_backward(kfib_spec(2), 0), std::invalid_argument);
}

TEST_CASE("backward extension rejoins forward iteration exactly") {
  for (const RecurrenceSpec& spec :
       {kfib_spec(2), kfib_spec(3), kfib_spec(6), narayana_spec(), padovan_spec(),
        perrin_spec(), sj_powers_spec(4, 3)}) {
    const int k = spec.order();
    const SequenceWindow bw = iterate_backward(spec, -20);
    // every interior point of the backward window satisfies the recurrence
    for (long n = bw.start + k; n <= bw.end(); ++n) {
      Int expect = 0;
      for (int j = 1; j <= k; ++j) expect += spec.beta_at(j) * bw.at(n - j);
      CHECK(bw.at(n) == expect);
    }
    // restart from the earliest k values and run forward
    const RecurrenceSpec restarted(
        spec.beta(), std::vector<Int>(bw.values.begin(), bw.values.begin() + k));
    const SequenceWindow fw = iterate_forward(spec, 25);
    const SequenceWindow rejoin = iterate_forward(restarted, 45 + k);
    for (long n = -20; n <= 25; ++n) {
      const Int& want = n < 0 ? bw.at(n) : fw.at(n);
      CHECK(rejoin.at(n + 20) == want);
    }
  }
}

TEST_CASE("basis sequences: delta initials and frozen examples") {
  const SequenceWindow last = basis_sequence(kfib_spec(3), 2, 8);
  CHECK(last.values == iterate_forward(kfib_spec(3), 8).values);

  const SequenceWindow first = basis_sequence(kfib_spec(3), 0, 6);
  CHECK(first.values == ints({1, 0, 0, 1, 1, 2, 4}));

  const SequenceWindow pad1 = basis_sequence(padovan_spec(), 1, 6);
  CHECK(pad1.values == ints({0, 1, 0, 1, 1, 1, 2}));

  CHECK_THROWS_AS(basis_sequence(kfib_spec(3), 3, 5), std::invalid_argument);
  CHECK_THROWS_AS(basis_sequence(kfib_spec(3), -1, 5), std::invalid_argument);
}

TEST_CASE("initial combination weights and reconstruction") {
  CHECK(initial_combination(perrin_spec()) == ints({2, 3, 0}));
  CHECK(combine_initials(perrin_spec(), 11).values ==
        ints({3, 0, 2, 3, 2, 5, 5, 7, 10, 12, 17, 22}));

  // standard initials give the indicator weight vector
  CHECK(initial_combination(kfib_spec(4)) == ints({1, 0, 0, 0}));
  CHECK(combine_initials(kfib_spec(4), 12).values == iterate_forward(kfib_spec(4), 12).values);

  // shifted two-step sequence with gamma = (1, 2)
  const RecurrenceSpec sj2 = kfib_spec(2).with_initials(ints({1, 2}));
  CHECK(combine_initials(sj2, 5).values == ints({1, 2, 3, 5, 8, 13}));
}

TEST_CASE("combination also works when the trailing coefficient is not a unit") {
  const RecurrenceSpec spec(ints({1, 0, 2}), ints({3, 1, 4}));
  CHECK(combine_initials(spec, 25).values == iterate_forward(spec, 25).values);
  const RecurrenceSpec spec2(ints({2, -3}), ints({5, -1}));
  CHECK(combine_initials(spec2, 25).values == iterate_forward(spec2, 25).values);
}

TEST_CASE("property: weighted basis sums equal direct iteration") {
  SmallRng rng;
  for (int k = 2; k <= 6; ++k) {
    for (int rep = 0; rep < 8; ++rep) {
      std::vector<Int> gamma;
      for (int i = 0; i < k; ++i) gamma.emplace_back(rng.next(-9, 9));
      const RecurrenceSpec spec = kfib_spec(k).with_initials(gamma);
      const SequenceWindow direct = iterate_forward(spec, 40);

      std::vector<SequenceWindow> basis;
      for (int i = 0; i < k; ++i) basis.push_back(basis_sequence(spec, i, 40));
      for (long n = 0; n <= 40; ++n) {
        Int sum = 0;
        for (int i = 0; i < k; ++i) {
          sum += gamma[static_cast<size_t>(i)] * basis[static_cast<size_t>(i)].at(n);
        }
        CHECK(sum == direct.at(n));
      }
      CHECK(combine_initials(spec, 40).values == direct.values);
    }
  }
}

TEST_CASE("property: lower basis sequences are shifted beta-combinations of the last") {
  for (const RecurrenceSpec& spec :
       {kfib_spec(2), kfib_spec(4), narayana_spec(), padovan_spec()}) {
    const int k = spec.order();
    const SequenceWindow last_fw = basis_sequence(spec, k - 1, 40);
    std::vector<Int> e_last(static_cast<size_t>(k), 0);
    e_last.back() = 1;
    const SequenceWindow last_bw = iterate_backward(spec.with_initials(e_last), -(k + 1));
    auto last_at = [&](long n) -> const Int& {
      return n < 0 ? last_bw.at(n) : last_fw.at(n);
    };
    for (int i = 0; i <= k - 2; ++i) {
      const SequenceWindow wi = basis_sequence(spec, i, 40);
      for (long n = 0; n <= 40; ++n) {
        Int rhs = 0;
        for (int s = 0; s <= i; ++s) rhs += spec.beta_at(k + s - i) * last_at(n - s - 1);
        CHECK(rhs == wi.at(n));
      }
    }
  }
}

TEST_CASE("Narayana, Padovan, Perrin closed forms over the last basis sequence") {
  const SequenceWindow nar = iterate_forward(narayana_spec(), 42);
  const SequenceWindow wn = basis_sequence(narayana_spec(), 2, 44);
  const SequenceWindow pad = iterate_forward(padovan_spec(), 44);
  const SequenceWindow wp = basis_sequence(padovan_spec(), 2, 46);
  const SequenceWindow per = iterate_forward(perrin_spec(), 42);
  for (long n = 0; n <= 40; ++n) {
    CHECK(nar.at(n) == wn.at(n + 2));
    CHECK(pad.at(n) == wp.at(n + 4));
    CHECK(per.at(n) == 3 * wp.at(n + 2) - wp.at(n));
    CHECK(per.at(n) == 4 * pad.at(n) + 2 * pad.at(n + 1) - 3 * pad.at(n + 2));
  }
}

TEST_CASE("halving scaling: F_k(n)/2^n satisfies the success-run recurrence exactly") {
  for (int k = 2; k <= 6; ++k) {
    const SequenceWindow fw = iterate_forward(kfib_spec(k), 30);
    auto scaled = [&](long n) {
      Rat v(fw.at(n));
      v /= Rat(Int(1) << static_cast<unsigned long>(n));
      return v;
    };
    for (long n = k; n <= 30; ++n) {
      Rat rhs = 0;
      for (int j = 1; j <= k; ++j) {
        rhs += scaled(n - j) / Rat(Int(1) << static_cast<unsigned long>(j));
      }
      CHECK(scaled(n) == rhs);
    }
  }
}
