#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "kfib/companion.hpp"
#include "kfib/recurrence.hpp"

using namespace kfib;
using companion::CompanionMatrix;
using companion::IntMatrix;

namespace {

std::vector<Int> ints(std::initializer_list<long> xs) {
  return std::vector<Int>(xs.begin(), xs.end());
}

}  // namespace

TEST_CASE("powers: Fibonacci fifth power, identity, additivity") {
  const CompanionMatrix cm(ints({1, 1}));
  const IntMatrix p5 = cm.power(5);
  CHECK(p5.at(1, 1) == 8);
  CHECK(p5.at(1, 2) == 5);
  CHECK(p5.at(2, 1) == 5);
  CHECK(p5.at(2, 2) == 3);
  CHECK(cm.power(0) == IntMatrix::identity(2));

  const CompanionMatrix cm3(ints({0, 1, 1}));
  for (unsigned long m = 0; m <= 6; ++m) {
    for (unsigned long n = 0; n <= 6; ++n) {
      CHECK(cm3.power(m + n) == cm3.power(m) * cm3.power(n));
    }
  }
}

TEST_CASE("entry formula: frozen values and conventions") {
  CHECK(companion::entry_multinomial(ints({1, 1}), 5, 1, 1) == 8);
  CHECK(companion::entry_multinomial(ints({1, 0, 1}), 1, 2, 1) == 1);  // n = i - j
  CHECK(companion::entry_multinomial(ints({1, 0, 1}), 0, 3, 1) == 0);  // n - i + j < 0
  CHECK(companion::entry_multinomial(ints({0, 1, 1}), 4, 1, 1) == 1);
  CHECK(companion::entry_multinomial(ints({1, 1, 1}), 6, 1, 1) == 24);
  CHECK_THROWS_AS(companion::entry_multinomial(ints({1, 1}), 3, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(companion::entry_multinomial(ints({1, 1}), 3, 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(companion::entry_multinomial(ints({1, 1}), -1, 1, 1), std::invalid_argument);
}

TEST_CASE("property: entry formula equals matrix powers on a small exhaustive box") {
  for (int k = 2; k <= 4; ++k) {
    std::vector<Int> beta(static_cast<size_t>(k), -1);
    for (;;) {
      if (beta.back() != 0) {
        const CompanionMatrix cm(beta);
        for (long n = 0; n <= 10; ++n) {
          const IntMatrix p = cm.power(static_cast<unsigned long>(n));
          for (int i = 1; i <= k; ++i) {
            for (int j = 1; j <= k; ++j) {
              CHECK(companion::entry_multinomial(beta, n, i, j) == p.at(i, j));
            }
          }
        }
      }
      size_t pos = 0;
      while (pos < beta.size() && beta[pos] == 1) {
        beta[pos] = -1;
        ++pos;
      }
      if (pos == beta.size()) break;
      beta[pos] += 1;
    }
  }
  // a couple of wider-coefficient spot checks
  for (const auto& beta : {ints({2, -1, 0, 2}), ints({-2, 0, 1, -1, 2})}) {
    const CompanionMatrix cm(beta);
    const int k = static_cast<int>(beta.size());
    for (long n : {0L, 1L, 4L, 9L}) {
      const IntMatrix p = cm.power(static_cast<unsigned long>(n));
      for (int i = 1; i <= k; ++i) {
        for (int j = 1; j <= k; ++j) {
          CHECK(companion::entry_multinomial(beta, n, i, j) == p.at(i, j));
        }
      }
    }
  }
}

TEST_CASE("first-column identity: spot value and exhaustive reports") {
  // row (1,2) at n=5 for Fibonacci: entry 5 = beta_2 * c_{1,1}^{(4)}
  const CompanionMatrix cm(ints({1, 1}));
  CHECK(cm.power(5).at(1, 2) == 1 * cm.power(4).at(1, 1));

  for (const auto& beta : {ints({1, 1, 1, 1}), ints({0, 1, 1}), ints({2, -1, 3})}) {
    const auto report = companion::column_identity_check(beta, 20);
    CHECK(report.passed);
    CHECK(report.violations.empty());
    const int k = static_cast<int>(beta.size());
    CHECK(report.checks == 20UL * static_cast<unsigned long>(k) *
                               static_cast<unsigned long>(k - 1));
  }
  CHECK_THROWS_AS(companion::column_identity_check(ints({1, 1}), 0), std::invalid_argument);
}

TEST_CASE("matrix iteration: frozen values and agreement with direct iteration") {
  CHECK(companion::iterate_via_matrix(kfib_spec(3), 10) == 81);
  CHECK(companion::iterate_via_matrix(perrin_spec(), 11) == 22);
  CHECK(companion::iterate_via_matrix(perrin_spec(), 2) == 2);  // n = k-1 returns gamma_{k-1}
  for (const RecurrenceSpec& spec :
       {kfib_spec(2), kfib_spec(5), narayana_spec(), padovan_spec(),
        sj_powers_spec(3, 4)}) {
    const SequenceWindow fw = iterate_forward(spec, 60);
    for (long n = 0; n <= 60; ++n) {
      CHECK(companion::iterate_via_matrix(spec, static_cast<unsigned long>(n)) == fw.at(n));
    }
  }
}

TEST_CASE("columns of C^n carry the basis sequences") {
  for (const RecurrenceSpec& spec :
       {kfib_spec(2), kfib_spec(4), narayana_spec(), perrin_spec()}) {
    const int k = spec.order();
    const CompanionMatrix cm(spec.beta());
    std::vector<SequenceWindow> basis;
    for (int i = 0; i < k; ++i) basis.push_back(basis_sequence(spec, i, 20 + k));
    for (long n = 0; n <= 20; ++n) {
      const IntMatrix p = cm.power(static_cast<unsigned long>(n));
      for (int i = 1; i <= k; ++i) {
        for (int j = 1; j <= k; ++j) {
          CHECK(p.at(i, j) == basis[static_cast<size_t>(k - j)].at(n + k - i));
        }
      }
    }
  }
}

TEST_CASE("construction guards") {
  CHECK_THROWS_AS(CompanionMatrix(ints({1})), std::invalid_argument);
  CHECK_THROWS_AS(CompanionMatrix(ints({1, 0})), std::invalid_argument);
}
