// Python bindings for the main operations. Exact integers cross the
// boundary as Python ints, exact rationals as fractions.Fraction, and
// high-precision reals as decimal strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "kfib/combinatorics.hpp"
#include "kfib/companion.hpp"
#include "kfib/errors.hpp"
#include "kfib/recurrence.hpp"
#include "kfib/spectral.hpp"

namespace py = pybind11;
using namespace kfib;

namespace {

py::object to_pyint(const Int& v) {
  const std::string s = v.get_str();
  PyObject* obj = PyLong_FromString(s.c_str(), nullptr, 10);
  if (!obj) throw py::error_already_set();
  return py::reinterpret_steal<py::object>(obj);
}

Int to_mpz(py::handle obj) {
  return Int(py::str(obj).cast<std::string>());
}

std::vector<Int> to_mpz_list(const py::sequence& seq) {
  std::vector<Int> out;
  out.reserve(seq.size());
  for (py::handle item : seq) out.push_back(to_mpz(item));
  return out;
}

py::object to_fraction(const Rat& v) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_pyint(v.get_num()), to_pyint(v.get_den()));
}

// Accepts int, Fraction, or "p/q" strings; anything whose str() is p[/q].
Rat to_mpq(py::handle obj) {
  Rat r(py::str(obj).cast<std::string>());
  r.canonicalize();
  return r;
}

py::list window_values(const SequenceWindow& w) {
  py::list out;
  for (const Int& v : w.values) out.append(to_pyint(v));
  return out;
}

RecurrenceSpec make_spec(const py::sequence& beta, const py::sequence& gamma) {
  return RecurrenceSpec(to_mpz_list(beta), to_mpz_list(gamma));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "k-generalized Fibonacci toolkit: exact recurrence engine, "
            "Fuss-Catalan root series, Binet evaluation, companion matrices, "
            "and multinomial sums";

  py::register_exception<PrecisionExhausted>(m, "PrecisionExhausted");
  py::register_exception<ConvergenceBudgetExceeded>(m, "ConvergenceBudgetExceeded");
  py::register_exception<NonUnitTrailingCoefficient>(m, "NonUnitTrailingCoefficient");

  // --- exact recurrence engine ---
  m.def(
      "named_spec",
      [](const std::string& tag, int k, py::handle mu) {
        const RecurrenceSpec spec = named_spec(tag, k, to_mpz(mu));
        py::dict d;
        d["k"] = spec.order();
        py::list beta, gamma;
        for (const Int& b : spec.beta()) beta.append(to_pyint(b));
        for (const Int& g : spec.gamma()) gamma.append(to_pyint(g));
        d["beta"] = beta;
        d["gamma"] = gamma;
        return d;
      },
      py::arg("tag"), py::arg("k") = 0, py::arg("mu") = 2,
      "Coefficients and initials of a named sequence "
      "(kfib|narayana|padovan|perrin|sj-powers).");

  m.def(
      "iterate_forward",
      [](const py::sequence& beta, const py::sequence& gamma, long n_max) {
        return window_values(iterate_forward(make_spec(beta, gamma), n_max));
      },
      py::arg("beta"), py::arg("gamma"), py::arg("n_max"),
      "Exact values for n = 0..n_max.");

  m.def(
      "iterate_backward",
      [](const py::sequence& beta, const py::sequence& gamma, long n_min) {
        return window_values(iterate_backward(make_spec(beta, gamma), n_min));
      },
      py::arg("beta"), py::arg("gamma"), py::arg("n_min"),
      "Exact values for n = n_min..k-1 (requires |beta_k| = 1).");

  m.def(
      "basis_sequence",
      [](const py::sequence& beta, int i, long n_max) {
        std::vector<Int> b = to_mpz_list(beta);
        std::vector<Int> gamma(b.size(), 0);
        gamma.back() = 1;
        return window_values(basis_sequence(RecurrenceSpec(std::move(b), std::move(gamma)), i, n_max));
      },
      py::arg("beta"), py::arg("i"), py::arg("n_max"),
      "Fundamental solution with initial tuple delta_{in}.");

  m.def(
      "initial_combination",
      [](const py::sequence& beta, const py::sequence& gamma) {
        py::list out;
        for (const Int& d : initial_combination(make_spec(beta, gamma))) out.append(to_pyint(d));
        return out;
      },
      py::arg("beta"), py::arg("gamma"),
      "Weights delta_i with f(n) = sum_i delta_i W_{k-1}(n-i).");

  m.def(
      "combine_initials",
      [](const py::sequence& beta, const py::sequence& gamma, long n_max) {
        return window_values(combine_initials(make_spec(beta, gamma), n_max));
      },
      py::arg("beta"), py::arg("gamma"), py::arg("n_max"),
      "Sequence reconstructed from the last basis sequence alone.");

  // --- combinatorics ---
  m.def(
      "fuss_catalan",
      [](unsigned long m_, py::handle nu, py::handle r) {
        return to_fraction(fuss_catalan(m_, to_mpq(nu), to_mpq(r)));
      },
      py::arg("m"), py::arg("nu"), py::arg("r"),
      "Fuss-Catalan number A_m(nu, r) as an exact Fraction.");

  m.def(
      "b_n", [](unsigned long n, int k) { return to_fraction(fuss_catalan_b(n, k)); },
      py::arg("n"), py::arg("k"), "Root-series coefficient b_n as an exact Fraction.");

  m.def(
      "compositions",
      [](unsigned long n, int k) {
        py::list out;
        for (const Composition& c : compositions(n, k)) {
          py::tuple t(c.parts.size());
          for (size_t i = 0; i < c.parts.size(); ++i) t[i] = c.parts[i];
          out.append(t);
        }
        return out;
      },
      py::arg("n"), py::arg("k"),
      "All (i_1..i_k) with i_1 + 2 i_2 + ... + k i_k = n, ascending lexicographic.");

  m.def(
      "multinomial_sum",
      [](unsigned long n, const py::sequence& beta) {
        return to_pyint(multinomial_sum(n, to_mpz_list(beta)));
      },
      py::arg("n"), py::arg("beta"),
      "Dickson-polynomial value: the recurrence at index n+k-1 from initials (0,..,0,1).");

  m.def("narayana_sum", [](unsigned long n) { return to_pyint(narayana_sum(n)); },
        py::arg("n"), "Narayana number N(n) via its binomial sum.");

  m.def(
      "kfib_multinomial",
      [](unsigned long n, int k) { return to_pyint(kfib_multinomial(n, k)); },
      py::arg("n"), py::arg("k"), "F_k(n+k-1) via the all-ones multinomial sum.");

  // --- spectral ---
  m.def(
      "principal_root",
      [](int k, long digits) { return spectral::principal_root(k, digits).str(digits); },
      py::arg("k"), py::arg("digits") = spectral::kDefaultDigits,
      "Principal characteristic root as a decimal string.");

  m.def(
      "secondary_root",
      [](int k, int j, long digits) {
        const hp::Complex z = spectral::secondary_root(k, j, digits);
        return py::make_tuple(z.re.str(digits), z.im.str(digits));
      },
      py::arg("k"), py::arg("j"), py::arg("digits") = spectral::kDefaultDigits,
      "Secondary root zeta_j as (re, im) decimal strings.");

  m.def(
      "wolfram_epsilon",
      [](int k, long digits) { return spectral::wolfram_epsilon(k, digits).str(digits); },
      py::arg("k"), py::arg("digits") = spectral::kDefaultDigits,
      "epsilon_k with zeta_0 = 2 (1 - epsilon_k), from the binomial series.");

  m.def(
      "root_table",
      [](int k, long digits) {
        py::list out;
        for (const auto& row : spectral::root_figure_data(k, digits)) {
          py::dict d;
          d["j"] = row.j;
          d["re"] = row.re.str(digits);
          d["im"] = row.im.str(digits);
          d["abs"] = row.abs.str(digits);
          d["arg_over_2pi"] = row.arg_over_2pi.str(digits);
          d["residual"] = row.residual.str(digits);
          out.append(d);
        }
        return out;
      },
      py::arg("k"), py::arg("digits") = spectral::kDefaultDigits,
      "Per-root table: position, magnitude, normalized argument, residual.");

  m.def(
      "binet_value",
      [](int k, long n, long digits) {
        return to_pyint(spectral::with_precision_escalation(digits, [&](long d) {
          const auto rs = spectral::all_roots(k, d);
          return spectral::binet_eval(rs, spectral::binet_coefficients(rs), n);
        }));
      },
      py::arg("k"), py::arg("n"), py::arg("digits") = spectral::kDefaultDigits,
      "F_k(n) from the root sum (standard initials); negative n allowed.");

  m.def(
      "basis_binet_value",
      [](int k, int m_, long n, long digits) {
        return to_pyint(spectral::with_precision_escalation(digits, [&](long d) {
          return spectral::basis_binet(spectral::all_roots(k, d), m_, n);
        }));
      },
      py::arg("k"), py::arg("m"), py::arg("n"),
      py::arg("digits") = spectral::kDefaultDigits,
      "Basis sequence B_{k,k-m}(n) from its root sum.");

  m.def(
      "dresden_du",
      [](int k, long n, long digits) {
        return to_pyint(spectral::with_precision_escalation(digits, [&](long d) {
          return spectral::dresden_du_round(spectral::all_roots(k, d), n);
        }));
      },
      py::arg("k"), py::arg("n"), py::arg("digits") = spectral::kDefaultDigits,
      "F_k(n) from the principal term alone, rounded to the nearest integer.");

  m.def(
      "asymptotic_estimate",
      [](int k, long n, long digits) {
        return spectral::asymptotic_estimate(spectral::all_roots(k, digits), n).str(digits);
      },
      py::arg("k"), py::arg("n"), py::arg("digits") = spectral::kDefaultDigits,
      "Principal-term approximation of F_k(n) as a decimal string.");

  m.def(
      "n_threshold",
      [](int k, double eps) {
        const auto t = spectral::n_threshold(k, eps);
        py::dict d;
        d["delta"] = t.delta;
        d["kappa"] = t.kappa;
        d["n_threshold"] = t.n_threshold;
        d["n_simplified"] = t.n_simplified;
        return d;
      },
      py::arg("k"), py::arg("eps"),
      "Index past which secondary roots contribute less than eps of the principal term.");

  m.def(
      "sj_coefficients",
      [](int k, py::handle mu, long digits) {
        const auto rs = spectral::all_roots(k, digits);
        const auto coeffs = spectral::sj_coefficients(rs, to_mpq(mu));
        py::list out;
        for (const auto& c : coeffs.c) {
          out.append(py::make_tuple(c.re.str(digits), c.im.str(digits)));
        }
        return out;
      },
      py::arg("k"), py::arg("mu"), py::arg("digits") = spectral::kDefaultDigits,
      "Binet coefficients for geometric initials w_n = mu^n.");

  m.def(
      "sj_equivalence",
      [](int k, long digits) {
        const auto r = spectral::sj_equivalence_check(spectral::all_roots(k, digits));
        return py::make_tuple(r.ok, r.max_deviation);
      },
      py::arg("k"), py::arg("digits") = spectral::kDefaultDigits,
      "Checks the mu=2 coefficients against the original published form.");

  // --- companion matrices ---
  m.def(
      "companion_power",
      [](const py::sequence& beta, unsigned long n) {
        const companion::CompanionMatrix cm(to_mpz_list(beta));
        const companion::IntMatrix p = cm.power(n);
        py::list rows;
        for (int i = 1; i <= p.size(); ++i) {
          py::list row;
          for (int j = 1; j <= p.size(); ++j) row.append(to_pyint(p.at(i, j)));
          rows.append(row);
        }
        return rows;
      },
      py::arg("beta"), py::arg("n"), "Exact companion-matrix power C^n.");

  m.def(
      "companion_entry",
      [](const py::sequence& beta, long n, int i, int j) {
        return to_pyint(companion::entry_multinomial(to_mpz_list(beta), n, i, j));
      },
      py::arg("beta"), py::arg("n"), py::arg("i"), py::arg("j"),
      "Entry (i,j) of C^n from the weighted composition sum.");

  m.def(
      "column_identity_ok",
      [](const py::sequence& beta, long n_max) {
        return companion::column_identity_check(to_mpz_list(beta), n_max).passed;
      },
      py::arg("beta"), py::arg("n_max"),
      "Whether every column of C^n is the beta-combination of first-column entries.");

  m.def(
      "iterate_via_matrix",
      [](const py::sequence& beta, const py::sequence& gamma, unsigned long n) {
        return to_pyint(companion::iterate_via_matrix(make_spec(beta, gamma), n));
      },
      py::arg("beta"), py::arg("gamma"), py::arg("n"),
      "f(n) read off the companion power applied to the initial tuple.");
}
