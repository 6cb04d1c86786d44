"""Smoke tests for the compiled extension through the kfib package."""

from fractions import Fraction

import pytest

import kfib


def test_named_specs():
    nar = kfib.named_spec("narayana")
    assert nar == {"k": 3, "beta": [1, 0, 1], "gamma": [1, 1, 1]}
    sj = kfib.named_spec("sj-powers", k=4, mu=2)
    assert sj["gamma"] == [1, 2, 4, 8]
    with pytest.raises(ValueError):
        kfib.named_spec("unknown")


def test_exact_iteration_and_backward():
    assert kfib.iterate_forward([1, 1, 1], [0, 0, 1], 10) == [0, 0, 1, 1, 2, 4, 7, 13, 24, 44, 81]
    assert kfib.iterate_backward([1, 1], [0, 1], -3) == [2, -1, 1, 0, 1]
    assert kfib.iterate_forward([0, 1, 1], [3, 0, 2], 11)[-1] == 22
    with pytest.raises(kfib.NonUnitTrailingCoefficient):
        kfib.iterate_backward([1, 2], [0, 1], -1)


def test_basis_and_combination():
    assert kfib.basis_sequence([1, 1, 1], 0, 6) == [1, 0, 0, 1, 1, 2, 4]
    assert kfib.initial_combination([0, 1, 1], [3, 0, 2]) == [2, 3, 0]
    assert kfib.combine_initials([1, 1], [1, 2], 5) == [1, 2, 3, 5, 8, 13]


def test_combinatorics():
    assert kfib.b_n(6, 3) == Fraction(1)
    assert kfib.b_n(2, 3) == Fraction(1, 3)
    assert kfib.fuss_catalan(2, Fraction(3, 2), 1) == Fraction(3, 2)
    assert kfib.compositions(3, 3) == [(0, 0, 1), (1, 1, 0), (3, 0, 0)]
    assert kfib.multinomial_sum(5, [0, 1, 1]) == 2
    assert kfib.narayana_sum(9) == 19
    assert kfib.kfib_multinomial(7, 3) == 44


def test_spectral_values():
    assert kfib.principal_root(2).startswith("1.6180339887498948")
    re, im = kfib.secondary_root(3, 1)
    assert re.startswith("-4.1964337760")
    assert im.startswith("6.0629072920")
    assert kfib.binet_value(3, 10) == 81
    assert kfib.binet_value(3, -5) == -3
    assert kfib.dresden_du(10, 50) == kfib.iterate_forward([1] * 10, [0] * 9 + [1], 50)[50]
    assert kfib.basis_binet_value(3, 3, 8) == 13
    table = kfib.root_table(5)
    assert len(table) == 5 and table[0]["j"] == 0


def test_threshold_and_sj():
    t = kfib.n_threshold(3, 0.01)
    assert abs(t["n_simplified"] - 16.067) < 0.01
    ok, dev = kfib.sj_equivalence(7)
    assert ok and dev < 1e-58
    coeffs = kfib.sj_coefficients(2, 2)
    assert len(coeffs) == 2


def test_companion():
    assert kfib.companion_power([1, 1], 5) == [[8, 5], [5, 3]]
    assert kfib.companion_entry([1, 1], 5, 1, 1) == 8
    assert kfib.column_identity_ok([0, 1, 1], 20)
    assert kfib.iterate_via_matrix([1, 1, 1], [0, 0, 1], 10) == 81


def test_precision_escalation_handles_big_indices():
    want = kfib.iterate_forward([1, 1], [0, 1], 300)[300]
    assert kfib.binet_value(2, 300, digits=16) == want
