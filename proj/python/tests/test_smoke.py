from fractions import Fraction

import pytest

import crs


def test_block_scalars():
    assert crs.dq_block_scalar(0, 0) == 12
    assert crs.dq_block_scalar(2, 1) == Fraction(10)
    assert crs.dq_block_scalar(2, 1, "printed") == 30
    assert crs.p1dq_eigenvalue(0, 4) == 8
    assert crs.sublaplacian_eigenvalue(2, 3) == 17


def test_round_trip_and_errors():
    f = crs.field(4, {(1, 0, 0): Fraction(1, 3), (0, 1, -1): (Fraction(-2, 5), 1)})
    back = crs.round_trip(f)
    assert back["coefficients"][0]["re"] in ("-2/5", "1/3")
    with pytest.raises(crs.InputError):
        crs.round_trip('{"truncation": 2, "coefficients": [{"p": 0, "q": 0, "m": 0, "re": 0.5}]}')
    with pytest.raises(ValueError):
        crs.round_trip("{")


def test_sphere_report():
    r = crs.compute(crs.field(4, {}), order=2)
    assert r["fields"]["R"][0]["coefficients"][0]["re"] == "2"
    assert all(not c["coefficients"] for c in r["fields"]["O"])
    assert r["integral_identity"]["exact_zero"]


def test_second_order_and_form():
    u = crs.field(4, {(0, 0, 0): Fraction(1, 2)})
    assert crs.second_order_obstruction(u) == (48, 0)
    assert crs.rigidity_quadratic_form(u) == 48
    w = crs.field(4, {(2, 0, 1): 1})
    assert crs.second_order_obstruction(w, crs.field(4, {(1, 1, 0): 3})) == (120, 0)


def test_partial_solve():
    phi0 = crs.field(8, {(2, 0, 1): 0.01})
    r = crs.partial_solve(phi0)
    assert r["converged"]
    assert r["residuals"][-1] <= 1e-12
    assert r["integral"][0] > 0
    assert r["kuranishi_l2"] > 0
    f = crs.formal_solve(crs.field(6, {(2, 0, 1): 1}), truncation=6, order=3)
    assert f["exact_zero"]


def test_suites():
    assert crs.suite("spectra", 6, "derived")["pass"]
    assert not crs.suite("spectra", 6, "printed")["pass"]
    assert crs.suite("kernel", 4)["pass"]
