"""Pseudohermitian invariants of deformed CR 3-spheres."""

import json
from fractions import Fraction

from . import _core
from ._core import InputError, SolverDivergence

__all__ = [
    "InputError",
    "SolverDivergence",
    "field",
    "dq_block_scalar",
    "p1dq_eigenvalue",
    "sublaplacian_eigenvalue",
    "basis_norm2",
    "round_trip",
    "compute",
    "partial_solve",
    "formal_solve",
    "second_order_obstruction",
    "rigidity_quadratic_form",
    "suite",
]


def _text(f):
    return f if isinstance(f, str) else json.dumps(f)


def _frac(s):
    return Fraction(s)


def field(truncation, coefficients):
    """Builds a HarmonicField document from {(p, q, m): value} with Fraction or complex values."""
    out = []
    for (p, q, m), v in sorted(coefficients.items()):
        if isinstance(v, (Fraction, int)):
            re, im = Fraction(v), Fraction(0)
            out.append({"p": p, "q": q, "m": m, "re": str(re), "im": str(im)})
        elif isinstance(v, tuple):
            out.append({"p": p, "q": q, "m": m, "re": str(Fraction(v[0])), "im": str(Fraction(v[1]))})
        else:
            c = complex(v)
            out.append({"p": p, "q": q, "m": m, "re": c.real, "im": c.imag})
    return {"truncation": truncation, "coefficients": out}


def dq_block_scalar(p, q, table="derived"):
    return _frac(_core.dq_block_scalar(p, q, table))


def p1dq_eigenvalue(p, q, table="derived"):
    return _frac(_core.p1dq_eigenvalue(p, q, table))


def sublaplacian_eigenvalue(p, q):
    return _core.sublaplacian_eigenvalue(p, q)


def basis_norm2(p, q, m):
    """Squared L^2 norm of the basis vector, as a coefficient of pi^2."""
    return _frac(_core.basis_norm2(p, q, m))


def round_trip(f):
    return json.loads(_core.round_trip(_text(f)))


def compute(f, backend="jet", order=2, truncation=8):
    return json.loads(_core.compute(_text(f), backend, order, truncation))


def partial_solve(phi0, truncation=8, tol=1e-12):
    return json.loads(_core.partial_solve(_text(phi0), truncation, tol))


def formal_solve(u, truncation=8, order=3):
    return json.loads(_core.formal_solve(_text(u), truncation, order))


def second_order_obstruction(u, udd=None):
    """t^2 coefficient of int O for t u + (t^2/2) udd, as (re, im) coefficients of pi^2."""
    re, im = _core.second_order_obstruction(_text(u), "" if udd is None else _text(udd))
    return Fraction(re), Fraction(im)


def rigidity_quadratic_form(u, table="derived"):
    return _frac(_core.rigidity_quadratic_form(_text(u), table))


def suite(name, degree, table="printed"):
    return json.loads(_core.suite(name, degree, table))
