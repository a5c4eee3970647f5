"""Truncated expansion coefficients of a polarized subscheme.

For Y inside P^{n} and the degree-d polarization, the level-N value is

    sum_{m >= 1} h^0(O(dN) . I_Y^m) / (N h^0(O(dN)))

with the sum cut off at the first vanishing term; the terms are
nonincreasing in m, so nothing is lost.  Everything is exact.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .graded import Subscheme, _linear_rows, dim_full, graded_dim_ideal_power
from .surface import SurfaceModel

__all__ = [
    "BetaReport",
    "CrosscheckReport",
    "ConvergenceRow",
    "beta_truncated",
    "beta_blowup_crosscheck",
    "beta_convergence",
    "convergence_csv",
]


@dataclass(frozen=True)
class BetaReport:
    N: int
    numerator: int
    denominator: int
    value: Fraction
    terms: tuple


@dataclass(frozen=True)
class CrosscheckReport:
    terms: tuple
    blowup_terms: tuple
    value: Fraction

    @property
    def match(self):
        return self.terms == self.blowup_terms


@dataclass(frozen=True)
class ConvergenceRow:
    N: int
    numerator: int
    denominator: int
    value: Fraction
    min_so_far: Fraction


def _validate_level(d, N):
    if not isinstance(d, int) or d < 1:
        raise ValueError("polarization degree must be a positive integer")
    if not isinstance(N, int) or N < 1:
        raise ValueError("level N must be a positive integer")


def ideal_power_terms(Y, degree):
    """h^0 of the powers I_Y^m in the given degree, m = 1.. first zero."""
    terms = []
    m = 1
    while True:
        h = graded_dim_ideal_power(Y, m, degree)
        if h == 0:
            break
        terms.append(h)
        m += 1
    return tuple(terms)


def beta_truncated(Y, d, N):
    _validate_level(d, N)
    terms = ideal_power_terms(Y, d * N)
    denominator = N * dim_full(d * N, Y.n)
    numerator = sum(terms)
    return BetaReport(N, numerator, denominator,
                      Fraction(numerator, denominator), terms)


def beta_blowup_crosscheck(Y, d, N):
    """Same terms computed twice for a reduced point in the plane: once in
    the graded ring, once as section counts of d N H - m E on the one-point
    blow-up.  They must agree term by term."""
    _validate_level(d, N)
    if Y.nvars != 3:
        raise ValueError("crosscheck is for points in the plane (three variables)")
    if any(g.degree != 1 for g in Y.generators):
        raise ValueError("crosscheck needs a linearly cut (reduced) point")
    if linalg.rank(_linear_rows(list(Y.generators))) != 2:
        raise ValueError("generators must cut a single reduced point")
    terms = ideal_power_terms(Y, d * N)
    model = SurfaceModel(1)
    blowup = []
    m = 1
    while True:
        h = model.zariski_h0(d * N * model.H - m * model.E(1))
        if h == 0:
            break
        blowup.append(h)
        m += 1
    denominator = N * dim_full(d * N, Y.n)
    return CrosscheckReport(terms, tuple(blowup),
                            Fraction(sum(terms), denominator))


def beta_convergence(Y, d, N_max):
    if not isinstance(N_max, int) or N_max < 1:
        raise ValueError("N_max must be a positive integer")
    rows = []
    running = None
    for N in range(1, N_max + 1):
        rep = beta_truncated(Y, d, N)
        running = rep.value if running is None else min(running, rep.value)
        rows.append(ConvergenceRow(N, rep.numerator, rep.denominator,
                                   rep.value, running))
    return rows


def convergence_csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["N", "numerator", "denominator", "value", "min_so_far"])
    for r in rows:
        writer.writerow([r.N, r.numerator, r.denominator,
                         str(r.value), str(r.min_so_far)])
    return buf.getvalue()
