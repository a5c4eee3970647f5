"""Intersection theory on the plane blown up in up to three general points.

Divisor classes live in the lattice spanned by the pullback H of a line
and the exceptional classes E1..Ek (k <= 3).  In this range the effective
cone is spanned by an explicit finite list of classes, so nefness, Seshadri
constants and section counts reduce to finitely many intersection numbers.

Section counts follow the usual reduction: strip base components C with
D.C < 0 and C^2 < 0, then read off chi on the nef chamber.  Vanishing in
higher degree holds there because D - K is ample, so the count is exact.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "SurfaceError",
    "NotNefError",
    "UnsupportedClassError",
    "PicardClass",
    "parse_class",
    "format_class",
    "SurfaceModel",
    "SeshadriReport",
    "ClosedFormReport",
    "ComparisonReport",
    "beta_closed_form",
    "beta_surface_truncated",
    "h0_terms",
    "compare_beta_seshadri",
    "three_point_blowup",
    "weighted_lines_class",
    "strict_transform_line",
]

MAX_BLOWUPS = 3


class SurfaceError(ValueError):
    pass


class NotNefError(SurfaceError):
    pass


class UnsupportedClassError(SurfaceError):
    pass


@dataclass(frozen=True)
class PicardClass:
    """a*H + sum_i e[i]*E_{i+1}; e[i] is the signed E-coefficient."""

    a: Fraction
    e: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "e", tuple(Fraction(c) for c in self.e))
        if len(self.e) > MAX_BLOWUPS:
            raise UnsupportedClassError("at most %d exceptional classes" % MAX_BLOWUPS)

    @property
    def k(self):
        return len(self.e)

    @property
    def is_integral(self):
        return self.a.denominator == 1 and all(c.denominator == 1 for c in self.e)

    @property
    def is_zero(self):
        return self.a == 0 and all(c == 0 for c in self.e)

    def __add__(self, other):
        self._match(other)
        return PicardClass(self.a + other.a,
                           tuple(x + y for x, y in zip(self.e, other.e)))

    def __sub__(self, other):
        self._match(other)
        return PicardClass(self.a - other.a,
                           tuple(x - y for x, y in zip(self.e, other.e)))

    def __neg__(self):
        return PicardClass(-self.a, tuple(-c for c in self.e))

    def __mul__(self, scalar):
        s = Fraction(scalar)
        return PicardClass(self.a * s, tuple(c * s for c in self.e))

    __rmul__ = __mul__

    def dot(self, other):
        """Intersection number; H^2 = 1, E_i^2 = -1, mixed terms vanish."""
        self._match(other)
        return self.a * other.a - sum(x * y for x, y in zip(self.e, other.e))

    def _match(self, other):
        if not isinstance(other, PicardClass) or len(self.e) != len(other.e):
            raise SurfaceError("classes live on different surfaces")

    def pad(self, k):
        if k < len(self.e):
            raise SurfaceError("cannot drop exceptional coefficients")
        return PicardClass(self.a, self.e + (Fraction(0),) * (k - len(self.e)))

    def __str__(self):
        return format_class(self)

    def __repr__(self):
        return "PicardClass(%r)" % format_class(self)


_CLASS_TERM = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?P<coef>\d+(?:/\d+)?)?\s*(?P<sym>H|E(?P<idx>[1-9]\d*))\s*")


def parse_class(text, k=None):
    """Parse 'aH - b1E1 - b2E2' style input into a PicardClass.

    Coefficients may be rationals like 7/2; a bare symbol means
    coefficient one.  k fixes the number of exceptional classes, otherwise
    the largest index used decides.
    """
    text = text.strip()
    if not text:
        raise SurfaceError("empty divisor class")
    if text == "0":
        return PicardClass(0, (Fraction(0),) * (k or 0))
    a = Fraction(0)
    coeffs = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _CLASS_TERM.match(text, pos)
        if not m:
            raise SurfaceError("cannot parse divisor class near %r" % text[pos:])
        sign = m.group("sign")
        if sign is None and not first:
            raise SurfaceError("missing sign between terms in %r" % text)
        value = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if sign == "-":
            value = -value
        if m.group("sym") == "H":
            a += value
        else:
            idx = int(m.group("idx"))
            coeffs[idx] = coeffs.get(idx, Fraction(0)) + value
        pos = m.end()
        first = False
    width = max(coeffs) if coeffs else 0
    if k is not None:
        if width > k:
            raise SurfaceError("class uses E%d but the surface has k = %d" % (width, k))
        width = k
    return PicardClass(a, tuple(coeffs.get(i, Fraction(0)) for i in range(1, width + 1)))


def _fmt_coef(c):
    return str(c) if c.denominator == 1 else "%d/%d" % (c.numerator, c.denominator)


def format_class(D):
    parts = []
    if D.a != 0:
        mag = abs(D.a)
        body = "H" if mag == 1 else _fmt_coef(mag) + "H"
        parts.append(("-" if D.a < 0 else "") + body)
    for i, c in enumerate(D.e, start=1):
        if c == 0:
            continue
        mag = abs(c)
        body = "E%d" % i if mag == 1 else "%sE%d" % (_fmt_coef(mag), i)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    if not parts:
        return "0"
    return " ".join(parts)


@dataclass(frozen=True)
class SeshadriReport:
    gamma: object
    tight: tuple
    nef_at_gamma: bool
    fail_gamma: object
    fail_witness: object


@dataclass(frozen=True)
class ClosedFormReport:
    beta: Fraction
    xi: Fraction
    A_self: Fraction
    A_dot_D: Fraction


@dataclass(frozen=True)
class ComparisonReport:
    beta: Fraction
    epsilon: Fraction
    seshadri_side: Fraction

    @property
    def holds(self):
        return self.beta >= self.seshadri_side


class SurfaceModel:
    """Blow-up of the plane in k general points, 0 <= k <= 3."""

    def __init__(self, k):
        if not isinstance(k, int) or not 0 <= k <= MAX_BLOWUPS:
            raise UnsupportedClassError("k must be an integer in 0..%d" % MAX_BLOWUPS)
        self.k = k
        self.H = PicardClass(1, (Fraction(0),) * k)
        self.exceptional = tuple(
            PicardClass(0, tuple(Fraction(1) if j == i else Fraction(0)
                                 for j in range(k)))
            for i in range(k))
        self.canonical = PicardClass(-3, (Fraction(1),) * k)
        neg = list(self.exceptional)
        for i in range(k):
            for j in range(i + 1, k):
                neg.append(self.H - self.exceptional[i] - self.exceptional[j])
        self.neg_curves = tuple(neg)
        # extremal rays of the curve cone; for k = 1 the ruling fiber H - E1
        # is extremal but not negative, for k = 0 the only ray is H itself
        extra = []
        if k == 1:
            extra.append(self.H - self.exceptional[0])
        extra.append(self.H)
        self.test_curves = self.neg_curves + tuple(extra)
        self.ample_probe = PicardClass(k + 1, (Fraction(-1),) * k)

    def E(self, i):
        if not 1 <= i <= self.k:
            raise SurfaceError("E%d does not exist for k = %d" % (i, self.k))
        return self.exceptional[i - 1]

    def _check(self, D):
        if not isinstance(D, PicardClass) or D.k != self.k:
            raise SurfaceError("class does not live on this surface")
        return D

    def intersect(self, D1, D2):
        return self._check(D1).dot(self._check(D2))

    def chi(self, D):
        self._check(D)
        return D.dot(D - self.canonical) / 2 + 1

    def is_nef(self, D):
        """(True, None) or (False, first violating extremal curve class)."""
        self._check(D)
        for C in self.test_curves:
            if D.dot(C) < 0:
                return False, C
        return True, None

    def is_ample(self, D):
        self._check(D)
        return all(D.dot(C) > 0 for C in self.test_curves)

    def zariski_h0(self, D):
        """Exact number of global sections of an integral class."""
        self._check(D)
        if not D.is_integral:
            raise UnsupportedClassError("section counts need integral classes")
        budget = int(D.dot(self.ample_probe)) * 4 + 64
        for _ in range(budget):
            if D.is_zero:
                return 1
            if D.dot(self.ample_probe) <= 0 or D.dot(self.H) < 0:
                return 0
            moving = next((C for C in self.test_curves
                           if C.dot(C) >= 0 and D.dot(C) < 0), None)
            if moving is not None:
                return 0
            fixed = next((C for C in self.neg_curves if D.dot(C) < 0), None)
            if fixed is None:
                return int(self.chi(D))
            D = D - fixed
        raise UnsupportedClassError("base-component reduction did not terminate")

    def seshadri(self, A, D):
        """sup of gamma with A - gamma*D nef, for nef A; math.inf if the
        cone imposes no constraint."""
        self._check(A)
        self._check(D)
        ok, witness = self.is_nef(A)
        if not ok:
            raise NotNefError("reference class is not nef (fails on %s)" % witness)
        ratios = [Fraction(A.dot(C), D.dot(C))
                  for C in self.test_curves if D.dot(C) > 0]
        return min(ratios) if ratios else math.inf

    def seshadri_report(self, A, D, probe_step=Fraction(1, 100)):
        gamma = self.seshadri(A, D)
        if isinstance(gamma, float) and math.isinf(gamma):
            return SeshadriReport(math.inf, (), True, None, None)
        tight = tuple(C for C in self.test_curves
                      if D.dot(C) > 0 and A.dot(C) == gamma * D.dot(C))
        nef_at, _ = self.is_nef(A - gamma * D)
        fail_gamma = gamma + Fraction(probe_step)
        _, witness = self.is_nef(A - fail_gamma * D)
        return SeshadriReport(gamma, tight, nef_at, fail_gamma, witness)


def beta_closed_form(model, A, D):
    """Closed form for the expansion coefficient when D^2 = 0.

    Requires A nef with A^2 > 0 and A.D > 0.  Then with xi = A^2 / (2 A.D)
    the value is (2/3 xi A^2 - 1/3 (A.D) xi^2) / A^2 = A^2 / (4 A.D).
    """
    AD = model.intersect(A, D)
    A2 = model.intersect(A, A)
    if model.intersect(D, D) != 0:
        raise UnsupportedClassError("closed form needs D^2 = 0")
    if AD <= 0:
        raise UnsupportedClassError("closed form needs A.D > 0")
    ok, witness = model.is_nef(A)
    if not ok or A2 <= 0:
        raise NotNefError("closed form needs A nef and big")
    xi = Fraction(A2, 2 * AD)
    beta = (Fraction(2, 3) * xi * A2 - Fraction(1, 3) * AD * xi * xi) / A2
    assert beta == Fraction(A2, 4 * AD)
    return ClosedFormReport(beta, xi, A2, AD)


def h0_terms(model, A, D, N):
    """Section counts h^0(N*A - m*D) for m = 1, 2, ... up to the first zero."""
    if not isinstance(N, int) or N <= 0:
        raise ValueError("N must be a positive integer")
    terms = []
    m = 1
    while True:
        h = model.zariski_h0(N * A - m * D)
        if h == 0:
            break
        terms.append(h)
        m += 1
    return terms


def beta_surface_truncated(model, A, D, N):
    """Truncated expansion sum_m h^0(N A - m D) / (N h^0(N A)), exact."""
    denom = N * model.zariski_h0(N * A)
    if denom == 0:
        raise UnsupportedClassError("reference class has no sections")
    return Fraction(sum(h0_terms(model, A, D, N)), denom)


def compare_beta_seshadri(model, A, D, r, n, N=None):
    """Both sides of beta >= (r / (n+1)) * seshadri for codimension r in
    dimension n.  Uses the closed form when D^2 = 0, otherwise the
    truncation at level N."""
    if model.intersect(D, D) == 0:
        beta = beta_closed_form(model, A, D).beta
    else:
        if N is None:
            raise ValueError("need a truncation level N when D^2 != 0")
        beta = beta_surface_truncated(model, A, D, N)
    eps = model.seshadri(A, D)
    if isinstance(eps, float) and math.isinf(eps):
        raise UnsupportedClassError("Seshadri constant is unbounded here")
    return ComparisonReport(beta, eps, Fraction(r, n + 1) * eps)


def three_point_blowup():
    return SurfaceModel(3)


def weighted_lines_class(l):
    """l*D1 + l*D2 + l*D3 + D4 for four general lines, three blown-up
    points P_i in L_i: equals (3l+1)H - l(E1+E2+E3)."""
    if not isinstance(l, int) or l < 1:
        raise ValueError("weight must be a positive integer")
    return PicardClass(3 * l + 1, (Fraction(-l),) * 3)


def strict_transform_line(i):
    """Strict transform H - E_i of the line through the i-th point."""
    model = three_point_blowup()
    return model.H - model.E(i)
