"""Graded pieces of subscheme ideal powers on P^n, and the position checker.

Dimensions of degree-D pieces are ranks of explicit generating families:
for a power I^m the family is {g_1 ... g_m * monomial}, for a filtration
ideal it runs over the minimal generators of a threshold set.  When every
generator involved is a single-variable monomial and the variable supports
are disjoint across subschemes, membership of a monomial reduces to
componentwise order comparison, which the span computation exploits; the
generic path goes through exact rank.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .polynomials import FormError, HomogeneousForm, monomial_exponents, parse_form
from .staircase import threshold_set, validate_weights

__all__ = [
    "CatalogError",
    "Subscheme",
    "GradedPiece",
    "PositionReport",
    "dim_full",
    "span_dim",
    "span_rank",
    "ideal_power_gens",
    "graded_dim_ideal_power",
    "ideal_power_piece",
    "filtration_ideal_gens",
    "graded_dim_filtration_ideal",
    "coordinate_groups",
    "order_vector",
    "common_support_dim",
    "check_general_position",
]


class CatalogError(ValueError):
    """Input falls outside the decidable catalog for this operation."""


@dataclass(frozen=True)
class Subscheme:
    """A closed subscheme of P^(nvars-1) given by homogeneous generators."""

    label: str
    generators: tuple
    codim_hint: int | None = None

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise ValueError("a subscheme needs at least one generator")
        for g in gens:
            if not isinstance(g, HomogeneousForm):
                raise TypeError("generators must be HomogeneousForm instances")
            if g.is_zero:
                raise ValueError("zero generator is not allowed")
            if g.degree == 0:
                raise ValueError("degree-0 generator would make the ideal the unit ideal")
        if len({g.nvars for g in gens}) != 1:
            raise ValueError("generators must share one ambient space")
        object.__setattr__(self, "generators", gens)

    @property
    def nvars(self):
        return self.generators[0].nvars

    @property
    def n(self):
        return self.nvars - 1

    @classmethod
    def from_strings(cls, label, gens, nvars=None):
        forms = [parse_form(g, nvars=nvars) for g in gens]
        if nvars is None:
            width = max(f.nvars for f in forms)
            forms = [f if f.nvars == width else parse_form(g, nvars=width)
                     for f, g in zip(forms, gens)]
        return cls(label, tuple(forms))

    def to_json(self):
        return {"label": self.label, "nvars": self.nvars,
                "generators": [g.to_string() for g in self.generators]}

    @classmethod
    def from_json(cls, data, nvars=None):
        if nvars is None:
            nvars = data.get("nvars")
        return cls.from_strings(data["label"], data["generators"], nvars=nvars)

    def vanishes_at(self, coords):
        return all(g.evaluate(coords) == 0 for g in self.generators)


@dataclass(frozen=True)
class GradedPiece:
    """A subspace of the degree-``degree`` forms, with an echelonized basis."""

    nvars: int
    degree: int
    basis: tuple
    dim: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "dim", len(self.basis))


def dim_full(D, n):
    """h^0 of O(D) on P^n: the number of degree-D monomials in n+1 variables."""
    if D < 0:
        return 0
    return math.comb(D + n, n)


def _common_shape(forms):
    shapes = {(f.nvars, f.degree) for f in forms}
    if len(shapes) != 1:
        raise FormError("forms must share one ambient space and one degree")
    return shapes.pop()


def span_dim(forms):
    """Dimension of the span of homogeneous forms of one common degree.

    Families consisting solely of monomials span exactly the coordinate
    subspace picked out by their exponent set, so the rank is the number of
    distinct exponents; anything else goes through exact elimination.
    """
    live = [f for f in forms if not f.is_zero]
    if not live:
        return 0
    nvars, degree = _common_shape(live)
    if all(f.is_monomial for f in live):
        return len({next(iter(f.terms)) for f in live})
    columns = {e: i for i, e in enumerate(monomial_exponents(degree, nvars))}
    return linalg.rank([f.coeff_vector(columns) for f in live])


def span_rank(forms):
    """Rank of the span of a finite family of same-degree forms."""
    return span_dim(list(forms))


def span_piece(forms, nvars, degree):
    """Echelonized GradedPiece spanned by the family (may be empty)."""
    live = [f for f in forms if not f.is_zero]
    if not live:
        return GradedPiece(nvars, degree, ())
    shape = _common_shape(live)
    if shape != (nvars, degree):
        raise FormError("family does not match the requested graded piece")
    columns = monomial_exponents(degree, nvars)
    index = {e: i for i, e in enumerate(columns)}
    basis_rows = linalg.rref([f.coeff_vector(index) for f in live])
    basis = tuple(HomogeneousForm(nvars, degree,
                                  {columns[j]: c for j, c in enumerate(row) if c})
                  for row in basis_rows)
    return GradedPiece(nvars, degree, basis)


def _power_products(Y, m, cache=None):
    """All products of m generators of Y (with repetition)."""
    if m == 0:
        return [HomogeneousForm.one(Y.nvars)]
    key = (id(Y), m)
    if cache is not None and key in cache:
        return cache[key]
    out = []
    for combo in itertools.combinations_with_replacement(Y.generators, m):
        prod = combo[0]
        for g in combo[1:]:
            prod = prod * g
        out.append(prod)
    if cache is not None:
        cache[key] = out
    return out


def ideal_power_gens(Y, m, D):
    """Spanning family of the degree-D piece of I_Y^m."""
    if m < 0:
        raise ValueError("power must be nonnegative")
    nvars = Y.nvars
    if m == 0:
        return [HomogeneousForm.monomial(e) for e in monomial_exponents(D, nvars)]
    out = []
    for prod in _power_products(Y, m):
        gap = D - prod.degree
        if gap < 0:
            continue
        for e in monomial_exponents(gap, nvars):
            out.append(prod * HomogeneousForm.monomial(e))
    return out


def coordinate_groups(Ys):
    """Detect the disjoint coordinate-monomial catalog.

    Returns one list per subscheme of (variable, exponent) pairs when every
    generator is c * x_j^e with all variables distinct inside a subscheme
    and disjoint across subschemes; otherwise None.
    """
    groups = []
    seen = set()
    for Y in Ys:
        grp = []
        for g in Y.generators:
            if not g.is_monomial:
                return None
            exps = next(iter(g.terms))
            live = [(j, e) for j, e in enumerate(exps) if e > 0]
            if len(live) != 1:
                return None
            j, e = live[0]
            if j in seen:
                return None
            seen.add(j)
            grp.append((j, e))
        groups.append(tuple(grp))
    return groups


def order_vector(exps, groups):
    """Largest b with x^exps in prod_i I_i^{b_i}, for disjoint monomial groups."""
    return tuple(sum(exps[j] // e for j, e in grp) for grp in groups)


def graded_dim_ideal_power(Y, m, D):
    """dim of the degree-D piece of I_Y^m."""
    if m < 0:
        raise ValueError("power must be nonnegative")
    if D < 0:
        return 0
    n = Y.nvars - 1
    if m == 0:
        return dim_full(D, n)
    groups = coordinate_groups([Y])
    if groups is not None:
        return sum(1 for e in monomial_exponents(D, Y.nvars)
                   if order_vector(e, groups)[0] >= m)
    return span_dim(ideal_power_gens(Y, m, D))


def ideal_power_piece(Y, m, D):
    return span_piece(ideal_power_gens(Y, m, D), Y.nvars, D)


def filtration_ideal_gens(Ys, t, x, D):
    """Spanning family of the degree-D piece of sum_b prod_i I_i^{b_i},
    b running over the minimal generators of the threshold set."""
    Ys = list(Ys)
    if not Ys:
        raise ValueError("need at least one subscheme")
    if len({Y.nvars for Y in Ys}) != 1:
        raise ValueError("subschemes must share one ambient space")
    t = validate_weights(t)
    if len(t) != len(Ys):
        raise ValueError("one weight per subscheme required")
    nvars = Ys[0].nvars
    sat = threshold_set(t, x)
    out = []
    cache = {}
    for b in sat.generators:
        factor_lists = [_power_products(Y, bi, cache) for Y, bi in zip(Ys, b)]
        for combo in itertools.product(*factor_lists):
            prod = combo[0]
            for f in combo[1:]:
                prod = prod * f
            gap = D - prod.degree
            if gap < 0:
                continue
            for e in monomial_exponents(gap, nvars):
                out.append(prod * HomogeneousForm.monomial(e))
    return out


def graded_dim_filtration_ideal(Ys, t, x, D):
    """dim of the degree-D piece of the threshold-x filtration ideal."""
    Ys = list(Ys)
    x = Fraction(x)
    nvars = Ys[0].nvars
    if x == 0:
        return dim_full(D, nvars - 1)
    groups = coordinate_groups(Ys)
    if groups is not None:
        t = validate_weights(t)
        if len(t) != len(Ys):
            raise ValueError("one weight per subscheme required")
        sat = threshold_set(t, x)
        return sum(1 for e in monomial_exponents(D, nvars)
                   if sat.contains(order_vector(e, groups)))
    return span_dim(filtration_ideal_gens(Ys, t, x, D))


# ---------------------------------------------------------------------------
# Support dimensions and the general-position test.
#
# The decidable catalog: any number of subschemes with linear generators,
# plus at most one nonlinear hypersurface effectively appearing per
# intersection.  Supports are intersected by solving the linear part and
# restricting nonlinear generators to the solution space.


def _linear_rows(forms):
    rows = []
    for f in forms:
        row = [Fraction(0)] * f.nvars
        for exps, coeff in f.terms.items():
            j = next(i for i, e in enumerate(exps) if e)
            row[j] = coeff
        rows.append(tuple(row))
    return rows


def _restrict(form, basis_vectors, nparams):
    reps = []
    for j in range(form.nvars):
        terms = {}
        for k, vec in enumerate(basis_vectors):
            if vec[j]:
                e = tuple(1 if i == k else 0 for i in range(nparams))
                terms[e] = vec[j]
        reps.append(HomogeneousForm(nparams, 1, terms))
    return form.substitute(reps)


def common_support_dim(Ys):
    """Projective dimension of the intersection of the supports.

    Returns None for the empty intersection.  Decidable for generators that
    are linear plus at most one effective nonlinear hypersurface; anything
    else raises CatalogError.
    """
    Ys = list(Ys)
    if not Ys:
        raise ValueError("need at least one subscheme")
    if len({Y.nvars for Y in Ys}) != 1:
        raise ValueError("subschemes must share one ambient space")
    nvars = Ys[0].nvars
    linear = []
    nonlinear = []
    for Y in Ys:
        for g in Y.generators:
            (linear if g.degree == 1 else nonlinear).append(g)

    if linear:
        rows = _linear_rows(linear)
        if linalg.rank(rows) == nvars:
            return None
        basis = linalg.nullspace(rows)
    else:
        basis = tuple(tuple(Fraction(1) if i == j else Fraction(0) for j in range(nvars))
                      for i in range(nvars))
    s = len(basis)  # dimension of the solution cone, >= 1 here

    restrictions = [_restrict(f, basis, s) for f in nonlinear]
    live = [r for r in restrictions if not r.is_zero]
    if not live:
        return s - 1
    if len(live) > 1:
        raise CatalogError("cannot decide dimensions with several effective "
                           "nonlinear hypersurfaces")
    if s - 1 == 0:
        return None  # the single point misses the hypersurface
    return s - 2


@dataclass(frozen=True)
class PositionReport:
    ok: bool
    witness: tuple | None = None


def _subscheme_codim(Y):
    d = common_support_dim([Y])
    if d is None:
        return math.inf
    return Y.n - d


def check_general_position(Ys):
    """Codimension test over every nonempty index subset.

    Passes when codim of each intersection is at least the sum of the
    individual codimensions, with the empty set counting as codimension
    infinity.  Returns the first violating subset (0-based, by size then
    lexicographic order) as witness.
    """
    Ys = list(Ys)
    if not Ys:
        raise ValueError("need at least one subscheme")
    n = Ys[0].n
    codims = [_subscheme_codim(Y) for Y in Ys]
    for Y, hint, codim in zip(Ys, [Y.codim_hint for Y in Ys], codims):
        if hint is not None and codim != math.inf and hint != codim:
            raise CatalogError(f"codim hint {hint} for {Y.label!r} disagrees "
                               f"with computed codimension {codim}")
    for size in range(1, len(Ys) + 1):
        for subset in itertools.combinations(range(len(Ys)), size):
            d = common_support_dim([Ys[i] for i in subset])
            codim_inter = math.inf if d is None else n - d
            if codim_inter < sum(codims[i] for i in subset):
                return PositionReport(False, subset)
    return PositionReport(True, None)
