"""Weighted filtrations of the degree-N forms by vanishing along subschemes.

The filtration at threshold x is the span of the degree-N piece of the
ideal sum_b prod_i I_i^{b_i} over b with t.b >= x.  Profiles record the
jump values and dimensions of this step function; its normalized integral
F(t) is the quantity the concavity bound controls.  Dimensions are exact
and jump values are Fractions throughout.

Step convention: a profile [(x_1, d_1), ..., (x_K, d_K)] means the
dimension is d_1 on [0, x_1], d_k on (x_{k-1}, x_k], and 0 past x_K.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .graded import (
    Subscheme,
    coordinate_groups,
    dim_full,
    filtration_ideal_gens,
    graded_dim_filtration_ideal,
    graded_dim_ideal_power,
    order_vector,
    span_piece,
)
from .polynomials import FormError, HomogeneousForm, monomial_exponents
from .staircase import validate_weights

__all__ = [
    "ProfileError",
    "InconsistentProfilesError",
    "FiltrationProfile",
    "AdaptedBasis",
    "BoundReport",
    "build_profile",
    "mu_value",
    "F_value",
    "scale_check",
    "adapted_basis",
    "common_adapted_basis",
    "is_adapted",
    "concavity_bound",
]


class ProfileError(ValueError):
    pass


class InconsistentProfilesError(ProfileError):
    pass


@dataclass(frozen=True)
class FiltrationProfile:
    nvars: int
    degree: int
    ambient_dim: int
    jumps: tuple
    bases: tuple | None = None

    def __post_init__(self):
        jumps = tuple((Fraction(x), int(d)) for x, d in self.jumps)
        if not jumps:
            raise ProfileError("profile needs at least one jump entry")
        xs = [x for x, _ in jumps]
        ds = [d for _, d in jumps]
        if xs[0] < 0:
            raise ProfileError("jump positions must be nonnegative")
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ProfileError("jump positions must strictly increase")
        if any(b >= a for a, b in zip(ds, ds[1:])) or any(d <= 0 for d in ds):
            raise ProfileError("jump dimensions must be positive and strictly decrease")
        if ds[0] != self.ambient_dim:
            raise ProfileError("dimension at x = 0 must equal the ambient dimension")
        object.__setattr__(self, "jumps", jumps)
        if self.bases is not None:
            bases = tuple(tuple(tuple(Fraction(v) for v in row) for row in level)
                          for level in self.bases)
            if len(bases) != len(jumps):
                raise ProfileError("one basis per jump required")
            if [len(level) for level in bases] != ds:
                raise ProfileError("stored basis dimensions disagree with jumps")
            object.__setattr__(self, "bases", bases)

    def dim_at(self, x):
        x = Fraction(x)
        if x < 0:
            raise ValueError("threshold must be nonnegative")
        for xk, dk in self.jumps:
            if x <= xk:
                return dk
        return 0

    def monomial_order(self):
        return monomial_exponents(self.degree, self.nvars)

    def to_json(self):
        return {
            "nvars": self.nvars,
            "degree": self.degree,
            "ambient_dim": self.ambient_dim,
            "jumps": [[x.numerator, x.denominator, d] for x, d in self.jumps],
        }

    @classmethod
    def from_json(cls, data):
        jumps = tuple((Fraction(num, den), d) for num, den, d in data["jumps"])
        return cls(data["nvars"], data["degree"], data["ambient_dim"], jumps)


@dataclass(frozen=True)
class AdaptedBasis:
    elements: tuple
    mu_values: tuple

    def __post_init__(self):
        if len(self.elements) != len(self.mu_values):
            raise ProfileError("one mu value per element required")
        object.__setattr__(self, "mu_values", tuple(Fraction(m) for m in self.mu_values))


def _validate_inputs(Ys, t, N):
    Ys = list(Ys)
    if not Ys:
        raise ValueError("need at least one subscheme")
    if len({Y.nvars for Y in Ys}) != 1:
        raise ValueError("subschemes must share one ambient space")
    t = validate_weights(t)
    if len(t) != len(Ys):
        raise ValueError("one weight per subscheme required")
    if not isinstance(N, int) or N < 0:
        raise ValueError("twist degree must be a nonnegative integer")
    return Ys, t


def _candidate_values(Ys, t, N):
    """All jump candidates t.b with b inside the order box for degree N."""
    caps = []
    for Y in Ys:
        min_deg = min(g.degree for g in Y.generators)
        caps.append(N // min_deg)
    values = set()
    for b in itertools.product(*[range(c + 1) for c in caps]):
        values.add(sum(w * v for w, v in zip(t, b)))
    return sorted(values)


def _profile_from_pairs(pairs, nvars, N, ambient, bases=None):
    """Collapse (candidate, dim) pairs into run-end jumps; dims must be
    nonincreasing with dims[0] = ambient."""
    if not pairs or pairs[0][0] != 0 or pairs[0][1] != ambient:
        raise ProfileError("profile must start at x = 0 with the full space")
    jumps = []
    kept = []
    for idx, (x, d) in enumerate(pairs):
        if d <= 0:
            break
        if jumps and d == jumps[-1][1]:
            jumps[-1] = (x, d)
            kept[-1] = idx
        else:
            jumps.append((x, d))
            kept.append(idx)
    level_bases = None
    if bases is not None:
        level_bases = tuple(bases[i] for i in kept)
    return FiltrationProfile(nvars, N, ambient, tuple(jumps), level_bases)


def build_profile(Ys, t, N, with_bases=False):
    """Exact jump profile of the weighted filtration on degree-N forms."""
    Ys, t = _validate_inputs(Ys, t, N)
    nvars = Ys[0].nvars
    ambient = dim_full(N, nvars - 1)

    groups = coordinate_groups(Ys)
    if groups is not None:
        monos = monomial_exponents(N, nvars)
        levels = [sum(w * o for w, o in zip(t, order_vector(e, groups)))
                  for e in monos]
        distinct = sorted(set(levels))
        pairs = []
        bases = [] if with_bases else None
        for v in distinct:
            live = [i for i, lv in enumerate(levels) if lv >= v]
            pairs.append((v, len(live)))
            if with_bases:
                bases.append(tuple(
                    tuple(Fraction(1) if j == i else Fraction(0) for j in range(len(monos)))
                    for i in live))
        if distinct[0] != 0:
            pairs.insert(0, (Fraction(0), ambient))
            if with_bases:
                bases.insert(0, tuple(
                    tuple(Fraction(1) if j == i else Fraction(0) for j in range(len(monos)))
                    for i in range(len(monos))))
        return _profile_from_pairs(pairs, nvars, N, ambient, bases)

    pairs = []
    bases = [] if with_bases else None
    for x in _candidate_values(Ys, t, N):
        if with_bases:
            piece = span_piece(filtration_ideal_gens(Ys, t, x, N), nvars, N) \
                if x > 0 else None
            if piece is None:
                columns = monomial_exponents(N, nvars)
                index = {e: i for i, e in enumerate(columns)}
                rows = tuple(HomogeneousForm.monomial(e).coeff_vector(index)
                             for e in columns)
                pairs.append((Fraction(x), ambient))
                bases.append(rows)
                continue
            d = piece.dim
            columns = monomial_exponents(N, nvars)
            index = {e: i for i, e in enumerate(columns)}
            pairs.append((Fraction(x), d))
            bases.append(tuple(f.coeff_vector(index) for f in piece.basis))
        else:
            d = graded_dim_filtration_ideal(Ys, t, x, N)
            pairs.append((Fraction(x), d))
        if pairs[-1][1] == 0:
            break
    return _profile_from_pairs(pairs, nvars, N, ambient, bases)


def mu_value(s, Ys, t):
    """Largest threshold x whose filtration subspace still contains s."""
    if not isinstance(s, HomogeneousForm) or s.is_zero:
        raise FormError("mu is defined for nonzero homogeneous forms")
    Ys, t = _validate_inputs(Ys, t, s.degree)
    if s.nvars != Ys[0].nvars:
        raise FormError("form and subschemes live in different ambient spaces")
    N = s.degree

    groups = coordinate_groups(Ys)
    if groups is not None:
        return min(sum(w * o for w, o in zip(t, order_vector(e, groups)))
                   for e in s.support())

    candidates = _candidate_values(Ys, t, N)
    columns = {e: i for i, e in enumerate(monomial_exponents(N, s.nvars))}
    vec = s.coeff_vector(columns)

    def member(x):
        if x == 0:
            return True
        basis = linalg.rref([f.coeff_vector(columns)
                             for f in filtration_ideal_gens(Ys, t, x, N)
                             if not f.is_zero])
        return linalg.in_span(vec, basis)

    lo, hi = 0, len(candidates) - 1
    if member(candidates[hi]):
        return candidates[hi]
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if member(candidates[mid]):
            lo = mid
        else:
            hi = mid
    return candidates[lo]


def F_value(profile):
    """Normalized integral of the profile's dimension function."""
    total = Fraction(0)
    prev = Fraction(0)
    for x, d in profile.jumps:
        total += d * (x - prev)
        prev = x
    return total / profile.ambient_dim


def scale_check(Ys, t, u, N):
    """Both sides of the scaling identity F(u t) = u F(t), computed
    independently."""
    u = Fraction(u)
    if u <= 0:
        raise ValueError("scale factor must be positive")
    left = F_value(build_profile(Ys, [u * w for w in t], N))
    right = u * F_value(build_profile(Ys, t, N))
    return left, right


def _forms_from_rows(rows, nvars, degree):
    columns = monomial_exponents(degree, nvars)
    out = []
    for row in rows:
        terms = {columns[j]: c for j, c in enumerate(row) if c}
        out.append(HomogeneousForm(nvars, degree, terms))
    return tuple(out)


def adapted_basis(profile):
    """Greedy basis adapted to one profile, deepest jump first."""
    if profile.bases is None:
        raise ProfileError("profile was built without bases")
    chosen = []
    mus = []
    current = ()
    for (x, _), level in zip(reversed(profile.jumps), reversed(profile.bases)):
        added, current = linalg.extend_basis(level, current)
        chosen.extend(added)
        mus.extend([x] * len(added))
    basis = AdaptedBasis(_forms_from_rows(chosen, profile.nvars, profile.degree),
                         tuple(mus))
    if not is_adapted(basis, profile):
        raise ProfileError("internal error: greedy basis failed verification")
    return basis


def is_adapted(basis, profile):
    """Counting predicate: for every jump x, exactly dim F_x of the basis
    elements have mu >= x, and the elements are independent."""
    if len(basis.elements) != profile.ambient_dim:
        return False
    columns = {e: i for i, e in enumerate(monomial_exponents(profile.degree,
                                                             profile.nvars))}
    rows = [f.coeff_vector(columns) for f in basis.elements]
    if linalg.rank(rows) != profile.ambient_dim:
        return False
    for x, d in profile.jumps:
        if sum(1 for m in basis.mu_values if m >= x) != d:
            return False
    return True


def common_adapted_basis(first, second):
    """One basis adapted to two profiles over the same graded piece.

    Returns the pair of AdaptedBasis views (same elements, mu values per
    profile).  Both profiles must carry bases.
    """
    for p in (first, second):
        if p.bases is None:
            raise ProfileError("profiles must be built with bases")
    if (first.nvars, first.degree, first.ambient_dim) != \
            (second.nvars, second.degree, second.ambient_dim):
        raise InconsistentProfilesError("profiles live on different graded pieces")
    width = first.ambient_dim
    chain_f = list(first.bases)
    chain_g = list(second.bases)
    vectors = linalg.common_adapted_basis(chain_f, chain_g, width)

    def mu_of(vec, profile):
        for (x, _), level in zip(reversed(profile.jumps), reversed(profile.bases)):
            if linalg.in_span(vec, linalg.rref(level)):
                return x
        raise InconsistentProfilesError("vector outside the ambient space")

    forms = _forms_from_rows(vectors, first.nvars, first.degree)
    view_f = AdaptedBasis(forms, tuple(mu_of(v, first) for v in vectors))
    view_g = AdaptedBasis(forms, tuple(mu_of(v, second) for v in vectors))
    if not (is_adapted(view_f, first) and is_adapted(view_g, second)):
        raise InconsistentProfilesError("no common adapted basis verified; "
                                        "profiles are inconsistent")
    return view_f, view_g


@dataclass(frozen=True)
class BoundReport:
    lhs: Fraction
    rhs: Fraction
    per_subscheme: tuple
    hypotheses_met: bool

    @property
    def holds(self):
        return self.lhs >= self.rhs


def _hypotheses_met(Ys):
    """Common support nonempty and the concatenated linear generators are
    independent (a regular sequence near the common support)."""
    from . import graded as _graded
    try:
        d = _graded.common_support_dim(Ys)
    except _graded.CatalogError:
        return False
    if d is None:
        return False
    if any(g.degree != 1 for Y in Ys for g in Y.generators):
        return False
    rows = _graded._linear_rows([g for Y in Ys for g in Y.generators])
    total = sum(len(Y.generators) for Y in Ys)
    return linalg.rank(rows) == total


def concavity_bound(Ys, betas, t, N):
    """Both sides of the lower bound F(t) >= min_i (1/beta_i) sum_m h^0(I_i^m) / h^0
    under the normalization sum_i beta_i t_i = 1.

    The inequality is only asserted by callers when hypotheses_met is set;
    the report always carries both sides.
    """
    Ys, t = _validate_inputs(Ys, t, N)
    betas = tuple(Fraction(b) for b in betas)
    if len(betas) != len(Ys):
        raise ValueError("one beta per subscheme required")
    if any(b <= 0 for b in betas):
        raise ValueError("betas must be positive")
    if sum(b * w for b, w in zip(betas, t)) != 1:
        raise ValueError("weights must satisfy sum_i beta_i t_i = 1")

    lhs = F_value(build_profile(Ys, t, N))
    ambient = dim_full(N, Ys[0].nvars - 1)
    per = []
    for Y, b in zip(Ys, betas):
        total = 0
        m = 1
        while True:
            d = graded_dim_ideal_power(Y, m, N)
            if d == 0:
                break
            total += d
            m += 1
        per.append(Fraction(total, ambient) / b)
    rhs = min(per)
    return BoundReport(lhs, rhs, tuple(per), _hypotheses_met(Ys))
