"""Numerical exploration of the weighted proximity inequality.

A configuration fixes subschemes Y_i with weights beta_i, a finite place
set S and a slack epsilon.  The scanner walks every rational point of
bounded height and tests

    sum_i beta_i m_{Y_i, S}(p)  <=  (1 + epsilon) h(p)

with the proximity m and the height h handled multiplicatively, so the
decision is an exact integer-exponent comparison and never a float one.
Points on some Y_i have no proximity value and are skipped; points on a
configured exclusion locus are tallied separately, mirroring the role of
the exceptional closed subset in the inequality.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .graded import Subscheme, common_support_dim
from .heights import PlaceSet, ProjectivePoint, weil_norm
from .surface import (beta_closed_form, strict_transform_line, three_point_blowup,
                      weighted_lines_class)

__all__ = [
    "ConfigError",
    "InequalityConfig",
    "ScanRow",
    "ScanReport",
    "sample_points",
    "scan_inequality",
    "sigma_select",
    "four_lines",
    "four_lines_config",
    "four_lines_exclusions",
    "four_lines_table",
    "four_lines_table_csv",
]


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class InequalityConfig:
    subschemes: tuple
    betas: tuple
    places: PlaceSet
    epsilon: Fraction
    exclusions: tuple = ()
    # violations below this multiplicative height are still counted, but
    # separately; log 10 is the default floor the report binds to
    min_height_norm: int = 10

    def __post_init__(self):
        subs = tuple(self.subschemes)
        if not subs:
            raise ConfigError("need at least one subscheme")
        if len({Y.nvars for Y in subs}) != 1:
            raise ConfigError("subschemes must share one ambient space")
        betas = tuple(Fraction(b) for b in self.betas)
        if len(betas) != len(subs) or any(b <= 0 for b in betas):
            raise ConfigError("need one positive weight per subscheme")
        eps = Fraction(self.epsilon)
        if eps <= 0:
            raise ConfigError("epsilon must be positive")
        excl = tuple(self.exclusions)
        if any(Z.nvars != subs[0].nvars for Z in excl):
            raise ConfigError("exclusions must live in the same space")
        if not isinstance(self.min_height_norm, int) or self.min_height_norm < 1:
            raise ConfigError("min_height_norm must be a positive integer")
        object.__setattr__(self, "subschemes", subs)
        object.__setattr__(self, "betas", betas)
        object.__setattr__(self, "epsilon", eps)
        object.__setattr__(self, "exclusions", excl)

    @property
    def nvars(self):
        return self.subschemes[0].nvars

    def to_json(self):
        return {
            "subschemes": [Y.to_json() for Y in self.subschemes],
            "betas": [str(b) for b in self.betas],
            "places": [str(p) for p in self.places],
            "epsilon": str(self.epsilon),
            "exclusions": [Z.to_json() for Z in self.exclusions],
            "min_height_norm": self.min_height_norm,
        }

    @classmethod
    def from_json(cls, data):
        return cls(
            subschemes=tuple(Subscheme.from_json(d) for d in data["subschemes"]),
            betas=tuple(Fraction(b) for b in data["betas"]),
            places=PlaceSet.from_string(",".join(data["places"])),
            epsilon=Fraction(data["epsilon"]),
            exclusions=tuple(Subscheme.from_json(d)
                             for d in data.get("exclusions", [])),
            min_height_norm=data.get("min_height_norm", 1),
        )


@dataclass(frozen=True)
class ScanRow:
    point: str
    height_norm: int
    proximities: tuple
    lhs_log: float
    rhs_log: float
    ratio: float | None
    violated: bool

    def to_json(self):
        return {"point": self.point, "height_norm": self.height_norm,
                "proximities": list(self.proximities),
                "lhs_log": self.lhs_log, "rhs_log": self.rhs_log,
                "ratio": self.ratio, "violated": self.violated}

    @classmethod
    def from_json(cls, data):
        return cls(data["point"], data["height_norm"],
                   tuple(data["proximities"]), data["lhs_log"],
                   data["rhs_log"], data["ratio"], data["violated"])


@dataclass(frozen=True)
class ScanReport:
    total: int
    skipped: int
    excluded: int
    evaluated: int
    zero_height: int
    low_height_hits: int
    violations: tuple
    max_ratio_row: ScanRow | None = None
    rows: tuple | None = None

    def __post_init__(self):
        if self.skipped + self.excluded + self.evaluated != self.total:
            raise ValueError("scan counters do not add up")

    @property
    def clean(self):
        return not self.violations

    def to_json(self):
        data = {
            "total": self.total,
            "skipped": self.skipped,
            "excluded": self.excluded,
            "evaluated": self.evaluated,
            "zero_height": self.zero_height,
            "low_height_hits": self.low_height_hits,
            "violations": [r.to_json() for r in self.violations],
            "max_ratio_row": None if self.max_ratio_row is None
            else self.max_ratio_row.to_json(),
        }
        if self.rows is not None:
            data["rows"] = [r.to_json() for r in self.rows]
        return data

    @classmethod
    def from_json(cls, data):
        rows = data.get("rows")
        best = data.get("max_ratio_row")
        return cls(data["total"], data["skipped"], data["excluded"],
                   data["evaluated"], data["zero_height"],
                   data["low_height_hits"],
                   tuple(ScanRow.from_json(r) for r in data["violations"]),
                   None if best is None else ScanRow.from_json(best),
                   None if rows is None else tuple(ScanRow.from_json(r)
                                                   for r in rows))

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["point", "height_norm", "proximities",
                         "lhs_log", "rhs_log", "ratio", "violated"])
        for r in (self.rows if self.rows is not None else self.violations):
            writer.writerow([r.point, r.height_norm,
                             ";".join("%.12g" % p for p in r.proximities),
                             "%.12g" % r.lhs_log, "%.12g" % r.rhs_log,
                             "" if r.ratio is None else "%.12g" % r.ratio,
                             int(r.violated)])
        return buf.getvalue()


def sample_points(n, bound):
    """Every point of P^n over the rationals whose canonical integer
    coordinates lie in [-bound, bound], in lexicographic order.

    Exactly the tuples with coprime entries and positive leading nonzero
    entry, so each point appears once.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError("projective dimension must be a positive integer")
    if not isinstance(bound, int) or bound < 1:
        raise ValueError("coordinate bound must be a positive integer")
    out = []
    for tup in itertools.product(range(-bound, bound + 1), repeat=n + 1):
        lead = next((c for c in tup if c != 0), 0)
        if lead <= 0:
            continue
        if math.gcd(*tup) != 1:
            continue
        out.append(tup)
    return out


def scan_inequality(config, bound=None, points=None, keep_rows=False):
    """Test the weighted inequality at every sample point; exact decisions.

    Either a coordinate bound or an explicit point list must be given.
    """
    if points is None:
        if bound is None:
            raise ValueError("need a coordinate bound or explicit points")
        points = sample_points(config.nvars - 1, bound)

    # clear the denominators once: compare prod_i Q_i^(d beta_i) with
    # H^(d (1+eps)) in integers
    one_plus_eps = 1 + config.epsilon
    d = math.lcm(one_plus_eps.denominator,
                 *(b.denominator for b in config.betas))
    exps = [int(d * b) for b in config.betas]
    rhs_exp = int(d * one_plus_eps)
    places = tuple(config.places)
    log_betas = [float(b) for b in config.betas]

    total = skipped = excluded = evaluated = zero_height = 0
    violations = []
    low_hits = []
    rows = [] if keep_rows else None
    best = None
    best_ratio = None
    for tup in points:
        total += 1
        coords = tup.coords if isinstance(tup, ProjectivePoint) else tuple(tup)
        if any(Y.vanishes_at(coords) for Y in config.subschemes):
            skipped += 1
            continue
        if any(Z.vanishes_at(coords) for Z in config.exclusions):
            excluded += 1
            continue
        evaluated += 1
        P = ProjectivePoint.from_canonical(coords)
        H = max(abs(c) for c in coords)
        if H == 1:
            zero_height += 1
        lhs_exact = Fraction(1)
        lhs_log = 0.0
        proxim = []
        for Y, e, lb in zip(config.subschemes, exps, log_betas):
            q = Fraction(1)
            for place in places:
                q *= weil_norm(Y, P, place)
            lhs_exact *= q ** e
            m = math.log(q)
            proxim.append(m)
            lhs_log += lb * m
        rhs_exact = Fraction(H) ** rhs_exp
        violated = lhs_exact > rhs_exact
        rhs_log = float(one_plus_eps) * math.log(H)
        ratio = lhs_log / rhs_log if H > 1 else None
        track = violated or keep_rows or (ratio is not None and
                                          (best_ratio is None or ratio > best_ratio))
        if track:
            row = ScanRow(":".join(str(c) for c in coords), H, tuple(proxim),
                          lhs_log, rhs_log, ratio, violated)
            if violated:
                if H >= config.min_height_norm:
                    violations.append(row)
                else:
                    low_hits.append(row)
            if ratio is not None and (best_ratio is None or ratio > best_ratio):
                best = row
                best_ratio = ratio
            if keep_rows:
                rows.append(row)
    return ScanReport(total, skipped, excluded, evaluated, zero_height,
                      len(low_hits), tuple(violations), best,
                      None if rows is None else tuple(rows))


def sigma_select(Ys, values):
    """Indices of the longest prefix, after sorting by value descending,
    whose supports still share a common point.

    Ties break by original index.  This mirrors picking, at a given point,
    the subschemes it is closest to, as many as can meet simultaneously.
    """
    Ys = list(Ys)
    if len(values) != len(Ys):
        raise ValueError("need one value per subscheme")
    order = sorted(range(len(Ys)), key=lambda i: (-Fraction(values[i]), i))
    selected = []
    for i in order:
        trial = selected + [i]
        if common_support_dim([Ys[j] for j in trial]) is None:
            break
        selected = trial
    return tuple(selected)


def four_lines():
    """Four lines of the plane in general position: the coordinate
    triangle and the unit line."""
    return (
        Subscheme.from_strings("L1", ["x0"], nvars=3),
        Subscheme.from_strings("L2", ["x1"], nvars=3),
        Subscheme.from_strings("L3", ["x2"], nvars=3),
        Subscheme.from_strings("L4", ["x0 + x1 + x2"], nvars=3),
    )


def four_lines_exclusions():
    """The three diagonal lines through opposite intersection points; the
    locus the inequality is allowed to ignore."""
    return (
        Subscheme.from_strings("D12", ["x0 + x1"], nvars=3),
        Subscheme.from_strings("D13", ["x0 + x2"], nvars=3),
        Subscheme.from_strings("D23", ["x1 + x2"], nvars=3),
    )


def four_lines_config(epsilon=Fraction(1, 2), places="inf,2,3,5",
                      min_height_norm=10):
    """Weighted inequality data for the four-line configuration; each line
    carries its exact expansion weight 1/3."""
    return InequalityConfig(
        subschemes=four_lines(),
        betas=(Fraction(1, 3),) * 4,
        places=PlaceSet.from_string(places) if isinstance(places, str) else places,
        epsilon=Fraction(epsilon),
        exclusions=four_lines_exclusions(),
        min_height_norm=min_height_norm,
    )


@dataclass(frozen=True)
class FourLinesRow:
    l: int
    A_self: Fraction
    A_dot_D: Fraction
    xi: Fraction
    beta: Fraction
    epsilon: Fraction
    seshadri_side: Fraction
    beta_lower: Fraction


def four_lines_table(l_max):
    """Weighted-line classes on the three-point blow-up: closed-form
    expansion value against the Seshadri side, one row per weight l."""
    if not isinstance(l_max, int) or l_max < 1:
        raise ValueError("l_max must be a positive integer")
    model = three_point_blowup()
    D = strict_transform_line(1)
    rows = []
    for l in range(1, l_max + 1):
        A = weighted_lines_class(l)
        cf = beta_closed_form(model, A, D)
        eps = model.seshadri(A, D)
        rows.append(FourLinesRow(l, cf.A_self, cf.A_dot_D, cf.xi, cf.beta,
                                 eps, Fraction(l, 3), Fraction(3 * l, 4)))
    return rows


def four_lines_table_csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["l", "A_self", "A_dot_D", "xi", "beta",
                     "epsilon", "seshadri_side", "beta_lower"])
    for r in rows:
        writer.writerow([r.l, str(r.A_self), str(r.A_dot_D), str(r.xi),
                         str(r.beta), str(r.epsilon), str(r.seshadri_side),
                         str(r.beta_lower)])
    return buf.getvalue()
