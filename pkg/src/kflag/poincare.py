"""Poincaré polynomials from torus-fixed-point data.

Fixed-point data of a G_m-action: for each fixed point p the cell dimension
l(p) and the multiset N(p) of cotangent weights. For a Schubert variety X(w)
the data at e_v is l(v) and {ht(v(beta)) : beta > 0, v s_beta <= w}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .charring import Q_RING, QY_RING, CharPoly, DenFactor, RatChar, rat_sum
from .errors import ConditionStarViolated, MismatchError
from .rootsys import RootSystem, WeylElem


@dataclass(frozen=True)
class BBPoint:
    label: str
    cell_dim: int
    weights: tuple[int, ...]


@dataclass(frozen=True)
class BBFixedPointData:
    dim: int
    points: tuple[BBPoint, ...]

    def validate(self):
        """Check the fixed-point data invariants; raises ValueError."""
        for p in self.points:
            if len(p.weights) != self.dim:
                raise ValueError(
                    f"point {p.label!r} has {len(p.weights)} weights, expected dim = {self.dim}"
                )
            if 0 in p.weights:
                raise ValueError(f"point {p.label!r} has a zero weight")
        minimal = [p for p in self.points if all(n > 0 for n in p.weights)]
        if len(minimal) != 1:
            raise ValueError(f"expected exactly one point with all weights positive, found {len(minimal)}")
        return self

    @property
    def minimal_point(self) -> BBPoint:
        for p in self.points:
            if all(n > 0 for n in p.weights):
                return p
        raise ValueError("no point with all weights positive")

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "points": [
                {"label": p.label, "cell_dim": p.cell_dim, "weights": list(p.weights)}
                for p in self.points
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "BBFixedPointData":
        points = tuple(
            BBPoint(str(p["label"]), int(p["cell_dim"]), tuple(int(n) for n in p["weights"]))
            for p in data["points"]
        )
        return cls(int(data["dim"]), points)


def load_fixture(path_or_name: str) -> BBFixedPointData:
    """Load fixed-point data from a JSON file, or a bundled fixture by name ('P1', 'P2')."""
    path = Path(path_or_name)
    if path.exists():
        text = path.read_text()
    else:
        text = resources.files("kflag.data").joinpath(f"{path_or_name.lower()}.json").read_text()
    return BBFixedPointData.from_json(json.loads(text))


def schubert_bb_data(rs: RootSystem, w: WeylElem) -> BBFixedPointData:
    """Fixed-point data of X(w) for the principal G_m inside T."""
    points = []
    bruhat = rs.bruhat_matrix
    refl = rs.reflection_index
    for v in np.flatnonzero(bruhat[:, w.index]):
        v = int(v)
        weights = []
        for k, beta in enumerate(rs.pos_weight):
            vsb = rs.mul_index(v, int(refl[k]))
            if bruhat[vsb, w.index]:
                weights.append(rs.weight_height(rs.mats[v] @ beta))
        word = rs.elements[v].word
        label = " ".join(f"s{i + 1}" for i in word) if word else "id"
        points.append(BBPoint(label, int(rs.lengths[v]), tuple(sorted(weights))))
    return BBFixedPointData(int(rs.lengths[w.index]), tuple(points))


def condition_star(data: BBFixedPointData) -> bool:
    """Every point other than the minimal one carries the weight -1."""
    return all(-1 in p.weights for p in data.points if not all(n > 0 for n in p.weights))


# ---------------------------------------------------------------------------
# Polynomials in q
# ---------------------------------------------------------------------------


def q_power(k: int) -> CharPoly:
    return Q_RING.monomial([k])


def poincare_bruhat(rs: RootSystem, w: WeylElem) -> CharPoly:
    """sum_{v <= w} q^{l(v)}."""
    lengths = rs.lengths[rs.bruhat_matrix[:, w.index]]
    counts = np.bincount(lengths)
    return CharPoly.from_terms(Q_RING, [((k,), int(c)) for k, c in enumerate(counts) if c])


def height_product(heights) -> RatChar:
    """prod (1 - q^{h+1}) / (1 - q^h) over the given positive heights."""
    num = Q_RING.one()
    for h in heights:
        num = num.mul_binomial(1, (h + 1,))
    out = RatChar(num)
    for h in heights:
        out = out.div_factor(1, (h,))
    return out.reduce()


def poincare_product(rs: RootSystem, w: WeylElem) -> RatChar:
    """prod_{beta > 0, s_beta <= w} (1 - q^{ht beta + 1}) / (1 - q^{ht beta})."""
    return height_product([int(rs.heights[k]) for k in rs.reflection_indices_leq(w)])


def is_palindromic(p: CharPoly) -> bool:
    if p.is_zero():
        return True
    lo, hi = p.degree_range("q")
    d = p.to_dict()
    return all(d.get((k,), 0) == d.get((lo + hi - k,), 0) for k in range(lo, hi + 1))


def is_rationally_smooth(rs: RootSystem, w: WeylElem) -> bool:
    """Palindromicity of the lower Bruhat interval's rank generating function."""
    return is_palindromic(poincare_bruhat(rs, w))


# ---------------------------------------------------------------------------
# The fixed-point theorem
# ---------------------------------------------------------------------------


def _e2_term(weights) -> RatChar:
    """prod (1 + y q^n) / (1 - q^n), with denominators normalised without trial division."""
    num = QY_RING.one()
    for n in weights:
        num = num.mul_binomial(-1, (n, 1))
    den: dict[DenFactor, int] = {}
    sign, shift = 1, 0
    for n in weights:
        if n < 0:
            # 1 - q^n = -q^n (1 - q^-n)
            sign, shift = -sign, shift + n
        f = DenFactor((abs(n), 0), 1)
        den[f] = den.get(f, 0) + 1
    return RatChar(num.shift((-shift, 0)) * sign, den.items())


def q_to_minus_y(p: CharPoly) -> CharPoly:
    """Substitute q -> -y in a polynomial in (q, y)."""
    return p.monomial_map(QY_RING, [[0, 0], [1, 1]], signs=[-1, 1])


def _y_poly(coeffs_by_power: dict[int, int]) -> CharPoly:
    return CharPoly.from_terms(QY_RING, [((0, k), c) for k, c in coeffs_by_power.items() if c])


@dataclass
class BBReport:
    """Outcome of the product-formula checks on one set of fixed-point data."""

    label: str
    applicable: bool
    condition_star: bool
    bruhat_sum: CharPoly | None = None
    product: RatChar | None = None
    sum_equals_product: bool | None = None
    e2_sum: RatChar | None = None
    e2_expected: CharPoly | None = None
    e2_equals_point_count: bool | None = None
    nonminimal_terms_vanish: bool | None = None
    failing_points: list[str] = field(default_factory=list)
    error: str | None = None

    @property
    def passed(self) -> bool:
        return bool(
            self.applicable
            and self.sum_equals_product
            and self.e2_equals_point_count
            and self.nonminimal_terms_vanish
        )

    def raise_for_failure(self):
        if not self.condition_star:
            raise ConditionStarViolated(f"{self.label}: a non-minimal point lacks the weight -1")
        if not self.applicable:
            raise ValueError(f"{self.label}: {self.error}")
        if not self.passed:
            raise MismatchError(f"{self.label}: product formula checks failed")

    def to_json(self) -> dict:
        def js(x):
            return None if x is None else x.to_json()

        return {
            "label": self.label,
            "applicable": self.applicable,
            "condition_star": self.condition_star,
            "bruhat_sum": js(self.bruhat_sum),
            "product": js(self.product),
            "sum_equals_product": self.sum_equals_product,
            "e2_sum": js(self.e2_sum),
            "e2_expected": js(self.e2_expected),
            "e2_equals_point_count": self.e2_equals_point_count,
            "nonminimal_terms_vanish": self.nonminimal_terms_vanish,
            "failing_points": self.failing_points,
            "passed": self.passed,
            "error": self.error,
        }


def bb_product_check(data: BBFixedPointData, label: str = "data") -> BBReport:
    """(i) sum q^{l(p)} = prod (1-q^{n+1})/(1-q^n) at the minimal point;
    (ii) the localization sum of lambda_y equals sum (-y)^{l(p)};
    (iii) every non-minimal localization term vanishes at q = -y."""
    try:
        data.validate()
    except ValueError as exc:
        return BBReport(label, False, False, error=str(exc))
    star = condition_star(data)
    if not star:
        return BBReport(label, False, False, error="condition (✠) fails")
    report = BBReport(label, True, True)
    counts: dict[int, int] = {}
    for p in data.points:
        counts[p.cell_dim] = counts.get(p.cell_dim, 0) + 1
    report.bruhat_sum = CharPoly.from_terms(Q_RING, [((k,), c) for k, c in counts.items()])
    report.product = height_product(data.minimal_point.weights)
    report.sum_equals_product = report.product == report.bruhat_sum

    terms = [_e2_term(p.weights) for p in data.points]
    report.e2_sum = rat_sum(terms, QY_RING)
    report.e2_expected = _y_poly({k: c * (-1) ** k for k, c in counts.items()})
    report.e2_equals_point_count = report.e2_sum == report.e2_expected

    minimal = data.minimal_point
    for p, term in zip(data.points, terms):
        if p is minimal:
            continue
        if not q_to_minus_y(term.num).is_zero():
            report.failing_points.append(p.label)
    report.nonminimal_terms_vanish = not report.failing_points
    return report


def poincare_report(rs: RootSystem, w: WeylElem) -> dict:
    """Bruhat sum, product formula and smoothness label for X(w)."""
    bruhat = poincare_bruhat(rs, w)
    smooth = is_rationally_smooth(rs, w)
    out = {"bruhat_sum": bruhat, "rationally_smooth": smooth, "product": None, "equal": None}
    if smooth:
        prod = poincare_product(rs, w)
        out["product"] = prod
        out["equal"] = prod == bruhat
    return out
