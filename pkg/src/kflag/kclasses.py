"""Localized torus-equivariant K-theory classes on G/B.

A :class:`KClass` is the vector of restrictions ``[F]|_w`` to the torus-fixed
points ``e_w``, indexed by the Weyl-group index of :mod:`kflag.rootsys`.
Conventions: ``L_lambda|_w = e^{w lambda}`` and the cotangent weights at
``e_w`` are ``{w alpha : alpha > 0}``.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .charring import CharPoly, PolyRing, RatChar, rat_sum
from .errors import NonPolynomialResult
from .rootsys import RootSystem, WeylElem, build_root_system

CLASS_KINDS = ("mc", "mcprime", "schubert", "point", "line", "custom")


class FlagVariety:
    """G/B for a finite root system: coefficient ring and fixed-point data."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        r = rs.rank
        self.rank = r
        self.ring = PolyRing(tuple(f"x{i + 1}" for i in range(r)) + ("y",))
        self.size = len(rs.elements)
        self.dim = rs.num_positive_roots
        # cot[w] = (N, r) array of the weights w(alpha), alpha > 0
        self.cot = np.einsum("wij,kj->wki", rs.mats, rs.pos_weight)
        # simple_images[i, w] = w(alpha_i)
        self.simple_images = np.einsum("wij,kj->kwi", rs.mats, rs.simple_roots)
        self.two_rho_images = np.einsum("wij,j->wi", rs.mats, 2 * rs.rho)
        self._euler_data = None

    def __repr__(self):
        return f"FlagVariety({self.rs.name})"

    @property
    def name(self) -> str:
        return self.rs.name

    # -- ring helpers ---------------------------------------------------

    def char(self, weight, y_exp: int = 0, coef: int = 1) -> CharPoly:
        return self.ring.monomial(list(int(x) for x in weight) + [y_exp], coef)

    def vec(self, weight, y_exp: int = 0) -> tuple[int, ...]:
        return tuple(int(x) for x in weight) + (y_exp,)

    @property
    def y(self) -> CharPoly:
        return self.ring.gen("y")

    @property
    def one(self) -> CharPoly:
        return self.ring.one()

    # -- fixed point data -------------------------------------------------

    def element(self, w) -> WeylElem:
        """Accepts a WeylElem, an element index, or a (0-based) word tuple/list."""
        if isinstance(w, WeylElem):
            return w
        if isinstance(w, (tuple, list)):
            return self.rs.element(w)
        return self.rs.elements[int(w)]

    def cotangent_weights(self, w) -> np.ndarray:
        return self.cot[self.element(w).index]

    @cached_property
    def _point_values(self) -> list[CharPoly]:
        out = []
        for w in range(self.size):
            p = self.one
            for mu in self.cot[w]:
                p = p.mul_binomial(1, self.vec(mu))
            out.append(p)
        return out

    @cached_property
    def _lambda_y_values(self) -> list[CharPoly]:
        out = []
        for w in range(self.size):
            p = self.one
            for mu in self.cot[w]:
                p = p.mul_binomial(-1, self.vec(mu, 1))
            out.append(p)
        return out

    def point_value(self, w) -> CharPoly:
        """lambda_{-1}(T*_w X) = prod_{alpha>0} (1 - e^{w alpha})."""
        return self._point_values[self.element(w).index]

    def lambda_y_at(self, w) -> CharPoly:
        """lambda_y(w) = prod_{alpha>0} (1 + y e^{w alpha})."""
        return self._lambda_y_values[self.element(w).index]

    def euler_data(self):
        """Per point: (sign, shift) with prod_a (1 - e^{w a}) = sign * e^{shift} * P."""
        if self._euler_data is None:
            data = []
            for w in range(self.size):
                neg = [mu for mu in self.cot[w] if self.rs.root_sign(mu) < 0]
                shift = np.sum(neg, axis=0) if neg else np.zeros(self.rank, dtype=np.int64)
                data.append(((-1) ** len(neg), shift))
            self._euler_data = data
        return self._euler_data

    # -- classes ----------------------------------------------------------

    def klass(self, values, kind: str = "custom") -> "KClass":
        return KClass(self, values, kind)

    def zero_class(self) -> "KClass":
        z = RatChar(self.ring.zero())
        return KClass(self, [z] * self.size)

    def unit(self) -> "KClass":
        return KClass(self, [RatChar(self.one)] * self.size, "line")

    def point_class(self, w) -> "KClass":
        w = self.element(w).index
        z = RatChar(self.ring.zero())
        values = [z] * self.size
        values[w] = RatChar(self._point_values[w])
        return KClass(self, values, "point")

    def line_bundle(self, weight) -> "KClass":
        weight = np.asarray(weight, dtype=np.int64)
        imgs = self.rs.mats @ weight
        return KClass(self, [RatChar(self.char(m)) for m in imgs], "line")

    def lambda_y_cotangent(self) -> "KClass":
        return KClass(self, [RatChar(p) for p in self._lambda_y_values], "custom")


_FV_CACHE: dict[tuple[str, int], FlagVariety] = {}


def flag_variety(family: str, rank: int | None = None) -> FlagVariety:
    """Cached :class:`FlagVariety` for ``("A", 2)`` or ``"A2"``."""
    if rank is None:
        from .rootsys import parse_cartan

        family, rank = parse_cartan(family)
    key = (family.upper(), int(rank))
    fv = _FV_CACHE.get(key)
    if fv is None:
        fv = FlagVariety(build_root_system(*key))
        _FV_CACHE[key] = fv
    return fv


class KClass:
    """W-indexed vector of localized values."""

    __slots__ = ("fv", "values", "kind")

    def __init__(self, fv: FlagVariety, values, kind: str = "custom"):
        values = [RatChar.of(v, fv.ring) for v in values]
        if len(values) != fv.size:
            raise ValueError(f"a class on {fv.name} needs {fv.size} values, got {len(values)}")
        self.fv = fv
        self.values = tuple(values)
        self.kind = kind

    def __getitem__(self, w) -> RatChar:
        return self.values[self.fv.element(w).index]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def _check(self, other: "KClass"):
        if other.fv is not self.fv:
            raise ValueError(f"classes live on different flag varieties: {self.fv} vs {other.fv}")

    def with_kind(self, kind: str) -> "KClass":
        return KClass(self.fv, self.values, kind)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "KClass") -> "KClass":
        self._check(other)
        return KClass(self.fv, [_add(a, b) for a, b in zip(self.values, other.values)])

    def __sub__(self, other: "KClass") -> "KClass":
        self._check(other)
        return KClass(self.fv, [_add(a, -b) for a, b in zip(self.values, other.values)])

    def __neg__(self) -> "KClass":
        return KClass(self.fv, [-a for a in self.values])

    def __mul__(self, other) -> "KClass":
        """Tensor product with a class, or scalar multiplication by K_T(pt)[y]-elements."""
        if isinstance(other, KClass):
            return tensor(self, other)
        if isinstance(other, (int, CharPoly, RatChar)):
            return KClass(self.fv, [_mul(a, other) for a in self.values])
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, KClass):
            return NotImplemented
        return other.fv is self.fv and all(a == b for a, b in zip(self.values, other.values))

    __hash__ = None

    def twist(self, weight) -> "KClass":
        """Tensor with L_weight (multiply the value at w by e^{w weight})."""
        weight = np.asarray(weight, dtype=np.int64)
        imgs = self.fv.rs.mats @ weight
        out = []
        for v, m in zip(self.values, imgs):
            sh = tuple(int(x) for x in m) + (0,)
            out.append(RatChar(v.num.shift(sh), v.den))
        return KClass(self.fv, out)

    def map_values(self, fn) -> "KClass":
        return KClass(self.fv, [fn(v) for v in self.values])

    def invert_y(self) -> "KClass":
        """Substitute y -> 1/y in every value."""
        return self.map_values(lambda v: v.invert_var("y"))

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def support(self) -> list[int]:
        return [w for w, v in enumerate(self.values) if not v.is_zero()]

    def polynomial_values(self) -> list[CharPoly]:
        """All values as Laurent polynomials; raises if a denominator survives."""
        out = []
        for w, v in enumerate(self.values):
            p = v.is_polynomial()
            if p is None:
                word = _word1(self.fv.rs.elements[w].word)
                raise NonPolynomialResult(f"value at w={word} is not a Laurent polynomial")
            out.append(p)
        return out

    def is_global(self) -> bool:
        return all(v.is_polynomial() is not None for v in self.values)

    # -- basis --------------------------------------------------------

    def iota_coefficients(self) -> list[RatChar]:
        """Coefficients c_w with self = sum_w c_w iota_w (diagonal system)."""
        fv = self.fv
        out = []
        for w, v in enumerate(self.values):
            c = v
            for mu in fv.cot[w]:
                c = c.div_factor(1, fv.vec(mu))
            out.append(c)
        return out

    # -- rendering --------------------------------------------------------

    def render(self) -> str:
        rs = self.fv.rs
        lines = [f"{self.kind} class on {rs.name}"]
        for w, v in enumerate(self.values):
            lines.append(f"  w={_word_text(rs.elements[w].word)}: {v.render()}")
        return "\n".join(lines)

    def __repr__(self):
        return f"KClass({self.fv.name}, {self.kind}, {len(self.values)} values)"

    def to_json(self) -> dict:
        rs = self.fv.rs
        entries = []
        for w, v in enumerate(self.values):
            d = v.to_json()
            entries.append({"w": _word1(rs.elements[w].word), "num": d["num"], "den": d["den"]})
        return {
            "cartan": {"family": rs.family, "rank": rs.rank},
            "class_kind": self.kind,
            "values": entries,
        }

    @classmethod
    def from_json(cls, data: dict) -> "KClass":
        fv = flag_variety(data["cartan"]["family"], data["cartan"]["rank"])
        values = [None] * fv.size
        for item in data["values"]:
            w = fv.rs.element([i - 1 for i in item["w"]]).index
            values[w] = RatChar.from_json(fv.ring, {"num": item["num"], "den": item["den"]})
        if any(v is None for v in values):
            raise ValueError("JSON class is missing fixed points")
        return cls(fv, values, data.get("class_kind", "custom"))


def _word1(word) -> list[int]:
    return [i + 1 for i in word]


def _word_text(word) -> str:
    return " ".join(f"s{i + 1}" for i in word) if word else "id"


def _add(a: RatChar, b: RatChar) -> RatChar:
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    if not a.den and not b.den:
        return RatChar(a.num + b.num)
    return rat_sum([a, b])


def _mul(a: RatChar, b) -> RatChar:
    if a.is_zero():
        return a
    return a * b


# ---------------------------------------------------------------------------
# Module-level operations
# ---------------------------------------------------------------------------


def point_class(fv: FlagVariety, w) -> KClass:
    return fv.point_class(w)


def line_bundle_class(fv: FlagVariety, weight) -> KClass:
    return fv.line_bundle(weight)


def lambda_y_cotangent(fv: FlagVariety) -> KClass:
    return fv.lambda_y_cotangent()


def lambda_y_at(fv: FlagVariety, w) -> CharPoly:
    return fv.lambda_y_at(w)


def tensor(a: KClass, b: KClass) -> KClass:
    a._check(b)
    return KClass(a.fv, [_mul(x, y) if not y.is_zero() else y for x, y in zip(a.values, b.values)])


def euler_char(f: KClass) -> RatChar:
    """sum_w f_w / prod_{alpha>0} (1 - e^{w alpha}), combined over one common denominator."""
    fv = f.fv
    data = fv.euler_data()
    terms = []
    for (sign, shift), v in zip(data, f.values):
        if v.is_zero():
            continue
        sh = tuple(int(-x) for x in shift) + (0,)
        terms.append(RatChar(v.num.shift(sh) * sign, v.den))
    if not terms:
        return RatChar(fv.ring.zero())
    if all(not t.den for t in terms):
        num = terms[0].num
        if len(terms) > 1:
            num = _poly_sum([t.num for t in terms])
        total = RatChar(num)
    else:
        total = rat_sum(terms, fv.ring)
    for mu in fv.rs.pos_weight:
        total = total.div_factor(1, fv.vec(mu))
    return total


def _poly_sum(polys: list[CharPoly]) -> CharPoly:
    from . import _kernels

    ring = polys[0].ring
    coefs = [p.coefs for p in polys]
    if any(c.dtype == object for c in coefs):
        coefs = [_kernels.as_object(c) for c in coefs]
    keys, c = _kernels.combine(np.concatenate([p.keys for p in polys]), np.concatenate(coefs))
    return CharPoly(ring, keys, c)


def euler_char_polynomial(f: KClass) -> CharPoly:
    """euler_char with the assertion that the result is a Laurent polynomial."""
    chi = euler_char(f)
    p = chi.is_polynomial()
    if p is None:
        raise NonPolynomialResult(f"Euler characteristic does not clear: {chi.render()}")
    return p


def pairing(a: KClass, b: KClass) -> RatChar:
    return euler_char(tensor(a, b))


def weyl_act_class(w, f: KClass) -> KClass:
    """Left Weyl action (w.f)_u = w(f_{w^{-1} u}); in particular w.iota_u = iota_{wu}."""
    fv = f.fv
    rs = fv.rs
    w = fv.element(w)
    M = w.matrix
    winv = int(rs.inverse[w.index])
    out = []
    for u in range(fv.size):
        out.append(f.values[rs.mul_index(winv, u)].act_chars(M))
    return KClass(fv, out)


weyl_left_action = weyl_act_class
