"""Exact Laurent polynomials with factored binomial denominators.

A :class:`CharPoly` lives in ``Z[x_1^{+-1}, ..., x_n^{+-1}]`` for a
:class:`PolyRing` with named variables. For a root system of rank r the ring
is ``x1..xr, y`` where ``xi = e^{varpi_i}``. Monomials are packed into single
int64 keys (one biased bit-field per variable, first variable most
significant), so ascending key order is lexicographic exponent order.

A :class:`RatChar` is a numerator over a multiset of factors
``(1 - c x^v)``, ``c = +-1``, with ``v`` normalised to have positive first
nonzero entry. No gcd is ever taken: equality is cross-multiplication.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .errors import DivisionByZero, SpecializationError

_TOTAL_BITS = 62


class PolyRing:
    """Laurent polynomial ring over Z with named variables."""

    _instances: dict[tuple[str, ...], "PolyRing"] = {}

    def __new__(cls, names):
        names = tuple(names)
        ring = cls._instances.get(names)
        if ring is None:
            ring = super().__new__(cls)
            ring._setup(names)
            cls._instances[names] = ring
        return ring

    def _setup(self, names):
        if not names:
            raise ValueError("a ring needs at least one variable")
        self.names = names
        self.nvars = len(names)
        self.bits = _TOTAL_BITS // self.nvars
        self.bias = 1 << (self.bits - 1)
        self.mask = (1 << self.bits) - 1
        self.shifts = np.array(
            [self.bits * (self.nvars - 1 - f) for f in range(self.nvars)], dtype=np.int64
        )
        self.zero_key = int(sum(self.bias << int(s) for s in self.shifts))
        self._offsets: dict[tuple[int, ...], int] = {}

    def __repr__(self):
        return f"PolyRing({', '.join(self.names)})"

    def offset(self, exps: tuple[int, ...]) -> int:
        """Key difference corresponding to multiplication by x^exps."""
        out = self._offsets.get(exps)
        if out is None:
            out = sum(int(e) << int(sh) for e, sh in zip(exps, self.shifts))
            self._offsets[exps] = out
        return out

    def __reduce__(self):
        return (PolyRing, (self.names,))

    def index(self, name: str) -> int:
        return self.names.index(name)

    def pack(self, exps: np.ndarray) -> np.ndarray:
        exps = np.asarray(exps, dtype=np.int64).reshape(-1, self.nvars)
        if exps.size and np.abs(exps).max() >= self.bias:
            raise OverflowError(f"exponent out of range +-{self.bias - 1} for {self!r}")
        return ((exps + self.bias) << self.shifts).sum(axis=1)

    def unpack(self, keys: np.ndarray) -> np.ndarray:
        return ((keys[:, None] >> self.shifts) & self.mask) - self.bias

    # constructors
    def zero(self) -> "CharPoly":
        return CharPoly(self, _EMPTY_K, _EMPTY_C, 0)

    def one(self) -> "CharPoly":
        return self.monomial([0] * self.nvars)

    def monomial(self, exps, coef=1) -> "CharPoly":
        return CharPoly.from_terms(self, [(exps, coef)])

    def gen(self, name: str) -> "CharPoly":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return self.monomial(e)


_EMPTY_K = np.zeros(0, dtype=np.int64)
_EMPTY_C = np.zeros(0, dtype=np.int64)


class CharPoly:
    """Immutable sparse Laurent polynomial with integer coefficients."""

    __slots__ = ("ring", "keys", "coefs", "_span")

    def __init__(self, ring: PolyRing, keys, coefs, span=None):
        # keys sorted ascending, unique; coefs nonzero
        self.ring = ring
        self.keys = keys
        self.coefs = coefs
        self._span = span

    # -- construction ---------------------------------------------------

    @classmethod
    def from_terms(cls, ring: PolyRing, terms) -> "CharPoly":
        """Build from an iterable of ``(exponent vector, coefficient)`` or a dict."""
        if isinstance(terms, dict):
            terms = terms.items()
        terms = [(tuple(int(x) for x in e), int(c)) for e, c in terms]
        if not terms:
            return ring.zero()
        exps = np.array([e for e, _ in terms], dtype=np.int64).reshape(-1, ring.nvars)
        coefs = [c for _, c in terms]
        if max(abs(c) for c in coefs) < _kernels.LIMIT:
            carr = np.array(coefs, dtype=np.int64)
        else:
            carr = np.array(coefs, dtype=object)
        keys, carr = _kernels.combine(ring.pack(exps), carr)
        return cls(ring, keys, carr)

    @classmethod
    def from_arrays(cls, ring: PolyRing, exps: np.ndarray, coefs: np.ndarray) -> "CharPoly":
        keys, coefs = _kernels.combine(ring.pack(exps), coefs)
        return cls(ring, keys, coefs)

    # -- basic queries --------------------------------------------------

    @property
    def span(self) -> int:
        """Largest absolute exponent (exact when known, else a safe bound)."""
        if self._span is None:
            self._span = int(np.abs(self.exps).max()) if self.keys.size else 0
        return self._span

    def _exact_span(self) -> int:
        self._span = None
        return self.span

    @property
    def exps(self) -> np.ndarray:
        return self.ring.unpack(self.keys)

    def __len__(self):
        return len(self.keys)

    def is_zero(self) -> bool:
        return self.keys.size == 0

    def is_monomial(self) -> bool:
        return self.keys.size == 1

    def terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms sorted lexicographically by exponent vector."""
        return [
            (tuple(int(x) for x in e), int(c)) for e, c in zip(self.exps, self.coefs)
        ]

    def to_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.terms())

    def constant(self) -> int | None:
        """The value if the polynomial is a constant, else None."""
        if self.is_zero():
            return 0
        if self.keys.size == 1 and self.keys[0] == self.ring.zero_key:
            return int(self.coefs[0])
        return None

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.one() * other
        if not isinstance(other, CharPoly):
            return NotImplemented
        return (
            self.ring is other.ring
            and np.array_equal(self.keys, other.keys)
            and all(int(a) == int(b) for a, b in zip(self.coefs, other.coefs))
        )

    def __hash__(self):
        return hash((self.ring.names, self.keys.tobytes(), tuple(int(c) for c in self.coefs)))

    def __repr__(self):
        return f"CharPoly({self.render()})"

    def __str__(self):
        return self.render()

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other) -> "CharPoly":
        if isinstance(other, CharPoly):
            if other.ring is not self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, np.integer)):
            return self.ring.one() * int(other) if other else self.ring.zero()
        raise TypeError(f"cannot combine CharPoly with {type(other).__name__}")

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        keys, coefs = _kernels.add_sorted(self.keys, self.coefs, other.keys, other.coefs)
        return CharPoly(self.ring, keys, coefs, _max_span(self._span, other._span))

    __radd__ = __add__

    def __neg__(self):
        return CharPoly(self.ring, self.keys, -self.coefs, self._span)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            other = int(other)
            if other == 0:
                return self.ring.zero()
            coefs = self.coefs
            if coefs.dtype != object and _kernels.maxabs(coefs) * abs(other) >= _kernels.LIMIT:
                coefs = _kernels.as_object(coefs)
            return CharPoly(self.ring, self.keys, coefs * other, self._span)
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.ring.zero()
        if other.is_monomial():
            return self.shift(other.exps[0]) * int(other.coefs[0])
        if self.is_monomial():
            return other.shift(self.exps[0]) * int(self.coefs[0])
        span = self.span + other.span
        if span >= self.ring.bias:
            span = self._exact_span() + other._exact_span()
            if span >= self.ring.bias:
                raise OverflowError("product exponents leave the packed range")
        keys, coefs = _kernels.mul(self.keys, self.coefs, other.keys, other.coefs, self.ring.zero_key)
        return CharPoly(self.ring, keys, coefs, span)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if self.is_monomial() and abs(int(self.coefs[0])) == 1:
                inv = CharPoly.from_arrays(self.ring, -self.exps, self.coefs.copy())
                return inv ** (-n)
            raise ValueError("only unit monomials have negative powers")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, exps) -> "CharPoly":
        """Multiply by the monomial x^exps."""
        e = tuple(int(x) for x in exps)
        if self.is_zero() or not any(e):
            return self
        ring = self.ring
        step = max(abs(x) for x in e)
        span = self.span + step
        if span >= ring.bias:
            span = self._exact_span() + step
            if span >= ring.bias:
                raise OverflowError("shifted exponents leave the packed range")
        return CharPoly(ring, self.keys + ring.offset(e), self.coefs, span)

    def mul_binomial(self, c: int, v) -> "CharPoly":
        """Multiply by (1 - c x^v)."""
        return self - self.shift(v) * c

    def div_binomial(self, c: int, v) -> "CharPoly | None":
        """Exact quotient by (1 - c x^v), or None. ``v`` must be normalised."""
        if self.is_zero():
            return self
        ring = self.ring
        v = tuple(int(x) for x in v)
        j = next(k for k, x in enumerate(v) if x)
        # key arithmetic stays linear while every line base is inside the packed range
        if self.span * (1 + max(abs(x) for x in v)) < ring.bias:
            res = _kernels.div_binomial_keys(
                self.keys, self.coefs, int(ring.shifts[j]), ring.mask, ring.bias,
                v[j], ring.offset(v), c,
            )
            if res is None:
                return None
            return CharPoly(ring, res[0], res[1], self._span)
        res = _kernels.div_binomial(self.exps, self.coefs, np.asarray(v, dtype=np.int64), c)
        if res is None:
            return None
        exps, coefs = res
        keys = self.ring.pack(exps)
        order = np.argsort(keys, kind="stable")
        return CharPoly(self.ring, keys[order], coefs[order], self._span)

    def exact_div(self, other: "CharPoly") -> "CharPoly | None":
        """Exact quotient by an arbitrary nonzero Laurent polynomial, or None."""
        if other.is_zero():
            raise DivisionByZero("division by the zero polynomial")
        if self.is_zero():
            return self
        if other.is_monomial():
            c = int(other.coefs[0])
            if any(int(x) % c for x in self.coefs):
                return None
            sh = self.shift(-other.exps[0])
            return CharPoly(self.ring, sh.keys, _floordiv(sh.coefs, c), sh._span)
        # lexicographic long division from the top term
        g_exps = other.exps
        g_lead = g_exps[-1]
        g_lc = int(other.coefs[-1])
        lo = self.exps.min(axis=0) - g_exps.max(axis=0)
        hi = self.exps.max(axis=0) - g_exps.min(axis=0)
        rem = self
        quotient = {}
        while not rem.is_zero():
            e = rem.exps[-1] - g_lead
            c = int(rem.coefs[-1])
            if c % g_lc or (e < lo).any() or (e > hi).any():
                return None
            q = c // g_lc
            quotient[tuple(int(x) for x in e)] = q
            rem = rem - other.shift(e) * q
        return CharPoly.from_terms(self.ring, quotient)

    # -- exponent maps --------------------------------------------------

    def monomial_map(self, ring: PolyRing, matrix, signs=None) -> "CharPoly":
        """Substitute x^e -> s^e * z^(matrix @ e); ``signs`` is a +-1 vector s or None."""
        if self.is_zero():
            return ring.zero()
        M = np.asarray(matrix, dtype=np.int64)
        exps = self.exps
        new = exps @ M.T
        coefs = self.coefs
        if signs is not None:
            odd = (exps[:, np.asarray(signs) < 0].sum(axis=1) % 2) == 1
            coefs = np.where(odd, -coefs, coefs).astype(coefs.dtype)
        return CharPoly.from_arrays(ring, new, coefs)

    def act_chars(self, M) -> "CharPoly":
        """Apply an integer matrix to the character part (all variables but the last)."""
        n = self.ring.nvars
        full = np.eye(n, dtype=np.int64)
        full[: n - 1, : n - 1] = M
        return self.monomial_map(self.ring, full)

    def dual(self) -> "CharPoly":
        """x^e -> x^-e for every variable."""
        return self.monomial_map(self.ring, -np.eye(self.ring.nvars, dtype=np.int64))

    def invert_var(self, name: str) -> "CharPoly":
        M = np.eye(self.ring.nvars, dtype=np.int64)
        k = self.ring.index(name)
        M[k, k] = -1
        return self.monomial_map(self.ring, M)

    def substitute_unit(self, name: str, value: int) -> "CharPoly":
        """Set a variable to +1 or -1."""
        if value not in (1, -1):
            raise ValueError("only unit specialisations keep Laurent polynomials exact")
        k = self.ring.index(name)
        M = np.eye(self.ring.nvars, dtype=np.int64)
        M[k, k] = 0
        signs = np.ones(self.ring.nvars, dtype=np.int64)
        signs[k] = value
        return self.monomial_map(self.ring, M, signs)

    def degree_range(self, name: str) -> tuple[int, int] | None:
        """(min, max) exponent of one variable; None for the zero polynomial."""
        if self.is_zero():
            return None
        col = self.exps[:, self.ring.index(name)]
        return int(col.min()), int(col.max())

    # -- rendering ------------------------------------------------------

    def render(self) -> str:
        """Canonical text form, highest lexicographic term first."""
        if self.is_zero():
            return "0"
        out = []
        names = self.ring.names
        for exps, c in reversed(self.terms()):
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e != 0
            )
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            out.append((sign, body))
        first_sign, first = out[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    def to_json(self) -> dict:
        return {"terms": [{"exp": list(e), "coef": str(c)} for e, c in self.terms()]}

    @classmethod
    def from_json(cls, ring: PolyRing, data: dict) -> "CharPoly":
        return cls.from_terms(ring, [(t["exp"], int(t["coef"])) for t in data["terms"]])


def _max_span(a, b):
    return None if a is None or b is None else max(a, b)


def _floordiv(coefs, c):
    if coefs.dtype == object:
        return np.array([int(x) // c for x in coefs], dtype=object)
    return coefs // c


def char_monomial(ring: PolyRing, weight, y_exp: int = 0) -> CharPoly:
    """e^weight * y^y_exp in a ring whose last variable is y."""
    return ring.monomial(list(weight) + [y_exp])


# ---------------------------------------------------------------------------
# Denominator factors and rational characters
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class DenFactor:
    """The factor ``1 - c * x^v`` with v normalised (first nonzero entry positive)."""

    vec: tuple[int, ...]
    c: int = 1

    @property
    def mu(self) -> tuple[int, ...]:
        """Character part of the exponent (drops the trailing y exponent)."""
        return self.vec[:-1]

    @property
    def y_exp(self) -> int:
        return self.vec[-1]

    def as_poly(self, ring: PolyRing) -> CharPoly:
        return ring.one() - ring.monomial(self.vec) * self.c


def normalize_factor(c: int, vec) -> tuple[int, tuple[int, ...], DenFactor]:
    """Write ``1 - c x^v`` as ``sign * x^shift * (normalised factor)``."""
    return _normalize_factor(int(c), tuple(int(x) for x in vec))


@lru_cache(maxsize=None)
def _normalize_factor(c: int, vec: tuple[int, ...]) -> tuple[int, tuple[int, ...], DenFactor]:
    if not any(vec):
        raise DivisionByZero("1 - c*x^0 is constant; not an admissible factor")
    lead = next(x for x in vec if x)
    if lead > 0:
        return 1, (0,) * len(vec), DenFactor(vec, c)
    # 1 - c x^v = (-c x^v)(1 - c x^-v)
    return -c, vec, DenFactor(tuple(-x for x in vec), c)


class RatChar:
    """numerator / prod (1 - c x^v)^m over a :class:`PolyRing`."""

    __slots__ = ("num", "den")

    def __init__(self, num: CharPoly, den=()):
        self.num = num
        # tuple of (DenFactor, multiplicity), sorted
        self.den = tuple(sorted((f, m) for f, m in den if m > 0)) if den else ()

    @property
    def ring(self) -> PolyRing:
        return self.num.ring

    @classmethod
    def of(cls, x, ring: PolyRing | None = None) -> "RatChar":
        if isinstance(x, RatChar):
            return x
        if isinstance(x, CharPoly):
            return cls(x)
        if ring is None:
            raise TypeError("ring required to coerce a scalar")
        return cls(ring.one() * int(x))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def den_poly(self) -> CharPoly:
        out = self.ring.one()
        for f, m in self.den:
            for _ in range(m):
                out = out.mul_binomial(f.c, f.vec)
        return out

    # -- arithmetic -----------------------------------------------------

    def reduce(self) -> "RatChar":
        """Cancel every denominator factor that divides the numerator exactly."""
        if not self.den:
            return self
        if self.num.is_zero():
            return RatChar(self.num)
        num = self.num
        kept = []
        for f, m in self.den:
            left = m
            while left:
                q = num.div_binomial(f.c, f.vec)
                if q is None:
                    break
                num = q
                left -= 1
            if left:
                kept.append((f, left))
        return RatChar(num, kept)

    def div_factor(self, c: int, vec, mult: int = 1) -> "RatChar":
        """Divide by ``(1 - c x^vec)^mult``; exact division is attempted first."""
        sign, shift, f = normalize_factor(c, vec)
        num = self.num
        if mult % 2 and sign < 0:
            num = -num
        if any(shift):
            num = num.shift([-mult * s for s in shift])
        den = dict(self.den)
        left = mult
        while left:
            q = num.div_binomial(f.c, f.vec)
            if q is None:
                break
            num = q
            left -= 1
        if left:
            den[f] = den.get(f, 0) + left
        return RatChar(num, den.items())

    def __mul__(self, other):
        if isinstance(other, (int, CharPoly)):
            out = RatChar(self.num * other, self.den)
            return out.reduce() if self.den else out
        if not isinstance(other, RatChar):
            return NotImplemented
        den = dict(self.den)
        for f, m in other.den:
            den[f] = den.get(f, 0) + m
        return RatChar(self.num * other.num, den.items()).reduce()

    __rmul__ = __mul__

    def __neg__(self):
        return RatChar(-self.num, self.den)

    def __add__(self, other):
        if isinstance(other, (int, CharPoly)):
            other = RatChar.of(other, self.ring)
        if not isinstance(other, RatChar):
            return NotImplemented
        return rat_sum([self, other])

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, CharPoly)):
            other = RatChar.of(other, self.ring)
        if not isinstance(other, RatChar):
            return NotImplemented
        return rat_sum([self, -other])

    def __rsub__(self, other):
        return (-self) + other

    def divide_by_factors(self, factors) -> "RatChar":
        """Divide by prod of (c, vec) binomials."""
        out = self
        for c, vec in factors:
            out = out.div_factor(c, vec)
        return out

    def __eq__(self, other):
        if isinstance(other, (int, CharPoly)):
            other = RatChar.of(other, self.ring)
        if not isinstance(other, RatChar):
            return NotImplemented
        if not self.den and not other.den:
            return self.num == other.num
        a = dict(self.den)
        b = dict(other.den)
        lhs = self.num
        rhs = other.num
        for f in set(a) | set(b):
            d = a.get(f, 0) - b.get(f, 0)
            # multiply the side with fewer copies of f
            for _ in range(max(d, 0)):
                rhs = rhs.mul_binomial(f.c, f.vec)
            for _ in range(max(-d, 0)):
                lhs = lhs.mul_binomial(f.c, f.vec)
        return lhs == rhs

    __hash__ = None

    def is_polynomial(self) -> CharPoly | None:
        r = self.reduce()
        return r.num if not r.den else None

    # -- coefficient maps -----------------------------------------------

    def _map(self, poly_map, vec_map) -> "RatChar":
        num = poly_map(self.num)
        den = {}
        for f, m in self.den:
            sign, shift, g = normalize_factor(f.c, vec_map(f.vec))
            if m % 2 and sign < 0:
                num = -num
            if any(shift):
                num = num.shift([-m * s for s in shift])
            den[g] = den.get(g, 0) + m
        return RatChar(num, den.items())

    def act_chars(self, M) -> "RatChar":
        M = np.asarray(M, dtype=np.int64)

        def vec_map(v):
            v = np.asarray(v, dtype=np.int64)
            return tuple(int(x) for x in np.concatenate((M @ v[:-1], v[-1:])))

        return self._map(lambda p: p.act_chars(M), vec_map)

    def dual(self) -> "RatChar":
        return self._map(CharPoly.dual, lambda v: tuple(-x for x in v))

    def invert_var(self, name: str) -> "RatChar":
        k = self.ring.index(name)

        def vec_map(v):
            v = list(v)
            v[k] = -v[k]
            return tuple(v)

        return self._map(lambda p: p.invert_var(name), vec_map)

    def render(self) -> str:
        if not self.den:
            return self.num.render()
        ring = self.ring
        parts = []
        for f, m in self.den:
            fac = f"(1 {'-' if f.c == 1 else '+'} {ring.monomial(f.vec).render()})"
            parts.append(fac if m == 1 else f"{fac}^{m}")
        den = parts[0] if len(parts) == 1 else f"({' * '.join(parts)})"
        return f"({self.num.render()}) / {den}"

    def __repr__(self):
        return f"RatChar({self.render()})"

    def to_json(self) -> dict:
        den = []
        for f, m in self.den:
            item = {"mu": list(f.mu), "mult": m}
            if f.y_exp:
                item["y"] = f.y_exp
            if f.c != 1:
                item["c"] = f.c
            den.append(item)
        return {"num": self.num.to_json(), "den": den}

    @classmethod
    def from_json(cls, ring: PolyRing, data: dict) -> "RatChar":
        num = CharPoly.from_json(ring, data["num"])
        den = []
        for item in data.get("den", []):
            vec = tuple(item["mu"]) + (item.get("y", 0),)
            den.append((DenFactor(vec, item.get("c", 1)), item["mult"]))
        return cls(num, den)


def rat_add(a: RatChar, b: RatChar) -> RatChar:
    return rat_sum([a, b])


def rat_mul(a: RatChar, b: RatChar) -> RatChar:
    return a * b


def rat_div_factor(a: RatChar, factor: DenFactor, mult: int = 1) -> RatChar:
    return a.div_factor(factor.c, factor.vec, mult)


def rat_sum(items, ring: PolyRing | None = None) -> RatChar:
    """Sum over the least common factored denominator, then cancel what divides."""
    items = list(items)
    if ring is None:
        if not items:
            raise ValueError("rat_sum of no terms needs an explicit ring")
        ring = items[0].ring
    items = [x for x in items if not x.is_zero()]
    if not items:
        return rat_zero(ring)
    lcm: dict[DenFactor, int] = {}
    for x in items:
        for f, m in x.den:
            if lcm.get(f, 0) < m:
                lcm[f] = m
    keys = []
    coefs = []
    for x in items:
        num = x.num
        have = dict(x.den)
        for f, m in lcm.items():
            for _ in range(m - have.get(f, 0)):
                num = num.mul_binomial(f.c, f.vec)
        keys.append(num.keys)
        coefs.append(num.coefs)
    if any(c.dtype == object for c in coefs):
        coefs = [_kernels.as_object(c) for c in coefs]
    k, c = _kernels.combine(np.concatenate(keys), np.concatenate(coefs))
    total = RatChar(CharPoly(ring, k, c, None), lcm.items())
    return total.reduce()


def rat_zero(ring: PolyRing) -> RatChar:
    return RatChar(ring.zero())


# ---------------------------------------------------------------------------
# Height specialisation
# ---------------------------------------------------------------------------

QY_RING = PolyRing(("q", "y"))
Q_RING = PolyRing(("q",))


def q_specialize(f: CharPoly, rs) -> CharPoly:
    """e^mu -> q^<mu, rho-check>; y is kept. Result lives in ``PolyRing(('q', 'y'))``.

    ``<mu, rho-check>`` is the sum of the simple-root coordinates of mu; a
    SpecializationError is raised when that sum is not an integer.
    """
    r = rs.rank
    if f.ring.nvars != r + 1:
        raise ValueError("polynomial ring does not match the root system")
    if f.is_zero():
        return QY_RING.zero()
    exps = f.exps
    num = exps[:, :r] @ (np.ones(r, dtype=np.int64) @ rs.adj)
    if np.any(num % rs.det):
        raise SpecializationError("character exponent outside the root lattice has no integral height")
    new = np.stack((num // rs.det, exps[:, r]), axis=1)
    return CharPoly.from_arrays(QY_RING, new, f.coefs.copy())
