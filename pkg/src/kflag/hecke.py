"""Demazure, Demazure–Lusztig and duality operators on localized classes,
and their algebraic ("tilde") counterparts on K_T(pt)[y].

Words follow operator composition: for ``w = s_{i1} ... s_{ik}`` the operator
``A_w = A(i1) o ... o A(ik)``, so ``A(ik)`` acts first.
"""

from __future__ import annotations

from dataclasses import dataclass

from .charring import CharPoly, RatChar, rat_sum
from .errors import NonPolynomialResult
from .kclasses import FlagVariety, KClass, _add, weyl_act_class

# ---------------------------------------------------------------------------
# Geometric operators on KClass
# ---------------------------------------------------------------------------


def _sub_scaled(a: RatChar, mono: tuple[int, ...], b: RatChar) -> RatChar:
    """a - x^mono * b."""
    if b.is_zero():
        return a
    sb = RatChar(b.num.shift(mono), b.den)
    if a.is_zero():
        return -sb
    if not a.den and not b.den:
        return RatChar(a.num - sb.num)
    return rat_sum([a, -sb])


def demazure(i: int, f: KClass) -> KClass:
    """(d_i f)_w = (f_w - e^{w alpha_i} f_{w s_i}) / (1 - e^{w alpha_i})."""
    fv = f.fv
    right = fv.rs.right[i]
    imgs = fv.simple_images[i]
    vals = f.values
    out = []
    for w in range(fv.size):
        beta = fv.vec(imgs[w])
        num = _sub_scaled(vals[w], beta, vals[right[w]])
        out.append(num.div_factor(1, beta) if not num.is_zero() else num)
    return KClass(fv, out)


def _times_one_plus_y_line(i: int, f: KClass) -> KClass:
    """(1 + y L_{alpha_i}) f."""
    fv = f.fv
    imgs = fv.simple_images[i]
    out = []
    for w, v in enumerate(f.values):
        if v.is_zero():
            out.append(v)
            continue
        sh = RatChar(v.num.shift(fv.vec(imgs[w], 1)), v.den)
        out.append(_add(v, sh))
    return KClass(fv, out)


def t_op(i: int, f: KClass) -> KClass:
    """T_i = (1 + y L_{alpha_i}) d_i - id."""
    return _times_one_plus_y_line(i, demazure(i, f)) - f


def t_dual_op(i: int, f: KClass) -> KClass:
    """T_i^dual = d_i (1 + y L_{alpha_i}) - id."""
    return demazure(i, _times_one_plus_y_line(i, f)) - f


def _inverse_from(op, i: int, f: KClass) -> KClass:
    # (T + 1)(T + y) = 0  =>  T^{-1} = -y^{-1} (T + 1 + y)
    fv = f.fv
    y = fv.y
    g = op(i, f) + f * (y + 1)
    return g * (-fv.ring.monomial([0] * fv.rank + [-1]))


def t_inv_op(i: int, f: KClass) -> KClass:
    return _inverse_from(t_op, i, f)


def t_dual_inv_op(i: int, f: KClass) -> KClass:
    return _inverse_from(t_dual_op, i, f)


def serre_dual(f: KClass) -> KClass:
    """D(f)_w = (-1)^{dim X} (f_w)^dual e^{2 w rho}."""
    fv = f.fv
    sign = -1 if fv.dim % 2 else 1
    out = []
    for w, v in enumerate(f.values):
        d = v.dual()
        out.append(RatChar(d.num.shift(fv.vec(fv.two_rho_images[w])) * sign, d.den))
    return KClass(fv, out)


# ---------------------------------------------------------------------------
# Atoms, words and Weyl-element operators
# ---------------------------------------------------------------------------

SIMPLE_OPS = {
    "demazure": demazure,
    "T": t_op,
    "TDual": t_dual_op,
    "TInv": t_inv_op,
    "TDualInv": t_dual_inv_op,
}


@dataclass(frozen=True)
class OpAtom:
    """One operator: kind in SIMPLE_OPS (with index), 'line' (weight), 'dual' or 'weyl' (element)."""

    kind: str
    index: int | None = None
    weight: tuple[int, ...] | None = None
    element: int | None = None

    def __call__(self, f: KClass) -> KClass:
        if self.kind in SIMPLE_OPS:
            if self.index is None or not 0 <= self.index < f.fv.rank:
                raise ValueError(f"invalid simple index {self.index} for {self.kind}")
            return SIMPLE_OPS[self.kind](self.index, f)
        if self.kind == "line":
            return f.twist(self.weight)
        if self.kind == "dual":
            return serre_dual(f)
        if self.kind == "weyl":
            return weyl_act_class(self.element, f)
        raise ValueError(f"unknown operator kind {self.kind!r}")


def apply_word(atoms, f: KClass) -> KClass:
    """Apply a sequence of atoms right-to-left (last listed acts first)."""
    for atom in reversed(list(atoms)):
        f = atom(f)
    return f


# T_w uses T(i1) o ... o T(ik); bar(T_w) = T_{w^{-1}}^{-1} = TInv(i1) o ... o TInv(ik).
WORD_KINDS = {
    "demazure": "demazure",
    "T": "T",
    "TDual": "TDual",
    "bar": "TInv",
    "barDual": "TDualInv",
}


def apply_simple_word(kind: str, word, f: KClass) -> KClass:
    op = SIMPLE_OPS[WORD_KINDS.get(kind, kind)]
    for i in reversed(tuple(word)):
        f = op(i, f)
    return f


def apply_weyl_word(kind: str, w, f: KClass) -> KClass:
    """A_w for kind in {'demazure', 'T', 'TDual', 'bar', 'barDual'} along the reduced word of w."""
    w = f.fv.element(w)
    return apply_simple_word(kind, w.word, f)


def orbit_table(kind: str, f: KClass) -> list[KClass]:
    """[A_u(f) for every u], sharing prefixes: A_u = A(i) A_{s_i u} with i the first letter of u."""
    fv = f.fv
    rs = fv.rs
    op = SIMPLE_OPS[WORD_KINDS.get(kind, kind)]
    table: list[KClass | None] = [None] * fv.size
    for u in rs.by_length:
        u = int(u)
        if rs.lengths[u] == 0:
            table[u] = f
        else:
            i = int(rs.desc[u])
            table[u] = op(i, table[int(rs.left[i, u])])
    return table


# ---------------------------------------------------------------------------
# Algebraic operators on K_T(pt)[y]
# ---------------------------------------------------------------------------


def _weyl_reflect(fv: FlagVariety, i: int, f: RatChar) -> RatChar:
    return f.act_chars(fv.rs.generators[i])


def tilde_demazure(fv: FlagVariety, i: int, f: RatChar) -> RatChar:
    """(f - e^{alpha_i} s_i f) / (1 - e^{alpha_i})."""
    a = fv.vec(fv.rs.simple_roots[i])
    num = _sub_scaled(f, a, _weyl_reflect(fv, i, f))
    return num.div_factor(1, a) if not num.is_zero() else num


def _one_plus_y_root(fv: FlagVariety, i: int, f: RatChar) -> RatChar:
    a = fv.vec(fv.rs.simple_roots[i], 1)
    return _add(f, RatChar(f.num.shift(a), f.den))


def tilde_t(fv: FlagVariety, i: int, f: RatChar) -> RatChar:
    """(1 + y e^{alpha_i}) d~_i - 1."""
    return _add(_one_plus_y_root(fv, i, tilde_demazure(fv, i, f)), -f)


def tilde_t_dual(fv: FlagVariety, i: int, f: RatChar) -> RatChar:
    """d~_i (1 + y e^{alpha_i}) - 1."""
    return _add(tilde_demazure(fv, i, _one_plus_y_root(fv, i, f)), -f)


TILDE_OPS = {"demazure": tilde_demazure, "T": tilde_t, "TDual": tilde_t_dual}


def tilde_word(fv: FlagVariety, kind: str, word, f) -> RatChar:
    op = TILDE_OPS[kind]
    f = RatChar.of(f, fv.ring)
    for i in reversed(tuple(word)):
        f = op(fv, i, f)
    return f


def tilde_op(fv: FlagVariety, kind: str, w, weight) -> CharPoly:
    """A~_w(e^weight) for kind in {'demazure', 'T', 'TDual'}, cleared to a Laurent polynomial."""
    w = fv.element(w)
    val = tilde_word(fv, kind, w.word, fv.char(weight))
    p = val.is_polynomial()
    if p is None:
        raise NonPolynomialResult(f"{kind}~ of e^{list(weight)} did not clear: {val.render()}")
    return p


def tilde_orbit_table(fv: FlagVariety, kind: str, weight) -> list[CharPoly]:
    """[A~_u(e^weight) for every u], sharing prefixes as in :func:`orbit_table`."""
    rs = fv.rs
    op = TILDE_OPS[kind]
    table: list[RatChar | None] = [None] * fv.size
    for u in rs.by_length:
        u = int(u)
        if rs.lengths[u] == 0:
            table[u] = RatChar(fv.char(weight))
        else:
            i = int(rs.desc[u])
            table[u] = op(fv, i, table[int(rs.left[i, u])])
    out = []
    for u, val in enumerate(table):
        p = val.is_polynomial()
        if p is None:
            raise NonPolynomialResult(f"{kind}~ of e^{list(weight)} did not clear at u={u}")
        out.append(p)
    return out


def basis(fv: FlagVariety) -> list[KClass]:
    return [fv.point_class(w) for w in range(fv.size)]


def operators_equal(lhs, rhs, classes) -> bool:
    """Compare two KClass -> KClass maps on a list of classes."""
    return all(lhs(f) == rhs(f) for f in classes)


__all__ = [
    "OpAtom",
    "apply_simple_word",
    "apply_weyl_word",
    "apply_word",
    "basis",
    "demazure",
    "orbit_table",
    "serre_dual",
    "t_dual_inv_op",
    "t_dual_op",
    "t_inv_op",
    "t_op",
    "tilde_demazure",
    "tilde_op",
    "tilde_orbit_table",
    "tilde_t",
    "tilde_t_dual",
    "tilde_word",
]
