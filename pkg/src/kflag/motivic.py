"""Motivic Chern classes of Schubert cells and the identities relating them
to Demazure–Lusztig operators, duality, characters and Whittaker functions."""

from __future__ import annotations

from dataclasses import dataclass

from .charring import CharPoly, RatChar
from .errors import MismatchError, NonPolynomialResult, PreconditionError
from .hecke import (
    apply_simple_word,
    orbit_table,
    serre_dual,
    tilde_op,
    tilde_orbit_table,
)
from .kclasses import (
    FlagVariety,
    KClass,
    euler_char,
    euler_char_polynomial,
    pairing,
    weyl_act_class,
)

MOTIVIC_KINDS = ("mc", "mc_opposite", "mc_prime", "dual_mc", "schubert", "schubert_opposite")
CLASS_KIND_LABEL = {
    "mc": "mc",
    "mc_prime": "mcprime",
    "schubert": "schubert",
    "mc_opposite": "custom",
    "dual_mc": "custom",
    "schubert_opposite": "custom",
}

# ---------------------------------------------------------------------------
# Orbit tables: A_u(iota) for every u, shared across calls
# ---------------------------------------------------------------------------

_TABLES: dict[tuple[str, str, int], list[KClass]] = {}


def _table(fv: FlagVariety, kind: str, start: int = 0) -> list[KClass]:
    key = (fv.name, kind, start)
    table = _TABLES.get(key)
    if table is None:
        table = orbit_table(kind, fv.point_class(start))
        _TABLES[key] = table
    return table


def clear_cache():
    _TABLES.clear()


def _w(fv: FlagVariety, w) -> int:
    return fv.element(w).index


def _inv(fv: FlagVariety, w) -> int:
    return int(fv.rs.inverse[_w(fv, w)])


def _w0(fv: FlagVariety) -> int:
    return fv.rs.w0.index


def _mul(fv: FlagVariety, a: int, b: int) -> int:
    return fv.rs.mul_index(a, b)


# ---------------------------------------------------------------------------
# Classes
# ---------------------------------------------------------------------------


def mc_class(fv: FlagVariety, w) -> KClass:
    """MC_y(X(w)°) = T_{w^{-1}}(iota_id)."""
    return _table(fv, "T")[_inv(fv, w)].with_kind("mc")


def mc_prime_class(fv: FlagVariety, w) -> KClass:
    """MC'_y(X(w)°) = T^dual_{w^{-1}}(iota_id)."""
    return _table(fv, "TDual")[_inv(fv, w)].with_kind("mcprime")


def schubert_class(fv: FlagVariety, w) -> KClass:
    """O_w = d_{w^{-1}}(iota_id)."""
    return _table(fv, "demazure")[_inv(fv, w)].with_kind("schubert")


def schubert_opposite_class(fv: FlagVariety, w) -> KClass:
    """O^w = w_0 . O_{w_0 w}."""
    w0 = _w0(fv)
    return weyl_act_class(w0, schubert_class(fv, _mul(fv, w0, _w(fv, w))))


def divide_by_lambda_y(f: KClass) -> KClass:
    """f / lambda_y(T*X), pointwise division by prod (1 + y e^{w alpha})."""
    fv = f.fv
    out = []
    for w, v in enumerate(f.values):
        for mu in fv.cot[w]:
            v = v.div_factor(-1, fv.vec(mu, 1))
        out.append(v)
    return KClass(fv, out)


def divide_by_scalar_lambda_y(f: KClass, w) -> KClass:
    """f / lambda_y(w) for the scalar lambda_y(w) = prod (1 + y e^{w alpha})."""
    fv = f.fv
    factors = [fv.vec(mu, 1) for mu in fv.cot[_w(fv, w)]]
    out = []
    for v in f.values:
        for vec in factors:
            v = v.div_factor(-1, vec)
        out.append(v)
    return KClass(fv, out)


def dual_mc_routes(fv: FlagVariety, w) -> tuple[KClass, KClass]:
    """(D(MC_y(X(w)°)), bar(T_{w^{-1}})(iota_id))."""
    return serre_dual(mc_class(fv, w)), _table(fv, "bar")[_inv(fv, w)]


def dual_mc_class(fv: FlagVariety, w) -> KClass:
    a, b = dual_mc_routes(fv, w)
    if a != b:
        raise MismatchError("the two routes to D(MC_y(X(w)°)) disagree")
    return a


def mc_opposite_routes(fv: FlagVariety, w) -> tuple[KClass, KClass]:
    """(lambda_y(T*X) / lambda_y(w_0) * T^dual_{(w_0 w)^{-1}}(iota_{w_0}), w_0 . MC_y(X(w_0 w)°))."""
    w0 = _w0(fv)
    w0w = _mul(fv, w0, _w(fv, w))
    op = _table(fv, "TDual", w0)[int(fv.rs.inverse[w0w])]
    route1 = divide_by_scalar_lambda_y(op * fv.lambda_y_cotangent(), w0)
    route2 = weyl_act_class(w0, mc_class(fv, w0w))
    return route1, route2


def mc_opposite_class(fv: FlagVariety, w) -> KClass:
    a, b = mc_opposite_routes(fv, w)
    if a != b:
        raise MismatchError("the two routes to MC_y(Y(w)°) disagree")
    return b


def motivic_class(fv: FlagVariety, kind: str, w) -> KClass:
    builders = {
        "mc": mc_class,
        "mc_prime": mc_prime_class,
        "dual_mc": dual_mc_class,
        "mc_opposite": mc_opposite_class,
        "schubert": schubert_class,
        "schubert_opposite": schubert_opposite_class,
    }
    if kind not in builders:
        raise ValueError(f"unknown class kind {kind!r}; expected one of {', '.join(MOTIVIC_KINDS)}")
    out = builders[kind](fv, w)
    return out.with_kind(CLASS_KIND_LABEL[kind])


# ---------------------------------------------------------------------------
# Identities
# ---------------------------------------------------------------------------


@dataclass
class IdentityCheck:
    """Both sides of an identity and whether they agree exactly."""

    name: str
    lhs: object
    rhs: object

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {"name": self.name, "lhs": _json(self.lhs), "rhs": _json(self.rhs), "equal": self.equal}


def _json(x):
    if isinstance(x, (CharPoly, RatChar, KClass)):
        return x.to_json()
    return x


def normalization_check(fv: FlagVariety) -> IdentityCheck:
    """sum_w MC_y(X(w)°) = lambda_y(T*X)."""
    total = fv.zero_class()
    for w in range(fv.size):
        total = total + mc_class(fv, w)
    return IdentityCheck("sum of MC classes equals lambda_y(T*X)", total, fv.lambda_y_cotangent())


def duality_checks(fv: FlagVariety, w) -> list[IdentityCheck]:
    """The four displayed duality identities for one w."""
    w = _w(fv, w)
    w0 = _w0(fv)
    w0w = _mul(fv, w0, w)
    mc = mc_class(fv, w)
    mc_y = weyl_act_class(w0, mc_class(fv, w0w))
    d1, d2 = dual_mc_routes(fv, w)
    o1, _ = mc_opposite_routes(fv, w)
    bar_y = _table(fv, "bar", w0)[int(fv.rs.inverse[w0w])]
    prime = divide_by_scalar_lambda_y(_table(fv, "TDual")[_inv(fv, w)], 0)
    return [
        IdentityCheck("D(MC(X(w))) = bar(T_{w^-1})(iota_id)", d1, d2),
        IdentityCheck("MC(Y(w)) from T^dual on iota_w0 = w0 . MC(X(w0 w))", o1, mc_y),
        IdentityCheck("D(MC(Y(w))) = bar(T_{(w0 w)^-1})(iota_w0)", serre_dual(mc_y), bar_y),
        IdentityCheck(
            "MC(X(w)) / lambda_y(T*X) = T^dual_{w^-1}(iota_id) / lambda_y(id)",
            divide_by_lambda_y(mc),
            prime,
        ),
    ]


def _require_polynomial(x: RatChar, what: str) -> CharPoly:
    p = x.is_polynomial()
    if p is None:
        raise NonPolynomialResult(f"{what} did not clear denominators")
    return p


_CHAR_KINDS = {
    # name -> (geometric class builder, tilde operator kind)
    "schubert": (schubert_class, "demazure"),
    "mc": (mc_class, "TDual"),
    "mc_prime": (mc_prime_class, "T"),
}


def character_routes(fv: FlagVariety, kind: str, weight, w) -> tuple[CharPoly, CharPoly]:
    """(chi(X, L_lambda (x) class_w) by localization, A~_w(e^lambda) algebraically)."""
    builder, tilde_kind = _CHAR_KINDS[kind]
    geo = euler_char_polynomial(builder(fv, w).twist(weight))
    alg = tilde_op(fv, tilde_kind, w, weight)
    return geo, alg


def _checked(fv, kind, weight, w) -> CharPoly:
    geo, alg = character_routes(fv, kind, weight, w)
    if geo != alg:
        raise MismatchError(f"{kind} character: localization {geo} != operator {alg}")
    return geo


def chi_demazure(fv: FlagVariety, weight, w) -> CharPoly:
    """chi(X, L_lambda (x) O_w) = d~_w(e^lambda)."""
    return _checked(fv, "schubert", weight, w)


def whittaker_dual(fv: FlagVariety, weight, w) -> CharPoly:
    """chi(X, L_lambda (x) MC_y(X(w)°)) = T~^dual_w(e^lambda)."""
    return _checked(fv, "mc", weight, w)


def whittaker(fv: FlagVariety, weight, w) -> CharPoly:
    """chi(X, L_lambda (x) MC'_y(X(w)°)) = T~_w(e^lambda)."""
    return _checked(fv, "mc_prime", weight, w)


def character_sweep(fv: FlagVariety, kind: str, weight) -> list[tuple[int, CharPoly, CharPoly]]:
    """Both routes for every w at one weight, sharing operator prefixes."""
    builder, tilde_kind = _CHAR_KINDS[kind]
    alg = tilde_orbit_table(fv, tilde_kind, weight)
    out = []
    for w in range(fv.size):
        geo = euler_char_polynomial(builder(fv, w).twist(weight))
        out.append((w, geo, alg[w]))
    return out


def casselman_shalika(fv: FlagVariety, weight) -> list[IdentityCheck]:
    """sum_w T~_w(e^l) = lambda_y(id) sum_w e^{wl}/prod(1-e^{wa}), and
    sum_w T~^dual_w(e^l) = sum_w e^{wl} prod(1+y e^{wa})/(1-e^{wa})."""
    t_vals = tilde_orbit_table(fv, "T", weight)
    td_vals = tilde_orbit_table(fv, "TDual", weight)
    lhs1 = RatChar(_sum_polys(fv, t_vals))
    lhs2 = RatChar(_sum_polys(fv, td_vals))
    line = fv.line_bundle(weight)
    rhs1 = euler_char(line) * fv.lambda_y_at(0)
    rhs2 = euler_char(line * fv.lambda_y_cotangent())
    return [
        IdentityCheck("sum_w T~_w(e^lambda) = lambda_y(id) * Weyl character sum", lhs1, rhs1),
        IdentityCheck("sum_w T~dual_w(e^lambda) = localization sum of lambda_y(T*X)", lhs2, rhs2),
    ]


def _sum_polys(fv, polys) -> CharPoly:
    total = fv.ring.zero()
    for p in polys:
        total = total + p
    return total


def opposite_dual_over_lambda(fv: FlagVariety, v) -> KClass:
    """D(MC_y(Y(v)°)) / lambda_y(T*X)."""
    return divide_by_lambda_y(serre_dual(mc_opposite_class(fv, v)))


def pairing_orthogonality(fv: FlagVariety, u, v) -> RatChar:
    """<MC_y(X(u)°), D(MC_y(Y(v)°)) / lambda_y(T*X)>."""
    return pairing(mc_class(fv, u), opposite_dual_over_lambda(fv, v))


def orthogonality_expected(fv: FlagVariety, u, v) -> CharPoly:
    """delta_{u,v} (-y)^{l(v) - dim X}."""
    u, v = _w(fv, u), _w(fv, v)
    if u != v:
        return fv.ring.zero()
    k = int(fv.rs.lengths[v]) - fv.dim
    sign = -1 if k % 2 else 1
    return fv.ring.monomial([0] * fv.rank + [k], sign)


def orthogonality_matrix(fv: FlagVariety) -> list[list[RatChar]]:
    duals = [opposite_dual_over_lambda(fv, v) for v in range(fv.size)]
    mcs = [mc_class(fv, u) for u in range(fv.size)]
    return [[pairing(mcs[u], duals[v]) for v in range(fv.size)] for u in range(fv.size)]


def hecke_product_leading(fv: FlagVariety, u, v) -> CharPoly:
    """Leading coefficient of T_u T_v^{-1} on T_{uv^{-1}}, checked to be (-y)^{-l(v)}.

    Expanding (T_u T_v^{-1})(iota_id) = sum_{w <= uv^{-1}} c_w T_w(iota_id): since
    T_w(iota_id) is supported on {x <= w^{-1}}, only w = uv^{-1} survives at the
    fixed point (uv^{-1})^{-1}, which isolates the leading coefficient.
    """
    rs = fv.rs
    u, v = _w(fv, u), _w(fv, v)
    z = _mul(fv, u, int(rs.inverse[v]))
    if rs.lengths[z] != rs.lengths[u] + rs.lengths[v]:
        raise PreconditionError(
            "leading coefficient is only determined when l(u v^-1) = l(u) + l(v^-1)"
        )
    start = fv.point_class(0)
    # T_v^{-1} = T(ik)^{-1} ... T(i1)^{-1}: T(i1)^{-1} acts first
    f = apply_simple_word("TInv", tuple(reversed(rs.elements[v].word)), start)
    f = apply_simple_word("T", rs.elements[u].word, f)
    point = int(rs.inverse[z])
    num = _require_polynomial(f.values[point], "T_u T_v^-1 (iota_id)")
    den = _require_polynomial(_table(fv, "T")[z].values[point], "T_z(iota_id)")
    coef = num.exact_div(den)
    k = -int(rs.lengths[v])
    expected = fv.ring.monomial([0] * fv.rank + [k], -1 if k % 2 else 1)
    if coef is None or coef != expected:
        got = "not a Laurent polynomial" if coef is None else coef.render()
        raise MismatchError(f"leading coefficient {got} != {expected.render()}")
    return coef


def point_count(fv: FlagVariety, w) -> tuple[CharPoly, CharPoly]:
    """(chi(X, MC_y(X(w)°)), (-y)^{l(w)})."""
    chi = euler_char_polynomial(mc_class(fv, w))
    k = int(fv.rs.lengths[_w(fv, w)])
    return chi, fv.ring.monomial([0] * fv.rank + [k], -1 if k % 2 else 1)


__all__ = [
    "IdentityCheck",
    "MOTIVIC_KINDS",
    "casselman_shalika",
    "character_routes",
    "character_sweep",
    "chi_demazure",
    "divide_by_lambda_y",
    "dual_mc_class",
    "duality_checks",
    "hecke_product_leading",
    "mc_class",
    "mc_opposite_class",
    "mc_prime_class",
    "motivic_class",
    "normalization_check",
    "orthogonality_expected",
    "orthogonality_matrix",
    "pairing_orthogonality",
    "point_count",
    "schubert_class",
    "schubert_opposite_class",
    "whittaker",
    "whittaker_dual",
]
