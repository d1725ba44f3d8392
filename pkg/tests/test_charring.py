"""Laurent-polynomial and rational-character arithmetic against a plain-dict oracle."""

from collections import defaultdict

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kflag.charring import (
    Q_RING,
    QY_RING,
    CharPoly,
    DenFactor,
    PolyRing,
    RatChar,
    normalize_factor,
    q_specialize,
    rat_sum,
)
from kflag.errors import SpecializationError
from kflag.rootsys import build_root_system

RING = PolyRing(("x1", "x2", "y"))

exps3 = st.tuples(*[st.integers(-6, 6)] * 3)
terms3 = st.dictionaries(exps3, st.integers(-50, 50).filter(bool), max_size=8)
big_terms = st.dictionaries(exps3, st.integers(-(1 << 70), 1 << 70).filter(bool), max_size=5)


def poly(d):
    return CharPoly.from_terms(RING, list(d.items()))


def oracle_mul(a, b):
    out = defaultdict(int)
    for ea, ca in a.items():
        for eb, cb in b.items():
            out[tuple(x + y for x, y in zip(ea, eb))] += ca * cb
    return {e: c for e, c in out.items() if c}


def oracle_add(a, b):
    out = defaultdict(int, a)
    for e, c in b.items():
        out[e] += c
    return {e: c for e, c in out.items() if c}


@given(terms3, terms3)
def test_add_matches_oracle(a, b):
    assert (poly(a) + poly(b)).to_dict() == oracle_add(a, b)


@given(terms3, terms3)
def test_mul_matches_oracle(a, b):
    assert (poly(a) * poly(b)).to_dict() == oracle_mul(a, b)


@given(big_terms, big_terms)
def test_bignum_coefficients_are_exact(a, b):
    assert (poly(a) * poly(b)).to_dict() == oracle_mul(a, b)
    assert (poly(a) + poly(b)).to_dict() == oracle_add(a, b)


@given(terms3, exps3.filter(lambda v: any(v)), st.sampled_from([1, -1]))
def test_binomial_division_roundtrip(a, v, c):
    p = poly(a)
    prod = p.mul_binomial(c, v)
    assert prod.div_binomial(c, v) == p


@given(terms3, terms3.filter(bool))
@settings(max_examples=50)
def test_exact_division(a, b):
    p, q = poly(a), poly(b)
    assert (p * q).exact_div(q) == p


def test_non_divisible_returns_none():
    p = RING.one() + RING.monomial((1, 0, 0))
    assert p.div_binomial(1, (1, 0, 0)) is None


def test_render_orders_highest_term_first():
    p = CharPoly.from_terms(RING, [((0, 0, 0), 1), ((1, 0, 1), 2), ((-1, 2, 0), -3)])
    assert p.render() == "2*x1*y + 1 - 3*x1^-1*x2^2"


def test_ratchar_cross_multiplied_equality():
    x = RING.monomial((1, 0, 0))
    one = RING.one()
    f = RatChar(one - x * x).div_factor(1, (1, 0, 0))
    assert f == RatChar(one + x)
    assert f.is_polynomial() == one + x
    g = RatChar(one).div_factor(1, (1, 0, 0))
    assert g.is_polynomial() is None
    assert g + RatChar(-one).div_factor(1, (1, 0, 0)) == RatChar(RING.zero())


def test_rat_sum_partial_fractions():
    # 1/(1-x) + 1/(1-x^-1) = 1
    one = RING.one()
    a = RatChar(one).div_factor(1, (1, 0, 0))
    b = RatChar(one).div_factor(1, (-1, 0, 0))
    s = rat_sum([a, b], RING)
    assert s.is_polynomial() == one


def test_denominator_normalisation():
    # 1 - x^v = (-x^v) (1 - x^-v), leading coordinate made positive
    sign, shift, fac = normalize_factor(1, (-2, 1, 0))
    assert (sign, shift, fac) == (-1, (-2, 1, 0), DenFactor((2, -1, 0), 1))
    lhs = RING.one().mul_binomial(1, (-2, 1, 0))
    rhs = fac.as_poly(RING).shift(shift) * sign
    assert lhs == rhs
    with pytest.raises(ZeroDivisionError):
        normalize_factor(1, (0, 0, 0))


@given(terms3)
def test_json_roundtrip(a):
    p = poly(a)
    assert CharPoly.from_json(RING, p.to_json()) == p
    r = RatChar(p).div_factor(1, (1, 1, 0)).div_factor(-1, (0, 1, 1))
    assert RatChar.from_json(RING, r.to_json()) == r


def test_q_specialize_uses_simple_root_coordinates():
    rs = build_root_system("A", 2)
    r = PolyRing(("x1", "x2", "y"))
    # alpha1 = 2 w1 - w2 has height 1; alpha1 + alpha2 = w1 + w2 has height 2
    p = CharPoly.from_terms(r, [((2, -1, 0), 1), ((1, 1, 1), 3)])
    q = q_specialize(p, rs)
    assert q.to_dict() == {(1, 0): 1, (2, 1): 3}
    # w1 of A3 = (3 a1 + 2 a2 + a3) / 4 has no integral height
    r3 = PolyRing(("x1", "x2", "x3", "y"))
    with pytest.raises(SpecializationError):
        q_specialize(CharPoly.from_terms(r3, [((1, 0, 0, 0), 1)]), build_root_system("A", 3))


def test_poly_rings_are_interned():
    assert PolyRing(("q",)) is Q_RING
    assert PolyRing(("q", "y")) is QY_RING
