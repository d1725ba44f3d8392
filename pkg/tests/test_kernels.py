"""numba and numpy kernels must agree bit-for-bit; backend choice must not change results."""

import os
import subprocess
import sys

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from kflag._kernels import numba_impl, numpy_impl
from kflag.charring import PolyRing
from kflag.rootsys import build_root_system

RING = PolyRing(("x1", "x2", "y"))

exps = st.lists(st.tuples(*[st.integers(-5, 5)] * 3), min_size=0, max_size=12)
coef = st.integers(-1000, 1000)


def packed(draw_exps, coefs):
    keys = RING.pack(np.array(draw_exps, dtype=np.int64).reshape(-1, 3))
    return keys, np.array(coefs, dtype=np.int64).reshape(-1)


def delta(v):
    return int(RING.pack(np.array(v)).item()) - RING.zero_key


@st.composite
def polys(draw):
    es = draw(exps)
    cs = draw(st.lists(coef, min_size=len(es), max_size=len(es)))
    return packed(es, cs)


def same(a, b):
    assert len(a) == len(b)
    for x, y in zip(a, b):
        assert np.array_equal(np.asarray(x), np.asarray(y))


@given(polys())
def test_combine_parity(p):
    same(numpy_impl.combine(*p), numba_impl.combine(*p))


@given(polys(), polys())
def test_mul_parity(a, b):
    zero = RING.zero_key
    same(numpy_impl.mul(*a, *b, zero), numba_impl.mul(*a, *b, np.int64(zero)))


@given(polys(), polys())
def test_add_sorted_parity(a, b):
    a, b = numpy_impl.combine(*a), numpy_impl.combine(*b)
    k, c, status = numba_impl.add_sorted(*a, *b)
    assert status == 1
    same(numpy_impl.add_sorted(*a, *b), (k, c))


@given(polys(), st.tuples(*[st.integers(-3, 3)] * 3).filter(any), st.sampled_from([1, -1]), st.booleans())
def test_div_binomial_parity(p, v, c, divisible):
    keys, coefs = numpy_impl.combine(*p)
    if divisible:
        shifted = keys + delta(v)
        keys, coefs = numpy_impl.combine(
            np.concatenate([keys, shifted]), np.concatenate([coefs, -c * coefs])
        )
    e = RING.unpack(keys)
    vv = np.array(v, dtype=np.int64)
    e1, q1, ok1 = numpy_impl.div_binomial(e, coefs, vv, c)
    e2, q2, status = numba_impl.div_binomial(e, coefs, vv, np.int64(c))
    assert status in (0, 1)
    assert ok1 == (status == 1)
    if divisible:
        assert ok1
    if ok1:
        a = numpy_impl.combine(RING.pack(e1), q1)
        b = numpy_impl.combine(RING.pack(e2), q2)
        same(a, b)
    # key-space variant
    j = next(i for i, x in enumerate(v) if x)
    args = (keys, coefs, int(RING.shifts[j]), RING.mask, RING.bias, v[j], delta(v), c)
    k1, c1, okk = numpy_impl.div_binomial_keys(*args)
    k2, c2, st2 = numba_impl.div_binomial_keys(*[np.int64(a) if isinstance(a, int) else a for a in args])
    assert okk == ok1 and (st2 == 1) == ok1
    if okk:
        same((k1, c1), (k2, c2))


def test_bruhat_table_parity():
    for fam, rank in [("A", 3), ("B", 3), ("G", 2)]:
        rs = build_root_system(fam, rank)
        args = (rs.left, rs.lengths, rs.desc, rs.by_length)
        assert np.array_equal(numpy_impl.bruhat_table(*args), numba_impl.bruhat_table(*args))


def _run(backend):
    env = dict(os.environ, KFLAG_BACKEND=backend)
    cmd = [sys.executable, "-m", "kflag", "verify", "--cartan", "B2", "--suite", "duality", "--format", "json"]
    return subprocess.run(cmd, env=env, capture_output=True, check=False)


def test_backends_give_identical_reports():
    a, b = _run("numba"), _run("numpy")
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout


def test_invalid_backend_rejected():
    env = dict(os.environ, KFLAG_BACKEND="fortran")
    r = subprocess.run([sys.executable, "-c", "import kflag"], env=env, capture_output=True)
    assert r.returncode != 0 and b"KFLAG_BACKEND" in r.stderr
