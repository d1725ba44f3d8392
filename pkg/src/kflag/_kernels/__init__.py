"""Kernel dispatch.

``KFLAG_BACKEND=numba`` (default) uses the njit kernels whenever the
coefficients fit comfortably in int64; ``KFLAG_BACKEND=numpy`` forces the
vectorised numpy path. Coefficient arrays that could overflow int64 are
promoted to Python ints (object dtype) and always take the numpy path.
"""

import os

import numpy as np

from . import numpy_impl

LIMIT = 1 << 62

_requested = os.environ.get("KFLAG_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise ValueError(f"KFLAG_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

if _requested == "numba":
    try:
        from . import numba_impl
    except ImportError:  # pragma: no cover - numba is a declared dependency
        numba_impl = None
else:
    numba_impl = None

BACKEND = "numba" if numba_impl is not None else "numpy"


def maxabs(coefs):
    if coefs.size == 0:
        return 0
    if coefs.dtype == object:
        return max(abs(int(x)) for x in coefs)
    return int(np.abs(coefs).max())


def as_object(coefs):
    if coefs.dtype == object:
        return coefs
    return np.array([int(x) for x in coefs], dtype=object)


def shrink(coefs):
    """Downcast an object coefficient array to int64 when safe."""
    if coefs.dtype == object and maxabs(coefs) < LIMIT:
        return coefs.astype(np.int64)
    return coefs


def _fast(*arrays):
    return numba_impl is not None and all(a.dtype == np.int64 for a in arrays)


def combine(keys, coefs):
    if coefs.dtype != object and maxabs(coefs) * max(len(coefs), 1) >= LIMIT:
        coefs = as_object(coefs)
    if _fast(coefs):
        return numba_impl.combine(keys, coefs)
    k, c = numpy_impl.combine(keys, coefs)
    return k, shrink(c)


def mul(ka, ca, kb, cb, zero_key):
    if ca.dtype != object and cb.dtype != object:
        if maxabs(ca) * maxabs(cb) * max(min(len(ca), len(cb)), 1) >= LIMIT:
            ca, cb = as_object(ca), as_object(cb)
    elif ca.dtype != cb.dtype:
        ca, cb = as_object(ca), as_object(cb)
    if _fast(ca, cb):
        return numba_impl.mul(ka, ca, kb, cb, np.int64(zero_key))
    k, c = numpy_impl.mul(ka, ca, kb, cb, zero_key)
    return k, shrink(c)


def div_binomial(exps, coefs, v, c):
    """Exact division by ``1 - c*x^v``; returns ``(exps, coefs)`` or None."""
    if coefs.dtype != object:
        total = int(np.abs(coefs).sum()) if coefs.size else 0
        if total >= LIMIT:
            coefs = as_object(coefs)
    if _fast(coefs):
        e, q, status = numba_impl.div_binomial(exps, coefs, v, np.int64(c))
        if status >= 0:
            return (e, q) if status == 1 else None
    e, q, ok = numpy_impl.div_binomial(exps, coefs, v, c)
    return (e, shrink(q)) if ok else None


def add_sorted(ka, ca, kb, cb):
    """Sum of two sorted-key polynomials (int64 inputs are below LIMIT in magnitude)."""
    if ca.dtype != cb.dtype:
        ca, cb = as_object(ca), as_object(cb)
    if _fast(ca, cb):
        k, c, status = numba_impl.add_sorted(ka, ca, kb, cb)
        if status:
            return k, c
        ca, cb = as_object(ca), as_object(cb)
    k, c = numpy_impl.add_sorted(ka, ca, kb, cb)
    return k, shrink(c)


def div_binomial_keys(keys, coefs, jshift, mask, bias, vj, dv, c):
    """Exact division by ``1 - c*x^v`` on packed keys; returns ``(keys, coefs)`` or None."""
    if _fast(coefs):
        k, q, status = numba_impl.div_binomial_keys(
            keys, coefs, np.int64(jshift), np.int64(mask), np.int64(bias),
            np.int64(vj), np.int64(dv), np.int64(c),
        )
        if status >= 0:
            return (k, q) if status == 1 else None
        coefs = as_object(coefs)
    elif coefs.dtype != object and int(np.abs(coefs).sum()) >= LIMIT:
        coefs = as_object(coefs)
    k, q, ok = numpy_impl.div_binomial_keys(keys, coefs, jshift, mask, bias, vj, dv, c)
    return (k, shrink(q)) if ok else None


def bruhat_table(left, lengths, desc, order):
    if numba_impl is not None:
        return numba_impl.bruhat_table(left, lengths, desc, order)
    return numpy_impl.bruhat_table(left, lengths, desc, order)
