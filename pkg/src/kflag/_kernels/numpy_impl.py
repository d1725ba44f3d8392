"""Vectorised numpy kernels.

These are the reference implementations. They accept int64 or object
(arbitrary precision) coefficient arrays; the numba twins accept int64 only.
"""

import numpy as np


def combine(keys, coefs):
    """Sort terms by key, add coefficients of equal keys, drop zeros."""
    if keys.size == 0:
        return keys, coefs
    order = np.argsort(keys, kind="stable")
    k = keys[order]
    c = coefs[order]
    starts = np.flatnonzero(np.concatenate(([True], k[1:] != k[:-1])))
    k = k[starts]
    c = np.add.reduceat(c, starts)
    nz = c != 0
    return k[nz], c[nz]


def mul(ka, ca, kb, cb, zero_key):
    if ka.size == 0 or kb.size == 0:
        return ka[:0], ca[:0]
    keys = (ka[:, None] + (kb - zero_key)[None, :]).ravel()
    coefs = (ca[:, None] * cb[None, :]).ravel()
    return combine(keys, coefs)


def div_binomial(exps, coefs, v, c):
    """Exact quotient of sum(coefs * x^exps) by (1 - c x^v).

    `v` must have a positive first nonzero entry. Returns
    ``(exps, coefs, ok)``; when ``ok`` is False the other two are empty.
    """
    nv = exps.shape[1]
    if exps.shape[0] == 0:
        return exps, coefs, True
    j = int(np.flatnonzero(v)[0])
    t = exps[:, j] // v[j]
    base = exps - t[:, None] * v[None, :]
    order = np.lexsort((t,) + tuple(base[:, f] for f in range(nv - 1, -1, -1)))
    t = t[order]
    base = base[order]
    f = coefs[order]

    new_group = np.ones(len(t), dtype=bool)
    new_group[1:] = np.any(base[1:] != base[:-1], axis=1)
    gstart = np.flatnonzero(new_group)
    gid = np.cumsum(new_group) - 1
    tmin = t[gstart]
    tmax = np.maximum.reduceat(t, gstart)
    glen = tmax - tmin + 1
    goff = np.concatenate(([0], np.cumsum(glen)[:-1]))
    total = int(glen.sum())

    dense = np.zeros(total, dtype=coefs.dtype)
    pos = goff[gid] + (t - tmin[gid])
    dense[pos] = f
    # position inside its line, used for the alternating sign when c == -1
    dgid = np.repeat(np.arange(len(gstart)), glen)
    rel = np.arange(total) - goff[dgid]
    if c == 1:
        sign = None
    else:
        sign = np.where(rel % 2 == 0, 1, -1).astype(coefs.dtype)
        dense = dense * sign
    cs = np.cumsum(dense)
    before = np.concatenate(([0], cs[:-1]))[goff]
    g = cs - np.repeat(before, glen)
    if sign is not None:
        g = g * sign

    last = goff + glen - 1
    if np.any(g[last] != 0):
        return exps[:0], coefs[:0], False
    keep = np.ones(total, dtype=bool)
    keep[last] = False
    keep &= g != 0
    idx = np.flatnonzero(keep)
    gq = dgid[idx]
    tq = tmin[gq] + rel[idx]
    out = base[gstart[gq]] + tq[:, None] * v[None, :]
    return out, g[idx], True


def add_sorted(ka, ca, kb, cb):
    """Sum of two polynomials given as sorted unique keys."""
    return combine(np.concatenate((ka, kb)), np.concatenate((ca, cb)))


def div_binomial_keys(keys, coefs, jshift, mask, bias, vj, dv, c):
    """:func:`div_binomial` on packed keys.

    ``jshift``/``mask``/``bias`` extract the exponent of the first variable
    where v is nonzero (its entry is ``vj`` > 0); ``dv`` is the key offset of
    x^v. Returns ``(keys, coefs, ok)`` with the keys sorted.
    """
    if keys.shape[0] == 0:
        return keys, coefs, True
    ej = ((keys >> jshift) & mask) - bias
    t = ej // vj
    base = keys - t * dv
    order = np.lexsort((t, base))
    t = t[order]
    base = base[order]
    f = coefs[order]

    new_group = np.ones(len(t), dtype=bool)
    new_group[1:] = base[1:] != base[:-1]
    gstart = np.flatnonzero(new_group)
    gid = np.cumsum(new_group) - 1
    tmin = t[gstart]
    tmax = np.maximum.reduceat(t, gstart)
    glen = tmax - tmin + 1
    goff = np.concatenate(([0], np.cumsum(glen)[:-1]))
    total = int(glen.sum())

    dense = np.zeros(total, dtype=coefs.dtype)
    dense[goff[gid] + (t - tmin[gid])] = f
    dgid = np.repeat(np.arange(len(gstart)), glen)
    rel = np.arange(total) - goff[dgid]
    sign = None
    if c != 1:
        sign = np.where(rel % 2 == 0, 1, -1).astype(coefs.dtype)
        dense = dense * sign
    cs = np.cumsum(dense)
    before = np.concatenate(([0], cs[:-1]))[goff]
    g = cs - np.repeat(before, glen)
    if sign is not None:
        g = g * sign

    last = goff + glen - 1
    if np.any(g[last] != 0):
        return keys[:0], coefs[:0], False
    keep = np.ones(total, dtype=bool)
    keep[last] = False
    keep &= g != 0
    idx = np.flatnonzero(keep)
    gq = dgid[idx]
    out = base[gstart[gq]] + (tmin[gq] + rel[idx]) * dv
    q = g[idx]
    o = np.argsort(out, kind="stable")
    return out[o], q[o], True


def bruhat_table(left, lengths, desc, order):
    """``geq[w, v]`` is True iff ``v <= w`` in Bruhat order."""
    n = lengths.shape[0]
    geq = np.zeros((n, n), dtype=bool)
    idx = np.arange(n)
    for w in order:
        if lengths[w] == 0:
            geq[w] = lengths == 0
            continue
        i = desc[w]
        sw = left[i, w]
        sv = left[i]
        down = lengths[sv] < lengths
        geq[w] = np.where(down, geq[sw, sv], geq[sw, idx])
    return geq
