"""numba twins of the numpy kernels (int64 coefficients only)."""

import numpy as np
from numba import njit


@njit(cache=True)
def combine(keys, coefs):
    n = keys.shape[0]
    out_k = np.empty(n, dtype=np.int64)
    out_c = np.empty(n, dtype=np.int64)
    if n == 0:
        return out_k, out_c
    order = np.argsort(keys, kind="mergesort")
    m = 0
    cur_k = keys[order[0]]
    acc = 0
    for idx in range(n):
        p = order[idx]
        k = keys[p]
        if k != cur_k:
            if acc != 0:
                out_k[m] = cur_k
                out_c[m] = acc
                m += 1
            cur_k = k
            acc = 0
        acc += coefs[p]
    if acc != 0:
        out_k[m] = cur_k
        out_c[m] = acc
        m += 1
    return out_k[:m], out_c[:m]


@njit(cache=True)
def mul(ka, ca, kb, cb, zero_key):
    na = ka.shape[0]
    nb = kb.shape[0]
    keys = np.empty(na * nb, dtype=np.int64)
    coefs = np.empty(na * nb, dtype=np.int64)
    p = 0
    for i in range(na):
        for j in range(nb):
            keys[p] = ka[i] + kb[j] - zero_key
            coefs[p] = ca[i] * cb[j]
            p += 1
    return combine(keys, coefs)


@njit(cache=True)
def div_binomial(exps, coefs, v, c):
    """Returns (exps, coefs, status): 1 ok, 0 not divisible, -1 sort key overflow."""
    n, nv = exps.shape
    empty_e = np.empty((0, nv), dtype=np.int64)
    empty_c = np.empty(0, dtype=np.int64)
    if n == 0:
        return empty_e, empty_c, 1
    j = 0
    while v[j] == 0:
        j += 1
    vj = v[j]
    t = np.empty(n, dtype=np.int64)
    base = np.empty((n, nv), dtype=np.int64)
    for k in range(n):
        tk = exps[k, j] // vj
        t[k] = tk
        for f in range(nv):
            base[k, f] = exps[k, f] - tk * v[f]

    # mixed-radix sort key over (base columns..., t)
    lo = np.empty(nv + 1, dtype=np.int64)
    span = np.empty(nv + 1, dtype=np.int64)
    for f in range(nv + 1):
        mn = base[0, f] if f < nv else t[0]
        mx = mn
        for k in range(n):
            val = base[k, f] if f < nv else t[k]
            if val < mn:
                mn = val
            if val > mx:
                mx = val
        lo[f] = mn
        span[f] = mx - mn + 1
    limit = np.int64(1) << np.int64(62)
    radix = np.int64(1)
    for f in range(nv + 1):
        if radix > limit // span[f]:
            return empty_e, empty_c, -1
        radix *= span[f]
    skey = np.zeros(n, dtype=np.int64)
    for k in range(n):
        acc = np.int64(0)
        for f in range(nv + 1):
            val = base[k, f] if f < nv else t[k]
            acc = acc * span[f] + (val - lo[f])
        skey[k] = acc
    order = np.argsort(skey, kind="mergesort")

    # upper bound on output size: sum over lines of (tmax - tmin)
    bound = 0
    start = 0
    while start < n:
        end = start
        while end + 1 < n and skey[order[end + 1]] // span[nv] == skey[order[start]] // span[nv]:
            end += 1
        bound += t[order[end]] - t[order[start]]
        start = end + 1

    out_e = np.empty((bound, nv), dtype=np.int64)
    out_c = np.empty(bound, dtype=np.int64)
    m = 0
    start = 0
    while start < n:
        end = start
        while end + 1 < n and skey[order[end + 1]] // span[nv] == skey[order[start]] // span[nv]:
            end += 1
        p0 = order[start]
        tmin = t[p0]
        tmax = t[order[end]]
        g = np.int64(0)
        q = start
        for pos in range(tmin, tmax + 1):
            fv = np.int64(0)
            if q <= end and t[order[q]] == pos:
                fv = coefs[order[q]]
                q += 1
            g = fv + c * g
            if pos < tmax:
                if g != 0:
                    for f in range(nv):
                        out_e[m, f] = base[p0, f] + pos * v[f]
                    out_c[m] = g
                    m += 1
            elif g != 0:
                return empty_e, empty_c, 0
        start = end + 1
    return out_e[:m], out_c[:m], 1


@njit(cache=True)
def add_sorted(ka, ca, kb, cb):
    """Merge two sorted-key polynomials; status 0 if a coefficient reaches 2^62."""
    na = ka.shape[0]
    nb = kb.shape[0]
    out_k = np.empty(na + nb, dtype=np.int64)
    out_c = np.empty(na + nb, dtype=np.int64)
    limit = np.int64(1) << np.int64(62)
    i = 0
    j = 0
    m = 0
    while i < na or j < nb:
        if j >= nb or (i < na and ka[i] < kb[j]):
            out_k[m] = ka[i]
            out_c[m] = ca[i]
            i += 1
            m += 1
        elif i >= na or kb[j] < ka[i]:
            out_k[m] = kb[j]
            out_c[m] = cb[j]
            j += 1
            m += 1
        else:
            s = ca[i] + cb[j]
            i += 1
            j += 1
            if s != 0:
                if s >= limit or -s >= limit:
                    return out_k[:0], out_c[:0], 0
                out_k[m] = ka[i - 1]
                out_c[m] = s
                m += 1
    return out_k[:m], out_c[:m], 1


@njit(cache=True)
def div_binomial_keys(keys, coefs, jshift, mask, bias, vj, dv, c):
    """Key-space exact division; status 1 ok, 0 not divisible, -1 coefficient overflow."""
    n = keys.shape[0]
    if n == 0:
        return keys[:0], coefs[:0], 1
    t = np.empty(n, dtype=np.int64)
    base = np.empty(n, dtype=np.int64)
    for k in range(n):
        ej = ((keys[k] >> jshift) & mask) - bias
        tk = ej // vj
        t[k] = tk
        base[k] = keys[k] - tk * dv
    o1 = np.argsort(t, kind="mergesort")
    b1 = base[o1]
    o2 = np.argsort(b1, kind="mergesort")
    order = o1[o2]
    bound = 0
    start = 0
    while start < n:
        end = start
        while end + 1 < n and base[order[end + 1]] == base[order[start]]:
            end += 1
        bound += t[order[end]] - t[order[start]]
        start = end + 1
    out_k = np.empty(bound, dtype=np.int64)
    out_c = np.empty(bound, dtype=np.int64)
    limit = np.int64(1) << np.int64(62)
    m = 0
    start = 0
    while start < n:
        end = start
        while end + 1 < n and base[order[end + 1]] == base[order[start]]:
            end += 1
        b = base[order[start]]
        tmin = t[order[start]]
        tmax = t[order[end]]
        g = np.int64(0)
        q = start
        for pos in range(tmin, tmax + 1):
            fv = np.int64(0)
            if q <= end and t[order[q]] == pos:
                fv = coefs[order[q]]
                q += 1
            g = fv + c * g
            if g >= limit or -g >= limit:
                return keys[:0], coefs[:0], -1
            if pos < tmax:
                if g != 0:
                    out_k[m] = b + pos * dv
                    out_c[m] = g
                    m += 1
            elif g != 0:
                return keys[:0], coefs[:0], 0
        start = end + 1
    out_k = out_k[:m]
    out_c = out_c[:m]
    o = np.argsort(out_k, kind="mergesort")
    return out_k[o], out_c[o], 1


@njit(cache=True)
def bruhat_table(left, lengths, desc, order):
    n = lengths.shape[0]
    geq = np.zeros((n, n), dtype=np.bool_)
    for w in order:
        if lengths[w] == 0:
            for v in range(n):
                geq[w, v] = lengths[v] == 0
            continue
        i = desc[w]
        sw = left[i, w]
        for v in range(n):
            sv = left[i, v]
            if lengths[sv] < lengths[v]:
                geq[w, v] = geq[sw, sv]
            else:
                geq[w, v] = geq[sw, v]
    return geq
