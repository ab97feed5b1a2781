"""Hot loops over GF(p): modular RREF and batched algebra products.

Two implementations live side by side.  The numba one compiles the loops
with ``@njit``; the numpy one is vectorised and has no compiled code.  The
numba path is used when numba imports and ``NONASSOC_DISABLE_JIT`` is unset
(or "0").  Both take and return ``int64`` arrays whose entries lie in
``range(p)``; p must be below 2**31 so products fit in int64.
"""

import os
from types import SimpleNamespace

import numpy as np

__all__ = ["rref_modp", "batch_mul", "USE_JIT", "numpy_impl", "numba_impl", "enumerate_block"]


# -- numpy path --------------------------------------------------------------


def _rref_modp_numpy(m, p):
    a = np.array(m, dtype=np.int64) % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = a[r] * pow(int(a[r, c]), p - 2, p) % p
        f = a[:, c].copy()
        f[r] = 0
        a -= np.outer(f, a[r])
        a %= p
        pivots.append(c)
        r += 1
    return a, np.array(pivots, dtype=np.int64)


def _batch_mul_numpy(u, v, c, p):
    # (b,i),(i,j,k) -> (b,j,k), then contract j against v.
    t = np.tensordot(u, c, axes=([1], [0])) % p
    return np.einsum("bj,bjk->bk", v, t) % p


numpy_impl = SimpleNamespace(rref_modp=_rref_modp_numpy, batch_mul=_batch_mul_numpy, name="numpy")


# -- numba path --------------------------------------------------------------


def _make_numba():
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a declared dependency
        return None

    @njit(cache=True)
    def _inv(a, p):
        result = 1
        base = a % p
        e = p - 2
        while e > 0:
            if e & 1:
                result = result * base % p
            base = base * base % p
            e >>= 1
        return result

    @njit(cache=True)
    def rref(m, p):
        a = m.copy()
        rows, cols = a.shape
        for i in range(rows):
            for j in range(cols):
                a[i, j] %= p
        pivots = np.empty(min(rows, cols), dtype=np.int64)
        r = 0
        for c in range(cols):
            if r == rows:
                break
            k = -1
            for i in range(r, rows):
                if a[i, c] != 0:
                    k = i
                    break
            if k < 0:
                continue
            if k != r:
                for j in range(cols):
                    tmp = a[r, j]
                    a[r, j] = a[k, j]
                    a[k, j] = tmp
            s = _inv(a[r, c], p)
            for j in range(c, cols):
                a[r, j] = a[r, j] * s % p
            for i in range(rows):
                if i == r:
                    continue
                f = a[i, c]
                if f == 0:
                    continue
                for j in range(c, cols):
                    a[i, j] = (a[i, j] - f * a[r, j]) % p
            pivots[r] = c
            r += 1
        return a, pivots[:r].copy()

    @njit(cache=True)
    def batch_mul(u, v, c, p):
        n, d = u.shape
        out = np.zeros((n, d), dtype=np.int64)
        for b in range(n):
            for i in range(d):
                ui = u[b, i]
                if ui == 0:
                    continue
                for j in range(d):
                    vj = v[b, j]
                    if vj == 0:
                        continue
                    w = ui * vj % p
                    for k in range(d):
                        ck = c[i, j, k]
                        if ck != 0:
                            out[b, k] = (out[b, k] + w * ck) % p
        return out

    return SimpleNamespace(rref_modp=rref, batch_mul=batch_mul, name="numba")


numba_impl = _make_numba()

USE_JIT = numba_impl is not None and os.environ.get("NONASSOC_DISABLE_JIT", "0") in ("", "0")

_active = numba_impl if USE_JIT else numpy_impl


def rref_modp(m, p):
    """Reduced row-echelon form of ``m`` over GF(p); returns ``(R, pivots)``."""
    a = np.ascontiguousarray(m, dtype=np.int64)
    if a.size == 0:
        return a.reshape(a.shape).copy(), np.zeros(0, dtype=np.int64)
    return _active.rref_modp(a, int(p))


def batch_mul(u, v, c, p):
    """Row-wise products ``u[b] * v[b]`` in the algebra with structure tensor ``c``."""
    return _active.batch_mul(
        np.ascontiguousarray(u, dtype=np.int64),
        np.ascontiguousarray(v, dtype=np.int64),
        np.ascontiguousarray(c, dtype=np.int64),
        int(p),
    )


def enumerate_block(start, count, p, width):
    """Rows ``start .. start+count-1`` of the base-p odometer over ``width`` digits.

    Digit 0 varies fastest, so row i is the little-endian expansion of i.
    """
    idx = np.arange(start, start + count, dtype=np.int64)
    powers = p ** np.arange(width, dtype=np.int64)
    return (idx[:, None] // powers[None, :]) % p
