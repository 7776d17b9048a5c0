"""Numeric inner loops.

Every kernel exists twice: a loop form compiled by numba and a vectorised
numpy form. The module-level names (``convolve``, ``confluent_matrix``, ...)
point at whichever family :mod:`cvinv._accel` selected. Both families are
always importable so tests and the benchmark can compare them side by side.

Kernels take and return plain ``complex128``/``float64``/``int64`` arrays and
never raise; failure is reported through return codes and turned into
exceptions by the callers.
"""
import math

import numpy as np

from ._accel import USE_NUMBA, njit

MAX_ORDER = 170

# factorials 0!..170! as doubles; 171! overflows
FACTORIALS = np.array([float(math.factorial(i)) for i in range(MAX_ORDER + 1)])

PIVOT_FLOOR = 1e-300


# ---------------------------------------------------------------------------
# loop forms (numba)
# ---------------------------------------------------------------------------

def _convolve_loops(a, b):
    la = a.shape[0]
    lb = b.shape[0]
    out = np.zeros(la + lb - 1, dtype=np.complex128)
    for i in range(la):
        ai = a[i]
        for k in range(lb):
            out[i + k] += ai * b[k]
    return out


def _confluent_matrix_loops(nodes, mults, fact):
    n = nodes.shape[0]
    size = 0
    for j in range(n):
        size += mults[j]
    out = np.zeros((size, size), dtype=np.complex128)
    powers = np.empty(size, dtype=np.complex128)
    col = 0
    for j in range(n):
        x = nodes[j]
        powers[0] = 1.0
        for m in range(1, size):
            powers[m] = powers[m - 1] * x
        for s in range(mults[j]):
            for k in range(s, size):
                out[k, col] = (fact[k] / fact[k - s]) * powers[k - s]
            col += 1
    return out


def _h_derivatives_loops(nodes, mults, j, t_max, fact):
    n = nodes.shape[0]
    xj = nodes[j]
    vals = np.zeros(t_max + 1, dtype=np.complex128)
    prod = 1.0 + 0.0j
    for i in range(n):
        if i != j:
            d = xj - nodes[i]
            for _ in range(mults[i]):
                prod *= d
    vals[0] = 1.0 / prod
    if t_max == 0:
        return vals
    # psum[m] = sum_i l_i / (x_i - x_j)^(m+1): the m-th derivative of the
    # log-derivative of h_j at x_j, divided by m!
    psum = np.zeros(t_max, dtype=np.complex128)
    for i in range(n):
        if i != j:
            r = 1.0 / (nodes[i] - xj)
            rp = r
            for m in range(t_max):
                psum[m] += mults[i] * rp
                rp *= r
    for t in range(1, t_max + 1):
        acc = 0.0 + 0.0j
        for k in range(t):
            binom = fact[t - 1] / (fact[k] * fact[t - 1 - k])
            acc += binom * vals[k] * fact[t - k - 1] * psum[t - k - 1]
        vals[t] = acc
    return vals


def _lu_inverse_loops(m):
    size = m.shape[0]
    a = m.copy()
    perm = np.arange(size)
    for c in range(size):
        piv = c
        best = abs(a[c, c])
        for r in range(c + 1, size):
            v = abs(a[r, c])
            if v > best:
                best = v
                piv = r
        if not best > PIVOT_FLOOR:
            return np.zeros((size, size), dtype=np.complex128), c
        if piv != c:
            for q in range(size):
                tmp = a[c, q]
                a[c, q] = a[piv, q]
                a[piv, q] = tmp
            tp = perm[c]
            perm[c] = perm[piv]
            perm[piv] = tp
        inv_p = 1.0 / a[c, c]
        for r in range(c + 1, size):
            f = a[r, c] * inv_p
            a[r, c] = f
            if f != 0:
                for q in range(c + 1, size):
                    a[r, q] -= f * a[c, q]
    inv = np.zeros((size, size), dtype=np.complex128)
    y = np.empty(size, dtype=np.complex128)
    for col in range(size):
        # solve L U x = P e_col
        for r in range(size):
            acc = 1.0 + 0.0j if perm[r] == col else 0.0 + 0.0j
            for q in range(r):
                acc -= a[r, q] * y[q]
            y[r] = acc
        for r in range(size - 1, -1, -1):
            acc = y[r]
            for q in range(r + 1, size):
                acc -= a[r, q] * inv[q, col]
            inv[r, col] = acc / a[r, r]
    return inv, -1


def _taylor_shift_loops(coeffs, center):
    # repeated synthetic division by (x - center)
    b = coeffs.copy()
    d = b.shape[0] - 1
    for i in range(d):
        for k in range(d - 1, i - 1, -1):
            b[k] += center * b[k + 1]
    return b


def _reciprocal_series_loops(a, order):
    out = np.zeros(order + 1, dtype=np.complex128)
    inv0 = 1.0 / a[0]
    out[0] = inv0
    deg = a.shape[0] - 1
    for t in range(1, order + 1):
        acc = 0.0 + 0.0j
        top = t if t < deg else deg
        for r in range(1, top + 1):
            acc += a[r] * out[t - r]
        out[t] = -acc * inv0
    return out


# ---------------------------------------------------------------------------
# numpy forms
# ---------------------------------------------------------------------------

def _convolve_numpy(a, b):
    return np.convolve(a, b).astype(np.complex128, copy=False)


def _confluent_matrix_numpy(nodes, mults, fact):
    size = int(mults.sum())
    k = np.arange(size)
    blocks = []
    for x, ell in zip(nodes, mults):
        powers = np.cumprod(np.concatenate(([1.0 + 0.0j], np.full(size - 1, x))))
        s = np.arange(ell)
        shift = k[:, None] - s[None, :]
        valid = shift >= 0
        safe = np.where(valid, shift, 0)
        block = np.where(valid, (fact[k][:, None] / fact[safe]) * powers[safe], 0.0)
        blocks.append(block)
    return np.hstack(blocks).astype(np.complex128)


def _h_derivatives_numpy(nodes, mults, j, t_max, fact):
    others = np.arange(nodes.shape[0]) != j
    diff = nodes[others] - nodes[j]
    ell = mults[others]
    vals = np.zeros(t_max + 1, dtype=np.complex128)
    vals[0] = 1.0 / np.prod((-diff) ** ell) if ell.size else 1.0
    if t_max == 0:
        return vals
    recip = 1.0 / diff
    m = np.arange(1, t_max + 1)
    psum = (ell[None, :] * recip[None, :] ** m[:, None]).sum(axis=1) if ell.size \
        else np.zeros(t_max, dtype=np.complex128)
    for t in range(1, t_max + 1):
        k = np.arange(t)
        binom = fact[t - 1] / (fact[k] * fact[t - 1 - k])
        vals[t] = np.sum(binom * vals[:t] * fact[t - k - 1] * psum[t - k - 1])
    return vals


def _lu_inverse_numpy(m):
    size = m.shape[0]
    a = np.array(m, dtype=np.complex128, copy=True)
    perm = np.arange(size)
    for c in range(size):
        piv = c + int(np.argmax(np.abs(a[c:, c])))
        if not abs(a[piv, c]) > PIVOT_FLOOR:
            return np.zeros((size, size), dtype=np.complex128), c
        if piv != c:
            a[[c, piv]] = a[[piv, c]]
            perm[[c, piv]] = perm[[piv, c]]
        a[c + 1:, c] /= a[c, c]
        a[c + 1:, c + 1:] -= np.outer(a[c + 1:, c], a[c, c + 1:])
    rhs = np.zeros((size, size), dtype=np.complex128)
    rhs[np.arange(size), perm] = 1.0
    # rhs[r] is row perm[r] of the identity, i.e. P @ I
    y = rhs
    for r in range(size):
        y[r] -= a[r, :r] @ y[:r]
    x = y
    for r in range(size - 1, -1, -1):
        x[r] = (x[r] - a[r, r + 1:] @ x[r + 1:]) / a[r, r]
    return x, -1


def _taylor_shift_numpy(coeffs, center):
    d = coeffs.shape[0] - 1
    idx = np.arange(d + 1)
    # binom[m, s] = C(m, s) for s <= m
    binom = np.zeros((d + 1, d + 1))
    for mm in range(d + 1):
        binom[mm, : mm + 1] = [math.comb(mm, s) for s in range(mm + 1)]
    expo = idx[:, None] - idx[None, :]
    cpow = np.where(expo >= 0, center ** np.clip(expo, 0, None), 0.0)
    return (coeffs[:, None] * binom * cpow).sum(axis=0).astype(np.complex128)


def _reciprocal_series_numpy(a, order):
    out = np.zeros(order + 1, dtype=np.complex128)
    out[0] = 1.0 / a[0]
    deg = a.shape[0] - 1
    for t in range(1, order + 1):
        top = min(t, deg)
        out[t] = -(a[1:top + 1] @ out[t - 1::-1][:top]) / a[0]
    return out


NUMPY_KERNELS = {
    "convolve": _convolve_numpy,
    "confluent_matrix": _confluent_matrix_numpy,
    "h_derivatives": _h_derivatives_numpy,
    "lu_inverse": _lu_inverse_numpy,
    "taylor_shift": _taylor_shift_numpy,
    "reciprocal_series": _reciprocal_series_numpy,
}

NUMBA_KERNELS = {
    "convolve": njit(_convolve_loops),
    "confluent_matrix": njit(_confluent_matrix_loops),
    "h_derivatives": njit(_h_derivatives_loops),
    "lu_inverse": njit(_lu_inverse_loops),
    "taylor_shift": njit(_taylor_shift_loops),
    "reciprocal_series": njit(_reciprocal_series_loops),
}

ACTIVE = NUMBA_KERNELS if USE_NUMBA else NUMPY_KERNELS

convolve = ACTIVE["convolve"]
confluent_matrix = ACTIVE["confluent_matrix"]
h_derivatives = ACTIVE["h_derivatives"]
lu_inverse = ACTIVE["lu_inverse"]
taylor_shift = ACTIVE["taylor_shift"]
reciprocal_series = ACTIVE["reciprocal_series"]
