"""Finite-difference derivatives on sampled grids.

Interior points use 4th-order centered stencils, boundary points one-sided
stencils of matching order (Fornberg weights).  Closed uniform grids use
periodic wrapping instead of one-sided ends.  Non-uniform grids fall back to
sliding-window Fornberg weights; closed non-uniform grids are differentiated
with open ends (resample first if the wrap matters).
"""

import numpy as np

# centered stencils on uniform grids, 4th order accurate
_C1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_C2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0
_C3 = np.array([1.0, -8.0, 13.0, 0.0, -13.0, 8.0, -1.0]) / 8.0
_STENCILS = {1: _C1, 2: _C2, 3: _C3}


def fornberg_weights(x, x0, m):
    """Weights w with sum_i w[i] f(x[i]) ~ f^(m)(x0), for arbitrary nodes x."""
    x = np.asarray(x, dtype=float)
    n = len(x)
    c = np.zeros((n, m + 1))
    c1 = 1.0
    c4 = x[0] - x0
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, m)
        c2 = 1.0
        c5 = c4
        c4 = x[i] - x0
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, m]


def _is_uniform(params):
    d = np.diff(params)
    return np.allclose(d, d[0], rtol=1e-9, atol=1e-12 * abs(d[0]))


def _uniform_open(values, h, m):
    w = _STENCILS[m]
    half = len(w) // 2
    n = values.shape[0]
    if n < len(w):
        raise ValueError("need at least %d samples for order-%d derivative" % (len(w), m))
    out = np.empty_like(values)
    acc = np.zeros_like(values[half:n - half])
    for k, wk in enumerate(w):
        if wk != 0.0:
            acc = acc + wk * values[k:n - 2 * half + k]
    out[half:n - half] = acc / h ** m
    # one-sided ends, same width
    npts = len(w)
    xs = np.arange(npts, dtype=float) * h
    for i in range(half):
        wi = fornberg_weights(xs, xs[i], m)
        out[i] = np.tensordot(wi, values[:npts], axes=(0, 0))
        wj = fornberg_weights(xs, xs[npts - 1 - i], m)
        out[n - 1 - i] = np.tensordot(wj, values[n - npts:], axes=(0, 0))
    return out


def _uniform_periodic(values, h, m):
    # values cover the fundamental domain (no repeated closing sample)
    w = _STENCILS[m]
    half = len(w) // 2
    out = np.zeros_like(values)
    for k, wk in enumerate(w):
        if wk != 0.0:
            out = out + wk * np.roll(values, half - k, axis=0)
    return out / h ** m


def _nonuniform(params, values, m):
    npts = len(_STENCILS[m])
    n = len(params)
    if n < npts:
        raise ValueError("need at least %d samples for order-%d derivative" % (npts, m))
    half = npts // 2
    out = np.empty_like(values)
    for i in range(n):
        lo = min(max(i - half, 0), n - npts)
        w = fornberg_weights(params[lo:lo + npts], params[i], m)
        out[i] = np.tensordot(w, values[lo:lo + npts], axes=(0, 0))
    return out


def derivative(params, values, order, closed=False):
    """d^order(values)/d(params)^order sampled at params.

    values may be (N,) or (N, d); closed grids must carry the repeated
    closing sample (values[-1] == values[0]).
    """
    params = np.asarray(params, dtype=float)
    values = np.asarray(values, dtype=float)
    if order not in _STENCILS:
        raise ValueError("order must be 1, 2 or 3")
    if closed and _is_uniform(params):
        h = params[1] - params[0]
        core = _uniform_periodic(values[:-1], h, order)
        return np.concatenate([core, core[:1]], axis=0)
    if _is_uniform(params):
        return _uniform_open(values, params[1] - params[0], order)
    return _nonuniform(params, values, order)
