"""Pure-Python reference implementation of the per-step kernels.

Two loops dominate the runtime of the whole package: fixed-step RK4 on the
frame equations and the double-reflection propagation of rotation-minimizing
normals.  Both are sequential (each step depends on the previous one), so
they cannot be vectorized across steps; the compiled twin in _ckernels.pyx
implements the same signatures.  Backend selection happens in _backend.
"""

import numpy as np

BACKEND = "python"


def frenet_integrate(kappa_half, tau_half, y0, h, n_steps):
    """Integrate alpha' = t, t' = kappa n, n' = -kappa t + tau b, b' = -tau n.

    kappa_half and tau_half sample the coefficient functions at
    s0 + j*h/2 for j = 0..2*n_steps (RK4 needs the half steps).
    y0 is the (4, 3) initial state [alpha, t, n, b]; the frame rows are
    re-orthonormalized by modified Gram-Schmidt after every step.
    Returns the (n_steps + 1, 4, 3) trajectory.
    """
    kappa_half = np.asarray(kappa_half, dtype=float)
    tau_half = np.asarray(tau_half, dtype=float)
    y = np.array(y0, dtype=float)
    if y.shape != (4, 3):
        raise ValueError("state must be (4, 3): alpha, t, n, b")
    out = np.empty((n_steps + 1, 4, 3))
    out[0] = y

    def rhs(k, q, state):
        d = np.empty_like(state)
        d[0] = state[1]
        d[1] = k * state[2]
        d[2] = -k * state[1] + q * state[3]
        d[3] = -q * state[2]
        return d

    for i in range(n_steps):
        k0, km, k1 = kappa_half[2 * i], kappa_half[2 * i + 1], kappa_half[2 * i + 2]
        q0, qm, q1 = tau_half[2 * i], tau_half[2 * i + 1], tau_half[2 * i + 2]
        a1 = rhs(k0, q0, y)
        a2 = rhs(km, qm, y + 0.5 * h * a1)
        a3 = rhs(km, qm, y + 0.5 * h * a2)
        a4 = rhs(k1, q1, y + h * a3)
        y = y + (h / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
        # modified Gram-Schmidt keeps the frame orthonormal over long ranges
        t = y[1]
        t /= np.linalg.norm(t)
        n = y[2] - np.dot(y[2], t) * t
        n /= np.linalg.norm(n)
        b = y[3] - np.dot(y[3], t) * t - np.dot(y[3], n) * n
        b /= np.linalg.norm(b)
        y[1], y[2], y[3] = t, n, b
        out[i + 1] = y
    return out


def double_reflection(points, tangents, normals0, eta, project_position=False):
    """Propagate rotation-minimizing normals along a sampled curve.

    points, tangents: (N, m) arrays; normals0: (k, m) initial normals at the
    first sample; eta: (m,) diagonal metric signs (all ones for Euclidean).
    Each step reflects the normal through the bisector plane of the chord,
    then through the bisector of the reflected and actual next tangent; the
    pair of reflections is an isometry of the eta-metric, so causal types are
    preserved.  Degenerate (metric-null) chords fall back to projection.
    If project_position is set, normals are also kept eta-orthogonal to the
    position vector (curves on central quadrics / space forms).
    Returns (N, k, m).
    """
    pts = np.asarray(points, dtype=float)
    tg = np.asarray(tangents, dtype=float)
    eta = np.asarray(eta, dtype=float)
    nrm = np.atleast_2d(np.asarray(normals0, dtype=float)).copy()
    n_samp, m = pts.shape
    k = nrm.shape[0]
    out = np.empty((n_samp, k, m))
    out[0] = nrm

    def dot(u, v):
        return float(np.dot(u * eta, v))

    for i in range(n_samp - 1):
        v1 = pts[i + 1] - pts[i]
        c1 = dot(v1, v1)
        ok1 = abs(c1) > 1e-14 * float(np.dot(v1, v1) + 1e-300)
        if ok1:
            t_half = tg[i] - (2.0 * dot(tg[i], v1) / c1) * v1
        else:
            t_half = tg[i].copy()
        v2 = tg[i + 1] - t_half
        c2 = dot(v2, v2)
        ok2 = abs(c2) > 1e-14 * float(np.dot(v2, v2) + 1e-300)
        for j in range(k):
            v = nrm[j]
            if ok1:
                v = v - (2.0 * dot(v, v1) / c1) * v1
            if ok2:
                v = v - (2.0 * dot(v, v2) / c2) * v2
            if project_position:
                q = pts[i + 1]
                cq = dot(q, q)
                if abs(cq) > 1e-300:
                    v = v - (dot(v, q) / cq) * q
            tq = tg[i + 1]
            ct = dot(tq, tq)
            if abs(ct) > 1e-300:
                v = v - (dot(v, tq) / ct) * tq
            nn = dot(v, v)
            if abs(nn) > 1e-300:
                v = v / np.sqrt(abs(nn))
            nrm[j] = v
        out[i + 1] = nrm
    return out
