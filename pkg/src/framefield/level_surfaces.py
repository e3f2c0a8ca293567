"""Level-set membership tests and quadric classification.

A sampled curve lies on a level set of F exactly when g(s) = <grad F, t>
is identically zero; differentiating gives the frame criterion

    <Hess t, t> + b1 kappa1 + b2 kappa2 = 0,   b_i = <grad F, n_i>,

together with b_i' = <Hess t, n_i> (the RM normals absorb no tangential
derivative) and the anchor g(s0) = 0 at one sample.  Quadrics
<B(x - P), x - P> = rho are dispatched on the eigenvalue signs of B: after
rescaling by sqrt|eigenvalue| the curve lands on a sphere (definite B), a
Lorentz sphere (index 1), or a circular cylinder (rank-2 degenerate), and
the corresponding frame classifier decides membership.
"""

from dataclasses import dataclass

import numpy as np

from ._fd import derivative
from .curve_kernel import SampledCurve, resample_by_arclength
from .errors import DegenerateFit, NoLineFit, NotSpherical, UnsupportedSignature
from .indefinite_spaces import (
    iso_apparatus,
    iso_sphere_classify,
    lorentz_rm_frame,
    lorentz_sphere_membership,
)
from .rm_frames import (
    development_sphere_center,
    normal_development,
    rm_double_reflection,
)

KIND_BY_INDEX = {0: "Ellipsoid", 1: "OneSheet", 2: "TwoSheet", 3: "Ellipsoid"}


@dataclass(frozen=True)
class ScalarField:
    f: callable
    grad: callable
    hess: callable


@dataclass(frozen=True)
class QuadricClass:
    index: int
    degenerate: bool
    kind: str


@dataclass(frozen=True)
class LevelMembership:
    on_level_set: bool
    level: float | None
    residual: float
    tangency: float


@dataclass(frozen=True)
class QuadricMembership:
    on_quadric: bool
    rho: float | None
    branch: str


def _fd_step(p):
    return 1e-5 * (1.0 + float(np.linalg.norm(p)))


def _fd_grad(f, p):
    p = np.asarray(p, dtype=float)
    h = _fd_step(p)
    g = np.empty(len(p))
    for i in range(len(p)):
        e = np.zeros(len(p))
        e[i] = h
        g[i] = (f(p - 2 * e) - 8 * f(p - e) + 8 * f(p + e) - f(p + 2 * e)) / (12 * h)
    return g


def _fd_hess(f, p):
    p = np.asarray(p, dtype=float)
    h = _fd_step(p)
    n = len(p)
    out = np.empty((n, n))
    f0 = f(p)
    for i in range(n):
        ei = np.zeros(n)
        ei[i] = h
        out[i, i] = (-f(p + 2 * ei) + 16 * f(p + ei) - 30 * f0
                     + 16 * f(p - ei) - f(p - 2 * ei)) / (12 * h * h)
        for j in range(i + 1, n):
            ej = np.zeros(n)
            ej[j] = h
            out[i, j] = out[j, i] = (f(p + ei + ej) - f(p + ei - ej)
                                     - f(p - ei + ej) + f(p - ei - ej)) / (4 * h * h)
    return 0.5 * (out + out.T)


def scalar_field(f, grad=None, hess=None):
    """ScalarField with 5-point finite-difference fallbacks for grad/hess."""
    if grad is None:
        grad = lambda p, _f=f: _fd_grad(_f, p)
    if hess is None:
        hess = lambda p, _f=f: _fd_hess(_f, p)
    return ScalarField(f=f, grad=grad, hess=hess)


def quadric_field(B, P=None):
    """F(x) = <B(x-P), x-P> with analytic gradient 2B(x-P) and Hessian 2B."""
    B = np.asarray(B, dtype=float)
    P = np.zeros(len(B)) if P is None else np.asarray(P, dtype=float)
    return ScalarField(
        f=lambda x: float((x - P) @ B @ (x - P)),
        grad=lambda x: 2.0 * B @ (x - P),
        hess=lambda x: 2.0 * B.copy(),
    )


def hessian_index(field, p):
    """Sign pattern of the Hessian eigenvalues at p."""
    H = np.asarray(field.hess(np.asarray(p, dtype=float)), dtype=float)
    if np.abs(H - H.T).max() > 1e-6 * max(np.abs(H).max(), 1e-300):
        raise UnsupportedSignature("Hessian is not symmetric")
    w = np.linalg.eigvalsh(H)
    thr = 1e-8 * max(float(np.abs(w).max()), 1e-300)
    degenerate = bool(np.any(np.abs(w) < thr))
    index = int((w < -thr).sum())
    kind = "DegenerateCylinderLike" if degenerate else KIND_BY_INDEX[index]
    return QuadricClass(index=index, degenerate=degenerate, kind=kind)


def level_membership_euclidean(curve, rm, field):
    """Frame criterion for membership of an arc-length curve in a level set."""
    pts = curve.points
    grads = np.array([field.grad(p) for p in pts], dtype=float)
    hessians = np.array([field.hess(p) for p in pts], dtype=float)
    t = rm.t
    n1, n2 = rm.normals[0], rm.normals[1]
    k1, k2 = rm.kappas[0], rm.kappas[1]
    ht = np.einsum("ijk,ik->ij", hessians, t)
    b0 = np.einsum("ij,ij->i", ht, t)
    b1 = np.einsum("ij,ij->i", grads, n1)
    b2 = np.einsum("ij,ij->i", grads, n2)
    expr = b0 + b1 * k1 + b2 * k2
    residual = float(np.sqrt(np.mean(expr ** 2)))
    gnorm = np.linalg.norm(grads, axis=1)
    knorm = np.sqrt(k1 ** 2 + k2 ** 2)
    scale = float(np.sqrt(np.mean((gnorm * knorm + np.abs(b0)) ** 2)))
    scale = max(scale, 1e-300)
    # RM consistency: b_i' must reproduce <Hess t, n_i>
    rhs1 = np.einsum("ij,ij->i", ht, n1)
    rhs2 = np.einsum("ij,ij->i", ht, n2)
    b1p = derivative(rm.s, b1, 1, closed=curve.closed)
    b2p = derivative(rm.s, b2, 1, closed=curve.closed)
    dscale = max(1.0, float(np.abs(rhs1).max()), float(np.abs(rhs2).max()))
    deriv_ok = (np.abs(b1p - rhs1).max() < 1e-3 * dscale
                and np.abs(b2p - rhs2).max() < 1e-3 * dscale)
    tangency = float((np.abs(np.einsum("ij,ij->i", grads, t))
                      / np.maximum(gnorm, 1e-300)).min())
    on = residual < 1e-4 * scale and deriv_ok and tangency < 1e-6
    level = float(np.mean([field.f(p) for p in pts])) if on else None
    return LevelMembership(on_level_set=on, level=level, residual=residual,
                           tangency=tangency)


def _perp_seed(t0):
    e = np.eye(len(t0))[np.argmin(np.abs(t0))]
    n = e - (e @ t0) * t0
    return n / np.linalg.norm(n)


def _euclidean_branch(curve, y):
    # the development criterion is center-blind, so the reconstructed center
    # must additionally land at the adapted origin (that is where P went)
    adapted = SampledCurve(params=curve.params, points=y, closed=curve.closed)
    adapted = resample_by_arclength(adapted, adapted.n_samples)
    d1 = derivative(adapted.params, adapted.points, 1, closed=adapted.closed)
    t0 = d1[0] / np.linalg.norm(d1[0])
    rm = rm_double_reflection(adapted, _perp_seed(t0))
    try:
        dev = normal_development(rm)
        centers = development_sphere_center(adapted.points, rm, dev)
    except (DegenerateFit, NotSpherical):
        return QuadricMembership(on_quadric=False, rho=None, branch="euclidean")
    if np.linalg.norm(centers.mean(axis=0)) > 1e-2 * dev.radius:
        return QuadricMembership(on_quadric=False, rho=None, branch="euclidean")
    return QuadricMembership(on_quadric=True, rho=dev.radius ** 2, branch="euclidean")


def _lorentz_branch(curve, y):
    adapted = SampledCurve(params=curve.params, points=y, closed=curve.closed)
    try:
        member = lorentz_sphere_membership(lorentz_rm_frame(adapted))
    except NoLineFit:
        return QuadricMembership(on_quadric=False, rho=None, branch="lorentz")
    if member is None:
        return QuadricMembership(on_quadric=False, rho=None, branch="lorentz")
    scale = member.radius if member.kind != "LightCone" else float(
        np.sqrt((adapted.points ** 2).sum(axis=1).mean()))
    if np.linalg.norm(member.center) > 1e-2 * scale:
        return QuadricMembership(on_quadric=False, rho=None, branch="lorentz")
    rho = {"PseudoSphere": member.radius ** 2,
           "PseudoHyperbolic": -member.radius ** 2,
           "LightCone": 0.0}[member.kind]
    return QuadricMembership(on_quadric=True, rho=rho, branch="lorentz")


def _iso_branch(curve, y):
    adapted = SampledCurve(params=curve.params, points=y, closed=curve.closed)
    iso = iso_apparatus(adapted)
    out = iso_sphere_classify(iso)
    if out is None or out.kind != "Cylindrical":
        return QuadricMembership(on_quadric=False, rho=None, branch="isotropic")
    # top-view circle center p + n/kappa must sit on the cylinder axis
    axis = iso.points[:, :2] + iso.n[:, :2] / iso.kappa[:, None]
    if np.linalg.norm(axis.mean(axis=0)) > 1e-2 * out.radius:
        return QuadricMembership(on_quadric=False, rho=None, branch="isotropic")
    return QuadricMembership(on_quadric=True, rho=out.radius ** 2, branch="isotropic")


def quadric_membership(curve, B, P=None):
    """Frame-criterion membership of a curve in <B(x-P), x-P> = rho."""
    B = np.asarray(B, dtype=float)
    P = np.zeros(3) if P is None else np.asarray(P, dtype=float)
    w, Q = np.linalg.eigh(B)
    thr = 1e-8 * max(float(np.abs(w).max()), 1e-300)
    npos = int((w > thr).sum())
    nneg = int((w < -thr).sum())
    if nneg > npos:
        inner = quadric_membership(curve, -B, P)
        rho = None if inner.rho is None else -inner.rho
        return QuadricMembership(on_quadric=inner.on_quadric, rho=rho,
                                 branch=inner.branch)
    x = (curve.points - P) @ Q  # rows: samples in the eigenbasis
    if npos + nneg == 3:
        if nneg == 0:
            y = x * np.sqrt(w)
            return _euclidean_branch(curve, y)
        # order positive eigendirections first to match the (+,+,-) metric
        order = np.argsort(w)[::-1]
        y = x[:, order] * np.sqrt(np.abs(w[order]))
        return _lorentz_branch(curve, y)
    if npos == 2 and nneg == 0:
        # rank-2 cylinder: the kernel direction is the isotropic axis
        order = np.argsort(np.abs(w))[::-1]
        scalef = np.sqrt(np.abs(w[order]))
        scalef[2] = 1.0
        y = x[:, order] * scalef
        return _iso_branch(curve, y)
    raise UnsupportedSignature("quadric signature (%d,%d) unsupported" % (npos, nneg))
