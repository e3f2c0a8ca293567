"""Rotation-minimizing frames, normal developments, line-fit classifiers.

An adapted frame (t, e1, e2) moves with scalar angular velocity
w = sqrt(omega^2 + chi1^2 + chi2^2); rotation-minimizing (RM) frames are the
minimizers, w = kappa.  The normal development s -> (kappa1(s), ..., kappa_m(s))
of an RM frame turns sphere/plane membership into line geometry: spherical
curves develop onto a line missing the origin (distance 1/r), plane curves
onto a line through it.  Frames are built either by rotating the Frenet frame
through theta = theta0 + int tau, or discretely by the double-reflection
update, which marches through inflections unharmed.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_simpson, simpson

from . import _backend
from ._fd import derivative
from ._fit import fit_hyperplane
from .curve_kernel import FrenetData, frenet_apparatus
from .errors import DegenerateFit, InvalidFrame, NotClosed, NotSpherical, UndefinedFrame


@dataclass(frozen=True)
class RMFrameData:
    """RM frame samples: normals[i] is the i-th normal field, (N, dim)."""

    s: np.ndarray
    t: np.ndarray
    normals: np.ndarray  # (m, N, dim)
    kappas: np.ndarray   # (m, N)
    theta: np.ndarray | None = None  # only for m = 2 seeded from Frenet


@dataclass(frozen=True)
class NormalDevelopment:
    samples: np.ndarray          # (N, m)
    fit_kind: str                # LineNotThroughOrigin | LineThroughOrigin | NotALine
    fit_residual: float
    direction: np.ndarray | None = None
    distance: float = 0.0
    radius: float = np.inf


def rm_from_frenet(fd, theta0=0.0):
    """Rotate the Frenet frame by theta(s) = theta0 + int tau into an RM frame."""
    if not isinstance(fd, FrenetData):
        raise TypeError("rm_from_frenet expects FrenetData")
    if not fd.kappa_defined.all():
        raise UndefinedFrame("Frenet frame undefined somewhere; use rm_double_reflection")
    theta = theta0 + np.concatenate([[0.0], cumulative_simpson(fd.tau, x=fd.s)])
    c, s_ = np.cos(theta)[:, None], np.sin(theta)[:, None]
    n1 = c * fd.n - s_ * fd.b
    n2 = s_ * fd.n + c * fd.b
    kappas = np.stack([fd.kappa * np.cos(theta), fd.kappa * np.sin(theta)])
    return RMFrameData(s=fd.s, t=fd.t, normals=np.stack([n1, n2]), kappas=kappas, theta=theta)


def _complete_normals(t0, n0):
    """Extend (t0, n0) to a full orthonormal basis; extra normals follow n0."""
    dim = len(t0)
    basis = [t0, n0]
    for k in range(dim):
        e = np.zeros(dim)
        e[k] = 1.0
        for v in basis:
            e = e - (e @ v) * v
        if np.linalg.norm(e) > 1e-8:
            basis.append(e / np.linalg.norm(e))
        if len(basis) == dim:
            break
    return np.array(basis[1:])


def rm_double_reflection(curve, init_normal):
    """Discrete RM frame by the double-reflection update (any ambient dim)."""
    pts = curve.points
    if curve.ambient_dim == 2:
        pts = np.column_stack([pts, np.zeros(len(pts))])
    d1 = derivative(curve.params, pts, 1, closed=curve.closed)
    speed = np.linalg.norm(d1, axis=1)
    s = np.concatenate([[0.0], cumulative_simpson(speed, x=curve.params)])
    t = d1 / speed[:, None]
    n0 = np.asarray(init_normal, dtype=float)
    n0 = n0 / np.linalg.norm(n0)
    if abs(n0 @ t[0]) > 1e-8:
        raise InvalidFrame("init_normal must be orthogonal to the initial tangent")
    normals0 = _complete_normals(t[0], n0)
    eta = np.ones(pts.shape[1])
    rolled = _backend.double_reflection(pts, t, normals0, eta)  # (N, m, dim)
    normals = np.ascontiguousarray(np.swapaxes(rolled, 0, 1))
    tp = derivative(s, t, 1, closed=curve.closed)
    kappas = np.einsum("ij,mij->mi", tp, normals)
    theta = None
    if pts.shape[1] == 3:
        fd = frenet_apparatus(curve)
        theta = np.where(
            fd.kappa_defined,
            np.arctan2(-np.einsum("ij,ij->i", normals[0], fd.b),
                       np.einsum("ij,ij->i", normals[0], fd.n)),
            np.nan,
        )
    return RMFrameData(s=s, t=t, normals=normals, kappas=kappas, theta=theta)


def angular_velocity(frame):
    """Scalar angular velocity w = sqrt(omega^2 + chi1^2 + chi2^2) of an adapted frame.

    Accepts RMFrameData, FrenetData, or an (s, t, e1, e2) tuple of arrays.
    """
    if isinstance(frame, RMFrameData):
        s, t, e1, e2 = frame.s, frame.t, frame.normals[0], frame.normals[1]
    elif isinstance(frame, FrenetData):
        s, t, e1, e2 = frame.s, frame.t, frame.n, frame.b
    else:
        s, t, e1, e2 = frame
    tp = derivative(s, t, 1)
    e1p = derivative(s, e1, 1)
    chi2 = np.einsum("ij,ij->i", tp, e1)
    chi1 = -np.einsum("ij,ij->i", tp, e2)
    omega = np.einsum("ij,ij->i", e1p, e2)
    return np.sqrt(omega ** 2 + chi1 ** 2 + chi2 ** 2)


def normal_development(rm):
    """TLS line (hyperplane for m > 2) fit of the curvature samples."""
    samples = np.ascontiguousarray(rm.kappas.T)
    scale = float(np.sqrt((samples ** 2).sum(axis=1).mean()))
    tol = 1e-3 * scale
    if scale == 0.0:
        raise DegenerateFit("all curvatures vanish, development sits at the origin")
    mean = samples.mean(axis=0)
    spread = float(np.sqrt(((samples - mean) ** 2).sum(axis=1).mean()))
    if spread < 1e-6 * scale:
        # development collapses to a point; a circle lands at (1/r, 0)
        d = float(np.linalg.norm(mean))
        if d < 1e-12:
            raise DegenerateFit("development collapses onto the origin")
        return NormalDevelopment(
            samples=samples, fit_kind="LineNotThroughOrigin", fit_residual=spread,
            direction=mean / d, distance=d, radius=1.0 / d,
        )
    normal, offset, residual = fit_hyperplane(samples)
    if residual > tol:
        return NormalDevelopment(samples=samples, fit_kind="NotALine", fit_residual=residual)
    d = abs(offset)
    if d < tol:
        if samples.shape[1] == 2:
            direction = np.array([-normal[1], normal[0]])
        else:
            direction = normal
        return NormalDevelopment(
            samples=samples, fit_kind="LineThroughOrigin", fit_residual=residual,
            direction=direction, distance=0.0, radius=np.inf,
        )
    return NormalDevelopment(
        samples=samples, fit_kind="LineNotThroughOrigin", fit_residual=residual,
        direction=normal, distance=d, radius=1.0 / d,
    )


def development_sphere_center(points, rm, dev):
    """Center P(s) = a - sum_i A_i n_i implied by a spherical development.

    The fitted line <n_hat, x> = d gives A = -n_hat/d; constancy of the
    returned array is the testable converse of the spherical criterion.
    """
    if dev.fit_kind != "LineNotThroughOrigin":
        raise NotSpherical("development line passes through the origin or is not a line")
    A = -dev.direction / dev.distance
    pts = np.asarray(points, dtype=float)
    if pts.shape[1] == rm.normals.shape[2] - 1:
        pts = np.column_stack([pts, np.zeros(len(pts))])
    return pts - np.tensordot(A, rm.normals, axes=(0, 0))


def total_torsion(curve):
    """Quadrature of tau over one period of a closed curve."""
    if not curve.closed:
        raise NotClosed("total torsion needs a closed curve")
    fd = frenet_apparatus(curve)
    if not fd.kappa_defined.all():
        raise UndefinedFrame("torsion undefined at an inflection")
    return float(simpson(fd.tau, x=fd.s))


def holonomy(rm):
    """Closure angle of the transported first normal around the tangent.

    Measured as the rotation taking the final normal back onto the seed;
    for closed curves this equals the total torsion modulo 2 pi (the RM
    frame lags the Frenet one by theta = int tau).
    """
    t0 = rm.t[0]
    n_start = rm.normals[0][0]
    n_end = rm.normals[0][-1]
    return float(np.arctan2(n_start @ np.cross(t0, n_end), n_start @ n_end))
