"""Curves in Lorentz-Minkowski space E3_1 and simply isotropic space I3.

The Lorentz metric is fixed as <u,v>_1 = u1 v1 + u2 v2 - u3 v3 (index on the
last coordinate); the isotropic metric is the degenerate diag(1,1,0), whose
geometry happens in the top view (x, y).  Frames follow the generalized
Bishop equations

    t' = eps1 kappa1 n1 + kappa2 n2,   n_i' = -eps kappa_i t,

with eps = <t,t>_1, eps1 = <n1,n1>_1 and n2 = t x n1, so <n2,n2>_1 = +1 for
both timelike curves (eps1 = +1) and spacelike curves (n1 chosen timelike,
eps1 = -1).  At each sample the development point (kappa1, kappa2) obeys the
conic law eta kappa^2 = eps1 kappa1^2 + kappa2^2, eta = <n,n>_1.

Lightlike curves get the pseudo arc length (|<a'',a''>_1|^{1/4} integrand,
normalizing <a'',a''>_1 = 1) and the null frame (t, z1, z2) with z2 null,
<t,z2>_1 = -1; straight lines are the kappa1 = 0 degenerate case.

Spacelike curves whose principal normal changes causal character along the
arc are rejected rather than re-framed by swapping the normal pair.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.integrate import cumulative_simpson
from scipy.interpolate import CubicSpline, make_interp_spline

from . import _backend
from ._fd import derivative
from ._fit import fit_hyperplane
from .curve_kernel import SampledCurve, _invert_monotone
from .errors import (
    DegenerateLightlike,
    InvalidRange,
    LightlikeUnsupported,
    MixedCausalCharacter,
    NoLineFit,
    NotAdmissible,
)

ETA = np.array([1.0, 1.0, -1.0])
LIGHT_TOL = 1e-10


class CausalCharacter(Enum):
    Spacelike = "Spacelike"
    Timelike = "Timelike"
    Lightlike = "Lightlike"


@dataclass(frozen=True)
class LorentzRMData:
    s: np.ndarray
    points: np.ndarray
    t: np.ndarray
    n1: np.ndarray
    n2: np.ndarray
    kappas: np.ndarray  # (2, N)
    eps: int
    eps1: int


@dataclass(frozen=True)
class NullFrameData:
    s: np.ndarray
    points: np.ndarray
    t: np.ndarray
    z1: np.ndarray
    z2: np.ndarray
    kappas: np.ndarray  # (3, N)
    is_line: bool


@dataclass(frozen=True)
class IsoFrameData:
    s: np.ndarray
    points: np.ndarray
    t: np.ndarray
    n: np.ndarray
    b: np.ndarray
    kappa: np.ndarray
    tau: np.ndarray
    rm_theta: np.ndarray
    kappas: np.ndarray  # (2, N)


@dataclass(frozen=True)
class LorentzSphere:
    kind: str  # PseudoSphere | PseudoHyperbolic | LightCone
    center: np.ndarray
    radius: float
    coeffs: tuple
    fit_residual: float


def minkowski_dot(u, v):
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return (u * v * ETA).sum(axis=-1)


def causal_character(v, metric_index=1):
    if metric_index != 1:
        raise InvalidRange("only index 1 is supported")
    v = np.asarray(v, dtype=float)
    q = float(minkowski_dot(v, v))
    if abs(q) < LIGHT_TOL * float((v * v).sum()):
        return CausalCharacter.Lightlike
    return CausalCharacter.Spacelike if q > 0 else CausalCharacter.Timelike


def lorentz_cross(u, v):
    """Lorentzian vector product: <u x v, w>_1 = det(u, v, w) for all w."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return np.cross(u, v) * ETA


def _curve_character(d1):
    """Consensus causal character of sampled velocities: -1, 0 or +1.

    Lightlike needs the slack loosened to 1e-6 relative because one-sided
    difference stencils at the ends do not keep <a',a'> at 1e-10 of the
    Euclidean norm even for exactly null curves.
    """
    q = minkowski_dot(d1, d1)
    eu = (d1 * d1).sum(axis=-1)
    if float(np.abs(q).max()) < 1e-6 * float(eu.max()):
        return 0
    kinds = np.where(np.abs(q) < LIGHT_TOL * eu, 0, np.sign(q)).astype(int)
    if len(set(kinds.tolist())) != 1:
        raise MixedCausalCharacter("causal character changes along the curve")
    return int(kinds[0])


def _fit_spline(params, pts, closed):
    """Quintic interpolant of the samples (cubic when too few points).

    Downstream third derivatives come out of this fit; a cubic interpolant
    leaves them only O(h)-accurate, a quintic O(h^3).
    """
    k = 5 if len(params) > 5 else 3
    if closed:
        return make_interp_spline(params, pts, k=k, bc_type="periodic", axis=0)
    return make_interp_spline(params, pts, k=k, axis=0)


def _resample_dense(curve, integrand_fine, u_fine, spline):
    s_fine = np.concatenate([[0.0], cumulative_simpson(integrand_fine, x=u_fine)])
    length = s_fine[-1]
    s_new = np.linspace(0.0, length, curve.n_samples)
    u_new = _invert_monotone(s_fine, u_fine, s_new)
    pts = spline(u_new)
    if curve.closed:
        pts[-1] = pts[0]
    return SampledCurve(params=s_new, points=pts, closed=curve.closed)


def reparametrize_causal(curve):
    """Arc length (non-lightlike) or pseudo arc length (lightlike) parametrization."""
    d1 = derivative(curve.params, curve.points, 1, closed=curve.closed)
    kind = _curve_character(d1)
    pts = curve.points.copy()
    if curve.closed:
        pts[-1] = pts[0]
    spline = _fit_spline(curve.params, pts, curve.closed)
    u_fine = np.linspace(curve.params[0], curve.params[-1], max(16 * curve.n_samples, 2048))
    if kind != 0:
        speed = np.sqrt(np.abs(minkowski_dot(spline(u_fine, 1), spline(u_fine, 1))))
        out = _resample_dense(curve, speed, u_fine, spline)
        return out, (CausalCharacter.Spacelike if kind > 0 else CausalCharacter.Timelike)
    acc = spline(u_fine, 2)
    f = minkowski_dot(acc, acc)
    eu = (acc * acc).sum(axis=-1)
    span = float(curve.params[-1] - curve.params[0])
    vel_scale = float(np.abs(spline(u_fine, 1)).max())
    if np.sqrt(eu.max()) * span < 1e-8 * vel_scale or np.any(f < LIGHT_TOL * eu):
        raise DegenerateLightlike("acceleration (near) lightlike: straight line has no pseudo arc length")
    out = _resample_dense(curve, f ** 0.25, u_fine, spline)
    return out, CausalCharacter.Lightlike


def _initial_normal(t0, eps):
    # timelike curve: any spacelike normal; spacelike curve: the timelike one
    seed = np.array([1.0, 0.0, 0.0]) if eps < 0 else np.array([0.0, 0.0, 1.0])
    n = seed - (minkowski_dot(seed, t0) / minkowski_dot(t0, t0)) * t0
    return n / np.sqrt(abs(minkowski_dot(n, n)))


def lorentz_rm_frame(curve):
    """RM frame along a space- or timelike curve (double-reflection transport)."""
    re, char = reparametrize_causal(curve)
    if char is CausalCharacter.Lightlike:
        raise LightlikeUnsupported("use null_frame for lightlike curves")
    eps = 1 if char is CausalCharacter.Spacelike else -1
    s, pts = re.params, re.points
    d1 = derivative(s, pts, 1, closed=re.closed)
    t = d1 / np.sqrt(np.abs(minkowski_dot(d1, d1)))[:, None]
    tp = derivative(s, t, 1, closed=re.closed)
    if eps > 0:
        # reject normals that change causal character mid-curve
        q = minkowski_dot(tp, tp)
        eu = (tp * tp).sum(axis=-1)
        active = eu > 1e-16 * max(float(eu.max()), 1e-300)
        etas = np.where(np.abs(q[active]) < 1e-6 * eu[active], 0, np.sign(q[active])).astype(int)
        if len(set(etas.tolist())) > 1:
            raise MixedCausalCharacter("principal normal changes causal character; unsupported")
    n1_0 = _initial_normal(t[0], eps)
    n1 = _backend.double_reflection(pts, t, n1_0[None, :], ETA)[:, 0, :]
    n2 = lorentz_cross(t, n1)
    kappas = np.stack([minkowski_dot(tp, n1), minkowski_dot(tp, n2)])
    eps1 = int(round(float(minkowski_dot(n1[0], n1[0]))))
    return LorentzRMData(s=s, points=pts, t=t, n1=n1, n2=n2, kappas=kappas, eps=eps, eps1=eps1)


def rotate_lorentz_frame(rm, theta):
    """New RM normal pair rotated by theta (hyperbolic for spacelike curves).

    theta may be a scalar or an array over samples; |theta| is capped at 50
    to keep cosh in range.
    """
    theta = np.broadcast_to(np.asarray(theta, dtype=float), rm.s.shape)
    if np.max(np.abs(theta)) > 50.0:
        raise InvalidRange("|theta| > 50 overflows the hyperbolic rotation")
    if rm.eps < 0:
        c, s_ = np.cos(theta)[:, None], np.sin(theta)[:, None]
        n1 = c * rm.n1 + s_ * rm.n2
        n2 = -s_ * rm.n1 + c * rm.n2
    else:
        c, s_ = np.cosh(theta)[:, None], np.sinh(theta)[:, None]
        n1 = c * rm.n1 + s_ * rm.n2
        n2 = s_ * rm.n1 + c * rm.n2
    tp = derivative(rm.s, rm.t, 1)
    kappas = np.stack([minkowski_dot(tp, n1), minkowski_dot(tp, n2)])
    return LorentzRMData(s=rm.s, points=rm.points, t=rm.t, n1=n1, n2=n2,
                         kappas=kappas, eps=rm.eps, eps1=rm.eps1)


def _null_transversal(t, z1):
    """Per-sample lightlike z2 with <z2,z1> = 0 and <t,z2> = -1."""
    n = len(t)
    z2 = np.empty_like(t)
    seeds = np.array([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
    for i in range(n):
        for seed in seeds:
            u0 = seed - minkowski_dot(seed, z1[i]) * z1[i] / minkowski_dot(z1[i], z1[i])
            ut = minkowski_dot(u0, t[i])
            if abs(ut) > 1e-8:
                u = u0 - (minkowski_dot(u0, u0) / (2.0 * ut)) * t[i]
                z2[i] = -u / minkowski_dot(t[i], u)
                break
        else:
            raise DegenerateLightlike("could not complete the null frame")
    return z2


def null_frame(curve):
    """Null frame (t, z1, z2) and curvatures of a lightlike curve.

    Straight lines (vanishing acceleration) return a constant frame with
    kappa1 = kappa2 = kappa3 = 0 and is_line=True; genuinely curved inputs
    are brought to pseudo arc length first, which forces kappa1^2 = 1.
    """
    d1 = derivative(curve.params, curve.points, 1, closed=curve.closed)
    if _curve_character(d1) != 0:
        raise LightlikeUnsupported("null_frame expects a lightlike curve")
    d2 = derivative(curve.params, curve.points, 2, closed=curve.closed)
    acc_scale = float(np.abs(d2).max())
    vel_scale = float(np.abs(d1).max())
    if acc_scale < 1e-8 * max(vel_scale, 1e-300) or _acc_is_null(d2):
        # straight line: no pseudo arc length, flat frame, kappa1 = 0
        t = d1 / np.abs(d1).max(axis=1)[:, None]
        z1 = np.broadcast_to(_any_unit_spacelike(t[0]), t.shape).copy()
        z2 = _null_transversal(t, z1)
        kappas = np.zeros((3, len(t)))
        return NullFrameData(s=curve.params.copy(), points=curve.points.copy(),
                             t=t, z1=z1, z2=z2, kappas=kappas, is_line=True)
    re, _ = reparametrize_causal(curve)
    s, pts = re.params, re.points
    t = derivative(s, pts, 1, closed=re.closed)
    acc = derivative(s, pts, 2, closed=re.closed)
    f = minkowski_dot(acc, acc)
    z1 = acc / np.sqrt(f)[:, None]
    z2 = _null_transversal(t, z1)
    tp = derivative(s, t, 1, closed=re.closed)
    z1p = derivative(s, z1, 1, closed=re.closed)
    z2p = derivative(s, z2, 1, closed=re.closed)
    kappas = np.stack([
        minkowski_dot(tp, z1),
        minkowski_dot(z1p, z2),
        minkowski_dot(z2p, t),
    ])
    return NullFrameData(s=s, points=pts, t=t, z1=z1, z2=z2, kappas=kappas, is_line=False)


def _acc_is_null(d2):
    q = minkowski_dot(d2, d2)
    eu = (d2 * d2).sum(axis=-1)
    scale = float(eu.max())
    if scale < 1e-300:
        return True
    return bool(np.all(np.abs(q) < 1e-8 * scale))


def _any_unit_spacelike(t0):
    # for null t0 = (a, b, c) with a^2+b^2 = c^2 != 0, (-b, a, 0) is spacelike
    # and Lorentz-orthogonal to t0
    n = np.array([-t0[1], t0[0], 0.0])
    q = minkowski_dot(n, n)
    if q < 1e-20:
        raise DegenerateLightlike("no spacelike direction orthogonal to the tangent")
    return n / np.sqrt(q)


def lorentz_sphere_membership(rm):
    """Classify by the development line 1 + eps(a1 X + a2 Y) = 0.

    Returns a LorentzSphere (PseudoSphere, PseudoHyperbolic or LightCone
    by the sign of eps1 a1^2 + a2^2) or None for plane curves (line through
    the origin).
    """
    samples = np.ascontiguousarray(rm.kappas.T)
    scale = float(np.sqrt((samples ** 2).sum(axis=1).mean()))
    if scale == 0.0:
        raise NoLineFit("development collapses onto the origin")
    tol = 1e-3 * scale
    mean = samples.mean(axis=0)
    spread = float(np.sqrt(((samples - mean) ** 2).sum(axis=1).mean()))
    if spread < 1e-6 * scale:
        nhat = mean / np.linalg.norm(mean)
        offset = -float(np.linalg.norm(mean))
        residual = spread
    else:
        nhat, offset, residual = fit_hyperplane(samples)
        if residual > tol:
            raise NoLineFit("development is not a line")
        if abs(offset) < tol:
            return None
    # <nhat, x> + offset = 0 with offset = -d; paper line 1 + eps a1 X + eps a2 Y = 0
    a = rm.eps * nhat / offset
    a1, a2 = float(a[0]), float(a[1])
    centers = rm.points - a1 * rm.n1 - a2 * rm.n2
    center = centers.mean(axis=0)
    q = rm.eps1 * a1 ** 2 + a2 ** 2
    if abs(q) < 1e-3 * (a1 ** 2 + a2 ** 2):
        kind, radius = "LightCone", 0.0
    elif q > 0:
        kind, radius = "PseudoSphere", float(np.sqrt(q))
    else:
        kind, radius = "PseudoHyperbolic", float(np.sqrt(-q))
    return LorentzSphere(kind=kind, center=center, radius=radius,
                         coeffs=(a1, a2), fit_residual=residual)


def iso_apparatus(curve, n_resample=None):
    """Isotropic curvature/torsion and RM curvatures of an admissible curve.

    kappa is the signed plane curvature of the top view in its arc length;
    tau = det(a', a'', a''') / det(top a', top a''); the RM pair follows the
    Galilean rotation: kappa1 = kappa, kappa2 = kappa * theta, theta' = tau.
    """
    pts = curve.points
    if curve.ambient_dim != 3:
        raise NotAdmissible("isotropic geometry needs 3 coordinates")
    work = pts.copy()
    if curve.closed:
        work[-1] = work[0]
    spline = _fit_spline(curve.params, work, curve.closed)
    u_fine = np.linspace(curve.params[0], curve.params[-1], max(16 * curve.n_samples, 2048))
    top_speed = np.linalg.norm(spline(u_fine, 1)[:, :2], axis=1)
    if top_speed.min() < 1e-12:
        raise NotAdmissible("isotropic (vertical) velocity sample")
    n_out = n_resample or curve.n_samples
    s_fine = np.concatenate([[0.0], cumulative_simpson(top_speed, x=u_fine)])
    s = np.linspace(0.0, s_fine[-1], n_out)
    u_new = _invert_monotone(s_fine, u_fine, s)
    p = spline(u_new)
    if curve.closed:
        p[-1] = p[0]
    d1 = derivative(s, p, 1, closed=curve.closed)
    d2 = derivative(s, p, 2, closed=curve.closed)
    d3 = derivative(s, p, 3, closed=curve.closed)
    det_top = d1[:, 0] * d2[:, 1] - d2[:, 0] * d1[:, 1]
    if np.min(np.abs(det_top)) < 1e-9 * max(np.abs(det_top).max(), 1e-300):
        raise NotAdmissible("top view has an inflection")
    kappa = det_top  # top view is unit speed, so the determinant is the curvature
    # det/det_top^2 is the parametrization-invariant torsion quotient (it feeds
    # the Frenet system n' = -kappa t + tau b; one power of det_top alone does not
    # survive reparametrization)
    tau = np.linalg.det(np.stack([d1, d2, d3], axis=1)) / det_top ** 2
    t = d1
    n = d2 / kappa[:, None]
    b = np.broadcast_to(np.array([0.0, 0.0, 1.0]), p.shape)
    # antiderivative of the tau interpolant: theta' reproduces tau at the
    # knots exactly, unlike composite-rule accumulation with its startup ripple
    tau_bc = "periodic" if (curve.closed and abs(tau[0] - tau[-1]) < 1e-9) else "not-a-knot"
    theta = CubicSpline(s, tau, bc_type=tau_bc).antiderivative()(s)
    kappas = np.stack([kappa, kappa * theta])
    return IsoFrameData(s=s, points=p, t=t, n=n, b=b, kappa=kappa, tau=tau,
                        rm_theta=theta, kappas=kappas)


@dataclass(frozen=True)
class IsoSphere:
    kind: str  # Cylindrical | Parabolic | Plane
    radius: float = np.inf
    direction: np.ndarray | None = None
    distance: float = 0.0
    fit_residual: float = 0.0


def iso_sphere_classify(iso):
    """Cylindrical (constant kappa), parabolic (offset line) or plane development."""
    kappa = iso.kappa
    mean = float(kappa.mean())
    if abs(mean) > 0 and float(kappa.std()) / abs(mean) < 1e-3:
        return IsoSphere(kind="Cylindrical", radius=1.0 / abs(mean))
    samples = np.ascontiguousarray(iso.kappas.T)
    scale = float(np.sqrt((samples ** 2).sum(axis=1).mean()))
    tol = 1e-3 * scale
    nhat, offset, residual = fit_hyperplane(samples)
    if residual > tol:
        return None
    if abs(offset) < tol:
        return IsoSphere(kind="Plane", direction=np.array([-nhat[1], nhat[0]]),
                         fit_residual=residual)
    return IsoSphere(kind="Parabolic", direction=nhat, distance=abs(offset),
                     fit_residual=residual)
