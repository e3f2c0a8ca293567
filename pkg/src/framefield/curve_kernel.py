"""Sampled curves, arc length, Frenet apparatus, osculating spheres.

Curves are immutable arrays of samples; every derivative is a finite
difference (4th-order interior stencils, one-sided at open ends, periodic
wrap on closed uniform grids).  Curvature and torsion follow the standard
parametrization-invariant formulas

    kappa = |a' x a''| / |a'|^3,   tau = <a' x a'', a'''> / |a' x a''|^2,

so inputs need not be unit speed.  Plane curves (ambient_dim = 2) get the
rotated-tangent normal and tau = 0.

Power-law curvature curves kappa(s) = c0 / s^p are generated here; for
p = 1/2 the closed form (a circle superposed on a slow outward drift, so the
distance from the construction origin grows like sqrt(s)/c0) is used, other
exponents integrate the Frenet system.  The integrals behind the general-p
closed form behave almost periodically in s but no quantitative period law
is implemented.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import cumulative_simpson
from scipy.interpolate import CubicSpline

from . import _backend
from ._fd import derivative, fornberg_weights
from .errors import DegenerateCurve, InvalidFrame, InvalidRange, NotClosed, NotSpherical, UndefinedFrame

_KAPPA_TOL = 1e-9


def _readonly(a):
    a = np.asarray(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class SampledCurve:
    """A regular curve given by samples of a parametrization.

    params: strictly increasing parameter values (arc length after
    resample_by_arclength); points: (N, ambient_dim) coordinates; closed
    curves carry the closing sample twice (points[-1] == points[0]).
    """

    params: np.ndarray
    points: np.ndarray
    closed: bool = False
    ambient_dim: int = field(default=0)

    def __post_init__(self):
        params = _readonly(self.params)
        points = _readonly(np.atleast_2d(self.points))
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "ambient_dim", points.shape[1])
        if len(params) != len(points) or len(params) < 4:
            raise ValueError("need matching params/points with at least 4 samples")
        dp = np.diff(params)
        if np.any(dp <= 0):
            raise ValueError("params must be strictly increasing")
        vel = (points[2:] - points[:-2]) / (params[2:] - params[:-2])[:, None]
        if np.any(np.linalg.norm(vel, axis=1) <= 1e-12):
            raise DegenerateCurve("velocity magnitude below 1e-12 at an interior sample")
        if self.closed and np.linalg.norm(points[0] - points[-1]) > 1e-9:
            raise NotClosed("closed curve must repeat its first point within 1e-9")

    @property
    def n_samples(self):
        return len(self.params)


@dataclass(frozen=True)
class FrenetData:
    """Frenet apparatus sampled along a curve.

    kappa_defined flags samples where |a' x a''| exceeds tolerance; n and b
    are zero-filled (and tau reported 0) where the frame is undefined.
    """

    s: np.ndarray
    t: np.ndarray
    n: np.ndarray
    b: np.ndarray
    kappa: np.ndarray
    tau: np.ndarray
    kappa_defined: np.ndarray

    def __post_init__(self):
        for name in ("s", "t", "n", "b", "kappa", "tau"):
            object.__setattr__(self, name, _readonly(getattr(self, name)))
        kd = np.asarray(self.kappa_defined, dtype=bool)
        kd.setflags(write=False)
        object.__setattr__(self, "kappa_defined", kd)


@dataclass(frozen=True)
class OsculatingSphere:
    center: np.ndarray
    radius: float
    finite: bool

    def __post_init__(self):
        object.__setattr__(self, "center", _readonly(self.center))


def _speed_spline(curve):
    bc = "periodic" if curve.closed else "not-a-knot"
    pts = curve.points
    if curve.closed:
        # periodic splines need exact endpoint agreement
        pts = pts.copy()
        pts[-1] = pts[0]
    return CubicSpline(curve.params, pts, bc_type=bc)


def arclength_table(curve, oversample=16):
    """Dense (u, s(u)) table for the cumulative arc length of a curve."""
    spline = _speed_spline(curve)
    n_fine = max(oversample * len(curve.params), 2048)
    u = np.linspace(curve.params[0], curve.params[-1], n_fine)
    speed = np.linalg.norm(spline(u, 1), axis=1)
    s = np.concatenate([[0.0], cumulative_simpson(speed, x=u)])
    return u, s, spline


def _invert_monotone(x_table, y_table, x_new):
    # smooth inverse of a dense monotone table; np.interp kinks at table
    # resolution and finite differences of the result amplify them by 1/h
    if np.all(np.diff(x_table) > 0):
        return CubicSpline(x_table, y_table)(x_new)
    return np.interp(x_new, x_table, y_table)


def resample_by_arclength(curve, n):
    """Resample a curve at n points uniformly spaced in arc length."""
    if n < 4:
        raise ValueError("need n >= 4")
    u, s, spline = arclength_table(curve)
    length = s[-1]
    if length <= 1e-12:
        raise DegenerateCurve("curve has (near) zero length")
    s_new = np.linspace(0.0, length, n)
    u_new = _invert_monotone(s, u, s_new)
    pts = spline(u_new)
    if curve.closed:
        pts[-1] = pts[0]
    return SampledCurve(params=s_new, points=pts, closed=curve.closed)


def _cross_rows(a, b):
    return np.cross(a, b)


def frenet_apparatus(curve):
    """Frenet frame, curvature and torsion of a 2D or 3D sampled curve."""
    if curve.ambient_dim not in (2, 3):
        raise ValueError("Frenet apparatus is defined for ambient_dim 2 or 3")
    params, pts, closed = curve.params, curve.points, curve.closed
    if curve.ambient_dim == 2:
        pts = np.column_stack([pts, np.zeros(len(pts))])
    d1 = derivative(params, pts, 1, closed=closed)
    d2 = derivative(params, pts, 2, closed=closed)
    d3 = derivative(params, pts, 3, closed=closed)
    speed = np.linalg.norm(d1, axis=1)
    cr = _cross_rows(d1, d2)
    crn = np.linalg.norm(cr, axis=1)
    kappa = crn / speed ** 3
    defined = kappa >= _KAPPA_TOL
    t = d1 / speed[:, None]
    b = np.zeros_like(pts)
    n = np.zeros_like(pts)
    b[defined] = cr[defined] / crn[defined, None]
    n[defined] = _cross_rows(b[defined], t[defined])
    tau = np.zeros(len(pts))
    tau[defined] = np.einsum("ij,ij->i", cr[defined], d3[defined]) / crn[defined] ** 2
    kappa = np.where(defined, kappa, 0.0)
    s = np.concatenate([[0.0], cumulative_simpson(speed, x=params)])
    return FrenetData(s=s, t=t, n=n, b=b, kappa=kappa, tau=tau, kappa_defined=defined)


def _as_function(f):
    if callable(f):
        return f
    value = float(f)
    return lambda s: value + 0.0 * s


def _eval_grid(f, grid):
    try:
        out = np.asarray(f(grid), dtype=float)
        if out.shape == grid.shape:
            return out
    except (TypeError, ValueError):
        pass
    return np.array([float(f(x)) for x in grid])


def integrate_frenet(kappa, tau, init_point, init_frame, s_range, step=None):
    """Curve with prescribed curvature/torsion via RK4 on the Frenet system.

    kappa and tau are scalar functions of arc length (constants accepted);
    init_frame is the (3, 3) row-stacked orthonormal frame (t, n, b).
    """
    s0, s1 = float(s_range[0]), float(s_range[1])
    if not s1 > s0:
        raise InvalidRange("empty arc-length range")
    frame = np.asarray(init_frame, dtype=float)
    if frame.shape != (3, 3) or np.abs(frame @ frame.T - np.eye(3)).max() > 1e-10:
        raise InvalidFrame("init_frame must be orthonormal within 1e-10")
    if step is None:
        step = (s1 - s0) * 1e-3
    if step <= 0:
        raise InvalidRange("step must be positive")
    n_steps = max(int(np.ceil((s1 - s0) / step)), 4)
    h = (s1 - s0) / n_steps
    grid = s0 + 0.5 * h * np.arange(2 * n_steps + 1)
    kh = _eval_grid(_as_function(kappa), grid)
    th = _eval_grid(_as_function(tau), grid)
    y0 = np.vstack([np.asarray(init_point, dtype=float), frame])
    traj = _backend.frenet_integrate(kh, th, y0, h, n_steps)
    s = s0 + h * np.arange(n_steps + 1)
    return SampledCurve(params=s, points=traj[:, 0, :], closed=False)


def _powerlaw_closed_form_half(c0, s):
    # circle of radius 1/(2 c0^2) superposed on the outward sqrt(s)/c0 drift
    c = np.cos(2.0 * c0 * np.sqrt(s))
    d = np.sin(2.0 * c0 * np.sqrt(s))
    r = np.sqrt(s) / c0
    a = 1.0 / (2.0 * c0 ** 2)
    x = a * c + r * d
    y = -r * c + a * d
    return np.column_stack([x, y])


def powerlaw_plane_curve(c0, p, s_range, n=4001):
    """Plane curve with kappa(s) = c0 / s^p on s_range, pinned to the identity
    frame (t = e1, n = e2, alpha = 0) at the left endpoint."""
    if c0 <= 0:
        raise InvalidRange("c0 must be positive")
    s0, s1 = float(s_range[0]), float(s_range[1])
    if s0 <= 0 or s1 <= s0:
        raise InvalidRange("s_range must satisfy 0 < s0 < s1")
    if abs(p - 0.5) < 1e-14:
        s = np.linspace(s0, s1, n)
        raw = _powerlaw_closed_form_half(c0, s)
        phi0 = 2.0 * c0 * np.sqrt(s0)
        rot = np.array([[np.cos(phi0), np.sin(phi0)], [-np.sin(phi0), np.cos(phi0)]])
        pts = (raw - raw[0]) @ rot.T
        return SampledCurve(params=s, points=pts, closed=False)
    curve3 = integrate_frenet(
        lambda s: c0 / s ** p, 0.0, np.zeros(3), np.eye(3), (s0, s1), step=(s1 - s0) / (n - 1)
    )
    return SampledCurve(params=curve3.params, points=curve3.points[:, :2], closed=False)


def _local_rho_prime(fd, i):
    # 5-point window of defined samples around i; frame undefined nearby is fatal
    n = len(fd.s)
    lo = min(max(i - 2, 0), n - 5)
    window = slice(lo, lo + 5)
    if not fd.kappa_defined[window].all():
        raise UndefinedFrame("curvature undefined too close to the requested point")
    w = fornberg_weights(fd.s[window], fd.s[i], 1)
    return float(w @ (1.0 / fd.kappa[window]))


def osculating_sphere(curve, s0, tau_tol=1e-7):
    """Osculating sphere at arc length s0; finite=False where torsion vanishes.

    The center/radius series P_S = a + rho n + (rho'/tau) b is interpolated
    through the samples around s0 (the center moves at O(1) per unit arc
    length off a sphere, so snapping to the nearest sample is too coarse).
    """
    fd = frenet_apparatus(curve)
    i = int(np.argmin(np.abs(fd.s - s0)))
    if not fd.kappa_defined[i]:
        raise UndefinedFrame("Frenet frame undefined at s0")
    if abs(fd.tau[i]) < tau_tol:
        return OsculatingSphere(center=np.zeros(3), radius=np.inf, finite=False)
    pts = curve.points if curve.ambient_dim == 3 else np.column_stack(
        [curve.points, np.zeros(len(curve.points))]
    )
    n = len(fd.s)
    lo = min(max(i - 4, 0), n - 9)
    window = np.arange(lo, lo + 9)
    usable = fd.kappa_defined[window] & (np.abs(fd.tau[window]) >= 0.5 * tau_tol)
    if not usable.all():
        # isolated valid sample: evaluate right there instead of interpolating
        rho = 1.0 / fd.kappa[i]
        swing = _local_rho_prime(fd, i) / fd.tau[i]
        center = pts[i] + rho * fd.n[i] + swing * fd.b[i]
        return OsculatingSphere(center=center, radius=float(np.hypot(rho, swing)), finite=True)
    rho = 1.0 / fd.kappa[window]
    rho_p = np.empty(len(window))
    for j in range(len(window)):
        a = min(max(j - 2, 0), len(window) - 5)
        sub = slice(a, a + 5)
        rho_p[j] = fornberg_weights(fd.s[window[sub]], fd.s[window[j]], 1) @ rho[sub]
    swing = rho_p / fd.tau[window]
    centers = pts[window] + rho[:, None] * fd.n[window] + swing[:, None] * fd.b[window]
    radii = np.hypot(rho, swing)
    cs = CubicSpline(fd.s[window], np.column_stack([centers, radii]))
    at = cs(np.clip(s0, fd.s[window][0], fd.s[window][-1]))
    return OsculatingSphere(center=at[:3], radius=float(at[3]), finite=True)


def spherical_curvature_J(curve, center):
    """Spherical curvature J = <a - p, a' x a''> of a unit-speed spherical curve.

    J determines the apparatus on a sphere of radius r through
    kappa = sqrt(1 + J^2)/r and tau = J'/(1 + J^2).
    """
    if curve.ambient_dim != 3:
        raise ValueError("spherical curvature needs a 3D curve")
    center = np.asarray(center, dtype=float)
    radii = np.linalg.norm(curve.points - center, axis=1)
    r = float(radii.mean())
    if np.abs(radii - r).max() > 1e-6 * max(1.0, r):
        raise NotSpherical("samples deviate from the claimed sphere")
    d1 = derivative(curve.params, curve.points, 1, closed=curve.closed)
    speed = np.linalg.norm(d1, axis=1)
    work = curve
    if np.abs(speed - 1.0).max() > 1e-6:
        work = resample_by_arclength(curve, curve.n_samples)
    d1 = derivative(work.params, work.points, 1, closed=work.closed)
    d2 = derivative(work.params, work.points, 2, closed=work.closed)
    return np.einsum("ij,ij->i", work.points - center, _cross_rows(d1, d2))
