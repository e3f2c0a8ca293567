"""Tubes and invariant surfaces: fundamental forms and the induced potential.

A tube of radius r around a centerline alpha(s) is swept by a circle in the
normal plane.  In Frenet coordinates X = alpha + r(cos phi n + sin phi b)
everything collapses to closed forms in f = 1 - r kappa cos phi:

    g = [[f^2 + r^2 tau^2, r^2 tau], [r^2 tau, r^2]]
    K = -kappa cos phi / (r f),  H = (1 - 2 r kappa cos phi) / (2 r f)

with the surface normal pointing inward (toward the centerline), which is
the orientation the cross product X_s x X_phi produces.  The potential
V = -(H^2 - K) then reduces exactly to -[1/(2 r f)]^2, independent of the
torsion.  An RM chart replaces kappa cos phi by kappa_1 cos phi +
kappa_2 sin phi = kappa cos(phi - theta) and has a diagonal first form; the
two charts differ by the angle shift phi_F = phi_RM - theta with theta' = tau.

Surfaces invariant under a one-parameter isometry group (translation,
rotation, screw motion) admit natural coordinates with metric
du^2 + f^2(u) dv^2, which turns prescribing the potential into an ODE along
the generating curve.  The constructors here run that inversion: a
cylindrical surface from its mean curvature, a revolution surface from the
half principal-curvature gap U = (k1 - k2)/2 (Kenmotsu route), and the
two-parameter isometric family of helicoidal surfaces sharing the metric
dxi^2 + U^2(xi) dchi^2 from U alone (Bour quadratures, K = -U''/U).  Each
construction is checked against finite-difference fundamental forms of the
embedded parametrization (surface_curvatures_fd).  Units: hbar^2/2m* = 1.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_simpson
from scipy.interpolate import make_interp_spline

from . import _fd
from .curve_kernel import frenet_apparatus, resample_by_arclength
from .errors import (
    BourDomainViolation,
    DegenerateDirection,
    DomainViolation,
    InvalidFamily,
    InvalidRange,
    SingularCenterline,
    TubeTooFat,
    UndefinedFrame,
)
from .rm_frames import rm_double_reflection

FRENET = "Frenet"
RM = "RM"
CYLINDRICAL = "Cylindrical"
REVOLUTION = "Revolution"
HELICOIDAL = "Helicoidal"


def _readonly(a):
    a = np.asarray(a, dtype=float)
    a.setflags(write=False)
    return a


def _sample_scalar(f, grid):
    if not callable(f):
        value = float(f)
        return np.full_like(grid, value)
    out = np.asarray(f(grid), dtype=float)
    if out.shape != grid.shape:
        out = np.array([float(f(x)) for x in grid])
    return out


def _cumquad(y, x):
    return np.concatenate([[0.0], cumulative_simpson(y, x=x)])


@dataclass(frozen=True)
class TubeGeometry:
    """Fundamental forms of a tube sampled on the (s, phi) grid.

    g and h have shape (2, 2, Ns, Nphi); K, H, Vgip are (Ns, Nphi).  kappa
    holds the centerline curvature samples driving the critical-point scan;
    theta is the chart angle relative to the Frenet normal (all zero for
    Frenet tubes, NaN on RM tubes where the Frenet frame is undefined).
    """

    s_grid: np.ndarray
    phi_grid: np.ndarray
    g: np.ndarray
    h: np.ndarray
    K: np.ndarray
    H: np.ndarray
    Vgip: np.ndarray
    frame_kind: str
    r: float
    kappa: np.ndarray
    theta: np.ndarray
    closed: bool

    def __post_init__(self):
        for name in ("s_grid", "phi_grid", "g", "h", "K", "H", "Vgip", "kappa"):
            object.__setattr__(self, name, _readonly(getattr(self, name)))


@dataclass(frozen=True)
class CriticalPoint:
    """Stationary point of V_gip; s = None flags a whole degenerate circle."""

    s: float | None
    phi: float
    kind: str  # Min | Max | Saddle | Degenerate


@dataclass(frozen=True)
class InvariantSurface:
    """A surface invariant under a one-parameter isometry group.

    u_grid samples the natural parameter along the generating curve (arc
    length of a curve orthogonal to the orbits); the orbit coordinate v runs
    over v_range.  f is the metric coefficient in ds^2 = du^2 + f^2(u) dv^2;
    H and K live on u_grid.  Kind-specific payload: direction plus
    cross_section (Cylindrical), profile (x, z columns, unit speed) plus
    axis (Revolution), U/omega/a_const and the quadratures rho, lam
    (Helicoidal).  embedding(u, v) evaluates the ambient parametrization and
    broadcasts; forward_residual records the finite-difference check of H
    run at construction (NaN when the construction is exact by closed form).
    """

    kind: str
    u_grid: np.ndarray
    v_range: tuple
    f: np.ndarray
    H: np.ndarray
    K: np.ndarray
    direction: np.ndarray | None = None
    cross_section: np.ndarray | None = None
    profile: np.ndarray | None = None
    axis: np.ndarray | None = None
    U: np.ndarray | None = None
    omega: float | None = None
    a_const: float | None = None
    rho: np.ndarray | None = None
    lam: np.ndarray | None = None
    forward_residual: float = np.nan
    _embed: object = None

    @property
    def natural_grid(self):
        return (float(self.u_grid[0]), float(self.u_grid[-1])), tuple(self.v_range)

    def embedding(self, u, v):
        return self._embed(np.asarray(u, dtype=float), np.asarray(v, dtype=float))


@dataclass(frozen=True)
class MinimalHelicoidal:
    """Member tag of the quadratic family U^2 = (omega xi + omega1)^2 + b."""

    omega: float
    omega0: float
    omega1: float
    b: float


def surface_curvatures_fd(embed, u, v, du, dv):
    """Second-order finite-difference fundamental forms of an embedding.

    embed(u, v) -> (..., 3) must broadcast over the sample arrays u, v.  The
    unit normal is x_u x x_v normalized, so signs follow the chart
    orientation.  Steps are the caller's business; the convention used
    throughout is 1e-4 of each parameter range.  Returns (g, h, K, H) with
    g, h shaped (2, 2) + point shape.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    xc = embed(u, v)
    xpu, xmu = embed(u + du, v), embed(u - du, v)
    xpv, xmv = embed(u, v + dv), embed(u, v - dv)
    xpp, xpm = embed(u + du, v + dv), embed(u + du, v - dv)
    xmp, xmm = embed(u - du, v + dv), embed(u - du, v - dv)
    xu = (xpu - xmu) / (2.0 * du)
    xv = (xpv - xmv) / (2.0 * dv)
    xuu = (xpu - 2.0 * xc + xmu) / du**2
    xvv = (xpv - 2.0 * xc + xmv) / dv**2
    xuv = (xpp - xpm - xmp + xmm) / (4.0 * du * dv)
    dot = lambda a, b: np.einsum("...i,...i->...", a, b)
    E, F, G = dot(xu, xu), dot(xu, xv), dot(xv, xv)
    normal = np.cross(xu, xv)
    normal = normal / np.linalg.norm(normal, axis=-1, keepdims=True)
    L, M, N = dot(xuu, normal), dot(xuv, normal), dot(xvv, normal)
    det = E * G - F**2
    K = (L * N - M**2) / det
    H = (E * N - 2.0 * F * M + G * L) / (2.0 * det)
    g = np.stack([np.stack([E, F]), np.stack([F, G])])
    h = np.stack([np.stack([L, M]), np.stack([M, N])])
    return g, h, K, H


def _transverse_seed(t0):
    k = int(np.argmin(np.abs(t0)))
    e = np.zeros(len(t0))
    e[k] = 1.0
    v = e - (e @ t0) * t0
    return v / np.linalg.norm(v)


def tube_geometry(centerline, r, frame_kind=FRENET, n_phi=128, n_s=None):
    """Closed-form tube coefficients on the (s, phi) grid.

    Frenet charts need kappa bounded away from zero; the RM chart works on
    any centerline (straight lines included) via double reflection with an
    automatic seed normal.
    """
    if r <= 0:
        raise InvalidRange("tube radius must be positive")
    if frame_kind not in (FRENET, RM):
        raise ValueError("frame_kind must be 'Frenet' or 'RM'")
    if centerline.ambient_dim != 3:
        raise InvalidRange("tube centerlines live in ambient dimension 3")
    curve = resample_by_arclength(centerline, n_s or centerline.n_samples)
    phi = np.linspace(0.0, 2.0 * np.pi, n_phi, endpoint=False)
    cphi, sphi = np.cos(phi), np.sin(phi)
    ones = np.ones((curve.n_samples, n_phi))

    if frame_kind == FRENET:
        fd = frenet_apparatus(curve)
        if not fd.kappa_defined.all():
            raise UndefinedFrame(
                "Frenet tube needs kappa >= 1e-9 along the centerline; use the RM chart"
            )
        s, kappa, tau = fd.s, fd.kappa, fd.tau
        c = kappa[:, None] * cphi[None, :]  # kappa cos(phi)
        f = 1.0 - r * c
        _reject_fat(f, s, phi, r)
        rt = r * tau[:, None] * np.ones(n_phi)[None, :]
        g11, g12, g22 = f**2 + rt**2, r * rt, r**2 * ones
        h11, h12, h22 = -(f * c - rt * tau[:, None]), rt, r * ones
        theta = np.zeros_like(s)
    else:
        rm = rm_double_reflection(curve, _transverse_seed(_initial_tangent(curve)))
        s = rm.s
        k1, k2 = rm.kappas
        kappa = np.hypot(k1, k2)
        c = k1[:, None] * cphi[None, :] + k2[:, None] * sphi[None, :]
        f = 1.0 - r * c
        _reject_fat(f, s, phi, r)
        g11, g12, g22 = f**2, np.zeros_like(f), r**2 * ones
        h11, h12, h22 = -f * c, np.zeros_like(f), r * ones
        theta = rm.theta if rm.theta is not None else np.zeros_like(s)

    K = -c / (r * f)
    H = (1.0 - 2.0 * r * c) / (2.0 * r * f)
    Vgip = -((1.0 / (2.0 * r * f)) ** 2)
    g = np.stack([np.stack([g11, g12]), np.stack([g12, g22])])
    h = np.stack([np.stack([h11, h12]), np.stack([h12, h22])])
    return TubeGeometry(
        s_grid=s, phi_grid=phi, g=g, h=h, K=K, H=H, Vgip=Vgip,
        frame_kind=frame_kind, r=float(r), kappa=kappa, theta=theta,
        closed=curve.closed,
    )


def _initial_tangent(curve):
    d1 = _fd.derivative(curve.params, curve.points, 1, closed=curve.closed)
    return d1[0] / np.linalg.norm(d1[0])


def _reject_fat(f, s, phi, r):
    if f.min() <= 0.0:
        i, j = np.unravel_index(np.argmin(f), f.shape)
        raise TubeTooFat(
            f"1 - r kappa cos(phi) = {f[i, j]:.3g} <= 0 at "
            f"(s={s[i]:.6g}, phi={phi[j]:.6g}); radius {r:.6g} exceeds the reach"
        )


def vgip_critical_points(tube):
    """Stationary points of V_gip = -[1/(2 r f)]^2 with their type.

    V is stationary exactly where kappa'(s) = 0 and phi in {0, pi}, and the
    Hessian there is diagonal, proportional to diag(-kappa'', kappa) at
    phi = 0 and to -diag(-kappa'', kappa) at phi = pi.  Hence a curvature
    maximum gives a Min at phi = 0 and a Max at phi = pi, while a curvature
    minimum gives saddles on both sides; kappa'' = 0 is degenerate.
    """
    kappa, s = tube.kappa, tube.s_grid
    if kappa.min() < 1e-9:
        raise SingularCenterline("centerline curvature hits zero; V_gip has no kappa landscape")
    span = kappa.max() - kappa.min()
    if span < 1e-8 * kappa.max():
        # constant kappa: every (s, 0) and (s, pi) is stationary
        return [CriticalPoint(None, 0.0, "Degenerate"), CriticalPoint(None, np.pi, "Degenerate")]
    kp = _fd.derivative(s, kappa, 1, closed=tube.closed)
    kpp = _fd.derivative(s, kappa, 2, closed=tube.closed)
    kp_scale = np.abs(kp).max()
    kpp_scale = np.abs(kpp).max()

    # interior zeros of kappa': sign changes plus grazing touches of zero
    lo, hi = (0, len(s) - 1) if tube.closed else (2, len(s) - 3)
    locations = []
    for i in range(lo, hi):
        a, b = kp[i], kp[i + 1]
        if a == 0.0 and i > lo:
            locations.append(s[i])
        elif a * b < 0.0:
            locations.append(s[i] - a * (s[i + 1] - s[i]) / (b - a))
    # a grazing touch (kappa' dips to zero without crossing) shows up as a
    # local minimum of |kappa'| well below both neighbors; resolution-limited,
    # so only touches the grid actually resolves are reported
    for i in range(max(lo, 1) + 1, min(hi, len(s) - 2)):
        if kp[i - 1] * kp[i + 1] <= 0.0:
            continue  # sign change, already handled
        mag = abs(kp[i])
        if mag < 1e-3 * kp_scale and mag < 0.5 * min(abs(kp[i - 1]), abs(kp[i + 1])):
            locations.append(s[i])

    classified = []
    for sc in sorted(locations):
        kpp_c = float(np.interp(sc, s, kpp))
        if abs(kpp_c) < 1e-3 * kpp_scale:
            kinds = ("Degenerate", "Degenerate")
        elif kpp_c < 0.0:
            kinds = ("Min", "Max")
        else:
            kinds = ("Saddle", "Saddle")
        classified.append([sc, kinds])

    # noise can split one stationary feature into a close pair of detections;
    # a flat (degenerate) stretch spreads them further than a sharp zero
    merged = []
    step = s[1] - s[0]
    for sc, kinds in classified:
        if merged:
            s_prev, kinds_prev = merged[-1]
            gap = sc - s_prev
            degenerate_pair = kinds == kinds_prev == ("Degenerate", "Degenerate")
            if gap < 2.0 * step or (degenerate_pair and gap < 0.02 * (s[-1] - s[0])):
                merged[-1][0] = 0.5 * (s_prev + sc)
                continue
        merged.append([sc, kinds])

    points = []
    for sc, kinds in merged:
        points.append(CriticalPoint(float(sc), 0.0, kinds[0]))
        points.append(CriticalPoint(float(sc), np.pi, kinds[1]))
    return points


def cylindrical_from_mean_curvature(Hfun, a, s_range=(0.0, 2.0 * np.pi), n=2001, beta0=0.0):
    """Cylindrical surface alpha(s) + t a with prescribed mean curvature.

    The cross section alpha lives in the z = 0 plane with arc length s and
    tangent angle beta; with the surface normal along a x alpha' the mean
    curvature obeys H = a3 kappa / (2 sin^3 theta), theta the (s-dependent)
    angle between a and alpha'.  Inverting gives the tangent-angle ODE
    beta' = (2 H / a3) (1 - (a1 cos beta + a2 sin beta)^2)^(3/2), integrated
    here by RK4.  Since a3 != 0 keeps sin theta >= |a3| > 0, the ODE is
    globally regular.  The result carries a finite-difference verification
    of H on the embedded surface in forward_residual.
    """
    a = np.asarray(a, dtype=float)
    a = a / np.linalg.norm(a)
    if abs(a[2]) < 1e-12:
        raise DegenerateDirection("ruling direction must leave the cross-section plane (a3 = 0)")
    s0, s1 = float(s_range[0]), float(s_range[1])
    if not s1 > s0:
        raise InvalidRange("empty arc-length range")
    s = np.linspace(s0, s1, n)
    h = s[1] - s[0]
    half = np.linspace(s0, s1, 2 * n - 1)
    Hh = _sample_scalar(Hfun, half)

    a1, a2, a3 = a

    def slope(beta, Hval):
        proj = a1 * np.cos(beta) + a2 * np.sin(beta)
        return 2.0 * Hval / a3 * (1.0 - proj**2) ** 1.5

    beta = np.empty(n)
    beta[0] = beta0
    for i in range(n - 1):
        H0, Hm, H1 = Hh[2 * i], Hh[2 * i + 1], Hh[2 * i + 2]
        k1 = slope(beta[i], H0)
        k2 = slope(beta[i] + 0.5 * h * k1, Hm)
        k3 = slope(beta[i] + 0.5 * h * k2, Hm)
        k4 = slope(beta[i] + h * k3, H1)
        beta[i + 1] = beta[i] + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    tangent = np.column_stack([np.cos(beta), np.sin(beta)])
    x = _cumquad(tangent[:, 0], s)
    y = _cumquad(tangent[:, 1], s)
    cross_section = np.column_stack([x, y, np.zeros(n)])
    Hs = Hh[::2]

    # natural chart: arc u along the cross section orthogonal to a
    sin_theta = np.sqrt(1.0 - (a1 * tangent[:, 0] + a2 * tangent[:, 1]) ** 2)
    u = _cumquad(sin_theta, s)
    gamma = cross_section - np.outer(cross_section @ a, a)
    gamma_spline = make_interp_spline(u, gamma, k=5)

    def embed(uu, vv):
        uu, vv = np.broadcast_arrays(uu, vv)
        return gamma_spline(uu) + vv[..., None] * a

    idx = np.arange(4, n - 4, max(1, n // 40))
    du = 1e-4 * (u[-1] - u[0])
    _, _, _, H_fd = surface_curvatures_fd(embed, u[idx], np.zeros(len(idx)), du, 1e-4)
    # the chart's u x v normal is alpha' x a, opposite the construction normal
    residual = float(np.abs(H_fd + Hs[idx]).max())

    return InvariantSurface(
        kind=CYLINDRICAL,
        u_grid=u,
        v_range=(0.0, 1.0),
        f=np.ones(n),
        H=Hs,
        K=np.zeros(n),
        direction=a,
        cross_section=cross_section,
        forward_residual=residual,
        _embed=embed,
    )


def revolution_from_U(U, a1, a2, rho_range, n=1201, branch_A=1.0, branch_lambda=1.0):
    """Revolution surface with prescribed half curvature gap U = (k1 - k2)/2.

    Integrates A(rho) = branch_A (2 int U drho / rho + a1) and the profile
    height lambda(rho) = branch_lambda int rho A / sqrt(1 - rho^2 A^2) drho
    + a2, then revolves the profile (rho, lambda) around the z axis.  The
    arc-length derivatives of the profile come out in closed form
    (x', z') = (sqrt(1 - rho^2 A^2), rho A), so H and K are assembled
    without numerical differentiation.
    """
    rho0, rho1 = float(rho_range[0]), float(rho_range[1])
    if not 0.0 < rho0 < rho1:
        raise InvalidRange("rho_range must satisfy 0 < rho0 < rho1")
    rho = np.linspace(rho0, rho1, n)
    Uv = _sample_scalar(U, rho)
    A = branch_A * (2.0 * _cumquad(Uv / rho, rho) + a1)
    rad = 1.0 - rho**2 * A**2
    if np.any(rad <= 0.0):
        bad = rho[rad <= 0.0][0]
        raise DomainViolation(f"1 - rho^2 A^2 <= 0 at rho = {bad:.6g}")
    lam = branch_lambda * _cumquad(rho * A / np.sqrt(rad), rho) + a2

    # closed-form arc-length derivatives of the profile (x, z) = (rho, lam)
    sq = np.sqrt(rad)
    xd, zd = sq, rho * A
    Ad = branch_A * 2.0 * Uv / rho
    rad_d = -2.0 * rho * A**2 - 2.0 * rho**2 * A * Ad
    xdd = 0.5 * rad_d  # d(sqrt(rad))/du = rad'/(2 sqrt(rad)) * drho/du, drho/du = sqrt(rad)
    zdd = (A + rho * Ad) * sq
    u = _cumquad(1.0 / sq, rho)

    swing = xd * zdd - xdd * zd
    H = (rho * swing + zd) / (2.0 * rho)
    K = -xdd / rho  # K = -x''/x for a unit-speed profile
    profile = np.column_stack([rho, lam])

    x_spline = make_interp_spline(u, rho, k=5)
    z_spline = make_interp_spline(u, lam, k=5)

    def embed(uu, vv):
        uu, vv = np.broadcast_arrays(uu, vv)
        xs = x_spline(uu)
        return np.stack([xs * np.cos(vv), xs * np.sin(vv), z_spline(uu)], axis=-1)

    return InvariantSurface(
        kind=REVOLUTION,
        u_grid=u,
        v_range=(0.0, 2.0 * np.pi),
        f=rho,
        H=H,
        K=K,
        profile=profile,
        axis=np.array([0.0, 0.0, 1.0]),
        _embed=embed,
    )


def kenmotsu_residual(s, profile, U):
    """RMS residual of Z' - 2 i U Z + |Z|^2 = 0 with Z = (x' + i z')/x.

    s, profile (columns x, z) and U are aligned samples of a unit-speed
    generating curve and its half curvature gap.  Three samples per end are
    dropped from the RMS: the one-sided difference stencils there dominate
    the residual on exact data.
    """
    s = np.asarray(s, dtype=float)
    xz = np.asarray(profile, dtype=float)
    Uv = np.asarray(U, dtype=float)
    x = xz[:, 0]
    if np.any(x <= 0.0):
        raise DomainViolation("profile must keep x > 0")
    d1 = _fd.derivative(s, xz, 1)
    Z = (d1[:, 0] + 1j * d1[:, 1]) / x
    Zp = _fd.derivative(s, Z.real, 1) + 1j * _fd.derivative(s, Z.imag, 1)
    res = Zp - 2j * Uv * Z + np.abs(Z) ** 2
    if len(res) > 12:
        res = res[3:-3]
    return float(np.sqrt(np.mean(np.abs(res) ** 2)))


def bour_surface(U, omega, a, xi_range, n=1201, branch_lambda=1.0, branch_phi=1.0,
                 U_derivs=None):
    """Helicoidal surface with natural-parameter metric dxi^2 + U^2 dchi^2.

    Runs the three quadratures

        rho = sqrt(a^2 U^2 - 1) / omega
        lam = branch_lambda/omega int a U W / (a^2 U^2 - 1) dxi
        Phi = branch_phi/omega int W / (a U (a^2 U^2 - 1)) dxi

    with W = sqrt(a^2 U^2 (omega^2 - a^2 U'^2) - omega^2) and embeds
    x(xi, chi) = (rho cos(omega phi), rho sin(omega phi), lam + phi),
    phi = chi/a - Phi.  Varying (omega, a) with U fixed sweeps an isometric
    family: the first form is dxi^2 + U^2 dchi^2 for every member, while H
    generally changes.  Roundoff can push the W radicand slightly negative
    where it grazes zero; such samples are clipped to zero, silently in the
    interior when below 1e-9 of scale, with a warning inside the 3-sample
    boundary guard band, and anything larger raises BourDomainViolation.

    U' and U'' default to finite differences of the sampled U.  Pass
    U_derivs=(Udot, Uddot) when closed forms are available; near a minimal
    member both the numerator of H and W vanish and the 0/0 only settles
    cleanly with exact derivatives.
    """
    xi0, xi1 = float(xi_range[0]), float(xi_range[1])
    if not xi1 > xi0:
        raise InvalidRange("empty xi range")
    if omega == 0.0 or a == 0.0:
        raise InvalidRange("omega and a must be nonzero")
    xi = np.linspace(xi0, xi1, n)
    Uv = _sample_scalar(U, xi)
    if np.any(Uv <= 0.0):
        raise BourDomainViolation(f"U must stay positive; U <= 0 at xi = {xi[Uv <= 0.0][0]:.6g}")
    if U_derivs is None:
        Ud = _fd.derivative(xi, Uv, 1)
        Udd = _fd.derivative(xi, Uv, 2)
    else:
        Ud = _sample_scalar(U_derivs[0], xi)
        Udd = _sample_scalar(U_derivs[1], xi)

    m2 = a**2 * Uv**2 - 1.0
    if m2.min() <= 0.0:
        bad = xi[m2 <= 0.0][0]
        raise BourDomainViolation(f"a^2 U^2 - 1 <= 0 at xi = {bad:.6g}")
    rad = a**2 * Uv**2 * (omega**2 - a**2 * Ud**2) - omega**2
    scale = max(omega**2, float((a**2 * Uv**2 * omega**2).max()))
    neg = rad < 0.0
    if neg.any():
        small = np.abs(rad) <= 1e-9 * scale
        guard = np.zeros(n, dtype=bool)
        guard[:3] = guard[-3:] = True
        bad = neg & ~small & ~guard
        if bad.any():
            raise BourDomainViolation(
                f"a^2 U^2 (omega^2 - a^2 U'^2) - omega^2 < 0 at xi = {xi[bad][0]:.6g}"
            )
        clipped = int(np.count_nonzero(neg & ~small))
        if clipped:
            warnings.warn(f"clipped {clipped} boundary sample(s) of the Bour radicand")
        rad = np.clip(rad, 0.0, None)
    W = np.sqrt(rad)

    rho = np.sqrt(m2) / omega
    lam = branch_lambda / omega * _cumquad(a * Uv * W / m2, xi)
    Phi = branch_phi / omega * _cumquad(W / (a * Uv * m2), xi)

    K = -Udd / Uv
    num = a**2 * (Uv * Udd + Ud**2) - omega**2
    with np.errstate(divide="ignore", invalid="ignore"):
        H = num / (2.0 * W)
    # minimal members have num = W = 0 identically; settle the 0/0 to H = 0
    H = np.where((W < 1e-7 * np.sqrt(scale)) & (np.abs(num) < 1e-6 * scale), 0.0, H)

    rho_spline = make_interp_spline(xi, rho, k=5)
    lam_spline = make_interp_spline(xi, lam, k=5)
    Phi_spline = make_interp_spline(xi, Phi, k=5)

    def embed(xx, cc):
        xx, cc = np.broadcast_arrays(xx, cc)
        phi = cc / a - Phi_spline(xx)
        rr = rho_spline(xx)
        return np.stack(
            [rr * np.cos(omega * phi), rr * np.sin(omega * phi), lam_spline(xx) + phi],
            axis=-1,
        )

    return InvariantSurface(
        kind=HELICOIDAL,
        u_grid=xi,
        v_range=(0.0, 2.0 * np.pi),
        f=Uv,
        H=H,
        K=K,
        U=Uv,
        omega=float(omega),
        a_const=float(a),
        rho=rho,
        lam=lam,
        _embed=embed,
    )


def minimal_helicoidal_family(omega, omega0, omega1, xi_range, n=1201):
    """Minimal helicoidal surface U^2 = (omega xi + omega1)^2 + b, b >= 1.

    Returns the family tag and the Bour surface (a = 1 convention).  The
    closed-form Gaussian curvature is K = -b omega^2 / ((omega xi +
    omega1)^2 + b)^2; the helicoid is (omega, 1, 0).
    """
    b = float(omega0) - float(omega1) ** 2
    if b < 1.0:
        raise InvalidFamily(f"omega0 - omega1^2 = {b:.6g} < 1")
    family = MinimalHelicoidal(omega=float(omega), omega0=float(omega0), omega1=float(omega1), b=b)

    def Ufun(xi):
        return np.sqrt((omega * xi + omega1) ** 2 + b)

    def Udot(xi):
        return omega * (omega * xi + omega1) / Ufun(xi)

    def Uddot(xi):
        return omega**2 * b / Ufun(xi) ** 3

    # exact derivatives: num and W both vanish identically on the family,
    # and FD noise would turn the 0/0 into spurious mean curvature
    surface = bour_surface(Ufun, omega, 1.0, xi_range, n=n, U_derivs=(Udot, Uddot))
    return family, surface


def minimal_helicoidal_K(family, xi):
    """Closed-form K of a minimal helicoidal member."""
    xi = np.asarray(xi, dtype=float)
    q = (family.omega * xi + family.omega1) ** 2 + family.b
    return -family.b * family.omega**2 / q**2
