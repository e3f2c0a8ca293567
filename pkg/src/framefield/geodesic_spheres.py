"""Curves in the round space forms S^{m+1}(r) and H^{m+1}(r).

Both spaces are handled through their hypersurface models: the sphere
<q,q> = r^2 in Euclidean R^{m+2} and the upper hyperboloid sheet
<q,q>_1 = -r^2, x1 > 0 in Lorentz R^{m+2}_1 with metric diag(-1,1,...,1)
(index on the first coordinate here, unlike indefinite_spaces, so that the
sheet condition reads x1 > 0).  Tangent vectors of either model are
spacelike, hence intrinsic lengths and angles are plain ambient dot
products.  The position vector is the (scaled) unit normal of the model,
so the Gauss formula collapses the covariant derivative along a curve to
an ambient projection,

    nabla_t y = y' - (<y', q> / <q, q>) q,

and a normal field is rotation minimizing exactly when its ambient
derivative stays inside span{t, q}.  The double-reflection kernel with
position projection transports such fields discretely.

A curve lies on a geodesic sphere of intrinsic radius z0 iff its RM
curvatures satisfy a single affine relation sum_i a_i kappa_i + C = 0
with C = cot(z0/r)/r (cot -> coth on the hyperboloid); the center
P = cos(z0/r) alpha - r sin(z0/r) sum_i a_i n_i is then a fixed ambient
point.  Totally geodesic submanifolds are the C = 0 case: the relation
passes through the origin and u = sum_i a_i n_i itself is the fixed
vector.  In hyperbolic space a relation with 0 < C <= 1/r belongs to a
horosphere or an equidistant hypersurface, which carry no finite radius.
"""

from dataclasses import dataclass

import numpy as np

from . import _backend
from ._fd import derivative
from ._fit import fit_hyperplane
from .curve_kernel import SampledCurve
from .errors import (
    DomainViolation,
    InvalidFrame,
    InvalidRange,
    NoFit,
    NotTangent,
    RadiusOutOfRange,
    UndefinedFrame,
    ZeroTorsion,
)
from .indefinite_spaces import _fit_spline, _resample_dense

SPHERE = "Sphere"
HYPERBOLIC = "Hyperbolic"


@dataclass(frozen=True)
class SpaceForm:
    """Round sphere or hyperbolic space of curvature +-1/r^2, dimension dim = m+1."""

    kind: str
    r: float = 1.0
    dim: int = 2

    def __post_init__(self):
        if self.kind not in (SPHERE, HYPERBOLIC):
            raise InvalidRange("kind must be %r or %r" % (SPHERE, HYPERBOLIC))
        if not self.r > 0.0:
            raise InvalidRange("radius must be positive")
        if self.dim < 2:
            raise InvalidRange("need dim = m+1 >= 2")

    @property
    def ambient_dim(self):
        return self.dim + 1

    @property
    def sign(self):
        return 1.0 if self.kind == SPHERE else -1.0

    @property
    def eta(self):
        e = np.ones(self.ambient_dim)
        if self.kind == HYPERBOLIC:
            e[0] = -1.0
        return e

    def dot(self, u, v):
        return (np.asarray(u) * self.eta * np.asarray(v)).sum(axis=-1)


@dataclass(frozen=True)
class ManifoldRMData:
    s: np.ndarray
    points: np.ndarray
    t: np.ndarray
    normals: np.ndarray  # (m, N, ambient_dim)
    kappas: np.ndarray   # (m, N)
    form: SpaceForm


@dataclass(frozen=True)
class GeodesicSphere:
    z0: float
    center: np.ndarray
    fit_residual: float
    direction: np.ndarray   # coefficients a_i of sum a_i kappa_i + C = 0, C > 0
    center_drift: float


@dataclass(frozen=True)
class GeodesicPlane:
    direction: np.ndarray | None   # the constant ambient vector sum a_i n_i
    fit_residual: float
    direction_drift: float
    is_geodesic: bool = False


def on_form(form, q, tol=1e-8):
    """True when <q,q> matches +-r^2 within tol*r^2 (and x1 > 0 on the sheet)."""
    q = np.asarray(q, dtype=float)
    ok = np.abs(form.dot(q, q) - form.sign * form.r ** 2) <= tol * form.r ** 2
    if form.kind == HYPERBOLIC:
        ok = ok & (q[..., 0] > 0.0)
    return np.all(ok)


def project_to_form(form, q):
    """Radial rescale onto the model; exact for both quadrics."""
    q = np.asarray(q, dtype=float)
    qq = form.dot(q, q)
    if np.any(form.sign * qq <= 0.0):
        raise DomainViolation("point is on the wrong side of the light cone")
    scale = form.r / np.sqrt(np.abs(qq))
    return q * np.expand_dims(scale, -1) if q.ndim > 1 else q * scale


def exp_map(form, p, v, u):
    """Unit-speed geodesic from p with initial direction v, evaluated at u.

    cos(u/r) p + r sin(u/r) v on the sphere; cosh/sinh on the hyperboloid.
    u may be an array (leading axis of the result).
    """
    p = np.asarray(p, dtype=float)
    v = np.asarray(v, dtype=float)
    if not on_form(form, p):
        raise DomainViolation("base point is not on the form")
    if abs(form.dot(p, v)) > 1e-8 * form.r or abs(form.dot(v, v) - 1.0) > 1e-8:
        raise NotTangent("direction must be a unit vector tangent at p")
    u = np.asarray(u, dtype=float) / form.r
    if form.kind == SPHERE:
        c, s = np.cos(u), np.sin(u)
    else:
        c, s = np.cosh(u), np.sinh(u)
    c, s = np.expand_dims(c, -1), np.expand_dims(s, -1)
    return np.squeeze(c * p + form.r * s * v) if u.ndim == 0 else c * p + form.r * s * v


def covariant_derivative(form, q, dv):
    """Intrinsic derivative from the ambient one by the Gauss formula.

    <q,q> = +-r^2 is constant, so projecting dv off the position normal,
    dv - (<dv,q>/<q,q>) q, is the same as the +-(1/r^2)<x,y> q correction
    written with the undifferentiated fields.  Accepts single vectors or
    (N, ambient_dim) batches.
    """
    q = np.asarray(q, dtype=float)
    dv = np.asarray(dv, dtype=float)
    coef = form.dot(dv, q) / (form.sign * form.r ** 2)
    return dv - np.expand_dims(coef, -1) * q if dv.ndim > 1 else dv - coef * q


def _resample_form(form, curve):
    # intrinsic arc length = ambient eta-length for hypersurface models;
    # spline resampling leaves points off the quadric by interpolation
    # error, the radial reprojection removes it exactly
    pts = curve.points.copy()
    if curve.closed:
        pts[-1] = pts[0]
    spline = _fit_spline(curve.params, pts, curve.closed)
    u_fine = np.linspace(curve.params[0], curve.params[-1], max(16 * curve.n_samples, 2048))
    d1 = spline.derivative()(u_fine)
    speed = np.sqrt(form.dot(d1, d1))
    new = _resample_dense(curve, speed, u_fine, spline)
    return SampledCurve(params=new.params, points=project_to_form(form, new.points),
                        closed=curve.closed)


def _complete_tangent_normals(form, q0, t0, first=None):
    """eta-orthonormal basis of the normal space {q0, t0}^perp, size m.

    Every vector orthogonal to the position is tangent to the model, hence
    spacelike even in the Lorentz ambient; Gram-Schmidt needs no causal
    bookkeeping here.
    """
    basis = []
    if first is not None:
        basis.append(first)

    def reduce(w):
        w = w - (form.dot(w, q0) / form.dot(q0, q0)) * q0
        w = w - (form.dot(w, t0) / form.dot(t0, t0)) * t0
        for b in basis:
            w = w - form.dot(w, b) * b
        return w

    m = form.ambient_dim - 2
    for e in np.eye(form.ambient_dim):
        w = reduce(e)
        nn = form.dot(w, w)
        if nn > 1e-12:
            basis.append(w / np.sqrt(nn))
        if len(basis) == m:
            break
    if len(basis) != m:
        raise InvalidFrame("could not complete the normal basis")
    return np.array(basis)


def manifold_rm_frame(form, curve, init_normal=None):
    """Rotation-minimizing normal frame along a curve on the form.

    The curve is resampled to intrinsic arc length internally.  init_normal
    seeds the first transported normal; it must be tangent to the form and
    orthogonal to the initial tangent (small components are projected out,
    gross violations raise InvalidFrame).  kappa_i = <nabla_t t, n_i>.
    """
    if not on_form(form, curve.points):
        raise DomainViolation("curve samples leave the form by more than 1e-8")
    cu = _resample_form(form, curve)
    s, pts = cu.params, cu.points
    t = derivative(s, pts, 1, closed=cu.closed)
    t = t / np.sqrt(form.dot(t, t))[:, None]

    seed = None
    if init_normal is not None:
        seed = np.asarray(init_normal, dtype=float)
        nrm = np.sqrt(abs(form.dot(seed, seed)))
        if abs(form.dot(seed, t[0])) > 1e-6 * nrm or abs(form.dot(seed, pts[0])) > 1e-6 * nrm * form.r:
            raise InvalidFrame("seed normal is not tangent-orthogonal at the start")
        seed = seed - (form.dot(seed, pts[0]) / form.dot(pts[0], pts[0])) * pts[0]
        seed = seed - form.dot(seed, t[0]) * t[0]
        seed = seed / np.sqrt(form.dot(seed, seed))
    normals0 = _complete_tangent_normals(form, pts[0], t[0], first=seed)

    moved = _backend.double_reflection(pts, t, normals0, form.eta, project_position=True)
    normals = np.ascontiguousarray(np.transpose(moved, (1, 0, 2)))

    dt = derivative(s, t, 1, closed=cu.closed)
    acc = covariant_derivative(form, pts, dt)
    kappas = np.einsum("j,mij,ij->mi", form.eta, normals, acc)
    return ManifoldRMData(s=s, points=pts, t=t, normals=normals, kappas=kappas, form=form)


def geodesic_sphere_test(rm, form):
    """Affine fit of the RM curvatures; a geodesic sphere iff it misses the origin.

    Fits sum_i a_i kappa_i + C = 0 in total least squares, reads the
    intrinsic radius off C = cot(z0/r)/r (coth in hyperbolic space, where
    C <= 1/r means a horosphere or equidistant hypersurface instead of a
    sphere) and reconstructs the center P(s) = cos(z0/r) alpha(s)
    - r sin(z0/r) sum_i a_i n_i(s), which must come out constant.
    Returns None for curves whose fit passes through the origin (totally
    geodesic case) or whose center wanders.
    """
    samples = np.ascontiguousarray(rm.kappas.T)
    scale = float(np.sqrt((samples ** 2).sum(axis=1).mean()))
    if scale == 0.0:
        return None
    mean = samples.mean(axis=0)
    spread = float(np.sqrt(((samples - mean) ** 2).sum(axis=1).mean()))
    if spread < 1e-6 * scale:
        # constant curvatures collapse the fit to a point
        d = float(np.linalg.norm(mean))
        nhat, residual = mean / d, spread
    else:
        nhat, offset, residual = fit_hyperplane(samples)
        if residual > 1e-3 * scale:
            raise NoFit("curvature samples admit no affine relation")
        d = -offset
    if d < 1e-3 * scale:
        return None
    r = form.r
    if form.kind == SPHERE:
        z0 = r * np.arctan2(1.0, r * d)   # arccot, branch in (0, pi r/2)
        if z0 >= 0.5 * np.pi * r:
            raise RadiusOutOfRange("implied radius reaches the equator")
        cz, sz = np.cos(z0 / r), np.sin(z0 / r)
    else:
        if r * d <= 1.0 + 1e-9:
            raise RadiusOutOfRange("relation constant %.6g <= 1/r fits no geodesic sphere" % d)
        z0 = r * np.arctanh(1.0 / (r * d))
        cz, sz = np.cosh(z0 / r), np.sinh(z0 / r)
    # orientation: with a = -nhat the relation constant C = d > 0 matches cot/coth
    a = -nhat
    u = np.tensordot(a, rm.normals, axes=(0, 0))
    centers = cz * rm.points - r * sz * u
    cbar = centers.mean(axis=0)
    drift = float(np.sqrt(((centers - cbar) ** 2).sum(axis=1).mean()))
    if drift > 1e-3 * r:
        return None
    return GeodesicSphere(z0=float(z0), center=project_to_form(form, cbar),
                          fit_residual=residual, direction=a, center_drift=drift)


def totally_geodesic_test(rm):
    """Through-origin fit of the curvatures; the plane normal is sum a_i n_i.

    A curve lies in a totally geodesic hypersurface iff its development
    admits a linear relation sum a_i kappa_i = 0 and the ambient vector
    u = sum a_i n_i is constant; u is then the fixed normal of the cutting
    hyperplane through the origin.  Geodesics pass trivially (all kappa_i
    vanish) with no preferred direction.
    """
    samples = np.ascontiguousarray(rm.kappas.T)
    scale = float(np.sqrt((samples ** 2).sum(axis=1).mean()))
    tiny = 1e-8 * max(1.0, 1.0 / rm.form.r)
    if scale < tiny:
        return GeodesicPlane(direction=None, fit_residual=scale,
                             direction_drift=0.0, is_geodesic=True)
    _, sing, vt = np.linalg.svd(samples, full_matrices=True)
    a = vt[-1]
    residual = float(sing[-1] / np.sqrt(len(samples)))
    if residual > 1e-3 * scale:
        return None
    u = np.tensordot(a, rm.normals, axes=(0, 0))
    ubar = u.mean(axis=0)
    drift = float(np.sqrt(((u - ubar) ** 2).sum(axis=1).mean()))
    if drift > 1e-3:
        return None
    ubar = ubar / np.sqrt(abs(rm.form.dot(ubar, ubar)))
    return GeodesicPlane(direction=ubar, fit_residual=residual, direction_drift=drift)


def _binormal_field(form, pts, t, n):
    """Unit eta-orthogonal complement of {q, t, n}, sign-continuous in s."""
    rows = np.stack([pts, t, n], axis=1) * form.eta   # <v, x>_eta = (v*eta) @ x
    b = np.empty_like(t)
    for i in range(len(t)):
        _, _, vt = np.linalg.svd(rows[i], full_matrices=True)
        w = vt[-1]
        w = w / np.sqrt(abs(form.dot(w, w)))
        if i > 0 and np.dot(w, b[i - 1]) < 0.0:
            w = -w
        b[i] = w
    return b


def frenet_spherical_test_3d(form, curve):
    """RMS of (d/ds)[(1/tau)(1/kappa)'] + tau/kappa along a curve in a 3-form.

    The expression vanishes identically exactly on geodesic spheres (the
    intrinsic analogue of the Euclidean spherical-curve criterion), so the
    returned residual is a desk-scale membership test: near zero on a
    geodesic sphere, order one off it.
    """
    if form.dim != 3:
        raise InvalidRange("criterion needs a 3-dimensional form")
    if not on_form(form, curve.points):
        raise DomainViolation("curve samples leave the form by more than 1e-8")
    cu = _resample_form(form, curve)
    s, pts = cu.params, cu.points
    t = derivative(s, pts, 1, closed=cu.closed)
    t = t / np.sqrt(form.dot(t, t))[:, None]
    acc = covariant_derivative(form, pts, derivative(s, t, 1, closed=cu.closed))
    kappa = np.sqrt(form.dot(acc, acc))
    if kappa.min() < 1e-9:
        raise UndefinedFrame("intrinsic curvature vanishes, Frenet frame undefined")
    n = acc / kappa[:, None]
    b = _binormal_field(form, pts, t, n)
    dn = covariant_derivative(form, pts, derivative(s, n, 1, closed=cu.closed))
    tau = np.einsum("ij,j,ij->i", dn, form.eta, b)
    ta = np.abs(tau)
    if ta.max() < 1e-6 * kappa.max() or ta.min() < 1e-6 * ta.max():
        raise ZeroTorsion("criterion needs nonvanishing intrinsic torsion")
    expr = derivative(s, derivative(s, 1.0 / kappa, 1, closed=cu.closed) / tau,
                      1, closed=cu.closed) + tau / kappa
    if not cu.closed and len(expr) > 32:
        # three nested difference layers leave an end band of one-sided
        # stencils whose error dwarfs the interior; keep the RMS meaningful
        expr = expr[8:-8]
    return float(np.sqrt((expr ** 2).mean()))
