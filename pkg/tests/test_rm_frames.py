"""Tests for rotation-minimizing frames and normal developments."""

import numpy as np
import pytest

from framefield.curve_kernel import SampledCurve, frenet_apparatus, integrate_frenet, resample_by_arclength
from framefield.errors import DegenerateFit, NotClosed, UndefinedFrame
from framefield.rm_frames import (
    angular_velocity,
    development_sphere_center,
    holonomy,
    normal_development,
    rm_double_reflection,
    rm_from_frenet,
    total_torsion,
)


def helix(a=1.0, b=0.5, n=2000, turns=3.0):
    u = np.linspace(0.0, 2 * np.pi * turns, n)
    pts = np.column_stack([a * np.cos(u), a * np.sin(u), b * u])
    return resample_by_arclength(SampledCurve(params=u, points=pts), n)


def spherical_arc(center, r, n=2500):
    th = np.linspace(0.4, 2.0, n)
    phi = 2.0 * th
    pts = center + r * np.column_stack(
        [np.sin(th) * np.cos(phi), np.sin(th) * np.sin(phi), np.cos(th)]
    )
    return resample_by_arclength(SampledCurve(params=th, points=pts), n)


def wobbly_closed(n=4000):
    # closed, non-planar, curvature bounded away from zero
    u = np.linspace(0.0, 2 * np.pi, n)
    r = 2.0 + np.cos(3 * u)
    pts = np.column_stack([r * np.cos(u), r * np.sin(u), 0.4 * np.sin(3 * u)])
    pts[-1] = pts[0]
    return resample_by_arclength(SampledCurve(params=u, points=pts, closed=True), n)


def test_rm_from_frenet_plane_curve():
    u = np.linspace(0.0, 4.0, 1500)
    pts = np.column_stack([u, np.cosh(u) * 0.3, np.zeros_like(u)])
    fd = frenet_apparatus(resample_by_arclength(SampledCurve(params=u, points=pts), 1500))
    rm = rm_from_frenet(fd, theta0=0.0)
    assert np.abs(rm.normals[0] - fd.n).max() < 1e-12
    assert np.abs(rm.kappas[0] - fd.kappa).max() < 1e-12
    assert np.abs(rm.kappas[1]).max() < 1e-12


def test_rm_from_frenet_helix_theta_linear():
    crv = helix(a=2.0, b=1.0)
    fd = frenet_apparatus(crv)
    rm = rm_from_frenet(fd, theta0=0.3)
    tau0 = 1.0 / 5.0  # b/(a^2+b^2)
    sl = slice(8, -8)
    assert np.abs(rm.theta[sl] - (0.3 + tau0 * fd.s[sl])).max() < 1e-4
    kap0 = 2.0 / 5.0
    assert np.abs(np.hypot(rm.kappas[0], rm.kappas[1])[sl] - kap0).max() < 1e-4


def test_rm_from_frenet_requires_defined_frame():
    u = np.linspace(0.0, 1.0, 100)
    pts = np.column_stack([u, np.zeros_like(u), np.zeros_like(u)])
    fd = frenet_apparatus(SampledCurve(params=u, points=pts))
    with pytest.raises(UndefinedFrame):
        rm_from_frenet(fd)


def test_theta0_shift_rotates_development():
    crv = helix()
    fd = frenet_apparatus(crv)
    rm0 = rm_from_frenet(fd, 0.0)
    rm1 = rm_from_frenet(fd, 0.7)
    c, s = np.cos(0.7), np.sin(0.7)
    rot = np.array([[c, -s], [s, c]])
    rotated = rot @ np.vstack([rm0.kappas[0], rm0.kappas[1]])
    assert np.abs(rotated[0] - rm1.kappas[0]).max() < 1e-10
    assert np.abs(rotated[1] - rm1.kappas[1]).max() < 1e-10
    d0 = normal_development(rm0)
    d1 = normal_development(rm1)
    assert d0.fit_kind == d1.fit_kind
    assert abs(d0.distance - d1.distance) < 1e-8


def test_double_reflection_straight_line():
    u = np.linspace(0.0, 5.0, 200)
    pts = np.column_stack([u, u, np.zeros_like(u)]) / np.sqrt(2.0)
    rm = rm_double_reflection(SampledCurve(params=u, points=pts), np.array([1.0, -1.0, 0.0]))
    drift = np.abs(rm.normals[0] - rm.normals[0][0]).max()
    assert drift < 1e-12
    assert np.abs(rm.kappas).max() < 1e-9


def test_double_reflection_position_field_on_sphere():
    center = np.array([0.5, -0.2, 1.0])
    r = 1.5
    crv = spherical_arc(center, r)
    n0 = (crv.points[0] - center) / r
    rm = rm_double_reflection(crv, n0)
    expected = (crv.points - center) / r
    assert np.abs(rm.normals[0] - expected).max() < 1e-4


def rm_seed(crv):
    # orthogonal seed against the first tangent
    from framefield._fd import derivative

    d1 = derivative(crv.params, crv.points, 1)
    t0 = d1[0] / np.linalg.norm(d1[0])
    seed = np.array([0.0, 0.0, 1.0])
    seed = seed - (seed @ t0) * t0
    return seed / np.linalg.norm(seed)


def check_rm_normal_derivative(rm):
    from framefield._fd import derivative

    for i in range(rm.normals.shape[0]):
        dn = derivative(rm.s, rm.normals[i], 1)
        mag = np.linalg.norm(dn, axis=1)
        ortho = dn - np.einsum("ij,ij->i", dn, rm.t)[:, None] * rm.t
        active = mag > 0.1 * mag.max() + 1e-12
        angles = np.linalg.norm(ortho[active], axis=1) / mag[active]
        assert angles.max() < 1e-4


def test_double_reflection_rm_property_helix():
    crv = helix(a=1.0, b=0.8)
    rm = rm_double_reflection(crv, rm_seed(crv))
    check_rm_normal_derivative(rm)


def test_holonomy_equals_total_torsion():
    crv = wobbly_closed()
    rm = rm_double_reflection(crv, rm_seed(crv))
    tot = total_torsion(crv)
    hol = holonomy(rm)
    diff = (hol - tot + np.pi) % (2 * np.pi) - np.pi
    assert abs(diff) < 1e-3


def test_angular_velocity_rm_equals_kappa():
    crv = helix(a=1.4, b=0.7)
    fd = frenet_apparatus(crv)
    rm = rm_from_frenet(fd)
    w = angular_velocity(rm)
    sl = slice(8, -8)
    assert np.abs(w - fd.kappa)[sl].max() < 1e-5


def test_angular_velocity_frenet_frame():
    crv = helix(a=2.0, b=1.0)
    fd = frenet_apparatus(crv)
    w = angular_velocity(fd)
    expect = np.hypot(fd.kappa, fd.tau)
    assert np.abs(w - expect)[8:-8].max() < 1e-5


def test_angular_velocity_unit_rotation():
    crv = helix(a=1.0, b=0.6)
    fd = frenet_apparatus(crv)
    rm = rm_from_frenet(fd)
    phi = rm.s
    c, s = np.cos(phi)[:, None], np.sin(phi)[:, None]
    e1 = c * rm.normals[0] + s * rm.normals[1]
    e2 = -s * rm.normals[0] + c * rm.normals[1]
    w = angular_velocity((rm.s, rm.t, e1, e2))
    expect = np.sqrt(fd.kappa ** 2 + 1.0)
    assert np.abs(w - expect)[8:-8].max() < 1e-4


def test_angular_velocity_never_below_kappa():
    crv = helix(a=1.0, b=0.4)
    fd = frenet_apparatus(crv)
    rm = rm_from_frenet(fd)
    rng = np.random.default_rng(7)
    sl = slice(8, -8)
    for _ in range(5):
        a0, a1 = rng.uniform(-2, 2, size=2)
        phi = a0 + a1 * np.sin(rm.s)
        c, s = np.cos(phi)[:, None], np.sin(phi)[:, None]
        e1 = c * rm.normals[0] + s * rm.normals[1]
        e2 = -s * rm.normals[0] + c * rm.normals[1]
        w = angular_velocity((rm.s, rm.t, e1, e2))
        assert (w[sl] >= fd.kappa[sl] - 1e-6).all()


def test_development_spherical_radius():
    crv = spherical_arc(np.zeros(3), 2.0)
    rm = rm_double_reflection(crv, (crv.points[0]) / 2.0)
    dev = normal_development(rm)
    assert dev.fit_kind == "LineNotThroughOrigin"
    assert abs(1.0 / dev.distance - 2.0) < 1e-3
    centers = development_sphere_center(crv.points, rm, dev)
    assert np.abs(centers - centers.mean(axis=0)).max() < 1e-3


def test_development_plane_curve_line_through_origin():
    u = np.linspace(0.0, 3.0, 2500)
    pts = np.column_stack([u, np.sin(u), np.zeros_like(u)])
    crv = resample_by_arclength(SampledCurve(params=u, points=pts), 2500)
    # plane curve with an inflection: double reflection walks through it
    rm = rm_double_reflection(crv, rm_seed(crv))
    dev = normal_development(rm)
    assert dev.fit_kind == "LineThroughOrigin"


def test_development_generic_curve_not_a_line():
    u = np.linspace(0.0, 1.5, 2000)
    pts = np.column_stack([u, u ** 2, u ** 3])
    crv = resample_by_arclength(SampledCurve(params=u, points=pts), 2000)
    rm = rm_double_reflection(crv, rm_seed(crv))
    dev = normal_development(rm)
    assert dev.fit_kind == "NotALine"


def test_development_circle_point_case():
    u = np.linspace(0.0, 2 * np.pi, 3000)
    r0 = 1.7
    pts = r0 * np.column_stack([np.cos(u), np.sin(u), np.zeros_like(u)])
    crv = resample_by_arclength(SampledCurve(params=u, points=pts, closed=True), 3000)
    fd = frenet_apparatus(crv)
    rm = rm_from_frenet(fd)
    dev = normal_development(rm)
    assert dev.fit_kind == "LineNotThroughOrigin"
    assert abs(dev.radius - r0) < 1e-6


def test_development_zero_curvature_degenerate():
    u = np.linspace(0.0, 5.0, 300)
    pts = np.column_stack([u, np.zeros_like(u), np.zeros_like(u)])
    rm = rm_double_reflection(SampledCurve(params=u, points=pts), np.array([0.0, 1.0, 0.0]))
    with pytest.raises(DegenerateFit):
        normal_development(rm)


def test_total_torsion_closed_spherical():
    # closed curve on the unit sphere: total torsion must vanish
    u = np.linspace(0.0, 2 * np.pi, 6000)
    th = np.pi / 2 + 0.4 * np.sin(2 * u)
    pts = np.column_stack([np.sin(th) * np.cos(u), np.sin(th) * np.sin(u), np.cos(th)])
    pts[-1] = pts[0]
    crv = resample_by_arclength(SampledCurve(params=u, points=pts, closed=True), 6000)
    assert abs(total_torsion(crv)) < 1e-4


def test_total_torsion_plane_closed():
    u = np.linspace(0.0, 2 * np.pi, 2000)
    pts = np.column_stack([2 * np.cos(u), np.sin(u), np.zeros_like(u)])
    pts[-1] = pts[0]
    crv = resample_by_arclength(SampledCurve(params=u, points=pts, closed=True), 2000)
    assert abs(total_torsion(crv)) < 1e-10


def test_total_torsion_requires_closed():
    with pytest.raises(NotClosed):
        total_torsion(helix())


def test_total_torsion_matches_direct_quadrature():
    from scipy.integrate import simpson

    crv = wobbly_closed()
    fd = frenet_apparatus(crv)
    assert abs(total_torsion(crv) - simpson(fd.tau, x=fd.s)) < 1e-12


def test_kappa_consistency_with_rm():
    crv = helix(a=1.2, b=0.5)
    fd = frenet_apparatus(crv)
    rm = rm_double_reflection(crv, rm_seed(crv))
    kap_rm = np.hypot(rm.kappas[0], rm.kappas[1])
    sl = slice(8, -8)
    assert np.abs(kap_rm - fd.kappa)[sl].max() < 1e-6


def test_sphere_development_in_four_dimensions():
    # curve on S^3(r): (kappa1, kappa2, kappa3) fits a hyperplane at distance 1/r
    r = 1.3
    u = np.linspace(0.0, 2.0, 4000)
    a = 0.8 + 0.3 * np.sin(u)
    b = 1.1 * u
    c = 0.5 * u
    pts = r * np.column_stack(
        [np.cos(a) * np.cos(b), np.cos(a) * np.sin(b), np.sin(a) * np.cos(c), np.sin(a) * np.sin(c)]
    )
    crv = resample_by_arclength(SampledCurve(params=u, points=pts), 4000)
    n0 = crv.points[0] / r
    from framefield._fd import derivative

    d1 = derivative(crv.params, crv.points, 1)
    t0 = d1[0] / np.linalg.norm(d1[0])
    n0 = n0 - (n0 @ t0) * t0
    n0 /= np.linalg.norm(n0)
    rm = rm_double_reflection(crv, n0)
    dev = normal_development(rm)
    assert dev.fit_kind == "LineNotThroughOrigin"
    assert abs(dev.distance - 1.0 / r) < 1e-3
    centers = development_sphere_center(crv.points, rm, dev)
    assert np.abs(centers - centers.mean(axis=0)).max() < 1e-3
