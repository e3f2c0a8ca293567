"""Separated Schrodinger problems on invariant surfaces and thin tubes.

A constrained particle on a surface with metric du^2 + f^2(u) dv^2 feels the
curvature-induced potential V = -(H^2 - K).  Rescaling psi -> psi/sqrt(f)
(which conserves the probability density) and separating off e^{i k_v v}
with B'' = -lambda B leaves a 1D problem along the generating curve,

    A'' + (Ueff + k^2 - lambda/f^2) A = 0,
    Ueff = f'^2/(4 f^2) + f''/(2 f) + H^2,

in units hbar^2/2m* = 1 throughout (so a free box of length L has levels
pi^2 n^2 / L^2).  The metric coefficient and the separation constant depend
on the surface class: cylindrical surfaces have f = 1 and keep lambda as the
caller's transverse wavenumber squared; revolution surfaces have f = x (the
distance from the axis) and lambda = m_chi^2; helicoidal surfaces have
f = U and lambda = (m_chi omega)^2, since the orbit coordinate chi advances
the screw angle by omega chi.

The eigensolver discretizes -d^2/du^2 - Ueff + lambda/f^2 with the standard
second-order three-point stencil (eigenvalues converge as h^2): a symmetric
tridiagonal solve under Dirichlet conditions, the corner-corrected periodic
variant via shift-invert Lanczos.  Minimal helicoidal surfaces get their
closed-form effective potential and a bound-state detector with a domain
doubling stability check.  Thin tubes (r kappa << 1) reduce at zero order to
a flat strip with the constant shift -1/(4 r^2); the transverse factor
e^{i ell phi_RM} picked up by a tube cross-section is single-valued only for
integer ell and carries the geometric phase e^{i ell theta(s)}, theta' = tau.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_simpson, simpson
from scipy.interpolate import make_interp_spline
from scipy.linalg import eigh_tridiagonal
from scipy.sparse import diags
from scipy.sparse.linalg import eigsh

from .curve_kernel import frenet_apparatus, resample_by_arclength
from .errors import GridTooCoarse, InvalidFamily, InvalidRange, NotThin, UndefinedFrame
from .gip_surfaces import CYLINDRICAL, HELICOIDAL, REVOLUTION

DIRICHLET = "Dirichlet"
PERIODIC = "Periodic"


def _readonly(a):
    a = np.asarray(a, dtype=float)
    a.setflags(write=False)
    return a


def _cumquad(y, x):
    return np.concatenate([[0.0], cumulative_simpson(y, x=x)])


@dataclass(frozen=True)
class SeparatedProblem:
    """1D eigenproblem A'' + (Ueff + k^2 - lam/f^2) A = 0 on a uniform grid.

    lam is the transverse separation constant (the field the theory calls
    lambda; renamed to stay importable).  f must be positive and the grid
    uniform; both are enforced here.
    """

    u_grid: np.ndarray
    f: np.ndarray
    Ueff: np.ndarray
    lam: float
    bc: str = DIRICHLET

    def __post_init__(self):
        for name in ("u_grid", "f", "Ueff"):
            object.__setattr__(self, name, _readonly(getattr(self, name)))
        if self.bc not in (DIRICHLET, PERIODIC):
            raise InvalidRange(f"unknown boundary condition {self.bc!r}")
        steps = np.diff(self.u_grid)
        if steps.min() <= 0.0 or np.ptp(steps) > 1e-9 * steps.mean():
            raise InvalidRange("u_grid must be uniform and increasing")
        if np.any(self.f <= 0.0):
            raise InvalidRange("metric coefficient f must stay positive")

    @property
    def potential(self):
        """The solver-side potential -Ueff + lam/f^2."""
        return -self.Ueff + self.lam / self.f**2


@dataclass(frozen=True)
class Spectrum:
    """Lowest eigenpairs, energies ascending, wavefunctions L2-normalized in du."""

    energies: np.ndarray
    wavefunctions: np.ndarray
    bc: str
    n_states: int
    u_grid: np.ndarray


@dataclass(frozen=True)
class BoundState:
    """Negative-energy ground state that survived the domain doubling check."""

    energy: float
    u_grid: np.ndarray
    wavefunction: np.ndarray


@dataclass(frozen=True)
class ThinTubeMode:
    """Zero-order tube eigenstate psi_n(s) e^{i ell phi} with its phase factor."""

    energy: float
    s_grid: np.ndarray
    wavefunction: np.ndarray
    theta: np.ndarray
    ell: int
    n: int
    closed: bool


def separated_problem(surface, m_chi_or_lambda=0.0):
    """Assemble the 1D problem for an invariant surface.

    The second argument is the azimuthal integer m_chi for revolution and
    helicoidal surfaces (lambda = m_chi^2 resp. (m_chi omega)^2) and the raw
    separation constant lambda for cylindrical ones, whose orbit direction
    is a straight line with continuous wavenumber.  f, H are taken from the
    surface and differentiated by quintic spline, so the assembly works for
    any construction route; the minimal-family closed form lives in
    helicoidal_minimal_veff.
    """
    u = np.asarray(surface.u_grid, dtype=float)
    n = len(u)
    uu = np.linspace(u[0], u[-1], n)
    f_spline = make_interp_spline(u, surface.f, k=5)
    H_spline = make_interp_spline(u, surface.H, k=5)
    f = f_spline(uu)
    fu = f_spline.derivative(1)(uu)
    fuu = f_spline.derivative(2)(uu)
    Ueff = fu**2 / (4.0 * f**2) + fuu / (2.0 * f) + H_spline(uu) ** 2

    if surface.kind == CYLINDRICAL:
        lam = float(m_chi_or_lambda)
    elif surface.kind == REVOLUTION:
        lam = float(m_chi_or_lambda) ** 2
    elif surface.kind == HELICOIDAL:
        lam = (float(m_chi_or_lambda) * surface.omega) ** 2
    else:
        raise InvalidRange(f"unknown surface kind {surface.kind!r}")
    return SeparatedProblem(u_grid=uu, f=f, Ueff=Ueff, lam=lam, bc=DIRICHLET)


def helicoidal_minimal_veff(family, m_chi, xi_range, n=2001):
    """Closed-form separated problem on a minimal helicoidal surface.

    The solver potential -Ueff + lam/f^2 equals

        V_eff(xi) = -(omega^2/4) [ b/(b+(omega xi+omega1)^2)^2
                                   + (1-4 m_chi^2)/(b+(omega xi+omega1)^2) ]

    attractive everywhere for m_chi = 0 and repulsive everywhere for
    |m_chi| >= 1 (the second term flips sign and dominates).
    """
    if family.b < 1.0:
        raise InvalidFamily(f"omega0 - omega1^2 = {family.b:.6g} < 1")
    xi0, xi1 = float(xi_range[0]), float(xi_range[1])
    if not xi1 > xi0:
        raise InvalidRange("empty xi range")
    xi = np.linspace(xi0, xi1, n)
    om, b = family.omega, family.b
    U2 = (om * xi + family.omega1) ** 2 + b
    Ueff = om**2 / 4.0 * (b / U2**2 + 1.0 / U2)
    lam = (float(m_chi) * om) ** 2
    return SeparatedProblem(u_grid=xi, f=np.sqrt(U2), Ueff=Ueff, lam=lam, bc=DIRICHLET)


def _resample_problem(problem, u0, u1, n_grid):
    uu = np.linspace(u0, u1, n_grid)
    f = make_interp_spline(problem.u_grid, problem.f, k=3)(uu)
    Ueff = make_interp_spline(problem.u_grid, problem.Ueff, k=3)(uu)
    return SeparatedProblem(u_grid=uu, f=f, Ueff=Ueff, lam=problem.lam, bc=problem.bc)


def solve_1d(problem, n_states, n_grid=None):
    """Lowest n_states eigenpairs of -d^2/du^2 - Ueff + lam/f^2.

    n_grid resamples the problem by cubic spline before discretizing;
    None keeps the problem's own grid.  Second-order stencil, so eigenvalues
    converge like h^2 (halving the step quarters the error).  Dirichlet uses
    the LAPACK tridiagonal solver; Periodic adds the wrap-around corners and
    goes through shift-invert Lanczos with the shift below the spectrum.
    """
    if n_grid is not None:
        if n_grid < 200:
            raise GridTooCoarse(f"n_grid = {n_grid} < 200")
        problem = _resample_problem(problem, problem.u_grid[0], problem.u_grid[-1], n_grid)
    u = problem.u_grid
    n = len(u)
    if n < 200:
        raise GridTooCoarse(f"grid has {n} points < 200")
    V = problem.potential
    h = u[1] - u[0]
    if problem.bc == DIRICHLET:
        if not 1 <= n_states <= n - 2:
            raise InvalidRange("n_states out of range for the grid")
        d = 2.0 / h**2 + V[1:-1]
        e = np.full(n - 3, -1.0 / h**2)
        w, v = eigh_tridiagonal(d, e, select="i", select_range=(0, n_states - 1))
        A = np.zeros((n_states, n))
        A[:, 1:-1] = v.T
    else:
        m = n - 1  # the last node duplicates the first
        if not 1 <= n_states <= m - 2:
            raise InvalidRange("n_states out of range for the grid")
        d = 2.0 / h**2 + V[:m]
        Hmat = diags(
            [d, np.full(m - 1, -1.0 / h**2), np.full(m - 1, -1.0 / h**2), [-1.0 / h**2], [-1.0 / h**2]],
            [0, 1, -1, m - 1, -(m - 1)],
            format="csc",
        )
        sigma = float(V.min()) - 1.0  # strictly below the spectrum
        w, v = eigsh(Hmat, k=n_states, sigma=sigma, which="LM")
        order = np.argsort(w)
        w, v = w[order], v[:, order]
        A = np.concatenate([v.T, v.T[:, :1]], axis=1)
    norms = np.sqrt(np.trapezoid(A**2, u, axis=1))
    A = A / norms[:, None]
    return Spectrum(energies=w, wavefunctions=A, bc=problem.bc, n_states=n_states, u_grid=u)


def bound_state_search(problem, L=None, n_grid=2001):
    """Ground state on [-L, L] with a doubling stability check.

    Bound means E0 < -1e-6 on the doubled window too and the doubling moved
    E0 by less than 10 percent; returns the doubled-window BoundState, or
    None.  The problem grid must cover [-2L, 2L]; with L unset, half the
    covered half-width is used so the check just fits.
    """
    u0, u1 = problem.u_grid[0], problem.u_grid[-1]
    if L is None:
        L = 0.5 * min(-u0, u1)
    if L <= 0.0:
        raise InvalidRange("positive half-width required (grid must straddle 0)")
    if u0 > -2.0 * L or u1 < 2.0 * L:
        raise InvalidRange("grid does not cover the doubled window [-2L, 2L]")
    eps = 1e-6
    inner = solve_1d(_resample_problem(problem, -L, L, n_grid), 1)
    outer = solve_1d(_resample_problem(problem, -2.0 * L, 2.0 * L, n_grid), 1)
    e_in, e_out = float(inner.energies[0]), float(outer.energies[0])
    if e_out >= -eps or abs(e_out - e_in) > 0.1 * abs(e_in):
        return None
    return BoundState(energy=e_out, u_grid=outer.u_grid, wavefunction=outer.wavefunctions[0])


def geometric_phase(curve):
    """Accumulated Frenet-RM angle int tau ds over the curve.

    For a closed curve this is the normal holonomy of the RM transport
    (mod 2 pi).  Inflections leave tau undefined and raise.
    """
    fd = frenet_apparatus(curve)
    if not fd.kappa_defined.all():
        raise UndefinedFrame("torsion undefined where kappa vanishes")
    return float(simpson(fd.tau, x=fd.s))


def thin_tube_spectrum(centerline, r, ell, n, n_s=None):
    """Zero-order spectrum of a thin tube of radius r around the centerline.

    In the limit r kappa << 1 the tube problem flattens to the (s, phi)
    strip with the constant well -1/(4 r^2): longitudinal box levels plus
    the transverse tower (ell/r)^2,

        E(n, ell) = E_box(n) + (ell/r)^2 - 1/(4 r^2),

    E_box = (pi n / L)^2 on an open centerline (Dirichlet ends, n >= 1) and
    (2 pi n / L)^2 on a closed one (n >= 0).  Energies carry no torsion
    dependence; the eigenfunction does, through the single-valuedness factor
    e^{i ell phi_RM} = e^{i ell phi_F} e^{i ell theta(s)} with theta' = tau,
    a geometric phase accumulating ell * loop integral of tau per circuit.
    """
    if not float(ell).is_integer():
        raise InvalidRange("ell must be an integer for a single-valued cross-section factor")
    ell = int(ell)
    curve = resample_by_arclength(centerline, n_s or len(centerline.params))
    fd = frenet_apparatus(curve)
    if not fd.kappa_defined.all():
        raise UndefinedFrame("thin-tube phase needs a defined Frenet chart")
    rk = r * fd.kappa.max()
    if rk >= 0.05:
        raise NotThin(f"r kappa reaches {rk:.3g}; the zero-order expansion needs r kappa < 0.05")
    s = fd.s
    length = float(s[-1])
    if curve.closed:
        if n < 0:
            raise InvalidRange("closed-tube longitudinal index n must be >= 0")
        e_box = (2.0 * np.pi * n / length) ** 2
        psi = np.exp(2j * np.pi * n * s / length) / np.sqrt(length)
    else:
        if n < 1:
            raise InvalidRange("open-tube longitudinal index n must be >= 1")
        e_box = (np.pi * n / length) ** 2
        psi = np.sqrt(2.0 / length) * np.sin(np.pi * n * s / length)
    theta = _cumquad(fd.tau, s)
    energy = e_box + (ell / r) ** 2 - 1.0 / (4.0 * r**2)
    wavefunction = psi * np.exp(1j * ell * theta)
    return ThinTubeMode(
        energy=float(energy),
        s_grid=s,
        wavefunction=wavefunction,
        theta=theta,
        ell=ell,
        n=int(n),
        closed=curve.closed,
    )
