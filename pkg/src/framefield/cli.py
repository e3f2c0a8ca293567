"""Command-line interface: curve file parsing, dispatch, and data emission.

Subcommands
-----------
frames     sample a Frenet or rotation-minimizing frame along a curve file
classify   fit a curve into a model space (euclid, lorentz, isotropic,
           sphere:R, hyperbolic:R) and report a JSON verdict
tube       build a tube around a centerline; emit the induced geometry and
           the stationary points of the geometry-induced potential
prescribe  rebuild an invariant surface from prescribed curvature data
           (cylindrical | revolution | bour | minimal-helicoidal)
spectrum   assemble and solve the separated 1D eigenproblem of a surface
           (pib | cylinder | revolution | helicoid | minimal-helicoidal |
           tube) and emit energies, states, and the effective potential
phase      total torsion, holonomy, and the induced phase angle of a curve

Conventions
-----------
Curve files are CSV with header ``s,x,y,z`` (``u,x,y,z`` before arc-length
parametrization) or a JSON mirror keyed by the same names; frame files add
columns after z and re-parse as curves.  Floats are written with 17
significant digits, so emitted files re-parse to bit-identical samples.
CSV follows RFC 4180, JSON objects use snake_case keys.  Energies are in
units with hbar^2/(2 m*) = 1; --energy-scale rescales them on output.

Flags override values from an optional JSON config file (--config, keys
named like the flag destinations); no environment variables are read.
Exit codes: 0 success, 2 malformed input or parameters, 3 a construction
left its numerical domain.
"""

import argparse
import csv
import dataclasses
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.interpolate import CubicSpline

from ._fd import derivative
from .curve_kernel import SampledCurve, frenet_apparatus, resample_by_arclength
from .errors import (
    FramefieldError,
    GridTooCoarse,
    InvalidFamily,
    InvalidFrame,
    InvalidRange,
    NoLineFit,
    NotClosed,
    ParseError,
    UnsupportedSignature,
)
from .geodesic_spheres import (
    HYPERBOLIC,
    SPHERE,
    SpaceForm,
    geodesic_sphere_test,
    manifold_rm_frame,
    totally_geodesic_test,
)
from .gip_surfaces import (
    FRENET,
    RM,
    MinimalHelicoidal,
    bour_surface,
    cylindrical_from_mean_curvature,
    minimal_helicoidal_family,
    revolution_from_U,
    tube_geometry,
    vgip_critical_points,
)
from .indefinite_spaces import iso_apparatus, iso_sphere_classify, lorentz_sphere_membership, lorentz_rm_frame
from .rm_frames import development_sphere_center, holonomy, normal_development, rm_double_reflection, total_torsion
from .schrodinger import (
    DIRICHLET,
    PERIODIC,
    SeparatedProblem,
    bound_state_search,
    geometric_phase,
    helicoidal_minimal_veff,
    separated_problem,
    solve_1d,
    thin_tube_spectrum,
)

# input errors exit 2; every other FramefieldError means a construction left
# its numerical domain mid-run and exits 3
_INPUT_ERRORS = (
    ParseError,
    InvalidFrame,
    InvalidRange,
    InvalidFamily,
    NotClosed,
    UnsupportedSignature,
    GridTooCoarse,
)

_PLUMBING_DESTS = {"func", "command", "kind", "config", "out", "format", "seed"}


@dataclass(frozen=True)
class RunConfig:
    """One resolved invocation: command, paths, format, numeric options."""

    command: str
    input_path: Path | None
    out: Path | None
    format: str
    seed: int | None
    options: dict

    @classmethod
    def from_args(cls, args):
        options = {
            k: v for k, v in vars(args).items()
            if k not in _PLUMBING_DESTS and k != "curve" and not callable(v)
        }
        return cls(
            command=args.command,
            input_path=getattr(args, "curve", None),
            out=getattr(args, "out", None),
            format=getattr(args, "format", "csv"),
            seed=getattr(args, "seed", None),
            options=options,
        )

    def validate(self):
        """Cheap precondition checks shared by all commands; modules recheck."""
        if self.format not in ("csv", "json"):
            raise InvalidRange("format must be csv or json")
        for key in ("radius", "energy_scale", "L", "a"):
            v = self.options.get(key)
            if v is not None and not v > 0.0:
                raise InvalidRange("%s must be positive" % key)
        for key in ("n", "n_grid", "n_s", "n_phi"):
            v = self.options.get(key)
            if v is not None and v < 4:
                raise InvalidRange("%s must be at least 4" % key)
        n_states = self.options.get("n_states")
        if n_states is not None and n_states < 1:
            raise InvalidRange("n_states must be at least 1")


# ----------------------------------------------------------------- file I/O


def _fmt(v):
    return format(float(v), ".17g")


def _parse_float(token, line_no):
    try:
        return float(token)
    except ValueError:
        raise ParseError("line %d: %r is not a number" % (line_no, token), line=line_no) from None


def _columns_from_json(path, names_required):
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError("%s: %s" % (path, exc)) from None
    if not isinstance(obj, dict):
        raise ParseError("%s: expected a JSON object of named columns" % path)
    key0 = "s" if "s" in obj else "u"
    names = (key0,) + names_required
    missing = [k for k in names if k not in obj]
    if missing:
        raise ParseError("%s: missing keys %s" % (path, ", ".join(missing)))
    cols = []
    for k in names:
        col = np.asarray(obj[k], dtype=float)
        if col.ndim != 1 or (cols and len(col) != len(cols[0])):
            raise ParseError("%s: column %r is not a 1-d array of common length" % (path, k))
        cols.append(col)
    return key0, cols


def _columns_from_csv(path, n_min):
    header = None
    rows = []
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise ParseError("cannot read %s: %s" % (path, exc)) from None
    with fh:
        reader = csv.reader(fh)
        for row in reader:
            if not row or not any(tok.strip() for tok in row):
                continue
            if header is None:
                header = [tok.strip().lower() for tok in row]
                continue
            line_no = reader.line_num
            if len(row) < n_min:
                raise ParseError(
                    "line %d: expected at least %d fields, got %d" % (line_no, n_min, len(row)),
                    line=line_no,
                )
            rows.append([_parse_float(tok, line_no) for tok in row[:n_min]])
    if header is None or not rows:
        raise ParseError("%s: no header or no data rows" % path)
    return header, np.asarray(rows, dtype=float)


def read_curve(path):
    """Parse a curve file into a SampledCurve; closure is detected from the samples."""
    path = Path(path)
    if path.suffix.lower() == ".json":
        key0, cols = _columns_from_json(path, ("x", "y", "z"))
        params = cols[0]
        points = np.column_stack(cols[1:4])
    else:
        header, data = _columns_from_csv(path, 4)
        if header[0] not in ("s", "u") or header[1:4] != ["x", "y", "z"]:
            raise ParseError("%s: header must begin s,x,y,z or u,x,y,z" % path, line=1)
        key0 = header[0]
        params, points = data[:, 0], data[:, 1:4]
    closed = len(points) > 3 and float(np.linalg.norm(points[0] - points[-1])) <= 1e-9
    try:
        return SampledCurve(params=params, points=points, closed=closed), key0
    except ValueError as exc:
        raise ParseError("%s: %s" % (path, exc)) from None


def read_scalar_profile(path):
    """Two-column samples (parameter, value) -> cubic-spline callable."""
    path = Path(path)
    if path.suffix.lower() == ".json":
        _, cols = _columns_from_json(path, ("value",))
        x, y = cols[0], cols[1]
    else:
        _, data = _columns_from_csv(path, 2)
        x, y = data[:, 0], data[:, 1]
    if np.any(np.diff(x) <= 0):
        raise ParseError("%s: parameter column must increase strictly" % path)
    return CubicSpline(x, y)


def write_table(path, names, columns, fmt):
    """Emit named columns as RFC 4180 CSV or the JSON mirror."""
    columns = [np.asarray(c, dtype=float) for c in columns]
    path = Path(path)
    if fmt == "json":
        obj = {n: [float(v) for v in c] for n, c in zip(names, columns)}
        path.write_text(json.dumps(obj, indent=1) + "\n", encoding="utf-8")
        return path
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(names)
        for row in zip(*columns):
            writer.writerow([_fmt(v) for v in row])
    return path


def _data_path(prefix, suffix, fmt):
    ext = ".json" if fmt == "json" else ".csv"
    return Path(str(prefix) + suffix + ext)


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)) or isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value]
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, (np.floating, float)):
        v = float(value)
        return v if np.isfinite(v) else None
    if isinstance(value, (np.integer, int)):
        return int(value)
    return value


# ------------------------------------------------------------------ helpers


def _perp_seed(t0):
    e = np.eye(len(t0))[np.argmin(np.abs(t0))]
    n = e - (e @ t0) * t0
    return n / np.linalg.norm(n)


def _auto_rm_seed(curve):
    d1 = derivative(curve.params, curve.points, 1, closed=curve.closed)
    t0 = d1[0] / np.linalg.norm(d1[0])
    return _perp_seed(t0)


def _vec3(cols, arr):
    return [(n, arr[:, i]) for i, n in enumerate(cols)]


def _wrap_angle(angle):
    return float(np.angle(np.exp(1j * angle)))


# ----------------------------------------------------------------- commands


def cmd_frames(args):
    curve, _ = read_curve(args.curve)
    pts = curve.points
    named = [("x", pts[:, 0]), ("y", pts[:, 1]), ("z", pts[:, 2])]
    summary = {"command": "frames", "frame": args.frame, "samples": curve.n_samples, "closed": curve.closed}
    if args.frame == "frenet":
        fd = frenet_apparatus(curve)
        named = [("s", fd.s)] + named
        named += _vec3(("t_x", "t_y", "t_z"), fd.t)
        named += _vec3(("n_x", "n_y", "n_z"), fd.n)
        named += _vec3(("b_x", "b_y", "b_z"), fd.b)
        named += [("kappa", fd.kappa), ("tau", fd.tau)]
        summary["length"] = float(fd.s[-1])
        summary["kappa_defined_everywhere"] = bool(fd.kappa_defined.all())
        summary["kappa_range"] = [float(fd.kappa.min()), float(fd.kappa.max())]
    else:
        rm = rm_double_reflection(curve, _auto_rm_seed(curve))
        named = [("s", rm.s)] + named
        named += _vec3(("t_x", "t_y", "t_z"), rm.t)
        named += _vec3(("n1_x", "n1_y", "n1_z"), rm.normals[0])
        named += _vec3(("n2_x", "n2_y", "n2_z"), rm.normals[1])
        named += [("kappa1", rm.kappas[0]), ("kappa2", rm.kappas[1])]
        summary["length"] = float(rm.s[-1])
        if curve.closed:
            summary["holonomy"] = holonomy(rm)
            try:
                summary["total_torsion"] = total_torsion(curve)
            except FramefieldError:
                summary["total_torsion"] = None  # inflection: torsion quadrature undefined
    out = write_table(args.out, [n for n, _ in named], [c for _, c in named], args.format)
    summary["files"] = {"frames": str(out)}
    return summary


def _space(text):
    tag = text.strip().lower()
    if tag in ("euclid", "lorentz", "isotropic"):
        return tag, None
    for name in ("sphere", "hyperbolic"):
        if tag.startswith(name + ":"):
            try:
                r = float(tag[len(name) + 1:])
            except ValueError:
                raise argparse.ArgumentTypeError("bad radius in %r" % text) from None
            if not r > 0.0:
                raise argparse.ArgumentTypeError("radius must be positive")
            return name, r
    raise argparse.ArgumentTypeError("space must be euclid|lorentz|isotropic|sphere:R|hyperbolic:R")


def _classify_euclid(curve):
    adapted = resample_by_arclength(curve, curve.n_samples)
    rm = rm_double_reflection(adapted, _auto_rm_seed(adapted))
    dev = normal_development(rm)
    verdict = {
        "fit_kind": dev.fit_kind,
        "residual": dev.fit_residual,
        "distance": dev.distance,
        "radius": dev.radius,
    }
    if dev.fit_kind == "LineNotThroughOrigin":
        centers = development_sphere_center(adapted.points, rm, dev)
        cbar = centers.mean(axis=0)
        verdict["center"] = cbar
        verdict["center_drift"] = float(np.sqrt(((centers - cbar) ** 2).sum(axis=1).mean()))
    return verdict


def _classify_lorentz(curve):
    try:
        member = lorentz_sphere_membership(lorentz_rm_frame(curve))
    except NoLineFit as exc:
        return {"fit_kind": "NoFit", "detail": str(exc)}
    if member is None:
        return {"fit_kind": "LineThroughOrigin"}  # plane curve
    return {
        "fit_kind": member.kind,
        "radius": member.radius,
        "center": member.center,
        "coeffs": list(member.coeffs),
        "residual": member.fit_residual,
    }


def _classify_isotropic(curve):
    sphere = iso_sphere_classify(iso_apparatus(curve))
    if sphere is None:
        return {"fit_kind": "NoFit"}
    return {
        "fit_kind": sphere.kind,
        "radius": sphere.radius,
        "direction": sphere.direction,
        "distance": sphere.distance,
        "residual": sphere.fit_residual,
    }


def _classify_form(curve, kind, r):
    form = SpaceForm(kind=SPHERE if kind == "sphere" else HYPERBOLIC, r=r, dim=curve.ambient_dim - 1)
    rm = manifold_rm_frame(form, curve)
    try:
        sphere = geodesic_sphere_test(rm, form)
    except FramefieldError as exc:
        return {"fit_kind": "NoFit", "detail": str(exc)}
    if sphere is not None:
        return {
            "fit_kind": "GeodesicSphere",
            "z0": sphere.z0,
            "center": sphere.center,
            "residual": sphere.fit_residual,
            "center_drift": sphere.center_drift,
        }
    plane = totally_geodesic_test(rm)
    return {
        "fit_kind": "TotallyGeodesic",
        "is_geodesic": plane.is_geodesic,
        "direction": plane.direction,
        "residual": plane.fit_residual,
        "direction_drift": plane.direction_drift,
    }


def cmd_classify(args):
    curve, _ = read_curve(args.curve)
    kind, r = args.space
    if kind == "euclid":
        verdict = _classify_euclid(curve)
    elif kind == "lorentz":
        verdict = _classify_lorentz(curve)
    elif kind == "isotropic":
        verdict = _classify_isotropic(curve)
    else:
        verdict = _classify_form(curve, kind, r)
    summary = {"command": "classify", "space": kind, "samples": curve.n_samples}
    if r is not None:
        summary["ambient_radius"] = r
    summary.update(verdict)
    if args.out is not None:
        Path(args.out).write_text(json.dumps(_jsonable(summary), indent=2) + "\n", encoding="utf-8")
        summary["files"] = {"verdict": str(args.out)}
    return summary


def cmd_tube(args):
    curve, _ = read_curve(args.curve)
    frame_kind = FRENET if args.frame == "frenet" else RM
    tube = tube_geometry(curve, args.radius, frame_kind=frame_kind, n_phi=args.n_phi, n_s=args.n_s)
    s = np.repeat(tube.s_grid, len(tube.phi_grid))
    phi = np.tile(tube.phi_grid, len(tube.s_grid))
    out = write_table(
        _data_path(args.out, "_geometry", args.format),
        ["s", "phi", "k_gauss", "h_mean", "v_gip"],
        [s, phi, tube.K.ravel(), tube.H.ravel(), tube.Vgip.ravel()],
        args.format,
    )
    crits = vgip_critical_points(tube)
    return {
        "command": "tube",
        "frame": tube.frame_kind,
        "radius": tube.r,
        "closed": tube.closed,
        "kappa_range": [float(tube.kappa.min()), float(tube.kappa.max())],
        "v_gip_range": [float(tube.Vgip.min()), float(tube.Vgip.max())],
        "critical_points": [{"s": c.s, "phi": c.phi, "kind": c.kind} for c in crits],
        "files": {"geometry": str(out)},
    }


def _scalar_option(const_value, file_value, name):
    if file_value is not None:
        return read_scalar_profile(file_value)
    if const_value is None:
        raise InvalidRange("give either --%s0 or --%s-file" % (name, name))
    return float(const_value)


def _emit_surface(surf, args, extra_cols=()):
    names = ["u", "f", "h_mean", "k_gauss"]
    cols = [surf.u_grid, surf.f, surf.H, surf.K]
    for n, c in extra_cols:
        names.append(n)
        cols.append(c)
    files = {"surface": str(write_table(_data_path(args.out, "_surface", args.format), names, cols, args.format))}
    curve_pts = None
    if surf.cross_section is not None:
        curve_pts = surf.cross_section
    elif surf.profile is not None:
        curve_pts = np.column_stack([surf.profile[:, 0], np.zeros(len(surf.u_grid)), surf.profile[:, 1]])
    elif surf.rho is not None:
        curve_pts = np.column_stack([surf.rho, np.zeros(len(surf.u_grid)), surf.lam])
    if curve_pts is not None:
        files["curve"] = str(write_table(
            _data_path(args.out, "_curve", args.format),
            ["s", "x", "y", "z"],
            [surf.u_grid, curve_pts[:, 0], curve_pts[:, 1], curve_pts[:, 2]],
            args.format,
        ))
    summary = {
        "command": "prescribe",
        "kind": surf.kind,
        "samples": len(surf.u_grid),
        "u_range": [float(surf.u_grid[0]), float(surf.u_grid[-1])],
        "h_mean_range": [float(surf.H.min()), float(surf.H.max())],
        "k_gauss_range": [float(surf.K.min()), float(surf.K.max())],
        "forward_residual": surf.forward_residual,
        "files": files,
    }
    return summary


def cmd_prescribe_cylindrical(args):
    H = _scalar_option(args.H0, args.H_file, "H")
    surf = cylindrical_from_mean_curvature(
        H, np.asarray(args.axis, dtype=float), s_range=(0.0, args.s_max), n=args.n, beta0=args.beta0
    )
    summary = _emit_surface(surf, args)
    summary["direction"] = surf.direction
    return summary


def cmd_prescribe_revolution(args):
    U = _scalar_option(args.U0, args.U_file, "U")
    surf = revolution_from_U(
        U, args.a1, args.a2, (args.rho_min, args.rho_max), n=args.n,
        branch_A=args.branch_A, branch_lambda=args.branch_lambda,
    )
    return _emit_surface(surf, args)


def cmd_prescribe_bour(args):
    U = _scalar_option(args.U0, args.U_file, "U")
    surf = bour_surface(
        U, args.omega, args.a, (args.xi_min, args.xi_max), n=args.n,
        branch_lambda=args.branch_lambda, branch_phi=args.branch_phi,
    )
    return _emit_surface(surf, args, extra_cols=[("rho", surf.rho), ("lam", surf.lam)])


def cmd_prescribe_minimal_helicoidal(args):
    family, surf = minimal_helicoidal_family(
        args.omega, args.omega0, args.omega1, (args.xi_min, args.xi_max), n=args.n
    )
    summary = _emit_surface(surf, args, extra_cols=[("rho", surf.rho), ("lam", surf.lam)])
    summary["family"] = {
        "omega": family.omega, "omega0": family.omega0, "omega1": family.omega1, "b": family.b,
    }
    return summary


def _spectrum_emit(problem, spectrum, args, summary):
    scale = args.energy_scale
    files = {}
    files["energies"] = str(write_table(
        _data_path(args.out, "_energies", args.format),
        ["state", "energy"],
        [np.arange(spectrum.n_states, dtype=float), scale * spectrum.energies],
        args.format,
    ))
    files["states"] = str(write_table(
        _data_path(args.out, "_states", args.format),
        ["u"] + ["psi_%d" % k for k in range(spectrum.n_states)],
        [spectrum.u_grid] + [spectrum.wavefunctions[k] for k in range(spectrum.n_states)],
        args.format,
    ))
    files["veff"] = str(write_table(
        _data_path(args.out, "_veff", args.format),
        ["u", "v_eff"],
        [problem.u_grid, scale * problem.potential],
        args.format,
    ))
    summary["bc"] = spectrum.bc
    summary["lam"] = problem.lam
    summary["energies"] = scale * spectrum.energies
    summary["ground_energy"] = float(scale * spectrum.energies[0])
    summary["files"] = files
    return summary


def _with_bc(problem, bc_name):
    bc = PERIODIC if bc_name == "periodic" else DIRICHLET
    if bc == problem.bc:
        return problem
    return dataclasses.replace(problem, bc=bc)


def cmd_spectrum_pib(args):
    u = np.linspace(0.0, args.L, args.n_grid)
    problem = SeparatedProblem(u, np.ones(args.n_grid), np.zeros(args.n_grid), 0.0,
                               bc=PERIODIC if args.bc == "periodic" else DIRICHLET)
    spectrum = solve_1d(problem, args.n_states)
    return _spectrum_emit(problem, spectrum, args, {"command": "spectrum", "kind": "pib", "L": args.L})


def cmd_spectrum_cylinder(args):
    s_max = args.s_max if args.s_max is not None else np.pi / args.H0  # full cross-section circle
    surf = cylindrical_from_mean_curvature(args.H0, np.array([0.0, 0.0, 1.0]), s_range=(0.0, s_max), n=args.n_grid)
    problem = _with_bc(separated_problem(surf, args.lam), args.bc)
    spectrum = solve_1d(problem, args.n_states)
    return _spectrum_emit(problem, spectrum, args,
                          {"command": "spectrum", "kind": "cylinder", "H0": args.H0, "s_max": float(s_max)})


def cmd_spectrum_revolution(args):
    U = _scalar_option(args.U0, args.U_file, "U")
    surf = revolution_from_U(U, args.a1, args.a2, (args.rho_min, args.rho_max), n=args.n_grid)
    problem = separated_problem(surf, args.m_chi)
    spectrum = solve_1d(problem, args.n_states)
    return _spectrum_emit(problem, spectrum, args,
                          {"command": "spectrum", "kind": "revolution", "m_chi": args.m_chi})


def _helicoidal_spectrum(args, family):
    L = args.L if args.L is not None else 40.0 / family.omega
    problem = helicoidal_minimal_veff(family, args.m_chi, (-2.0 * L, 2.0 * L), n=args.n_grid)
    spectrum = solve_1d(problem, args.n_states)
    found = bound_state_search(problem, L=L)
    summary = {
        "command": "spectrum",
        "kind": "minimal-helicoidal",
        "family": {"omega": family.omega, "omega0": family.omega0, "omega1": family.omega1, "b": family.b},
        "m_chi": args.m_chi,
        "L": L,
        "bound": found is not None,
        "bound_state_energy": args.energy_scale * found.energy if found is not None else None,
    }
    return _spectrum_emit(problem, spectrum, args, summary)


def cmd_spectrum_helicoid(args):
    return _helicoidal_spectrum(args, MinimalHelicoidal(omega=1.0, omega0=1.0, omega1=0.0, b=1.0))


def cmd_spectrum_minimal_helicoidal(args):
    family = MinimalHelicoidal(args.omega, args.omega0, args.omega1, b=args.omega0 - args.omega1**2)
    return _helicoidal_spectrum(args, family)


def cmd_spectrum_tube(args):
    curve, _ = read_curve(args.curve)
    mode = thin_tube_spectrum(curve, args.radius, args.ell, args.n_level, n_s=args.n_s)
    scale = args.energy_scale
    files = {"mode": str(write_table(
        _data_path(args.out, "_mode", args.format),
        ["s", "theta", "psi_re", "psi_im"],
        [mode.s_grid, mode.theta, mode.wavefunction.real, mode.wavefunction.imag],
        args.format,
    ))}
    return {
        "command": "spectrum",
        "kind": "tube",
        "radius": args.radius,
        "ell": mode.ell,
        "level": mode.n,
        "closed": mode.closed,
        "energy": float(scale * mode.energy),
        "accumulated_torsion": float(mode.theta[-1]),
        "files": files,
    }


def cmd_phase(args):
    curve, _ = read_curve(args.curve)
    total = geometric_phase(curve)
    summary = {"command": "phase", "closed": curve.closed, "total_torsion": total}
    if curve.closed:
        rm = rm_double_reflection(curve, _auto_rm_seed(curve))
        hol = holonomy(rm)
        summary["holonomy"] = hol
        summary["mismatch"] = abs(_wrap_angle(total - hol))
    if args.ell:
        angle = _wrap_angle(args.ell * total)
        summary["ell"] = args.ell
        summary["phase_angle"] = angle
        summary["phase_factor"] = [float(np.cos(angle)), float(np.sin(angle))]
    if args.out is not None:
        Path(args.out).write_text(json.dumps(_jsonable(summary), indent=2) + "\n", encoding="utf-8")
        summary["files"] = {"phase": str(args.out)}
    return summary


# ------------------------------------------------------------------ parser


def _add_common(sub):
    sub.add_argument("--config", default=None, help="JSON config file; explicit flags win")
    sub.add_argument("--format", choices=("csv", "json"), default="csv", help="data file format")
    sub.add_argument("--seed", type=int, default=None, help="seed echoed for reproducibility of sweeps")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="framefield",
        description="Curve frames, invariant surfaces, and the geometry-induced quantum potential.",
    )
    _add_common(parser)
    subs = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = subs.add_parser("frames", help="sample a moving frame along a curve file")
    _add_common(p)
    p.add_argument("curve", help="curve file (CSV s,x,y,z or JSON mirror)")
    p.add_argument("--frame", choices=("frenet", "rm"), default="frenet")
    p.add_argument("--rm", dest="frame", action="store_const", const="rm", help="shorthand for --frame rm")
    p.add_argument("--out", required=True, help="output table path")
    p.set_defaults(func=cmd_frames)

    p = subs.add_parser("classify", help="fit a curve into a model space")
    _add_common(p)
    p.add_argument("curve")
    p.add_argument("--space", type=_space, default=("euclid", None),
                   help="euclid | lorentz | isotropic | sphere:R | hyperbolic:R")
    p.add_argument("--out", default=None, help="also write the verdict JSON here")
    p.set_defaults(func=cmd_classify)

    p = subs.add_parser("tube", help="tube geometry and potential around a centerline")
    _add_common(p)
    p.add_argument("curve")
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("--frame", choices=("frenet", "rm"), default="frenet")
    p.add_argument("--n-phi", type=int, default=64)
    p.add_argument("--n-s", type=int, default=200)
    p.add_argument("--out", required=True, help="output prefix")
    p.set_defaults(func=cmd_tube)

    p = subs.add_parser("prescribe", help="invariant surface from prescribed curvature")
    kinds = p.add_subparsers(dest="kind", required=True, metavar="kind")

    q = kinds.add_parser("cylindrical", help="cylindrical surface from H(s)")
    _add_common(q)
    q.add_argument("--H0", type=float, default=None, help="constant mean curvature")
    q.add_argument("--H-file", default=None, help="table of (s, H) samples")
    q.add_argument("--axis", nargs=3, type=float, default=(0.0, 0.0, 1.0), metavar=("AX", "AY", "AZ"))
    q.add_argument("--s-max", type=float, default=2.0 * np.pi)
    q.add_argument("--beta0", type=float, default=0.0)
    q.add_argument("--n", type=int, default=2001)
    q.add_argument("--out", required=True, help="output prefix")
    q.set_defaults(func=cmd_prescribe_cylindrical)

    q = kinds.add_parser("revolution", help="surface of revolution from U(rho)")
    _add_common(q)
    q.add_argument("--U0", type=float, default=None, help="constant U")
    q.add_argument("--U-file", default=None, help="table of (rho, U) samples")
    q.add_argument("--a1", type=float, default=0.0)
    q.add_argument("--a2", type=float, default=0.0)
    q.add_argument("--rho-min", type=float, required=True)
    q.add_argument("--rho-max", type=float, required=True)
    q.add_argument("--branch-A", type=float, choices=(1.0, -1.0), default=1.0)
    q.add_argument("--branch-lambda", type=float, choices=(1.0, -1.0), default=1.0)
    q.add_argument("--n", type=int, default=1201)
    q.add_argument("--out", required=True)
    q.set_defaults(func=cmd_prescribe_revolution)

    q = kinds.add_parser("bour", help="helicoidal surface in Bour coordinates from U(xi)")
    _add_common(q)
    q.add_argument("--U0", type=float, default=None)
    q.add_argument("--U-file", default=None)
    q.add_argument("--omega", type=float, required=True, help="pitch of the helicoidal motion")
    q.add_argument("--a", type=float, default=1.0, help="Bour parameter")
    q.add_argument("--xi-min", type=float, required=True)
    q.add_argument("--xi-max", type=float, required=True)
    q.add_argument("--branch-lambda", type=float, choices=(1.0, -1.0), default=1.0)
    q.add_argument("--branch-phi", type=float, choices=(1.0, -1.0), default=1.0)
    q.add_argument("--n", type=int, default=1201)
    q.add_argument("--out", required=True)
    q.set_defaults(func=cmd_prescribe_bour)

    q = kinds.add_parser("minimal-helicoidal", help="minimal member U^2 = (omega xi + omega1)^2 + b")
    _add_common(q)
    q.add_argument("--omega", type=float, required=True)
    q.add_argument("--omega0", type=float, required=True)
    q.add_argument("--omega1", type=float, default=0.0)
    q.add_argument("--xi-min", type=float, required=True)
    q.add_argument("--xi-max", type=float, required=True)
    q.add_argument("--n", type=int, default=1201)
    q.add_argument("--out", required=True)
    q.set_defaults(func=cmd_prescribe_minimal_helicoidal)

    p = subs.add_parser("spectrum", help="separated 1D eigenproblem of a surface")
    kinds = p.add_subparsers(dest="kind", required=True, metavar="kind")

    def spectrum_common(q, n_grid=4000):
        _add_common(q)
        q.add_argument("--n-states", type=int, default=5)
        q.add_argument("--n-grid", type=int, default=n_grid)
        q.add_argument("--energy-scale", type=float, default=1.0,
                       help="multiply emitted energies/potentials (physical units)")
        q.add_argument("--out", required=True, help="output prefix")

    q = kinds.add_parser("pib", help="free particle in a box of length L")
    spectrum_common(q)
    q.add_argument("--L", type=float, default=1.0)
    q.add_argument("--bc", choices=("dirichlet", "periodic"), default="dirichlet")
    q.set_defaults(func=cmd_spectrum_pib)

    q = kinds.add_parser("cylinder", help="cylinder of constant mean curvature H0")
    spectrum_common(q)
    q.add_argument("--H0", type=float, default=0.5)
    q.add_argument("--s-max", type=float, default=None, help="default: one full cross-section turn")
    q.add_argument("--lam", type=float, default=0.0, help="separation constant of the axis direction")
    q.add_argument("--bc", choices=("dirichlet", "periodic"), default="periodic")
    q.set_defaults(func=cmd_spectrum_cylinder)

    q = kinds.add_parser("revolution", help="surface of revolution from U(rho)")
    spectrum_common(q, n_grid=1201)
    q.add_argument("--U0", type=float, default=None)
    q.add_argument("--U-file", default=None)
    q.add_argument("--a1", type=float, default=0.0)
    q.add_argument("--a2", type=float, default=0.0)
    q.add_argument("--rho-min", type=float, required=True)
    q.add_argument("--rho-max", type=float, required=True)
    q.add_argument("--m-chi", type=float, default=0.0)
    q.set_defaults(func=cmd_spectrum_revolution)

    q = kinds.add_parser("helicoid", help="the standard helicoid (omega = 1)")
    spectrum_common(q)
    q.add_argument("--m-chi", type=float, default=0.0)
    q.add_argument("--L", type=float, default=None, help="bound-search window; default 40/omega")
    q.set_defaults(func=cmd_spectrum_helicoid)

    q = kinds.add_parser("minimal-helicoidal", help="minimal helicoidal family member")
    spectrum_common(q)
    q.add_argument("--omega", type=float, required=True)
    q.add_argument("--omega0", type=float, required=True)
    q.add_argument("--omega1", type=float, default=0.0)
    q.add_argument("--m-chi", type=float, default=0.0)
    q.add_argument("--L", type=float, default=None)
    q.set_defaults(func=cmd_spectrum_minimal_helicoidal)

    q = kinds.add_parser("tube", help="thin-tube mode around a centerline file")
    spectrum_common(q)
    q.add_argument("curve")
    q.add_argument("--radius", type=float, required=True)
    q.add_argument("--ell", type=float, default=0.0, help="integer angular momentum around the tube")
    q.add_argument("--n-level", type=int, default=0, help="longitudinal quantum number")
    q.add_argument("--n-s", type=int, default=None)
    q.set_defaults(func=cmd_spectrum_tube)

    p = subs.add_parser("phase", help="total torsion / holonomy of a curve")
    _add_common(p)
    p.add_argument("curve")
    p.add_argument("--ell", type=int, default=0, help="report the phase angle ell * total torsion")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_phase)

    return parser


def _walk_parsers(parser):
    stack = [parser]
    while stack:
        current = stack.pop()
        yield current
        for action in current._actions:
            if isinstance(action, argparse._SubParsersAction):
                stack.extend(action.choices.values())


def _known_dests(parser):
    dests = set()
    for current in _walk_parsers(parser):
        for action in current._actions:
            if action.dest and action.dest != argparse.SUPPRESS:
                dests.add(action.dest)
    return dests - {"help", "func"}


def _apply_config(parser, cfg):
    # subparsers parse into a fresh namespace, so config defaults must be
    # installed on every parser whose flags they name
    for current in _walk_parsers(parser):
        own = {a.dest for a in current._actions}
        matched = {k: v for k, v in cfg.items() if k in own}
        if matched:
            current.set_defaults(**matched)


def main(argv=None):
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", default=None)
    known, _ = pre.parse_known_args(argv)
    if known.config is not None:
        try:
            cfg = json.loads(Path(known.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            print("config: %s" % exc, file=sys.stderr)
            return 2
        if not isinstance(cfg, dict):
            print("config: top level must be an object", file=sys.stderr)
            return 2
        unknown = sorted(set(cfg) - _known_dests(parser))
        if unknown:
            print("config: unknown keys: %s" % ", ".join(unknown), file=sys.stderr)
            return 2
        _apply_config(parser, cfg)
    args = parser.parse_args(argv)
    try:
        RunConfig.from_args(args).validate()
        summary = args.func(args)
    except _INPUT_ERRORS as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except FramefieldError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    print(json.dumps(_jsonable(summary), indent=2))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
