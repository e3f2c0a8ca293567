"""framefield: frame fields along curves and the quantum potentials they induce.

Subpackages cover the Frenet/rotation-minimizing apparatus of sampled curves
(curve_kernel, rm_frames), curves in Lorentz-Minkowski and simply isotropic
ambient spaces (indefinite_spaces), curves constrained to level sets and
quadrics (level_surfaces), geodesic spherical curves in the round sphere and
hyperbolic space (geodesic_spheres), surface constructions driven by
curvature data (gip_surfaces), and the induced one-dimensional Schrodinger
problems (schrodinger).  The cli module exposes the command-line front end.
"""

from ._backend import backend_name
from .errors import FramefieldError

__version__ = "0.1.0"

__all__ = ["FramefieldError", "backend_name", "__version__"]
