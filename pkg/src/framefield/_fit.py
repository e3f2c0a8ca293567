"""Total-least-squares fits used by the development classifiers."""

import numpy as np

from .errors import DegenerateFit


def fit_hyperplane(points):
    """TLS affine hyperplane through a point cloud.

    Returns (normal, offset, residual): unit normal n and offset c with the
    plane {x : <n, x> + c = 0}; residual is the RMS orthogonal distance.
    The sign is fixed so that c <= 0.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    n_samp, dim = pts.shape
    if n_samp < dim + 1:
        raise DegenerateFit("need at least %d samples to fit a hyperplane in %d-d" % (dim + 1, dim))
    centroid = pts.mean(axis=0)
    centered = pts - centroid
    scatter = np.sqrt((centered ** 2).sum(axis=1).mean())
    if scatter < 1e-14 * (1.0 + np.abs(centroid).max()):
        raise DegenerateFit("samples coincide, no hyperplane is preferred")
    _, sing, vt = np.linalg.svd(centered, full_matrices=True)
    normal = vt[-1]
    offset = -float(normal @ centroid)
    if offset > 0.0:
        normal, offset = -normal, -offset
    residual = float(sing[-1] / np.sqrt(n_samp)) if len(sing) == dim else 0.0
    return normal, offset, residual


def fit_line_2d(x, y):
    """TLS line a*x + b*y + c = 0 with (a, b) unit.  Returns (a, b, c, residual)."""
    normal, offset, residual = fit_hyperplane(np.column_stack([x, y]))
    return float(normal[0]), float(normal[1]), float(offset), residual


def line_through_origin_distance(a, b, c):
    """Distance from the origin to the line a*x + b*y + c = 0 with (a,b) unit."""
    return abs(c) / float(np.hypot(a, b))
