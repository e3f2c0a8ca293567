"""Exception taxonomy shared across the package.

Every error raised by framefield derives from FramefieldError so callers can
catch one type at an API boundary.  Names state the violated precondition.
"""


class FramefieldError(Exception):
    """Base class for all framefield errors."""


class DegenerateCurve(FramefieldError):
    """Velocity magnitude below tolerance somewhere along the curve."""


class InvalidFrame(FramefieldError):
    """Initial frame fails orthonormality."""


class InvalidRange(FramefieldError):
    """Parameter range outside the domain of the requested construction."""


class UndefinedFrame(FramefieldError):
    """Frenet frame requested where curvature vanishes."""


class NotSpherical(FramefieldError):
    """Curve does not lie on the claimed sphere within tolerance."""


class NotClosed(FramefieldError):
    """Operation requires a closed curve."""


class MixedCausalCharacter(FramefieldError):
    """Causal character changes along the curve (or along its normal)."""


class DegenerateLightlike(FramefieldError):
    """Lightlike curve with vanishing acceleration admits no pseudo arc length."""


class LightlikeUnsupported(FramefieldError):
    """Operation defined only for non-lightlike curves."""


class NotAdmissible(FramefieldError):
    """Isotropic-space curve whose top view has an inflection."""


class NoLineFit(FramefieldError):
    """Normal development does not admit a stable line fit."""


class DegenerateFit(FramefieldError):
    """Fit data degenerate (single point or rank-deficient scatter)."""


class NotTangent(FramefieldError):
    """Curve is not tangent to the level set at the anchor point."""


class NoFit(FramefieldError):
    """No sphere/plane hypothesis matches the development."""


class RadiusOutOfRange(FramefieldError):
    """Recovered geodesic radius outside the injectivity bound."""


class ZeroTorsion(FramefieldError):
    """Construction requires nonvanishing torsion."""


class TubeTooFat(FramefieldError):
    """Tube radius reaches 1/max kappa, the surface self-intersects."""


class SingularCenterline(FramefieldError):
    """Centerline has undefined Frenet data where the tube needs it."""


class DegenerateDirection(FramefieldError):
    """Axis direction (nearly) parallel or orthogonal where forbidden."""


class DomainViolation(FramefieldError):
    """Profile/parameter leaves the domain of the construction."""


class BourDomainViolation(DomainViolation):
    """Bour integrand leaves its real domain (a^2 U^2 <= 1 or D < 0)."""


class InvalidFamily(FramefieldError):
    """Family parameters violate the constraint defining the family."""


class GridTooCoarse(FramefieldError):
    """Eigensolve grid too coarse for the requested number of states."""


class NotThin(FramefieldError):
    """Thin-tube expansion requested outside its validity regime."""


class ParseError(FramefieldError):
    """Malformed input file; carries the offending line number."""

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line


class UnsupportedSignature(FramefieldError):
    """Quadric signature outside the handled classification."""
