"""Phase sensitivity of the quadrature-measurement fiber-optic gyroscope.

Every sensitivity here is the error-transfer variance scaled by the square
of the gyroscope scale factor, ``T^2 * Var(Omega)``; use
:meth:`Sensitivity.unscaled` to divide ``T^2`` back out.

A vanishing signal slope gives an explicit ``inf`` rather than an
exception so that sweeps can cross singular phases.  Zero transmissivity is
different (no light reaches the detector) and raises :class:`LossSingular`.
"""

from dataclasses import dataclass
import math

from .errors import Indeterminate, LossSingular
from .probes import (
    PacsProbe,
    pacs_moments,
)

# squared denominators below this count as exactly zero
DIVERGENCE_THRESHOLD = 1e-300

_QUARTER = math.pi / 4
_SQRT_HALF = math.sqrt(0.5)
_OCTANT_TRIG = [
    (0.0, 1.0),
    (_SQRT_HALF, _SQRT_HALF),
    (1.0, 0.0),
    (_SQRT_HALF, -_SQRT_HALF),
    (0.0, -1.0),
    (-_SQRT_HALF, -_SQRT_HALF),
    (-1.0, 0.0),
    (-_SQRT_HALF, _SQRT_HALF),
]


def sincos(phi: float) -> tuple[float, float]:
    """``(sin phi, cos phi)`` with exact values at multiples of pi/4.

    A phase within a few ulps of ``k*pi/4`` is taken to be that multiple, so
    that ``cos(pi/2)`` is exactly 0 and ``cos(3pi/4) + sin(3pi/4)`` cancels
    exactly.  Other phases use the library functions unchanged.
    """
    k = round(phi / _QUARTER)
    if abs(phi - k * _QUARTER) <= 4 * math.ulp(max(1.0, abs(phi))):
        return _OCTANT_TRIG[k % 8]
    return math.sin(phi), math.cos(phi)


def sagnac_phase(omega: float, scale_T: float) -> float:
    """Sagnac phase ``T * Omega / 2`` for angular velocity ``omega``."""
    if not scale_T > 0:
        raise ValueError(f"scale factor T must be positive, got {scale_T}")
    return scale_T * omega / 2


@dataclass(frozen=True)
class GyroSetting:
    """Operating point: Sagnac phase, transmissivity and scale factor."""

    phi: float
    gamma: float = 1.0
    scale_T: float = 1.0

    def __post_init__(self):
        if not math.isfinite(self.phi):
            raise ValueError(f"phi must be finite, got {self.phi}")
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma must lie in [0, 1], got {self.gamma}")
        if not self.scale_T > 0:
            raise ValueError(f"scale_T must be positive, got {self.scale_T}")

    @classmethod
    def from_rotation(cls, omega, scale_T, gamma=1.0):
        return cls(sagnac_phase(omega, scale_T), gamma, scale_T)

    def replace(self, **changes):
        fields = {"phi": self.phi, "gamma": self.gamma, "scale_T": self.scale_T}
        fields.update(changes)
        return GyroSetting(**fields)


@dataclass(frozen=True)
class Sensitivity:
    """T^2-scaled rotation-rate variance; ``inf`` marks a divergence."""

    value: float

    @property
    def finite(self) -> bool:
        return math.isfinite(self.value)

    def unscaled(self, scale_T: float) -> float:
        return self.value / scale_T**2

    def __float__(self):
        return self.value


@dataclass(frozen=True)
class ComparisonPoint:
    """Sensitivity ratio of the PACS probe over a Gaussian reference probe.

    ``ratio`` is NaN exactly when ``indeterminate`` is set, i.e. when both
    sensitivities diverge at the same phase.
    """

    ratio: float
    numerator: str
    denominator: str
    indeterminate: bool = False

    def __float__(self):
        if self.indeterminate:
            raise Indeterminate(
                f"{self.numerator} / {self.denominator}: both sensitivities diverge"
            )
        return self.ratio


def _require_light(gamma):
    if gamma == 0:
        raise LossSingular("gamma = 0: all signal is lost in the fiber")


def _is_zero(den_sq):
    return den_sq < DIVERGENCE_THRESHOLD


def _quotient(num, den_sq):
    if _is_zero(den_sq):
        return Sensitivity(math.inf)
    return Sensitivity(num / den_sq)


def sensitivity_general(a_moments, b_moments, setting: GyroSetting, quadrature="X2") -> Sensitivity:
    """Sensitivity from arbitrary independent input-mode moments.

    Args:
        a_moments: moments of input mode a (any object with ``mean_x1``,
            ``mean_x2``, ``var_x1``, ``var_x2``)
        b_moments: moments of input mode b
        setting: operating point
        quadrature: ``"X2"`` to measure ``X2b'`` or ``"X1"`` for ``X1b'``

    Returns:
        T^2-scaled sensitivity, ``inf`` when the signal slope vanishes.
    """
    gamma = setting.gamma
    _require_light(gamma)
    s, c = sincos(setting.phi)
    loss = (1.0 - gamma) / gamma
    if quadrature == "X2":
        num = 4.0 * (a_moments.var_x1 * s * s + b_moments.var_x2 * c * c) + loss
        den = a_moments.mean_x1 * c + b_moments.mean_x2 * s
    elif quadrature == "X1":
        num = 4.0 * (a_moments.var_x2 * s * s + b_moments.var_x1 * c * c) + loss
        den = a_moments.mean_x2 * c - b_moments.mean_x1 * s
    else:
        raise ValueError(f"quadrature must be 'X1' or 'X2', got {quadrature!r}")
    return _quotient(num, den * den)


def _pacs_numerator(moments, s, gamma):
    # (4 Var(X1a) - 1) sin^2 + 1/gamma
    return (4.0 * moments.var_x1 - 1.0) * s * s + 1.0 / gamma


def sensitivity_pacs_vacuum(probe: PacsProbe, setting: GyroSetting) -> Sensitivity:
    """PACS in mode a, vacuum in mode b."""
    _require_light(setting.gamma)
    mom = pacs_moments(probe)
    s, c = sincos(setting.phi)
    den = mom.mean_x1 * c
    return _quotient(_pacs_numerator(mom, s, setting.gamma), den * den)


def sensitivity_pacs_imag(probe: PacsProbe, y: float, setting: GyroSetting) -> Sensitivity:
    """PACS in mode a, coherent state ``|i y>`` in mode b."""
    _require_light(setting.gamma)
    mom = pacs_moments(probe)
    s, c = sincos(setting.phi)
    den = mom.mean_x1 * c + y * s
    return _quotient(_pacs_numerator(mom, s, setting.gamma), den * den)


def small_rotation_limit(probe: PacsProbe, gamma: float) -> Sensitivity:
    """Phase-independent sensitivity ``1 / (gamma <X1a>^2)`` for ``phi -> 0``."""
    _require_light(gamma)
    x = pacs_moments(probe).mean_x1
    return _quotient(1.0 / gamma, x * x)


def sensitivity_cs(alpha_c: float, y: float, setting: GyroSetting) -> Sensitivity:
    """Coherent states ``|alpha_c> (x) |i y>``."""
    _require_light(setting.gamma)
    s, c = sincos(setting.phi)
    den = alpha_c * c + y * s
    return _quotient(1.0 / setting.gamma, den * den)


def sensitivity_ss(alpha_c: float, r: float, setting: GyroSetting) -> Sensitivity:
    """Coherent ``|alpha_c>`` with squeezed vacuum ``xi = -r`` in mode b."""
    _require_light(setting.gamma)
    if r < 0:
        raise ValueError(f"squeezing r must be non-negative, got {r}")
    s, c = sincos(setting.phi)
    c2 = c * c
    num = (math.exp(-2.0 * r) - 1.0) * c2 + 1.0 / setting.gamma
    return _quotient(num, alpha_c * alpha_c * c2)


def _describe(probe, y):
    return f"PACS(alpha={probe.alpha:g}, m={probe.m}) x |i{y:g}>"


def _ratio(num, den, pacs_den_sq, ref_den_sq, labels):
    pacs_div, ref_div = _is_zero(pacs_den_sq), _is_zero(ref_den_sq)
    if pacs_div and ref_div:
        return ComparisonPoint(math.nan, *labels, indeterminate=True)
    if pacs_div:
        return ComparisonPoint(math.inf, *labels)
    if ref_div:
        return ComparisonPoint(0.0, *labels)
    return ComparisonPoint(num / den, *labels)


def ratio_pacs_cs(probe: PacsProbe, y: float, setting: GyroSetting) -> ComparisonPoint:
    """PACS over coherent-state sensitivity at equal mean input photon number.

    ``R = [g (4 Var - 1) sin^2 + 1] (a_c cos + y sin)^2 / (<X1a> cos + y sin)^2``
    with ``a_c^2`` equal to the PACS photon number.
    """
    gamma = setting.gamma
    _require_light(gamma)
    mom = pacs_moments(probe)
    alpha_c = math.sqrt(mom.mean_photons)
    s, c = sincos(setting.phi)
    pacs_den = mom.mean_x1 * c + y * s
    cs_den = alpha_c * c + y * s
    pacs_den_sq, cs_den_sq = pacs_den * pacs_den, cs_den * cs_den
    num = (gamma * (4.0 * mom.var_x1 - 1.0) * s * s + 1.0) * cs_den_sq
    labels = (_describe(probe, y), f"CS(alpha_c={alpha_c:g}) x |i{y:g}>")
    return _ratio(num, pacs_den_sq, pacs_den_sq, cs_den_sq, labels)


def ratio_pacs_ss(probe: PacsProbe, y: float, setting: GyroSetting) -> ComparisonPoint:
    """PACS over squeezed-state sensitivity at equal mean input photon number.

    The reference probe is ``|alpha_c> (x) |xi = -r>`` with ``alpha_c^2``
    equal to the PACS photon number and ``sinh(r)^2 = y^2``.
    """
    gamma = setting.gamma
    _require_light(gamma)
    if y < 0:
        raise ValueError(f"y must be non-negative, got {y}")
    mom = pacs_moments(probe)
    alpha_c_sq = mom.mean_photons
    r = math.asinh(y)
    s, c = sincos(setting.phi)
    c2 = c * c
    pacs_den = mom.mean_x1 * c + y * s
    pacs_den_sq = pacs_den * pacs_den
    ss_den_sq = alpha_c_sq * c2
    num = (gamma * (4.0 * mom.var_x1 - 1.0) * s * s + 1.0) * ss_den_sq
    den = pacs_den_sq * (gamma * (math.exp(-2.0 * r) - 1.0) * c2 + 1.0)
    labels = (_describe(probe, y), f"SS(alpha_c={math.sqrt(alpha_c_sq):g}, r={r:g})")
    return _ratio(num, den, pacs_den_sq, ss_den_sq, labels)
