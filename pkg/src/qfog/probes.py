"""Analytic quadrature moments of the probe states and photon-budget matching.

Quadratures follow ``X1 = (f + f^dag)/2`` and ``X2 = (f - f^dag)/(2i)``, so
the vacuum variance is 1/4 and ``[X1, X2] = i/2``.

The photon-added coherent state (PACS) ``N_m a^dag^m |alpha>`` with real
``alpha`` has moments expressed through Laguerre polynomials evaluated at
``-alpha**2``.  The b-mode coherent amplitude appears only on the imaginary
axis (``beta = i*y``) and is carried as the real number ``y``.
"""

from dataclasses import dataclass
from functools import lru_cache
import math
import operator

from .laguerre import assoc_laguerre, laguerre

VACUUM_VARIANCE = 0.25


@dataclass(frozen=True)
class PacsProbe:
    """Photon-added coherent state with real amplitude and ``m`` added photons."""

    alpha: float
    m: int = 0

    def __post_init__(self):
        try:
            m = operator.index(self.m)
        except TypeError:
            raise ValueError(f"m must be an integer, got {self.m!r}") from None
        if m < 0:
            raise ValueError(f"m must be non-negative, got {m}")
        if not math.isfinite(self.alpha):
            raise ValueError(f"alpha must be finite, got {self.alpha!r}")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "alpha", float(self.alpha))


@dataclass(frozen=True)
class MomentSet:
    """First and second quadrature moments of a single mode."""

    mean_x1: float
    mean_x2: float
    var_x1: float
    var_x2: float
    mean_photons: float


@dataclass(frozen=True)
class BModeState:
    """Input state of the b mode.

    ``kind`` is one of ``"vacuum"``, ``"imag-coherent"`` (amplitude ``i*y``)
    or ``"squeezed-vacuum"`` (squeezing ``r`` at phase ``delta = pi``).
    """

    kind: str = "vacuum"
    y: float = 0.0
    r: float = 0.0

    KINDS = ("vacuum", "imag-coherent", "squeezed-vacuum")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown b-mode kind {self.kind!r}")
        if self.r < 0:
            raise ValueError(f"squeezing r must be non-negative, got {self.r}")

    @property
    def delta(self):
        return math.pi if self.kind == "squeezed-vacuum" else None

    def moments(self) -> MomentSet:
        if self.kind == "vacuum":
            return vacuum_moments()
        if self.kind == "imag-coherent":
            return coherent_moments(0.0, self.y)
        return squeezed_vacuum_moments(self.r)


def _laguerres(probe):
    x = -probe.alpha**2
    m = probe.m
    return (
        laguerre(m, x),
        laguerre(m + 1, x),
        assoc_laguerre(m, 1, x),
        assoc_laguerre(m, 2, x),
    )


def pacs_norm_const(probe: PacsProbe) -> float:
    """Normalization ``N_m = [m! L_m(-alpha^2)]^(-1/2)``."""
    # lgamma keeps m! out of floating point for large m
    log_norm_sq = math.lgamma(probe.m + 1) + math.log(laguerre(probe.m, -probe.alpha**2))
    return math.exp(-0.5 * log_norm_sq)


def pacs_mean_x1(probe: PacsProbe) -> float:
    lm, _, lm1, _ = _laguerres(probe)
    return probe.alpha * lm1 / lm


def pacs_var_x1(probe: PacsProbe) -> float:
    """Variance of X1 in the PACS.

    The ``L_m^2`` term is the associated Laguerre polynomial of order 2 (not
    the square of ``L_m``); the Fock-basis oracle confirms this reading.
    """
    lm, lm_next, lm1, lm2 = _laguerres(probe)
    a2 = probe.alpha**2
    m = probe.m
    return ((m + 1) * lm_next + a2 * lm2) / (2 * lm) - a2 * (lm1 / lm) ** 2 - 0.25


def pacs_var_x2(probe: PacsProbe) -> float:
    # <a^2> = alpha^2 L_m^2 / L_m and <X2> = 0 for real alpha
    lm, lm_next, _, lm2 = _laguerres(probe)
    m = probe.m
    return ((m + 1) * lm_next - probe.alpha**2 * lm2) / (2 * lm) - 0.25


def pacs_mean_photons(probe: PacsProbe) -> float:
    """Mean photon number ``(m+1) L_{m+1}(-alpha^2) / L_m(-alpha^2) - 1``.

    Evaluated through the recurrence-equivalent form
    ``m (2 - L_{m-1}/L_m) + alpha^2``, which avoids the cancellation in
    ``... - 1`` and is exact at ``m = 0``.
    """
    a2 = probe.alpha**2
    if probe.m == 0:
        return a2
    ratio = laguerre(probe.m - 1, -a2) / laguerre(probe.m, -a2)
    return probe.m * (2.0 - ratio) + a2


@lru_cache(maxsize=256)
def pacs_moments(probe: PacsProbe) -> MomentSet:
    return MomentSet(
        mean_x1=pacs_mean_x1(probe),
        mean_x2=0.0,
        var_x1=pacs_var_x1(probe),
        var_x2=pacs_var_x2(probe),
        mean_photons=pacs_mean_photons(probe),
    )


def vacuum_moments() -> MomentSet:
    return MomentSet(0.0, 0.0, VACUUM_VARIANCE, VACUUM_VARIANCE, 0.0)


def coherent_moments(re: float, im: float = 0.0) -> MomentSet:
    """Moments of the coherent state ``|re + i*im>``."""
    return MomentSet(re, im, VACUUM_VARIANCE, VACUUM_VARIANCE, re * re + im * im)


def squeezed_vacuum_moments(r: float) -> MomentSet:
    """Squeezed vacuum with ``xi = r e^{i pi}``: X2 squeezed, X1 anti-squeezed."""
    if r < 0:
        raise ValueError(f"squeezing r must be non-negative, got {r}")
    return MomentSet(
        mean_x1=0.0,
        mean_x2=0.0,
        var_x1=math.exp(2 * r) / 4,
        var_x2=math.exp(-2 * r) / 4,
        mean_photons=math.sinh(r) ** 2,
    )


def ss_moments(r: float, alpha_c: float) -> tuple[MomentSet, MomentSet]:
    """Input moments of the squeezed-state probe ``|alpha_c> (x) |xi = -r>``.

    Returns:
        ``(a_moments, b_moments)``: the coherent a mode (mean ``alpha_c``,
        variance 1/4) and the squeezed-vacuum b mode (mean 0, X2 variance
        ``e^{-2r}/4``).
    """
    return coherent_moments(alpha_c), squeezed_vacuum_moments(r)


def match_cs_amplitude(probe: PacsProbe) -> float:
    """Coherent amplitude carrying the same mean photon number as the PACS."""
    return math.sqrt(pacs_mean_photons(probe))


def match_ss_params(y: float, probe: PacsProbe) -> tuple[float, float]:
    """Squeezed-state probe parameters ``(alpha_c, r)`` matched to ``(probe, y)``.

    The a mode matches the PACS photon number and the squeezed vacuum
    matches the ``y**2`` photons of the imaginary coherent b mode, so
    ``sinh(r)**2 == y**2``.
    """
    if y < 0:
        raise ValueError(f"y must be non-negative, got {y}")
    return match_cs_amplitude(probe), math.asinh(y)
