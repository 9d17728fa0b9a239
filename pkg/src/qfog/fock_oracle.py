"""Brute-force moments in a truncated number basis.

Probe states are built as explicit amplitude vectors and every moment is
obtained by letting ladder operators act on amplitude indices, so nothing
here shares code with the Laguerre closed forms in :mod:`qfog.probes`.
Moments of the output mode b' are propagated through the linear
Heisenberg-picture map of the lossy Sagnac loop.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import TruncationError
from .probes import MomentSet, VACUUM_VARIANCE

DEFAULT_DIM = 128
TAIL_TOLERANCE = 1e-14


@dataclass(frozen=True, eq=False)
class FockVector:
    """Normalized amplitude vector on number states ``0 .. dim-1``."""

    amps: np.ndarray

    @property
    def dim(self) -> int:
        return self.amps.shape[0]

    @property
    def tail_mass(self) -> float:
        # two slots so that parity-restricted states are not missed
        return float(np.sum(np.abs(self.amps[-2:]) ** 2))

    def norm(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)


class OracleMoments(MomentSet):
    """Moments computed numerically from a :class:`FockVector`."""


def _checked(amps, discarded=0.0, what="state"):
    norm_sq = float(np.vdot(amps, amps).real)
    state = FockVector(amps / math.sqrt(norm_sq))
    tail = state.tail_mass + discarded / norm_sq
    if tail > TAIL_TOLERANCE:
        raise TruncationError(
            f"{what}: tail mass {tail:.3e} exceeds {TAIL_TOLERANCE:g} at dim={state.dim}"
        )
    return state, norm_sq


def build_coherent(alpha: complex, dim: int = DEFAULT_DIM) -> FockVector:
    """Coherent state ``|alpha>`` truncated to ``dim`` number states."""
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    alpha = complex(alpha)
    amps = np.empty(dim, dtype=complex)
    amps[0] = 1.0
    for n in range(1, dim):
        amps[n] = amps[n - 1] * alpha / math.sqrt(n)
    amps *= math.exp(-abs(alpha) ** 2 / 2)
    return _checked(amps, what=f"coherent alpha={alpha}")[0]


def build_fock(n: int, dim: int = DEFAULT_DIM) -> FockVector:
    if not 0 <= n < dim:
        raise TruncationError(f"number state |{n}> does not fit in dim={dim}")
    amps = np.zeros(dim, dtype=complex)
    amps[n] = 1.0
    return FockVector(amps)


def build_squeezed_vacuum(r: float, delta: float = math.pi, dim: int = DEFAULT_DIM) -> FockVector:
    """Squeezed vacuum ``S(xi)|0>`` with ``xi = r e^{i delta}``.

    ``S(xi) = exp[(xi^* a^2 - xi a^dag^2)/2]``, so the even amplitudes are
    ``(-e^{i delta} tanh r)^k sqrt((2k)!) / (2^k k! sqrt(cosh r))``.
    """
    amps = np.zeros(dim, dtype=complex)
    amps[0] = 1.0 / math.sqrt(math.cosh(r))
    step = -np.exp(1j * delta) * math.tanh(r)
    for n in range(2, dim, 2):
        # c_n / c_{n-2} = step * sqrt(n (n-1)) / n
        amps[n] = amps[n - 2] * step * math.sqrt((n - 1) / n)
    return _checked(amps, what=f"squeezed vacuum r={r}")[0]


def apply_creation(state: FockVector, times: int, return_norm: bool = False):
    """Apply ``a^dag`` ``times`` times and renormalize.

    With ``return_norm=True`` also returns the squared norm of the
    unnormalized result, ``<psi| a^m a^dag^m |psi>``.
    """
    if times < 0:
        raise ValueError(f"times must be non-negative, got {times}")
    if times == 0:
        return (state, state.norm()) if return_norm else state
    dim = state.dim
    # work in dim + times slots so the mass pushed past the truncation is known
    amps = np.concatenate([state.amps, np.zeros(times, dtype=complex)])
    n = np.arange(amps.shape[0])
    for _ in range(times):
        amps[1:] = amps[:-1] * np.sqrt(n[1:])
        amps[0] = 0.0
    discarded = float(np.sum(np.abs(amps[dim:]) ** 2))
    kept = amps[:dim]
    out, norm_sq = _checked(kept, discarded, what=f"a^dag^{times}")
    if return_norm:
        return out, norm_sq + discarded
    return out


def oracle_moments(state: FockVector) -> OracleMoments:
    """Quadrature moments of ``state`` by ladder-operator action on indices."""
    c = state.amps
    n = np.arange(state.dim)
    mean_n = float(np.sum(n * np.abs(c) ** 2).real)
    # <a> = sum sqrt(n+1) c_n^* c_{n+1},  <a^2> = sum sqrt((n+1)(n+2)) c_n^* c_{n+2}
    a1 = complex(np.sum(np.sqrt(n[1:]) * np.conj(c[:-1]) * c[1:]))
    a2 = complex(np.sum(np.sqrt(n[2:] * n[1:-1]) * np.conj(c[:-2]) * c[2:])) if state.dim > 2 else 0j
    x1_sq = (2 * a2.real + 2 * mean_n + 1) / 4
    x2_sq = (2 * mean_n + 1 - 2 * a2.real) / 4
    mean_x1, mean_x2 = a1.real, a1.imag
    return OracleMoments(
        mean_x1=mean_x1,
        mean_x2=mean_x2,
        var_x1=x1_sq - mean_x1**2,
        var_x2=x2_sq - mean_x2**2,
        mean_photons=mean_n,
    )


def output_quadrature_stats(a_moments, b_moments, phi, gamma):
    """Mean and variance of ``X1b'`` and ``X2b'`` for independent inputs.

    The b' output of the lossy loop is
    ``X1b' = -(sqrt(g) X2a + sqrt(1-g) X2ea) sin(phi) - (sqrt(g) X1b + sqrt(1-g) X1eb) cos(phi)``
    ``X2b' =  (sqrt(g) X1a + sqrt(1-g) X1ea) sin(phi) - (sqrt(g) X2b + sqrt(1-g) X2eb) cos(phi)``
    with vacuum ancillas e_a, e_b.  Inputs are a product state, so variances
    of the linear combination add with squared coefficients.

    Returns:
        ``(mean_x1, var_x1, mean_x2, var_x2)`` of the b' mode.
    """
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma must lie in [0, 1], got {gamma}")
    s, c = math.sin(phi), math.cos(phi)
    g = math.sqrt(gamma)
    h = math.sqrt(1.0 - gamma)
    anc = VACUUM_VARIANCE

    # (coefficient, mean, variance) for each independent term
    x1_terms = [
        (-g * s, a_moments.mean_x2, a_moments.var_x2),
        (-h * s, 0.0, anc),
        (-g * c, b_moments.mean_x1, b_moments.var_x1),
        (-h * c, 0.0, anc),
    ]
    x2_terms = [
        (g * s, a_moments.mean_x1, a_moments.var_x1),
        (h * s, 0.0, anc),
        (-g * c, b_moments.mean_x2, b_moments.var_x2),
        (-h * c, 0.0, anc),
    ]

    def combine(terms):
        mean = sum(k * mu for k, mu, _ in terms)
        var = sum(k * k * v for k, _, v in terms)
        return mean, var

    m1, v1 = combine(x1_terms)
    m2, v2 = combine(x2_terms)
    return m1, v1, m2, v2


def pacs_state(alpha: float, m: int, dim: int = DEFAULT_DIM) -> FockVector:
    return apply_creation(build_coherent(alpha, dim), m)


def oracle_sensitivity(a_moments, b_moments, phi, gamma, quadrature="X2", h=1e-5):
    """T^2-scaled error-transfer sensitivity with a numerical phase derivative.

    ``T^2 dOmega^2 = 4 Var / (d<X>/dphi)^2`` because ``phi = T Omega / 2``.
    The derivative is a central difference of :func:`output_quadrature_stats`.
    """
    idx_mean, idx_var = (0, 1) if quadrature == "X1" else (2, 3)
    stats = output_quadrature_stats(a_moments, b_moments, phi, gamma)
    plus = output_quadrature_stats(a_moments, b_moments, phi + h, gamma)[idx_mean]
    minus = output_quadrature_stats(a_moments, b_moments, phi - h, gamma)[idx_mean]
    slope = (plus - minus) / (2 * h)
    if slope == 0.0:
        return math.inf
    return 4.0 * stats[idx_var] / slope**2
