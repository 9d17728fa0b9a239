"""Sensitivity engine for a quadrature-measurement quantum fiber-optic gyroscope.

Closed-form sensitivities for photon-added coherent, coherent and squeezed
probes, a truncated Fock-basis oracle that checks them, and sweep and
best-phase tooling.
"""

from .errors import ConfigError, Indeterminate, LossSingular, NoMinimum, TruncationError
from .gyro import (
    ComparisonPoint,
    GyroSetting,
    Sensitivity,
    ratio_pacs_cs,
    ratio_pacs_ss,
    sagnac_phase,
    sensitivity_cs,
    sensitivity_general,
    sensitivity_pacs_imag,
    sensitivity_pacs_vacuum,
    sensitivity_ss,
    small_rotation_limit,
)
from .laguerre import assoc_laguerre, laguerre
from .probes import (
    BModeState,
    MomentSet,
    PacsProbe,
    match_cs_amplitude,
    match_ss_params,
    pacs_mean_photons,
    pacs_mean_x1,
    pacs_moments,
    pacs_norm_const,
    pacs_var_x1,
    ss_moments,
)

__version__ = "0.1.0"
