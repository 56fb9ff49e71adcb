"""Quantum noise of a gravitational-wave interferometer read out jointly
with a negative-effective-mass spin oscillator through two-mode squeezed
light."""

from .matching import (balance_transmissivity, frequency_independent_condition,
                       matched_gamma_S, spin_rates_from_microphysics)
from .noise import (compute_spectrum, hybrid_position_psd,
                    interferometer_only_position_psd, sql_position_psd)
from .params import (FrequencyGrid, InterferometerParams, ParameterError, SpinParams,
                     SqueezeParams, advanced_ligo_preset, prototype_10m_preset)

__version__ = "0.1.0"
