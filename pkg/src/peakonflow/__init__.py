"""Spectral theory and action-angle dynamics of peakon systems.

The package connects three descriptions of the same finite system:

* peakon states ``(q, p)`` and their Hamiltonian flow (:mod:`.peakon_ode`),
* discrete strings on ``[-2, 2]`` and their Weyl functions
  (:mod:`.discrete_string`, :mod:`.inverse_spectral`),
* action-angle charts and the Poisson structure on spectral data
  (:mod:`.spectral_flow`, :mod:`.poisson`).
"""

from .discrete_string import (
    DiscreteString, PeakonState, dirichlet_spectrum, from_peakons, mixed_spectrum,
    neumann_spectrum, to_peakons, weyl_e0, weyl_omega0,
)
from .errors import InputError, NumericalError, PeakonFlowError
from .herglotz import RationalHerglotz, boole_identities, level_roots, negate_invert
from .inverse_spectral import from_chart, reconstruct
from .peakon_ode import integrate, two_peakon_closed_form, two_peakon_params
from .poisson import PoissonPoint, bracket, verify_ah, verify_canonical
from .spectral_flow import HamiltonianSpec, SpectralChart, chart, evolve

__version__ = "0.1.0"

__all__ = [
    "DiscreteString", "PeakonState", "RationalHerglotz", "SpectralChart", "HamiltonianSpec",
    "PoissonPoint", "InputError", "NumericalError", "PeakonFlowError",
    "from_peakons", "to_peakons", "weyl_omega0", "weyl_e0", "mixed_spectrum",
    "dirichlet_spectrum", "neumann_spectrum", "level_roots", "negate_invert",
    "boole_identities", "reconstruct", "from_chart", "chart", "evolve", "integrate",
    "two_peakon_params", "two_peakon_closed_form", "bracket", "verify_ah", "verify_canonical",
]
