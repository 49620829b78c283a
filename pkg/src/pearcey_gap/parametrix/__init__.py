"""Bessel model, global parametrix N and the local parametrices near ±1."""

from .bessel import BesselPair, modified_bessel, phi_bessel
from .correction import J1Pair, R1Data, j1_matrices, r1_data
from .global_n import GlobalConstants, global_constants, global_N
from .local import conformal_f, conformal_f_tilde, local_P, prefactor_E, script_factors

__all__ = [
    "BesselPair",
    "GlobalConstants",
    "J1Pair",
    "R1Data",
    "conformal_f",
    "conformal_f_tilde",
    "global_N",
    "global_constants",
    "j1_matrices",
    "local_P",
    "modified_bessel",
    "phi_bessel",
    "prefactor_E",
    "r1_data",
    "script_factors",
]
