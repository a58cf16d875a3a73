"""Liouvillian spectra, exceptional points, and trapped-ion cooling."""

from ._core import (
    ac_stark_shift,
    analytic_three_level,
    cooling_limit,
    detect_ep,
    eit_optimal_detuning,
    eit_reduce,
    evolve_expm,
    expm,
    fit_asymptotic_rate,
    floquet_gap,
    full_gap,
    hs_distance,
    integrate,
    lep_condition,
    liouvillian,
    liouvillian_gap,
    mean_phonon,
    monodromy,
    mu_parameter,
    sideband_liouvillian,
    spectrum,
    stationary_state,
    subsystem_eigenvalues,
    subsystem_gap,
    three_level_liouvillian,
    three_level_reference_eigenvalues,
)

__all__ = [
    "ac_stark_shift",
    "analytic_three_level",
    "cooling_limit",
    "detect_ep",
    "eit_optimal_detuning",
    "eit_reduce",
    "evolve_expm",
    "expm",
    "fit_asymptotic_rate",
    "floquet_gap",
    "full_gap",
    "hs_distance",
    "integrate",
    "lep_condition",
    "liouvillian",
    "liouvillian_gap",
    "mean_phonon",
    "monodromy",
    "mu_parameter",
    "sideband_liouvillian",
    "spectrum",
    "stationary_state",
    "subsystem_eigenvalues",
    "subsystem_gap",
    "three_level_liouvillian",
    "three_level_reference_eigenvalues",
]
