"""Training-free conditioning of diffusion input noise.

The package swaps the low-frequency phases of sampled noise for those
of a reference latent and re-balances spectral energy so the total is
conserved. phi_noise() is the main entry point; the rest of the public
API exposes the individual stages (transforms, masks, phase swap,
energy balance) plus spectral diagnostics, synthetic references and
NPY/JSON I/O.
"""

from ._version import __version__
from .analysis import (
    Z_MAX,
    AnalysisReport,
    BandEnergy,
    WhitenessReport,
    analyze_latent,
    band_energy_profile,
    phase_kl,
    whiteness_report,
)
from .balance import BalanceParams, apply_energy_balance, compute_beta, substitute_phase
from .core import (
    Domain,
    LatentTensor,
    PhaseMag,
    Spectrum,
    decompose,
    energy,
    recompose,
)
from .errors import (
    DegenerateSpectrum,
    FormatError,
    InvalidCutoff,
    InvalidInput,
    InvalidTrajectory,
    IoError,
    PhinoiseError,
    ShapeError,
    SymmetryViolation,
    UnsupportedLayout,
)
from .masks import FrequencyMask, radial_mask, temporal_mask
from .npyio import read_npy, write_json, write_npy
from .pipeline import ConditioningConfig, mask_for, phi_noise, sample_noise
from .synth import LinearTrajectory, OscillatingTrajectory, gen_moving_blob, gen_static
from .transform import IMAG_RESIDUAL_REL_TOL, dft, idft

__all__ = [
    "__version__",
    # types
    "Domain",
    "LatentTensor",
    "Spectrum",
    "PhaseMag",
    "FrequencyMask",
    "BalanceParams",
    "ConditioningConfig",
    "BandEnergy",
    "WhitenessReport",
    "AnalysisReport",
    "LinearTrajectory",
    "OscillatingTrajectory",
    # operations
    "energy",
    "decompose",
    "recompose",
    "dft",
    "idft",
    "temporal_mask",
    "radial_mask",
    "mask_for",
    "substitute_phase",
    "compute_beta",
    "apply_energy_balance",
    "sample_noise",
    "phi_noise",
    "phase_kl",
    "band_energy_profile",
    "whiteness_report",
    "analyze_latent",
    "gen_moving_blob",
    "gen_static",
    "read_npy",
    "write_npy",
    "write_json",
    # constants
    "Z_MAX",
    "IMAG_RESIDUAL_REL_TOL",
    # errors
    "PhinoiseError",
    "InvalidInput",
    "InvalidCutoff",
    "SymmetryViolation",
    "DegenerateSpectrum",
    "InvalidTrajectory",
    "UnsupportedLayout",
    "ShapeError",
    "FormatError",
    "IoError",
]
