"""Phase substitution and spectral energy re-balancing.

Injecting reference phases into a noise spectrum leaves bin magnitudes
untouched, so the spectrum's energy split across the mask is unchanged.
Sampling quality degrades instead when the conditioned band is later
attenuated: dividing the masked band by gamma removes E_low * (1 - 1/gamma^2)
of energy. apply_energy_balance restores the total by scaling the
unmasked band by

    beta = sqrt((E_total - E_low / gamma^2) / E_high)

which makes E_low / gamma^2 + beta^2 * E_high equal E_total again.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Domain, Spectrum
from .errors import DegenerateSpectrum, InvalidInput
from .masks import FrequencyMask

__all__ = [
    "BalanceParams",
    "substitute_phase",
    "compute_beta",
    "apply_energy_balance",
]

_REL_TOL = 1e-9


@dataclass(frozen=True)
class BalanceParams:
    """Energy bookkeeping for one re-balancing step.

    e_total is defined as e_low + e_high, and beta satisfies the exact
    conservation identity e_low / gamma^2 + beta^2 * e_high = e_total;
    both are checked to 1e-9 relative at construction.
    """

    gamma: float
    mask: FrequencyMask
    e_total: float
    e_low: float
    e_high: float
    beta: float

    def __post_init__(self) -> None:
        if not isinstance(self.mask, FrequencyMask):
            raise InvalidInput("mask must be a FrequencyMask")
        for name in ("gamma", "e_total", "e_low", "e_high", "beta"):
            v = getattr(self, name)
            if not isinstance(v, float) or not math.isfinite(v):
                raise InvalidInput(f"{name} must be a finite float, got {v!r}")
        if self.gamma < 1.0:
            raise InvalidInput(f"gamma must be >= 1, got {self.gamma}")
        if self.e_low < 0.0 or self.e_high < 0.0 or self.beta <= 0.0:
            raise InvalidInput("energies must be >= 0 and beta > 0")
        scale = max(self.e_total, 1.0)
        if abs(self.e_total - (self.e_low + self.e_high)) > _REL_TOL * scale:
            raise InvalidInput("e_total must equal e_low + e_high")
        conserved = self.e_low / self.gamma**2 + self.beta**2 * self.e_high
        if abs(conserved - self.e_total) > _REL_TOL * scale:
            raise InvalidInput("beta does not conserve total energy")

    def to_dict(self) -> dict:
        """JSON-ready summary (energies, beta, cutoff)."""
        return {
            "gamma": self.gamma,
            "domain": self.mask.domain.value,
            "k": self.mask.k,
            "ratio": self.mask.ratio,
            "resolved_count": self.resolved_count,
            "e_total": self.e_total,
            "e_low": self.e_low,
            "e_high": self.e_high,
            "beta": self.beta,
        }

    @property
    def resolved_count(self) -> int:
        return self.mask.resolved_count


def _check_compatible(spec: Spectrum, mask: FrequencyMask) -> np.ndarray:
    """Validate mask/spectrum pairing; return the broadcast boolean selector."""
    if not isinstance(spec, Spectrum):
        raise InvalidInput(f"expected a Spectrum, got {type(spec).__name__}")
    if not isinstance(mask, FrequencyMask):
        raise InvalidInput(f"expected a FrequencyMask, got {type(mask).__name__}")
    if mask.domain is not spec.domain:
        raise InvalidInput(
            f"mask domain {mask.domain.value} does not match spectrum domain {spec.domain.value}"
        )
    t, w, h, _ = spec.shape
    expected = (t,) if mask.domain is Domain.TEMPORAL else (w, h)
    if mask.selected.shape != expected:
        raise InvalidInput(
            f"mask extent {mask.selected.shape} does not match spectrum {spec.shape}"
        )
    return np.broadcast_to(mask.axis_selector(), spec.shape)


def substitute_phase(noise: Spectrum, reference: Spectrum, mask: FrequencyMask) -> Spectrum:
    """Swap reference phases into the noise spectrum inside the mask.

    Selected bins become |noise| * exp(i * phase(reference)); unselected
    bins are copied bit-exactly. Reference bins with zero magnitude
    contribute phase 0.0, so the result there is the noise magnitude on
    the positive real axis.

    Caution: bins at roundoff level but not exactly zero have
    ill-conditioned phases that are no longer conjugate-paired, and
    grafting them onto full-size noise magnitudes breaks the Hermitian
    symmetry the inverse transform checks for. Spectrally sparse
    synthetic references (pure ramps, checkerboards) hit this; give them
    a small textured floor before conditioning on them.
    """
    sel = _check_compatible(noise, mask)
    if not isinstance(reference, Spectrum):
        raise InvalidInput(f"reference must be a Spectrum, got {type(reference).__name__}")
    if reference.domain is not noise.domain:
        raise InvalidInput("noise and reference spectra are from different domains")
    if reference.shape != noise.shape:
        raise InvalidInput(
            f"noise shape {noise.shape} does not match reference shape {reference.shape}"
        )
    ref_bins = reference.data[sel]
    phase = np.arctan2(ref_bins.imag, ref_bins.real)
    phase[np.abs(ref_bins) == 0.0] = 0.0
    out = noise.data.copy()
    out[sel] = np.abs(noise.data[sel]) * np.exp(1j * phase)
    return Spectrum(out, noise.domain)


def compute_beta(e_total: float, e_low: float, gamma: float) -> float:
    """Compensation gain for the unmasked band.

    beta = sqrt((e_total - e_low / gamma^2) / e_high) with
    e_high = e_total - e_low. gamma == 1 returns exactly 1.0 (no
    attenuation, nothing to compensate). Zero energy outside the mask
    raises DegenerateSpectrum: no band is left to carry the correction.
    """
    for name, v in (("e_total", e_total), ("e_low", e_low), ("gamma", gamma)):
        if not math.isfinite(v):
            raise InvalidInput(f"{name} must be finite, got {v!r}")
    if gamma < 1.0:
        raise InvalidInput(f"gamma must be >= 1, got {gamma}")
    if e_low < 0.0 or e_total < e_low:
        raise InvalidInput(f"need 0 <= e_low <= e_total, got e_low={e_low}, e_total={e_total}")
    e_high = e_total - e_low
    if e_high <= 0.0:
        raise DegenerateSpectrum("no energy outside the masked band; beta is undefined")
    if gamma == 1.0:
        return 1.0
    return math.sqrt((e_total - e_low / gamma**2) / e_high)


def apply_energy_balance(
    spec: Spectrum, mask: FrequencyMask, gamma: float
) -> tuple[Spectrum, BalanceParams]:
    """Attenuate the masked band by 1/gamma and re-amplify the rest by beta.

    Returns the scaled spectrum plus the BalanceParams record. Energy is
    conserved by construction; gamma == 1 reproduces the input spectrum
    bit-exactly. A spectrum with zero energy outside the mask raises
    DegenerateSpectrum.
    """
    sel = _check_compatible(spec, mask)
    if not math.isfinite(gamma):
        raise InvalidInput(f"gamma must be finite, got {gamma!r}")
    if gamma < 1.0:
        raise InvalidInput(f"gamma must be >= 1, got {gamma}")
    gamma = float(gamma)

    abs2 = spec.data.real**2 + spec.data.imag**2
    # summed per band straight from the bins; e_total = e_low + e_high then
    # holds exactly instead of leaving a subtraction residue
    e_low = float(np.sum(abs2[sel]))
    e_high = float(np.sum(abs2[~sel]))
    e_total = e_low + e_high
    beta = compute_beta(e_total, e_low, gamma)

    out = spec.data.copy()
    out[sel] = out[sel] / gamma
    out[~sel] = out[~sel] * beta
    params = BalanceParams(
        gamma=gamma, mask=mask, e_total=e_total, e_low=e_low, e_high=e_high, beta=beta
    )
    return Spectrum(out, spec.domain), params
