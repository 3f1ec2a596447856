"""Spectral diagnostics: phase histograms, band profiles, whiteness checks.

These tools quantify what conditioning did to a tensor. phase_kl
measures how far two phase distributions drifted apart,
band_energy_profile shows where energy sits across frequency shells,
and whiteness_report runs z-scored sanity checks (moments plus spectral
flatness) that a standard normal tensor passes with |z| <= 4.

Conjugate-symmetric bins duplicate each other's magnitudes, so the
flatness statistic runs over one representative per conjugate pair;
self-conjugate bins (purely real under symmetry) get the chi-square
variance factor 2 instead of 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._version import __version__
from .balance import BalanceParams
from .core import Domain, LatentTensor, decompose, energy
from .errors import DegenerateSpectrum, InvalidInput
from .masks import FrequencyMask, _radial_keys, _signed_magnitudes
from .transform import dft

__all__ = [
    "Z_MAX",
    "BandEnergy",
    "WhitenessReport",
    "AnalysisReport",
    "phase_kl",
    "band_energy_profile",
    "whiteness_report",
    "analyze_latent",
]

# acceptance threshold for every whiteness z-score
Z_MAX = 4.0


def _check_latent(x: LatentTensor, what: str) -> None:
    if not isinstance(x, LatentTensor):
        raise InvalidInput(f"{what} must be a LatentTensor, got {type(x).__name__}")


def _check_domain(domain: Domain) -> None:
    if not isinstance(domain, Domain):
        raise InvalidInput(f"domain must be a Domain, got {domain!r}")


def _phases(x: LatentTensor, domain: Domain, mask: FrequencyMask | None) -> np.ndarray:
    """Flat phase sample of x's spectrum, optionally restricted to a mask."""
    s = dft(x, domain)
    ph = decompose(s).phase
    if mask is None:
        return ph.ravel()
    if mask.domain is not domain:
        raise InvalidInput("mask domain does not match the requested domain")
    t, w, h, _ = s.shape
    expected = (t,) if domain is Domain.TEMPORAL else (w, h)
    if mask.selected.shape != expected:
        raise InvalidInput(f"mask extent {mask.selected.shape} does not fit shape {s.shape}")
    sel = np.broadcast_to(mask.axis_selector(), ph.shape)
    return ph[sel]


def phase_kl(
    a: LatentTensor,
    b: LatentTensor,
    domain: Domain,
    bins: int = 64,
    mask: FrequencyMask | None = None,
) -> float:
    """KL divergence KL(P_a || P_b) between binned phase distributions.

    Phases of each tensor's spectrum are histogrammed over (-pi, pi]
    with add-one smoothing, so the result is finite for any pair and is
    exactly 0.0 when both inputs are identical. An optional mask
    restricts the sample to the selected bins. All-zero input has no
    meaningful phases and raises DegenerateSpectrum; bins must be >= 2.
    """
    _check_latent(a, "a")
    _check_latent(b, "b")
    _check_domain(domain)
    if not isinstance(bins, (int, np.integer)) or isinstance(bins, bool) or bins < 2:
        raise InvalidInput(f"bins must be an integer >= 2, got {bins!r}")
    if energy(a) == 0.0 or energy(b) == 0.0:
        raise DegenerateSpectrum("phase distribution of an all-zero tensor is undefined")
    bins = int(bins)
    pa = _phases(a, domain, mask)
    pb = _phases(b, domain, mask)
    ca, _ = np.histogram(pa, bins=bins, range=(-np.pi, np.pi))
    cb, _ = np.histogram(pb, bins=bins, range=(-np.pi, np.pi))
    p = (ca + 1.0) / (ca.sum() + bins)
    q = (cb + 1.0) / (cb.sum() + bins)
    return float(np.sum(p * np.log(p / q)))


class BandEnergy(NamedTuple):
    """Energy summary of one contiguous frequency band."""

    band: int
    label: str
    mean_energy: float
    n_elements: int


def _band_indices(shape: tuple[int, int, int, int], domain: Domain, n_bands: int):
    """Per-bin band index plus the scalar shell value of every bin."""
    t, w, h, _ = shape
    if domain is Domain.TEMPORAL:
        vals = _signed_magnitudes(t).astype(np.int64)
        vmax = int(vals.max())
        if vmax == 0:
            band = np.zeros(t, dtype=np.int64)
        else:
            band = np.minimum(n_bands - 1, vals * n_bands // vmax)
        return band, vals.astype(np.float64)
    keys = _radial_keys(w, h)
    kmax = int(keys.max())
    rho = np.sqrt(keys.astype(np.float64)) / (w * h)
    if kmax == 0:
        band = np.zeros((w, h), dtype=np.int64)
    else:
        ratio = np.sqrt(keys.astype(np.float64) / kmax)
        band = np.minimum(n_bands - 1, (ratio * n_bands).astype(np.int64))
    return band, rho


def band_energy_profile(
    x: LatentTensor, domain: Domain, n_bands: int = 4
) -> list[BandEnergy]:
    """Mean spectral energy per element in n_bands contiguous shells.

    Temporal bands partition |f|, spatial bands partition the radial
    coordinate; a shell always lands in exactly one band. The weighted
    sum of mean_energy * n_elements over all bands recovers the total
    spectral energy.
    """
    _check_latent(x, "x")
    _check_domain(domain)
    if not isinstance(n_bands, (int, np.integer)) or isinstance(n_bands, bool) or n_bands < 1:
        raise InvalidInput(f"n_bands must be an integer >= 1, got {n_bands!r}")
    n_bands = int(n_bands)

    s = dft(x, domain)
    abs2 = s.data.real**2 + s.data.imag**2
    band, shellvals = _band_indices(s.shape, domain, n_bands)

    if domain is Domain.TEMPORAL:
        per_bin = abs2.sum(axis=(1, 2, 3))
        per_bin_elems = int(np.prod(s.shape[1:]))
    else:
        per_bin = abs2.sum(axis=(0, 3))
        per_bin_elems = s.shape[0] * s.shape[3]

    out = []
    flat_band = band.ravel()
    flat_sum = per_bin.ravel()
    flat_val = shellvals.ravel()
    for b in range(n_bands):
        in_band = flat_band == b
        n_el = int(in_band.sum()) * per_bin_elems
        if n_el == 0:
            out.append(BandEnergy(band=b, label="(empty)", mean_energy=0.0, n_elements=0))
            continue
        total = float(np.sum(flat_sum[in_band]))
        lo, hi = float(flat_val[in_band].min()), float(flat_val[in_band].max())
        if domain is Domain.TEMPORAL:
            label = f"|f| in [{int(lo)}, {int(hi)}]"
        else:
            label = f"rho in [{lo:.6g}, {hi:.6g}]"
        out.append(BandEnergy(band=b, label=label, mean_energy=total / n_el, n_elements=n_el))
    return out


@dataclass(frozen=True)
class WhitenessReport:
    """z-scored whiteness checks; verdict is PASS when every |z| <= Z_MAX.

    Non-finite statistics (degenerate input) are reported as None and
    fail their check.
    """

    n: int
    mean_z: float | None
    variance_z: float | None
    kurtosis_z: float | None
    flatness_z: float | None
    checks: dict
    verdict: str

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "mean_z": self.mean_z,
            "variance_z": self.variance_z,
            "kurtosis_z": self.kurtosis_z,
            "flatness_z": self.flatness_z,
            "checks": dict(self.checks),
            "verdict": self.verdict,
        }


def _finite_or_none(z: float) -> float | None:
    return float(z) if math.isfinite(z) else None


def _unique_bin_stats(
    abs2: np.ndarray, shape: tuple[int, int, int, int], domain: Domain
) -> tuple[np.ndarray, np.ndarray, int]:
    """Per-bin means over one conjugacy representative per pair.

    Returns (means, chi2_factor, n_elements_per_bin). chi2_factor is 2
    for self-conjugate bins (real-valued under Hermitian symmetry,
    chi-square with 1 dof) and 1 for proper pairs.
    """
    t, w, h, d = shape
    if domain is Domain.TEMPORAL:
        per_bin = abs2.mean(axis=(1, 2, 3))
        n_e = w * h * d
        reps, factors = [], []
        for f in range(t // 2 + 1):
            reps.append(per_bin[f])
            self_conj = f == 0 or (t % 2 == 0 and f == t // 2)
            factors.append(2.0 if self_conj else 1.0)
        return np.asarray(reps), np.asarray(factors), n_e
    per_bin = abs2.mean(axis=(0, 3))
    n_e = t * d
    reps, factors = [], []
    for i in range(w):
        for j in range(h):
            pi, pj = (-i) % w, (-j) % h
            if (pi, pj) < (i, j):
                continue  # partner already counted
            reps.append(per_bin[i, j])
            factors.append(2.0 if (pi, pj) == (i, j) else 1.0)
    return np.asarray(reps), np.asarray(factors), n_e


def whiteness_report(
    x: LatentTensor,
    domain: Domain = Domain.TEMPORAL,
    balance: BalanceParams | None = None,
) -> WhitenessReport:
    """Check whether x is consistent with standard normal white noise.

    Four statistics, each z-scored against its null distribution: the
    sample mean, the sample variance, the excess kurtosis, and spectral
    flatness (a chi-square over per-bin mean energies, mapped to a
    z-score with the Wilson-Hilferty transform). PASS requires every
    |z| <= Z_MAX.

    When a BalanceParams record is given, the designed band scaling
    (1/gamma inside the mask, beta outside) is divided out of the
    spectrum before the flatness check, so a correctly re-balanced
    tensor is judged against the flat profile it encodes. Requires at
    least 64 elements.
    """
    _check_latent(x, "x")
    _check_domain(domain)
    v = x.data.astype(np.float64).ravel()
    n = v.size
    if n < 64:
        raise InvalidInput(f"whiteness_report needs at least 64 elements, got {n}")

    mean = float(v.mean())
    z_mean = mean * math.sqrt(n)
    s2 = float(v.var())
    z_var = (s2 - 1.0) / math.sqrt(2.0 / n)
    if s2 > 0.0:
        m4 = float(np.mean((v - mean) ** 4))
        g2 = m4 / (s2 * s2) - 3.0
        z_kurt = g2 / math.sqrt(24.0 / n)
    else:
        z_kurt = math.inf

    s = dft(x, domain)
    abs2 = s.data.real**2 + s.data.imag**2
    if balance is not None:
        if not isinstance(balance, BalanceParams):
            raise InvalidInput("balance must be a BalanceParams")
        mask = balance.mask
        if mask.domain is not domain:
            raise InvalidInput("balance mask domain does not match the requested domain")
        t, w, h, _ = s.shape
        expected = (t,) if domain is Domain.TEMPORAL else (w, h)
        if mask.selected.shape != expected:
            raise InvalidInput(f"balance mask extent does not fit shape {s.shape}")
        scale2 = np.where(mask.selected, 1.0 / balance.gamma**2, balance.beta**2)
        if domain is Domain.TEMPORAL:
            abs2 = abs2 / scale2[:, None, None, None]
        else:
            abs2 = abs2 / scale2[None, :, :, None]

    mbar = float(abs2.mean())
    means, factors, n_e = _unique_bin_stats(abs2, s.shape, domain)
    dof = means.size - 1
    if mbar <= 0.0:
        z_flat = math.inf
    elif dof < 1:
        z_flat = 0.0
    else:
        q = float(np.sum((means - mbar) ** 2 * n_e / (factors * mbar * mbar)))
        # Wilson-Hilferty: cube root of a chi-square is nearly normal
        z_flat = ((q / dof) ** (1.0 / 3.0) - (1.0 - 2.0 / (9.0 * dof))) / math.sqrt(
            2.0 / (9.0 * dof)
        )

    zs = {
        "mean": z_mean,
        "variance": z_var,
        "kurtosis": z_kurt,
        "spectral_flatness": z_flat,
    }
    checks = {name: bool(math.isfinite(z) and abs(z) <= Z_MAX) for name, z in zs.items()}
    verdict = "PASS" if all(checks.values()) else "FAIL"
    return WhitenessReport(
        n=n,
        mean_z=_finite_or_none(z_mean),
        variance_z=_finite_or_none(z_var),
        kurtosis_z=_finite_or_none(z_kurt),
        flatness_z=_finite_or_none(z_flat),
        checks=checks,
        verdict=verdict,
    )


@dataclass(frozen=True)
class AnalysisReport:
    """Bundle of diagnostics for one tensor, ready for JSON serialization."""

    config: dict
    energies: dict
    beta: float | None
    kl: float | None
    whiteness: WhitenessReport
    band_profile: list

    def to_dict(self) -> dict:
        out = {
            "version": __version__,
            "config": dict(self.config),
            "energies": dict(self.energies),
            "beta": self.beta,
        }
        if self.kl is not None:
            out["phase_kl"] = self.kl
        out["whiteness"] = self.whiteness.to_dict()
        out["band_profile"] = [b._asdict() for b in self.band_profile]
        return out


def analyze_latent(
    x: LatentTensor,
    domain: Domain,
    ref: LatentTensor | None = None,
    bins: int = 64,
    n_bands: int = 4,
    mask: FrequencyMask | None = None,
    balance: BalanceParams | None = None,
    config: dict | None = None,
) -> AnalysisReport:
    """Assemble the standard diagnostics for one tensor.

    phase_kl is included only when a second tensor is given. A balance
    record, when available, feeds both the flatness divide-out and the
    energies/beta fields.
    """
    whiteness = whiteness_report(x, domain, balance=balance)
    profile = band_energy_profile(x, domain, n_bands)
    kl = None
    if ref is not None:
        kl = phase_kl(x, ref, domain, bins=bins, mask=mask)
    energies = {
        "input": energy(x) if balance is None else balance.e_total,
        "output": energy(x),
        "low": balance.e_low if balance is not None else None,
        "high": balance.e_high if balance is not None else None,
    }
    return AnalysisReport(
        config=dict(config or {}),
        energies=energies,
        beta=balance.beta if balance is not None else None,
        kl=kl,
        whiteness=whiteness,
        band_profile=profile,
    )
