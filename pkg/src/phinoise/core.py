"""Core value types for latent tensors and their spectra.

Conventions used across the package:

* Latent tensors are real, 4-dimensional arrays with axes (t, w, h, d):
  time, width, height, channels. Every axis has length >= 1 and every
  element is finite. Storage is float32 or float64, always C-order.
* Spectra are complex128 tensors of the same shape, tagged with the
  transform domain that produced them. All transforms are orthonormal
  ("ortho"), so total energy is identical on both sides of a transform
  with constant exactly 1.
* Phases live in the half-open interval (-pi, pi]. Bins with zero
  magnitude carry phase 0.0 by convention, which keeps phase data
  deterministic where the underlying angle is undefined.
* energy(x) is the plain sum of squared magnitudes, accumulated in
  float64 in a fixed (row-major, pairwise) order so repeated calls on
  the same buffer give bit-identical results.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput

__all__ = [
    "Domain",
    "LatentTensor",
    "Spectrum",
    "PhaseMag",
    "energy",
    "decompose",
    "recompose",
]

_REAL_DTYPES = (np.float32, np.float64)


class Domain(enum.Enum):
    """Axis group a spectral operation acts on.

    TEMPORAL transforms along axis 0 (one 1-D transform per pixel and
    channel). SPATIAL transforms along axes (1, 2) (one 2-D transform
    per frame and channel).
    """

    TEMPORAL = "temporal"
    SPATIAL = "spatial"


def _readonly(a: np.ndarray) -> np.ndarray:
    """Return a C-contiguous read-only view without mutating the caller's array."""
    a = np.ascontiguousarray(a)
    if a.flags.writeable:
        a = a.view()
        a.flags.writeable = False
    return a


def _check_4d(a: np.ndarray, what: str) -> None:
    if a.ndim != 4:
        raise InvalidInput(f"{what} must have 4 axes (t, w, h, d), got {a.ndim}")
    if min(a.shape) < 1:
        raise InvalidInput(f"{what} axes must all have length >= 1, got {a.shape}")


@dataclass(frozen=True)
class LatentTensor:
    """Real (t, w, h, d) tensor holding noise or video latents.

    The constructor validates dtype, rank, axis lengths and finiteness,
    then stores a read-only C-order view. Invalid data raises
    InvalidInput.
    """

    data: np.ndarray

    def __post_init__(self) -> None:
        a = self.data
        if not isinstance(a, np.ndarray):
            raise InvalidInput(f"latent data must be an ndarray, got {type(a).__name__}")
        if a.dtype not in _REAL_DTYPES:
            raise InvalidInput(f"latent dtype must be float32 or float64, got {a.dtype}")
        _check_4d(a, "latent tensor")
        if not np.all(np.isfinite(a)):
            raise InvalidInput("latent tensor contains NaN or Inf")
        object.__setattr__(self, "data", _readonly(a))

    @property
    def shape(self) -> tuple[int, int, int, int]:
        return self.data.shape  # type: ignore[return-value]

    @property
    def precision(self) -> str:
        """Storage precision tag, "f32" or "f64"."""
        return "f32" if self.data.dtype == np.float32 else "f64"

    def astype(self, precision: str) -> "LatentTensor":
        """Copy to the requested precision ("f32" or "f64")."""
        if precision not in ("f32", "f64"):
            raise InvalidInput(f"precision must be 'f32' or 'f64', got {precision!r}")
        dtype = np.float32 if precision == "f32" else np.float64
        if self.data.dtype == dtype:
            return self
        return LatentTensor(self.data.astype(dtype))


@dataclass(frozen=True)
class Spectrum:
    """Complex frequency-domain tensor, tagged with its transform domain.

    Always complex128 regardless of the source precision; "ortho" is the
    only supported normalization convention.
    """

    data: np.ndarray
    domain: Domain
    convention: str = "ortho"

    def __post_init__(self) -> None:
        a = self.data
        if not isinstance(a, np.ndarray):
            raise InvalidInput(f"spectrum data must be an ndarray, got {type(a).__name__}")
        if not np.issubdtype(a.dtype, np.complexfloating):
            raise InvalidInput(f"spectrum dtype must be complex, got {a.dtype}")
        if a.dtype != np.complex128:
            a = a.astype(np.complex128)
        _check_4d(a, "spectrum")
        if not np.all(np.isfinite(a)):
            raise InvalidInput("spectrum contains NaN or Inf")
        if not isinstance(self.domain, Domain):
            raise InvalidInput(f"domain must be a Domain, got {self.domain!r}")
        if self.convention != "ortho":
            raise InvalidInput(f"unsupported normalization {self.convention!r}")
        object.__setattr__(self, "data", _readonly(a))

    @property
    def shape(self) -> tuple[int, int, int, int]:
        return self.data.shape  # type: ignore[return-value]


@dataclass(frozen=True)
class PhaseMag:
    """Polar form of a spectrum: nonnegative magnitude and phase in (-pi, pi]."""

    magnitude: np.ndarray
    phase: np.ndarray
    domain: Domain

    def __post_init__(self) -> None:
        m, p = self.magnitude, self.phase
        if not isinstance(m, np.ndarray) or not isinstance(p, np.ndarray):
            raise InvalidInput("magnitude and phase must be ndarrays")
        m = np.asarray(m, dtype=np.float64)
        p = np.asarray(p, dtype=np.float64)
        if m.shape != p.shape:
            raise InvalidInput(f"magnitude shape {m.shape} != phase shape {p.shape}")
        _check_4d(m, "magnitude")
        if not (np.all(np.isfinite(m)) and np.all(np.isfinite(p))):
            raise InvalidInput("magnitude/phase contain NaN or Inf")
        if np.any(m < 0.0):
            raise InvalidInput("magnitude must be nonnegative")
        if np.any(p <= -np.pi) or np.any(p > np.pi):
            raise InvalidInput("phase must lie in (-pi, pi]")
        if not isinstance(self.domain, Domain):
            raise InvalidInput(f"domain must be a Domain, got {self.domain!r}")
        object.__setattr__(self, "magnitude", _readonly(m))
        object.__setattr__(self, "phase", _readonly(p))

    @property
    def shape(self) -> tuple[int, int, int, int]:
        return self.magnitude.shape  # type: ignore[return-value]


def energy(x: "LatentTensor | Spectrum | np.ndarray") -> float:
    """Total energy: the sum of squared element magnitudes.

    Accepts a LatentTensor, a Spectrum, or a bare real/complex ndarray.
    Accumulation runs in float64 over the C-order buffer with numpy's
    deterministic pairwise reduction, so the result is reproducible
    bit-for-bit. Non-finite input raises InvalidInput.
    """
    if isinstance(x, (LatentTensor, Spectrum)):
        a = x.data
    elif isinstance(x, np.ndarray):
        a = x
    else:
        raise InvalidInput(f"energy() takes a tensor, spectrum or ndarray, got {type(x).__name__}")
    if not np.all(np.isfinite(a)):
        raise InvalidInput("energy() input contains NaN or Inf")
    a = np.ascontiguousarray(a)
    if np.issubdtype(a.dtype, np.complexfloating):
        a = a.astype(np.complex128, copy=False)
        abs2 = a.real * a.real + a.imag * a.imag
    else:
        a = a.astype(np.float64, copy=False)
        abs2 = a * a
    return float(np.sum(abs2))


def decompose(s: Spectrum) -> PhaseMag:
    """Split a spectrum into magnitude and phase.

    Magnitude is |s| elementwise. Phase is atan2(Im, Re) folded into
    (-pi, pi], with zero-magnitude bins mapped to phase 0.0 exactly
    (atan2 on signed zeros would otherwise leak +/-pi there).
    """
    if not isinstance(s, Spectrum):
        raise InvalidInput(f"decompose() takes a Spectrum, got {type(s).__name__}")
    mag = np.abs(s.data)
    ph = np.arctan2(s.data.imag, s.data.real)
    ph = np.where(ph == -np.pi, np.pi, ph)
    ph = np.where(mag == 0.0, 0.0, ph)
    return PhaseMag(mag, ph, s.domain)


def recompose(pm: PhaseMag) -> Spectrum:
    """Rebuild the complex spectrum magnitude * exp(i * phase)."""
    if not isinstance(pm, PhaseMag):
        raise InvalidInput(f"recompose() takes a PhaseMag, got {type(pm).__name__}")
    data = pm.magnitude * np.exp(1j * pm.phase)
    return Spectrum(data, pm.domain)
