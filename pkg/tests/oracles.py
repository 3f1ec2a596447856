"""Independent reference implementations used to cross-check the package.

Everything here is written straight from definitions: transforms are
the O(N^2) sums evaluated bin by bin, band selections re-derive the
threshold logic, and the conditioning oracle walks the procedure with
explicit bookkeeping. No FFT code and no phinoise internals are used,
so agreement with the package is evidence, not tautology.
"""

import math

import numpy as np


def fsum_energy(a) -> float:
    """Exact (compensated) sum of squared magnitudes."""
    a = np.asarray(a)
    if np.iscomplexobj(a):
        parts = [float(v.real) ** 2 + float(v.imag) ** 2 for v in a.ravel()]
    else:
        parts = [float(v) ** 2 for v in a.ravel()]
    return math.fsum(parts)


def dft_axis(a: np.ndarray, axis: int, inverse: bool = False) -> np.ndarray:
    """Orthonormal DFT along one axis, one output bin at a time."""
    a = np.moveaxis(np.asarray(a, dtype=np.complex128), axis, 0)
    n = a.shape[0]
    sign = 2j if inverse else -2j
    idx = np.arange(n)
    scale = 1.0 / np.sqrt(n)
    out = np.empty_like(a)
    tail = (1,) * (a.ndim - 1)
    for f in range(n):
        twiddle = np.exp(sign * np.pi * f * idx / n).reshape((n,) + tail)
        out[f] = np.sum(a * twiddle, axis=0) * scale
    return np.moveaxis(out, 0, axis)


def dft_ref(x: np.ndarray, domain: str, inverse: bool = False) -> np.ndarray:
    """Definitional transform: axis 0 for temporal, axes 1 and 2 for spatial."""
    if domain == "temporal":
        return dft_axis(x, 0, inverse)
    if domain == "spatial":
        return dft_axis(dft_axis(x, 1, inverse), 2, inverse)
    raise ValueError(f"unknown domain {domain!r}")


def temporal_selected(t: int, k: int) -> np.ndarray:
    f = np.minimum(np.arange(t), t - np.arange(t))
    return f <= k


def radial_selected(w: int, h: int, ratio: float) -> np.ndarray:
    sx = np.minimum(np.arange(w), w - np.arange(w)).astype(np.int64)
    sy = np.minimum(np.arange(h), h - np.arange(h)).astype(np.int64)
    r2 = (sx[:, None] * h) ** 2 + (sy[None, :] * w) ** 2
    target = ratio * w * h - 1e-9
    chosen = None
    for threshold in np.sort(np.unique(r2)):
        if np.count_nonzero(r2 <= threshold) >= target:
            chosen = threshold
            break
    if chosen is None:
        chosen = r2.max()
    return r2 <= chosen


def selector_4d(shape, domain: str, k=None, ratio=None) -> np.ndarray:
    t, w, h, _ = shape
    if domain == "temporal":
        sel = temporal_selected(t, k)[:, None, None, None]
    else:
        sel = radial_selected(w, h, ratio)[None, :, :, None]
    return np.broadcast_to(sel, shape)


def phi_noise_ref(
    noise: np.ndarray,
    ref: np.ndarray,
    domain: str,
    k=None,
    ratio=None,
    gamma: float = 1.0,
):
    """Brute-force conditioning: definitional DFT, explicit swap, explicit beta.

    Returns (output array, ledger dict with e_total / e_low / e_high / beta).
    """
    z = dft_ref(noise, domain)
    v = dft_ref(ref, domain)
    sel = selector_4d(noise.shape, domain, k=k, ratio=ratio)

    phase = np.arctan2(v.imag, v.real)
    phase[np.abs(v) == 0.0] = 0.0
    swapped = np.where(sel, np.abs(z) * (np.cos(phase) + 1j * np.sin(phase)), z)

    abs2 = swapped.real**2 + swapped.imag**2
    e_low = float(np.sum(abs2[sel]))
    e_high = float(np.sum(abs2[~sel]))
    e_total = e_low + e_high
    if gamma == 1.0:
        beta = 1.0
    else:
        beta = math.sqrt((e_total - e_low / gamma**2) / e_high)
    scaled = np.where(sel, swapped / gamma, swapped * beta)

    out = dft_ref(scaled, domain, inverse=True)
    ledger = {"e_total": e_total, "e_low": e_low, "e_high": e_high, "beta": beta}
    return np.ascontiguousarray(out.real), ledger
