"""Textbook DFT, straight from the definition.

X[f] = (1/sqrt(n)) * sum_j x[j] * exp(-2*pi*i*f*j/n), and the inverse
flips the sign. No FFT, no recursion: each transform is one explicit
matrix built from the definition and applied with einsum. O(n^2) per
axis is the point; this code exists to check a fast implementation, so
it must not share any of its structure.
"""

import numpy as np


def dft_matrix(n: int, inverse: bool = False) -> np.ndarray:
    """The n x n orthonormal DFT matrix (or its inverse)."""
    if n < 1:
        raise ValueError("matrix order must be positive")
    j = np.arange(n)
    sign = 2.0j if inverse else -2.0j
    return np.exp(sign * np.pi * np.outer(j, j) / n) / np.sqrt(n)


def temporal_dft(x: np.ndarray, inverse: bool = False) -> np.ndarray:
    """Transform axis 0 of a (t, w, h, d) array."""
    a = np.asarray(x, dtype=np.complex128)
    m = dft_matrix(a.shape[0], inverse)
    return np.einsum("ft,twhd->fwhd", m, a)


def spatial_dft(x: np.ndarray, inverse: bool = False) -> np.ndarray:
    """Transform axes 1 and 2 of a (t, w, h, d) array."""
    a = np.asarray(x, dtype=np.complex128)
    mw = dft_matrix(a.shape[1], inverse)
    mh = dft_matrix(a.shape[2], inverse)
    return np.einsum("uw,vh,twhd->tuvd", mw, mh, a)


def dft(x: np.ndarray, domain: str, inverse: bool = False) -> np.ndarray:
    if domain == "temporal":
        return temporal_dft(x, inverse)
    if domain == "spatial":
        return spatial_dft(x, inverse)
    raise ValueError(f"unknown domain {domain!r}")
