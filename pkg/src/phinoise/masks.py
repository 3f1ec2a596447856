"""Frequency-band masks picking the bins whose phase gets substituted.

Masks are symmetric under frequency negation and always include the DC
bin, so any spectrum edited "inside the mask" stays Hermitian-symmetric
and inverts to a real tensor.

Temporal masks keep the signed band |f| <= k. Spatial masks keep whole
radial shells of the 2-D frequency plane, lowest radius first, until at
least ratio * w * h bins are covered; a shell is never split, so the
resolved count can exceed the requested fraction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Domain
from .errors import InvalidCutoff, InvalidInput

__all__ = ["FrequencyMask", "temporal_mask", "radial_mask"]


def _signed_magnitudes(n: int) -> np.ndarray:
    """|f| for each FFT bin index of an n-point transform: min(i, n - i)."""
    idx = np.arange(n)
    return np.minimum(idx, n - idx)


def _radial_keys(w: int, h: int) -> np.ndarray:
    """Integer radius keys (sx * h)^2 + (sy * w)^2 per (w, h) frequency bin.

    Equal to (radius * w * h)^2 with radius = sqrt((sx/w)^2 + (sy/h)^2),
    kept integral so equal radii compare exactly equal.
    """
    sx = _signed_magnitudes(w).astype(np.int64)
    sy = _signed_magnitudes(h).astype(np.int64)
    return (sx[:, None] * h) ** 2 + (sy[None, :] * w) ** 2


@dataclass(frozen=True)
class FrequencyMask:
    """Boolean selection over frequency bins of one transform domain.

    selected has shape (t,) for temporal masks and (w, h) for spatial
    ones. cutoff is the requested k (temporal) or ratio (spatial);
    resolved_count is how many bins the mask actually covers.
    """

    domain: Domain
    selected: np.ndarray
    k: int | None
    ratio: float | None
    resolved_count: int

    def __post_init__(self) -> None:
        sel = self.selected
        if not isinstance(sel, np.ndarray) or sel.dtype != np.bool_:
            raise InvalidInput("selected must be a boolean ndarray")
        if self.domain is Domain.TEMPORAL:
            if sel.ndim != 1:
                raise InvalidInput(f"temporal mask must be 1-D, got {sel.ndim}-D")
            if self.k is None or self.ratio is not None:
                raise InvalidInput("temporal masks carry k, not ratio")
            n = sel.shape[0]
            mirrored = sel[(-np.arange(n)) % n]
        elif self.domain is Domain.SPATIAL:
            if sel.ndim != 2:
                raise InvalidInput(f"spatial mask must be 2-D, got {sel.ndim}-D")
            if self.ratio is None or self.k is not None:
                raise InvalidInput("spatial masks carry ratio, not k")
            w, h = sel.shape
            mirrored = sel[np.ix_((-np.arange(w)) % w, (-np.arange(h)) % h)]
        else:
            raise InvalidInput(f"domain must be a Domain, got {self.domain!r}")
        if not np.array_equal(sel, mirrored):
            raise InvalidInput("mask must be symmetric under frequency negation")
        if not bool(sel.flat[0]):
            raise InvalidInput("mask must include the DC bin")
        if int(sel.sum()) != self.resolved_count or self.resolved_count < 1:
            raise InvalidInput("resolved_count does not match the selection")
        s = sel
        if s.flags.writeable:
            s = s.view()
            s.flags.writeable = False
        object.__setattr__(self, "selected", s)

    @property
    def size(self) -> int:
        """Number of bins in the masked domain (t, or w * h)."""
        return int(self.selected.size)

    @property
    def fraction(self) -> float:
        """Fraction of bins selected."""
        return self.resolved_count / self.size

    def axis_selector(self) -> np.ndarray:
        """Boolean view broadcastable against a (t, w, h, d) spectrum."""
        if self.domain is Domain.TEMPORAL:
            return self.selected[:, None, None, None]
        return self.selected[None, :, :, None]

    def cutoff_label(self) -> str:
        """Human-readable cutoff, "k=3" or "ratio=0.05"."""
        if self.domain is Domain.TEMPORAL:
            return f"k={self.k}"
        return f"ratio={self.ratio:g}"


def temporal_mask(t: int, k: int) -> FrequencyMask:
    """Mask of temporal bins with |f| <= k for a length-t transform.

    Valid cutoffs are 1 <= k <= t // 2; anything else raises
    InvalidCutoff. The selection covers indices {0, 1..k, t-k..t-1},
    which is 2k + 1 bins, or 2k when k equals t/2 for even t (the
    Nyquist bin is its own mirror).
    """
    if not isinstance(t, (int, np.integer)) or isinstance(t, bool) or t < 2:
        raise InvalidInput(f"t must be an integer >= 2, got {t!r}")
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool):
        raise InvalidInput(f"k must be an integer, got {k!r}")
    if k < 1 or k > t // 2:
        raise InvalidCutoff(f"k must satisfy 1 <= k <= t // 2 = {t // 2}, got {k}")
    sel = _signed_magnitudes(int(t)) <= int(k)
    return FrequencyMask(
        domain=Domain.TEMPORAL,
        selected=sel,
        k=int(k),
        ratio=None,
        resolved_count=int(sel.sum()),
    )


def radial_mask(w: int, h: int, ratio: float) -> FrequencyMask:
    """Mask of the lowest radial shells covering at least ratio * w * h bins.

    The radius of bin (i, j) with signed frequencies (sx, sy) is
    sqrt((sx / w)^2 + (sy / h)^2). Shells are ranked by the exact
    integer key (sx * h)^2 + (sy * w)^2, which equals (radius * w * h)^2,
    so bins at mathematically equal radii always land in the same shell
    regardless of float rounding. Whole shells are taken lowest-first
    until the cumulative count reaches the target; valid ratios are
    0 < ratio <= 1.
    """
    for name, n in (("w", w), ("h", h)):
        if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
            raise InvalidInput(f"{name} must be an integer >= 1, got {n!r}")
    try:
        ratio_f = float(ratio)
    except (TypeError, ValueError):
        raise InvalidInput(f"ratio must be a number, got {ratio!r}") from None
    if not np.isfinite(ratio_f) or not 0.0 < ratio_f <= 1.0:
        raise InvalidCutoff(f"ratio must lie in (0, 1], got {ratio!r}")

    w, h = int(w), int(h)
    key = _radial_keys(w, h)

    # smallest shell radius whose cumulative bin count reaches the target;
    # the 1e-9 slack absorbs float products like 0.25 * 16 = 4.0000000000000004
    target = ratio_f * w * h - 1e-9
    shells, counts = np.unique(key, return_counts=True)
    cumulative = np.cumsum(counts)
    stop = int(np.searchsorted(cumulative, target, side="left"))
    threshold = shells[min(stop, len(shells) - 1)]
    sel = key <= threshold

    return FrequencyMask(
        domain=Domain.SPATIAL,
        selected=sel,
        k=None,
        ratio=ratio_f,
        resolved_count=int(sel.sum()),
    )
