"""Synthetic reference latents with known spectral content.

Handy for exercising the conditioning pipeline against signals whose
spectra are predictable: a Gaussian blob moving on a known trajectory
concentrates temporal energy at the trajectory's frequency, a checker
pattern puts all spatial energy in the Nyquist-pair bin, a gradient is
mostly spatial DC.

All generators return float64 tensors with identical channels, built
purely from their parameters, so outputs are reproducible bit-for-bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import LatentTensor
from .errors import InvalidInput, InvalidTrajectory

__all__ = [
    "LinearTrajectory",
    "OscillatingTrajectory",
    "gen_moving_blob",
    "gen_static",
]


@dataclass(frozen=True)
class LinearTrajectory:
    """Constant per-frame displacement (dx, dy) in pixels."""

    dx: float
    dy: float

    def position(self, frame: int, start: tuple[float, float]) -> tuple[float, float]:
        return start[0] + frame * self.dx, start[1] + frame * self.dy


@dataclass(frozen=True)
class OscillatingTrajectory:
    """Sinusoidal sweep along y: amplitude * sin(2 pi frame / period)."""

    amplitude: float
    period: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.period) or self.period <= 0:
            raise InvalidInput(f"period must be positive, got {self.period!r}")
        if not math.isfinite(self.amplitude) or self.amplitude < 0:
            raise InvalidInput(f"amplitude must be >= 0, got {self.amplitude!r}")

    def position(self, frame: int, start: tuple[float, float]) -> tuple[float, float]:
        return start[0], start[1] + self.amplitude * math.sin(2.0 * math.pi * frame / self.period)


def _check_shape(shape) -> tuple[int, int, int, int]:
    shape = tuple(shape)
    if len(shape) != 4 or not all(
        isinstance(n, (int, np.integer)) and not isinstance(n, bool) and n >= 1 for n in shape
    ):
        raise InvalidInput(f"shape must be 4 positive integers, got {shape!r}")
    return tuple(int(n) for n in shape)  # type: ignore[return-value]


def gen_moving_blob(
    shape: tuple[int, int, int, int],
    trajectory: "LinearTrajectory | OscillatingTrajectory",
    blob_sigma: float = 1.5,
    start: tuple[float, float] | None = None,
    wrap: bool = True,
) -> LatentTensor:
    """Gaussian bump of width blob_sigma tracing a trajectory over t frames.

    With wrap=True (default) the blob lives on a torus, so distances and
    positions wrap around the frame edges; integer displacements then
    shift frames cyclically without changing their values. With
    wrap=False a center leaving [0, w-1] x [0, h-1] raises
    InvalidTrajectory. Channels are identical copies.
    """
    t, w, h, d = _check_shape(shape)
    if not isinstance(trajectory, (LinearTrajectory, OscillatingTrajectory)):
        raise InvalidInput(f"unsupported trajectory {type(trajectory).__name__}")
    if not math.isfinite(blob_sigma) or blob_sigma <= 0:
        raise InvalidInput(f"blob_sigma must be positive, got {blob_sigma!r}")
    if start is None:
        start = ((w - 1) / 2.0, (h - 1) / 2.0)
    cx0, cy0 = float(start[0]), float(start[1])

    xs = np.arange(w, dtype=np.float64)
    ys = np.arange(h, dtype=np.float64)
    frames = np.empty((t, w, h), dtype=np.float64)
    for f in range(t):
        cx, cy = trajectory.position(f, (cx0, cy0))
        if wrap:
            # shortest signed distance on the torus
            ddx = (xs - cx + w / 2.0) % w - w / 2.0
            ddy = (ys - cy + h / 2.0) % h - h / 2.0
        else:
            if not (0.0 <= cx <= w - 1 and 0.0 <= cy <= h - 1):
                raise InvalidTrajectory(
                    f"blob center ({cx:g}, {cy:g}) leaves the frame at t={f} and wrap is off"
                )
            ddx = xs - cx
            ddy = ys - cy
        frames[f] = np.exp(-(ddx[:, None] ** 2 + ddy[None, :] ** 2) / (2.0 * blob_sigma**2))

    data = np.repeat(frames[:, :, :, None], d, axis=3)
    return LatentTensor(np.ascontiguousarray(data))


def gen_static(shape: tuple[int, int, int, int], pattern: str) -> LatentTensor:
    """Time-constant test pattern, identical in every frame and channel.

    "checker" alternates +1/-1 on pixel parity, which concentrates all
    spatial energy in the Nyquist-pair bin (w/2, h/2) for even extents.
    "gradient" ramps linearly from 0 to 1 along x and y, which is
    dominated by the spatial DC bin.
    """
    t, w, h, d = _check_shape(shape)
    if pattern == "checker":
        xs = np.arange(w)[:, None]
        ys = np.arange(h)[None, :]
        frame = np.where((xs + ys) % 2 == 0, 1.0, -1.0)
    elif pattern == "gradient":
        gx = np.zeros(w) if w == 1 else np.arange(w) / (w - 1)
        gy = np.zeros(h) if h == 1 else np.arange(h) / (h - 1)
        frame = (gx[:, None] + gy[None, :]) / 2.0
    else:
        raise InvalidInput(f"unknown pattern {pattern!r}; use 'checker' or 'gradient'")
    data = np.broadcast_to(frame[None, :, :, None], (t, w, h, d))
    return LatentTensor(np.ascontiguousarray(data).astype(np.float64))
