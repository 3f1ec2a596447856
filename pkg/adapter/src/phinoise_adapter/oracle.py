"""Brute-force conditioning oracle.

Reads the same NPY/JSON files the main tool exchanges and recomputes
the conditioned latent from first principles: definitional DFT, an
explicit per-bin phase swap, energies by direct summation, and the
compensation factor straight from its closed form. The output is the
golden value a fast implementation has to match.
"""

import json
import math
from pathlib import Path

import numpy as np

from .errors import FileError, NumericError, UsageError
from .refdft import dft

# selection keeps whole radial shells; the target count gets a hair of
# slack so ratios like 0.05 * 64 land on the intended shell
RATIO_SLACK = 1e-9


def temporal_selection(t: int, k: int) -> np.ndarray:
    """Boolean length-t vector of bins with signed frequency |f| <= k."""
    if not isinstance(k, int) or isinstance(k, bool):
        raise UsageError("k must be an integer")
    if t < 2:
        raise FileError("temporal conditioning needs at least 2 frames")
    if k < 1 or k > t // 2:
        raise UsageError(f"k={k} outside [1, {t // 2}] for t={t}")
    f = np.arange(t)
    signed = np.minimum(f, t - f)
    return signed <= k


def radial_selection(w: int, h: int, ratio: float) -> np.ndarray:
    """Boolean (w, h) grid covering the lowest whole radial shells.

    Shells are grouped by the integer key (sx*h)^2 + (sy*w)^2 with
    signed per-axis frequencies, i.e. by physical radius on a grid
    whose axes may differ in length. Shells are taken smallest-first
    until at least ratio * w * h bins are covered.
    """
    if not isinstance(ratio, float) or math.isnan(ratio) or not 0.0 < ratio <= 1.0:
        raise UsageError(f"ratio must be a float in (0, 1], got {ratio!r}")
    sx = np.minimum(np.arange(w), w - np.arange(w))
    sy = np.minimum(np.arange(h), h - np.arange(h))
    keys = (sx[:, None] * h) ** 2 + (sy[None, :] * w) ** 2
    target = ratio * w * h - RATIO_SLACK
    covered = 0
    chosen = []
    for key in sorted(set(keys.ravel().tolist())):
        chosen.append(key)
        covered += int((keys == key).sum())
        if covered >= target:
            break
    return np.isin(keys, chosen)


def expand_selection(selected: np.ndarray, shape: tuple, domain: str) -> np.ndarray:
    if domain == "temporal":
        return np.broadcast_to(selected[:, None, None, None], shape)
    return np.broadcast_to(selected[None, :, :, None], shape)


def conditioned_latent(noise: np.ndarray, ref: np.ndarray, config: dict):
    """Compute z-phi and its energy ledger. Returns (array, ledger dict)."""
    domain = config["domain"]
    gamma = float(config["gamma"])
    if gamma < 1.0 or math.isnan(gamma):
        raise UsageError(f"gamma must be >= 1, got {gamma}")
    if noise.shape != ref.shape:
        raise FileError(f"shape mismatch: noise {noise.shape} vs ref {ref.shape}")

    t, w, h, _ = noise.shape
    if domain == "temporal":
        selected = temporal_selection(t, config["k"])
    elif domain == "spatial":
        selected = radial_selection(w, h, float(config["ratio"]))
    else:
        raise UsageError(f"domain must be temporal or spatial, got {domain!r}")
    sel = expand_selection(selected, noise.shape, domain)

    z = dft(noise, domain)
    v = dft(ref, domain)

    # phase swap, spelled out bin by bin: keep |z|, take ref's angle
    mag = np.sqrt(z.real**2 + z.imag**2)
    phase = np.arctan2(v.imag, v.real)
    phase = np.where(np.abs(v) == 0.0, 0.0, phase)
    swapped = np.where(sel, mag * (np.cos(phase) + 1j * np.sin(phase)), z)

    abs2 = swapped.real**2 + swapped.imag**2
    e_total = float(np.sum(abs2))
    e_low = float(np.sum(abs2[sel]))
    e_high = float(np.sum(abs2[~sel]))
    if e_high <= 0.0:
        raise NumericError("masked band holds all the energy; beta is undefined")
    beta = math.sqrt((e_total - e_low / gamma**2) / e_high)

    balanced = np.where(sel, swapped / gamma, swapped * beta)
    out = dft(balanced, domain, inverse=True)

    resid = float(np.max(np.abs(out.imag)))
    scale = float(np.max(np.abs(balanced)))
    if resid > 1e-9 * scale:
        raise NumericError(
            f"imaginary residual {resid:.3e} above 1e-9 * {scale:.3e}; "
            "reference phases are not conjugate-consistent"
        )
    ledger = {"e_total": e_total, "e_low": e_low, "e_high": e_high, "beta": beta}
    return np.ascontiguousarray(out.real), ledger


def load_array(path) -> np.ndarray:
    try:
        a = np.load(path)
    except OSError as err:
        raise FileError(f"cannot read {path}: {err}") from err
    except ValueError as err:
        raise FileError(f"{path} is not a readable array container: {err}") from err
    if a.ndim != 4:
        raise FileError(f"{path}: expected a 4-D latent, got shape {a.shape}")
    if a.dtype not in (np.float32, np.float64):
        raise FileError(f"{path}: expected float32/float64 data, got {a.dtype}")
    if not np.isfinite(a).all():
        raise FileError(f"{path}: array contains non-finite values")
    return np.ascontiguousarray(a, dtype=np.float64)


def load_config(path) -> dict:
    try:
        raw = Path(path).read_text()
    except OSError as err:
        raise FileError(f"cannot read {path}: {err}") from err
    try:
        config = json.loads(raw)
    except json.JSONDecodeError as err:
        raise FileError(f"{path} is not valid JSON: {err}") from err
    if not isinstance(config, dict) or "domain" not in config or "gamma" not in config:
        raise UsageError(f"{path} must carry at least domain and gamma")
    domain = config["domain"]
    if domain == "temporal" and "k" not in config:
        raise UsageError("temporal config needs k")
    if domain == "spatial" and "ratio" not in config:
        raise UsageError("spatial config needs ratio")
    return config


def oracle_phi_noise(noise_path, ref_path, config_path, out_path, ledger_path) -> dict:
    """File-level entry point: read the trio, write z-phi and the ledger."""
    config = load_config(config_path)
    noise = load_array(noise_path)
    ref = load_array(ref_path)
    out, ledger = conditioned_latent(noise, ref, config)
    try:
        np.save(out_path, out)
        Path(ledger_path).write_text(json.dumps(ledger, indent=2, sort_keys=True) + "\n")
    except OSError as err:
        raise FileError(f"cannot write results: {err}") from err
    return ledger
