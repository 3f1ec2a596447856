"""Golden fixture generation.

Each case is a directory of five files: the two inputs, the config that
ties them together, and the oracle's answer with its energy ledger.
Everything is seeded, so regenerating the suite reproduces the same
bytes; that property is itself under test.

References are white noise draws. Structured references (ramps,
checkerboards) have roundoff-level spectra away from their support,
where the phase is numerically meaningless; two correct implementations
can then disagree at full magnitude, which makes such cases useless as
golden data.
"""

import json
from pathlib import Path

import numpy as np

from .oracle import conditioned_latent

# name, shape, config, noise seed, ref seed; the ref seed repeats the
# noise seed in the identity case on purpose
CASES = [
    ("identity_g1", (8, 4, 4, 2), {"domain": "temporal", "k": 2, "gamma": 1.0}, 100, 100),
    ("t_k2_g30", (8, 4, 4, 2), {"domain": "temporal", "k": 2, "gamma": 30.0}, 101, 201),
    ("t_k1_g4", (8, 6, 6, 2), {"domain": "temporal", "k": 1, "gamma": 4.0}, 102, 202),
    ("t_k3_g30", (12, 5, 3, 2), {"domain": "temporal", "k": 3, "gamma": 30.0}, 103, 203),
    ("t_k4_g4", (12, 4, 4, 1), {"domain": "temporal", "k": 4, "gamma": 4.0}, 104, 204),
    ("t_k5_g30", (16, 8, 8, 4), {"domain": "temporal", "k": 5, "gamma": 30.0}, 105, 205),
    ("t_k5_g1_mixed", (13, 4, 4, 2), {"domain": "temporal", "k": 5, "gamma": 1.0}, 106, 206),
    ("s_r005_g4", (4, 8, 8, 2), {"domain": "spatial", "ratio": 0.05, "gamma": 4.0}, 107, 207),
    ("s_r005_g30", (2, 16, 16, 1), {"domain": "spatial", "ratio": 0.05, "gamma": 30.0}, 108, 208),
    ("s_r025_g4_mixed", (3, 5, 7, 2), {"domain": "spatial", "ratio": 0.25, "gamma": 4.0}, 109, 209),
    ("s_r025_g30", (6, 9, 4, 2), {"domain": "spatial", "ratio": 0.25, "gamma": 30.0}, 110, 210),
    ("s_r025_g1", (4, 12, 6, 1), {"domain": "spatial", "ratio": 0.25, "gamma": 1.0}, 111, 211),
]


def draw(shape, seed):
    rng = np.random.Generator(np.random.PCG64(seed))
    return rng.standard_normal(shape)


def generate(outdir) -> list:
    """Write every case under outdir; returns the case names."""
    outdir = Path(outdir)
    names = []
    for name, shape, config, noise_seed, ref_seed in CASES:
        case_dir = outdir / name
        case_dir.mkdir(parents=True, exist_ok=True)
        noise = draw(shape, noise_seed)
        ref = draw(shape, ref_seed)
        expected, ledger = conditioned_latent(noise, ref, config)

        np.save(case_dir / "noise.npy", noise)
        np.save(case_dir / "ref.npy", ref)
        np.save(case_dir / "expected.npy", expected)
        stamp = dict(config)
        stamp["shape"] = list(shape)
        stamp["noise_seed"] = noise_seed
        stamp["ref_seed"] = ref_seed
        (case_dir / "config.json").write_text(
            json.dumps(stamp, indent=2, sort_keys=True) + "\n"
        )
        (case_dir / "ledger.json").write_text(
            json.dumps(ledger, indent=2, sort_keys=True) + "\n"
        )
        names.append(name)
    return names
