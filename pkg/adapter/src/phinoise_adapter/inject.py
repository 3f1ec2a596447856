"""Latent injection against a pipeline config.

Only the stub pipeline is wired up here: it validates that a
conditioned latent agrees with the shape the pipeline declares, which
is the whole contract an injection site enforces before a denoising
loop would consume the tensor. Running against a real diffusion
pipeline needs that pipeline's weights and scheduler on disk; swap
"stub" for the real mode string and point latent_shape at the model's
latent geometry, then hand the loaded array to the sampler in place of
its own initial draw. That path is deliberately not exercised by the
test suite.
"""

import json

from .errors import FileError, UsageError
from .oracle import load_array


def load_pipeline_config(path) -> dict:
    try:
        with open(path, "r") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise FileError(f"cannot read pipeline config {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FileError(f"pipeline config {path!r} is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise FileError(f"pipeline config {path!r} must be a JSON object")
    return cfg


def inject_latent(config_path, noise_path) -> int:
    """Returns 0 when the latent fits the pipeline, 1 when it does not."""
    cfg = load_pipeline_config(config_path)
    mode = cfg.get("mode")
    if mode != "stub":
        raise UsageError(
            f"unsupported pipeline mode {mode!r}: only stub mode is wired up here"
        )
    declared = cfg.get("latent_shape")
    if (
        not isinstance(declared, list)
        or len(declared) != 4
        or not all(isinstance(n, int) and n > 0 for n in declared)
    ):
        raise UsageError("latent_shape must be a list of four positive integers")

    latent = load_array(noise_path)
    if list(latent.shape) != declared:
        print(
            f"latent shape {list(latent.shape)} does not match "
            f"pipeline latent_shape {declared}"
        )
        return 1
    print(f"latent {list(latent.shape)} accepted by stub pipeline")
    return 0
