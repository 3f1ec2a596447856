"""Independent oracle for phi-noise conditioning.

Everything here is deliberately slow and literal: DFTs from the
definition, energies by direct summation, no code shared with the tool
under test. The package regenerates the golden fixture corpus, replays
it through the main CLI, and stubs the latent-injection step of a
diffusion pipeline.
"""

from .errors import AdapterError, FileError, NumericError, UsageError
from .fixtures import CASES, generate
from .inject import inject_latent
from .oracle import conditioned_latent, oracle_phi_noise

__version__ = "0.1.0"

__all__ = [
    "AdapterError",
    "CASES",
    "FileError",
    "NumericError",
    "UsageError",
    "conditioned_latent",
    "generate",
    "inject_latent",
    "oracle_phi_noise",
    "__version__",
]
