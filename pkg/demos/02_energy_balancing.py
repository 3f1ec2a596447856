"""Why the balancing step exists.

Attenuating the masked band by 1/gamma alone bleeds energy out of the
tensor; diffusion models are calibrated for unit-variance input, so the
lost energy has to come back. The balancing mask scales the unmasked
band by beta, chosen in closed form so the books balance exactly.
"""

import numpy as np

from phinoise import (
    Domain,
    apply_energy_balance,
    dft,
    energy,
    idft,
    mask_for,
    sample_noise,
    substitute_phase,
)
from phinoise.pipeline import ConditioningConfig


def main():
    shape = (16, 8, 8, 2)
    config = ConditioningConfig(domain=Domain.TEMPORAL, gamma=30.0, k=3)
    noise = sample_noise(shape, seed=0)
    ref = sample_noise(shape, seed=1)

    mask = mask_for(config, shape)
    print("mask: %d of %d temporal bins (%.1f%%)"
          % (mask.resolved_count, shape[0], 100 * mask.fraction))

    swapped = substitute_phase(dft(noise, config.domain), dft(ref, config.domain), mask)
    e = energy(noise)
    sel = np.broadcast_to(mask.axis_selector(), shape)
    e_low = float(np.sum(np.abs(swapped.data[sel]) ** 2))
    print("total energy %.3f, masked band holds %.3f (%.1f%%)" % (e, e_low, 100 * e_low / e))

    # naive attenuation: divide the masked band, touch nothing else
    naive = swapped.data.copy()
    naive[sel] /= config.gamma
    ratio = float(np.sum(np.abs(naive) ** 2)) / e
    predicted = 1.0 - (e_low / e) * (1.0 - 1.0 / config.gamma**2)
    print("naive energy ratio: %.6f (analytic %.6f) -- energy collapsed" % (ratio, predicted))

    # balanced: same attenuation, but beta lifts the unmasked band
    balanced, params = apply_energy_balance(swapped, mask, config.gamma)
    out = idft(balanced)
    print("beta = %.6f" % params.beta)
    print("balanced energy ratio: %.12f" % (energy(out) / e))
    print("conservation residual: %.3e" % abs(params.e_low / config.gamma**2
                                              + params.beta**2 * params.e_high - params.e_total))

    # gamma = 1 is the identity edge: nothing attenuated, beta is exactly 1
    flat, p1 = apply_energy_balance(swapped, mask, 1.0)
    print("gamma=1: beta = %s, spectrum untouched: %s"
          % (p1.beta, bool(np.array_equal(flat.data, swapped.data))))


if __name__ == "__main__":
    main()
