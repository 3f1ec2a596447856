"""Take a latent apart into magnitude and phase, and put it back together.

The phase half is where structure lives: keep a spectrum's magnitudes,
swap its phases for another tensor's, and the result looks like the
phase donor, not the magnitude donor.
"""

import numpy as np

from phinoise import (
    Domain,
    LinearTrajectory,
    decompose,
    dft,
    energy,
    gen_moving_blob,
    idft,
    recompose,
    sample_noise,
)


def main():
    shape = (8, 16, 16, 1)
    blob = gen_moving_blob(shape, LinearTrajectory(dx=1.0, dy=0.0))
    noise = sample_noise(shape, seed=7)

    print("shape:", shape)
    print("blob energy:  %.6f" % energy(blob))
    print("noise energy: %.6f" % energy(noise))

    # orthonormal transform: energy is identical on both sides
    spec = dft(blob, Domain.TEMPORAL)
    print("spectrum energy: %.6f (Parseval, same number)" % energy(spec))

    pm = decompose(spec)
    print("magnitude range: [%.3e, %.3e]" % (pm.magnitude.min(), pm.magnitude.max()))
    print("phase range:     [%.3f, %.3f] rad" % (pm.phase.min(), pm.phase.max()))

    # recompose + inverse returns the original samples
    back = idft(recompose(pm))
    print("round-trip max error: %.3e" % np.max(np.abs(back.data - blob.data)))

    # now graft the blob's phases onto the noise's magnitudes
    noise_pm = decompose(dft(noise, Domain.TEMPORAL))
    hybrid = idft(recompose(type(pm)(noise_pm.magnitude, pm.phase, pm.domain)))

    # correlation against the blob tells us who won
    def corr(a, b):
        a = a.data.ravel() - a.data.mean()
        b = b.data.ravel() - b.data.mean()
        return float(np.dot(a, b) / np.sqrt(np.dot(a, a) * np.dot(b, b)))

    print("corr(hybrid, blob):  %+.3f   <- phase donor" % corr(hybrid, blob))
    print("corr(hybrid, noise): %+.3f   <- magnitude donor" % corr(hybrid, noise))


if __name__ == "__main__":
    main()
