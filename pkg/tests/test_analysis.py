import json

import numpy as np
import pytest

from phinoise import (
    DegenerateSpectrum,
    Domain,
    InvalidInput,
    LatentTensor,
    analyze_latent,
    band_energy_profile,
    dft,
    energy,
    gen_static,
    phase_kl,
    phi_noise,
    sample_noise,
    temporal_mask,
    whiteness_report,
)
from phinoise.pipeline import ConditioningConfig


class TestPhaseKl:
    def test_identical_inputs_give_exact_zero(self):
        x = sample_noise((8, 4, 4, 2), seed=5)
        assert phase_kl(x, x, Domain.TEMPORAL) == 0.0
        assert phase_kl(x, x, Domain.SPATIAL, bins=32) == 0.0

    def test_too_few_bins_rejected(self):
        x = sample_noise((4, 4, 4, 1), seed=0)
        with pytest.raises(InvalidInput):
            phase_kl(x, x, Domain.TEMPORAL, bins=1)

    def test_all_zero_input_rejected(self):
        x = sample_noise((4, 4, 4, 1), seed=0)
        z = type(x)(np.zeros((4, 4, 4, 1)))
        with pytest.raises(DegenerateSpectrum):
            phase_kl(z, x, Domain.TEMPORAL)
        with pytest.raises(DegenerateSpectrum):
            phase_kl(x, z, Domain.TEMPORAL)

    def test_two_white_draws_are_close(self):
        ok = 0
        for seed in range(100):
            a = sample_noise((8, 8, 16, 8), seed=seed)
            b = sample_noise((8, 8, 16, 8), seed=20_000 + seed)
            if phase_kl(a, b, Domain.TEMPORAL, bins=64) < 0.02:
                ok += 1
        assert ok >= 95

    def test_concentrated_vs_white_is_large(self):
        # a centered impulse train collapses its phase histogram into the
        # two bins holding 0 and pi; the white baseline also has mass
        # spikes there (self-conjugate bins of any real field are purely
        # real), which softens the divergence below the log(bins) ceiling
        # but keeps it orders of magnitude above the white-vs-white level
        data = np.zeros((8, 8, 8, 2))
        data[:, 4, 4, :] = 1.0
        delta = LatentTensor(data)
        white = sample_noise((8, 8, 8, 2), seed=1)
        kl = phase_kl(delta, white, Domain.SPATIAL, bins=64)
        assert 1.5 <= kl <= np.log(64) + 0.05

    def test_mask_restriction(self):
        a = sample_noise((8, 4, 4, 2), seed=3)
        b = sample_noise((8, 4, 4, 2), seed=4)
        m = temporal_mask(8, 2)
        kl_masked = phase_kl(a, b, Domain.TEMPORAL, mask=m)
        kl_full = phase_kl(a, b, Domain.TEMPORAL)
        assert kl_masked != kl_full  # restriction actually changes the sample
        out, params = phi_noise(a, b, ConditioningConfig(domain=Domain.TEMPORAL, gamma=30.0, k=2))
        assert phase_kl(out, b, Domain.TEMPORAL, mask=params.mask) < 0.02


class TestBandEnergyProfile:
    def test_zero_input_gives_zero_bands(self):
        x = sample_noise((8, 4, 4, 2), seed=0)
        z = type(x)(np.zeros((8, 4, 4, 2)))
        bands = band_energy_profile(z, Domain.TEMPORAL)
        assert all(b.mean_energy == 0.0 for b in bands)

    def test_white_noise_bands_flat_at_one(self):
        n_bands = 4
        sums = np.zeros(n_bands)
        sq = np.zeros(n_bands)
        trials = 200
        for seed in range(trials):
            x = sample_noise((8, 8, 8, 2), seed=seed)
            vals = np.array(
                [b.mean_energy for b in band_energy_profile(x, Domain.TEMPORAL, n_bands=n_bands)]
            )
            sums += vals
            sq += vals**2
        mean = sums / trials
        se = np.sqrt((sq / trials - mean**2) / (trials - 1))
        assert np.all(np.abs(mean - 1.0) <= 5.0 * se)

    def test_weighted_band_sum_recovers_energy(self):
        for domain in (Domain.TEMPORAL, Domain.SPATIAL):
            x = sample_noise((8, 6, 6, 2), seed=9)
            bands = band_energy_profile(x, domain, n_bands=3)
            total = sum(b.mean_energy * b.n_elements for b in bands)
            spec_energy = energy(dft(x, domain))
            assert abs(total - spec_energy) <= 1e-9 * spec_energy

    def test_band_element_counts(self):
        x = sample_noise((8, 4, 4, 2), seed=1)
        bands = band_energy_profile(x, Domain.TEMPORAL, n_bands=4)
        # t=8 signed magnitudes 0..4 split into 4 bands: {0}, {1}, {2}, {3,4}
        assert [b.n_elements for b in bands] == [32, 64, 64, 96]

    def test_single_band_profile(self):
        x = sample_noise((8, 4, 4, 2), seed=2)
        bands = band_energy_profile(x, Domain.SPATIAL, n_bands=1)
        assert len(bands) == 1
        spec_energy = energy(dft(x, Domain.SPATIAL))
        assert abs(bands[0].mean_energy * bands[0].n_elements - spec_energy) <= 1e-9 * spec_energy

    def test_empty_bands_labelled(self):
        x = sample_noise((2, 4, 4, 1), seed=0)
        bands = band_energy_profile(x, Domain.TEMPORAL, n_bands=8)
        # only |f| in {0, 1} exist, the rest of the grid is empty
        assert sum(1 for b in bands if b.n_elements == 0) == 6
        assert all(b.label == "(empty)" for b in bands if b.n_elements == 0)
        assert all(b.mean_energy == 0.0 for b in bands if b.n_elements == 0)


class TestWhitenessReport:
    def test_white_noise_passes(self):
        ok = 0
        for seed in range(100):
            x = sample_noise((8, 8, 8, 2), seed=seed)
            if whiteness_report(x, Domain.TEMPORAL).verdict == "PASS":
                ok += 1
        assert ok >= 99

    def test_constant_input_fails_variance(self):
        x = sample_noise((8, 8, 8, 2), seed=0)
        ones = type(x)(np.ones((8, 8, 8, 2)))
        report = whiteness_report(ones, Domain.TEMPORAL)
        assert report.verdict == "FAIL"
        assert report.checks["variance"] is False

    def test_balanced_output_needs_divide_out(self):
        noise = sample_noise((8, 8, 8, 2), seed=50)
        ref = sample_noise((8, 8, 8, 2), seed=51)
        out, params = phi_noise(
            noise, ref, ConditioningConfig(domain=Domain.TEMPORAL, gamma=30.0, k=2)
        )
        raw = whiteness_report(out, Domain.TEMPORAL)
        divided = whiteness_report(out, Domain.TEMPORAL, balance=params)
        assert raw.checks["spectral_flatness"] is False
        assert divided.checks["spectral_flatness"] is True

    def test_small_sample_rejected(self):
        x = sample_noise((4, 2, 2, 2), seed=0)
        with pytest.raises(InvalidInput):
            whiteness_report(x, Domain.TEMPORAL)

    def test_report_round_trips_through_json(self):
        x = sample_noise((8, 8, 8, 2), seed=7)
        report = whiteness_report(x, Domain.TEMPORAL)
        blob = json.loads(json.dumps(report.to_dict()))
        assert set(blob) == {
            "n",
            "mean_z",
            "variance_z",
            "kurtosis_z",
            "flatness_z",
            "checks",
            "verdict",
        }
        assert blob["verdict"] in ("PASS", "FAIL")


class TestAnalyzeLatent:
    def test_full_report_schema(self):
        noise = sample_noise((8, 8, 8, 2), seed=60)
        ref = sample_noise((8, 8, 8, 2), seed=61)
        config = ConditioningConfig(domain=Domain.TEMPORAL, gamma=30.0, k=2)
        out, params = phi_noise(noise, ref, config)
        report = analyze_latent(
            out,
            Domain.TEMPORAL,
            ref=ref,
            mask=params.mask,
            balance=params,
            config=config.to_dict(),
        )
        blob = json.loads(json.dumps(report.to_dict()))
        assert set(blob) == {
            "version",
            "config",
            "energies",
            "beta",
            "phase_kl",
            "whiteness",
            "band_profile",
        }
        assert blob["beta"] == pytest.approx(params.beta)
        assert blob["phase_kl"] < 0.02
        assert blob["whiteness"]["verdict"] == "PASS"
        assert len(blob["band_profile"]) == 4
        e = blob["energies"]
        assert e["output"] == pytest.approx(energy(out))
        assert e["low"] + e["high"] == pytest.approx(e["input"])
        assert e["output"] == pytest.approx(e["input"])

    def test_report_without_reference_omits_kl(self):
        x = sample_noise((8, 8, 8, 2), seed=62)
        blob = analyze_latent(x, Domain.TEMPORAL).to_dict()
        assert "phase_kl" not in blob
        assert blob["beta"] is None

    def test_static_pattern_profile_is_concentrated(self):
        x = gen_static((4, 8, 8, 2), "checker")
        bands = band_energy_profile(x, Domain.SPATIAL, n_bands=4)
        nonzero = [b for b in bands if b.mean_energy > 0]
        assert len(nonzero) == 1
