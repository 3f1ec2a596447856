"""Command line interface.

Subcommands:

* condition: sample (or load) input noise, condition it on a reference
  latent's low-frequency phases, write the result and an optional JSON
  report.
* analyze: whiteness and band-energy diagnostics of a latent, plus the
  phase KL divergence against an optional second latent.
* sweep: run condition over a parameter grid sharing one noise draw,
  writing a combined report.
* synth: generate reference latents with known spectral content.

Exit codes: 0 success, 2 invalid arguments or input data, 3 malformed
or unsupported files, 4 numeric contract violations (broken spectral
symmetry, degenerate spectra).
"""

from __future__ import annotations

import argparse
import sys

from ._version import __version__
from .analysis import analyze_latent
from .core import Domain, energy
from .errors import (
    DegenerateSpectrum,
    FormatError,
    InvalidCutoff,
    InvalidInput,
    InvalidTrajectory,
    IoError,
    PhinoiseError,
    ShapeError,
    SymmetryViolation,
    UnsupportedLayout,
)
from .npyio import read_npy, write_json, write_npy
from .pipeline import ConditioningConfig, mask_for, phi_noise, sample_noise
from .synth import LinearTrajectory, OscillatingTrajectory, gen_moving_blob, gen_static

_FILE_ERRORS = (FormatError, UnsupportedLayout, ShapeError, IoError)
_NUMERIC_ERRORS = (SymmetryViolation, DegenerateSpectrum)
_USAGE_ERRORS = (InvalidInput, InvalidCutoff, InvalidTrajectory)

_DEFAULTS = {
    Domain.TEMPORAL: {"gamma": 30.0, "k": 3},
    Domain.SPATIAL: {"gamma": 4.0, "ratio": 0.05},
}


def _parse_shape(text: str) -> tuple[int, int, int, int]:
    parts = text.split(",")
    if len(parts) != 4:
        raise InvalidInput(f"--shape needs 4 comma-separated integers, got {text!r}")
    try:
        shape = tuple(int(p) for p in parts)
    except ValueError:
        raise InvalidInput(f"--shape needs integers, got {text!r}") from None
    if min(shape) < 1:
        raise InvalidInput(f"--shape extents must be >= 1, got {text!r}")
    return shape  # type: ignore[return-value]


def _domain(text: str) -> Domain:
    return Domain(text)


def _build_config(domain: Domain, k, ratio, gamma, seed) -> ConditioningConfig:
    if domain is Domain.TEMPORAL:
        if ratio is not None:
            raise InvalidInput("--ratio applies to --domain spatial only")
        k = _DEFAULTS[domain]["k"] if k is None else k
    else:
        if k is not None:
            raise InvalidInput("--k applies to --domain temporal only")
        ratio = _DEFAULTS[domain]["ratio"] if ratio is None else ratio
    gamma = _DEFAULTS[domain]["gamma"] if gamma is None else gamma
    return ConditioningConfig(domain=domain, gamma=float(gamma), k=k, ratio=ratio, seed=seed)


def _cmd_condition(args) -> int:
    if (args.noise is None) == (args.shape is None):
        raise InvalidInput("give exactly one of --noise FILE or --shape t,w,h,d")
    config = _build_config(args.domain, args.k, args.ratio, args.gamma, args.seed)
    reference = read_npy(args.ref)
    if args.noise is not None:
        noise = read_npy(args.noise)
    else:
        shape = _parse_shape(args.shape)
        if shape != reference.shape:
            raise InvalidInput(
                f"--shape {shape} does not match reference shape {reference.shape}"
            )
        noise = sample_noise(shape, seed=config.seed)
    out, params = phi_noise(noise, reference, config)
    write_npy(out, args.out)
    print(f"wrote {args.out}")
    if args.report:
        echo = {
            "command": "condition",
            **config.to_dict(),
            "shape": list(out.shape),
            "ref": args.ref,
            "noise": args.noise,
            "out": args.out,
        }
        report = analyze_latent(
            out, config.domain, mask=params.mask, balance=params, config=echo
        ).to_dict()
        report["energies"]["input"] = energy(noise)
        write_json(report, args.report)
        print(f"wrote {args.report}")
    return 0


def _cmd_analyze(args) -> int:
    x = read_npy(args.infile)
    ref = read_npy(args.ref) if args.ref else None
    echo = {
        "command": "analyze",
        "domain": args.domain.value,
        "in": args.infile,
        "ref": args.ref,
    }
    report = analyze_latent(x, args.domain, ref=ref, config=echo).to_dict()
    write_json(report, args.report)
    print(f"wrote {args.report}")
    return 0


def _cmd_sweep(args) -> int:
    import os

    reference = read_npy(args.ref)
    if args.domain is Domain.TEMPORAL:
        if args.ratios is not None:
            raise InvalidInput("--ratios applies to --domain spatial only")
        if args.ks is None:
            raise InvalidInput("temporal sweeps need --ks")
        cutoffs = [int(p) for p in args.ks.split(",")]
    else:
        if args.ks is not None:
            raise InvalidInput("--ks applies to --domain temporal only")
        if args.ratios is None:
            raise InvalidInput("spatial sweeps need --ratios")
        cutoffs = [float(p) for p in args.ratios.split(",")]
    gammas = [float(p) for p in args.gammas.split(",")]

    os.makedirs(args.outdir, exist_ok=True)
    # one draw shared by the whole grid isolates the parameter effects
    noise = sample_noise(reference.shape, seed=args.seed)
    entries = []
    for gamma in gammas:
        for cutoff in cutoffs:
            if args.domain is Domain.TEMPORAL:
                config = ConditioningConfig(
                    domain=args.domain, gamma=gamma, k=cutoff, seed=args.seed
                )
                name = f"out_g{gamma:g}_k{cutoff}.npy"
            else:
                config = ConditioningConfig(
                    domain=args.domain, gamma=gamma, ratio=cutoff, seed=args.seed
                )
                name = f"out_g{gamma:g}_r{cutoff:g}.npy"
            out, params = phi_noise(noise, reference, config)
            out_path = os.path.join(args.outdir, name)
            write_npy(out, out_path)
            entries.append(
                {
                    "config": config.to_dict(),
                    "out": out_path,
                    "energies": {
                        "input": energy(noise),
                        "output": energy(out),
                        "low": params.e_low,
                        "high": params.e_high,
                    },
                    "beta": params.beta,
                }
            )
            print(f"wrote {out_path}")
    report = {
        "version": __version__,
        "config": {
            "command": "sweep",
            "domain": args.domain.value,
            "ref": args.ref,
            "seed": args.seed,
            "gammas": gammas,
            ("ks" if args.domain is Domain.TEMPORAL else "ratios"): cutoffs,
            "outdir": args.outdir,
        },
        "entries": entries,
    }
    report_path = os.path.join(args.outdir, "report.json")
    write_json(report, report_path)
    print(f"wrote {report_path}")
    return 0


def _cmd_synth(args) -> int:
    shape = _parse_shape(args.shape)
    motion_flags = [args.period, args.amplitude, args.dx, args.dy]
    if args.pattern == "moving-blob":
        has_osc = args.period is not None or args.amplitude is not None
        has_lin = args.dx is not None or args.dy is not None
        if has_osc == has_lin:
            raise InvalidInput(
                "moving-blob needs either --period and --amplitude or --dx and --dy"
            )
        if has_osc:
            if args.period is None or args.amplitude is None:
                raise InvalidInput("oscillating blobs need both --period and --amplitude")
            trajectory = OscillatingTrajectory(amplitude=args.amplitude, period=args.period)
        else:
            trajectory = LinearTrajectory(dx=args.dx or 0.0, dy=args.dy or 0.0)
        x = gen_moving_blob(shape, trajectory)
    else:
        if any(v is not None for v in motion_flags):
            raise InvalidInput(f"motion flags do not apply to --pattern {args.pattern}")
        x = gen_static(shape, args.pattern.removeprefix("static-"))
    write_npy(x, args.out)
    print(f"wrote {args.out}")
    return 0


def _make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phinoise",
        description="Condition diffusion input noise on a reference latent's low-frequency phases.",
    )
    parser.add_argument("--version", action="version", version=f"phinoise {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("condition", help="condition noise on a reference latent")
    p.add_argument("--ref", required=True, help="reference latent (NPY)")
    p.add_argument("--noise", help="input noise (NPY); omit to sample from --seed")
    p.add_argument("--shape", help="t,w,h,d of the sampled noise (with --seed)")
    p.add_argument(
        "--domain", required=True, type=_domain, choices=list(Domain), metavar="{temporal,spatial}"
    )
    p.add_argument("--k", type=int, help="temporal cutoff (default 3)")
    p.add_argument("--ratio", type=float, help="spatial masking ratio (default 0.05)")
    p.add_argument("--gamma", type=float, help="attenuation (default 30 temporal, 4 spatial)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output latent (NPY)")
    p.add_argument("--report", help="optional JSON report path")
    p.set_defaults(func=_cmd_condition)

    p = sub.add_parser("analyze", help="whiteness / band-energy diagnostics")
    p.add_argument("--in", dest="infile", required=True, help="latent to analyze (NPY)")
    p.add_argument("--ref", help="optional second latent for phase KL")
    p.add_argument(
        "--domain", required=True, type=_domain, choices=list(Domain), metavar="{temporal,spatial}"
    )
    p.add_argument("--report", required=True, help="JSON report path")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("sweep", help="condition over a parameter grid")
    p.add_argument("--ref", required=True)
    p.add_argument("--gammas", required=True, help="comma-separated gamma values")
    p.add_argument("--ks", help="comma-separated temporal cutoffs")
    p.add_argument("--ratios", help="comma-separated spatial ratios")
    p.add_argument(
        "--domain", required=True, type=_domain, choices=list(Domain), metavar="{temporal,spatial}"
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--outdir", required=True)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("synth", help="generate synthetic reference latents")
    p.add_argument(
        "--pattern",
        required=True,
        choices=["moving-blob", "static-checker", "static-gradient"],
    )
    p.add_argument("--shape", required=True, help="t,w,h,d")
    p.add_argument("--period", type=float, help="oscillation period in frames")
    p.add_argument("--amplitude", type=float, help="oscillation amplitude in pixels")
    p.add_argument("--dx", type=float, help="linear displacement per frame, x")
    p.add_argument("--dy", type=float, help="linear displacement per frame, y")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_synth)
    return parser


def main(argv=None) -> int:
    parser = _make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _FILE_ERRORS as e:
        print(f"phinoise: {e}", file=sys.stderr)
        return 3
    except _NUMERIC_ERRORS as e:
        print(f"phinoise: {e}", file=sys.stderr)
        return 4
    except _USAGE_ERRORS as e:
        print(f"phinoise: {e}", file=sys.stderr)
        return 2
    except PhinoiseError as e:  # any future taxonomy members
        print(f"phinoise: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
