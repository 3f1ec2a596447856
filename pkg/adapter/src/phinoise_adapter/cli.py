"""Command-line front end.

Four subcommands: `oracle` recomputes one conditioning result from
files, `gen-fixtures` writes the golden corpus, `verify` replays every
fixture through the main tool's CLI and compares, `inject` runs the
pipeline-injection stub. Exit codes follow the same families as the
main tool: 2 for bad arguments, 3 for unreadable or mismatched files,
4 for numerically impossible requests.
"""

import argparse
import json
import shlex
import subprocess
import sys
import tempfile
from pathlib import Path

import numpy as np

from .errors import AdapterError, FileError
from .fixtures import generate
from .inject import inject_latent
from .oracle import oracle_phi_noise

# values must agree to 1e-8 of the largest sample, ledgers to 1e-9
# relative; both gates come from the cross-implementation contract
VALUE_RTOL = 1e-8
LEDGER_RTOL = 1e-9


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def _condition_argv(phinoise_cmd, case_dir: Path, config: dict, out: Path, report: Path):
    argv = list(phinoise_cmd) + [
        "condition",
        "--noise", str(case_dir / "noise.npy"),
        "--ref", str(case_dir / "ref.npy"),
        "--domain", config["domain"],
        "--gamma", str(float(config["gamma"])),
        "--out", str(out),
        "--report", str(report),
    ]
    if config["domain"] == "temporal":
        argv += ["--k", str(config["k"])]
    else:
        argv += ["--ratio", str(float(config["ratio"]))]
    return argv


def verify_case(case_dir: Path, phinoise_cmd, workdir: Path) -> list:
    """Run the main tool on one fixture; returns a list of complaints."""
    config = json.loads((case_dir / "config.json").read_text())
    expected = np.load(case_dir / "expected.npy")
    ledger = json.loads((case_dir / "ledger.json").read_text())

    out = workdir / f"{case_dir.name}.npy"
    report_path = workdir / f"{case_dir.name}.json"
    argv = _condition_argv(phinoise_cmd, case_dir, config, out, report_path)
    proc = subprocess.run(argv, capture_output=True, text=True)
    if proc.returncode != 0:
        tail = proc.stderr.strip().splitlines()[-1:] or ["(no stderr)"]
        return [f"exit {proc.returncode} from {argv[0]}: {tail[0]}"]

    problems = []
    got = np.load(out)
    err = float(np.max(np.abs(got - expected)))
    tol = VALUE_RTOL * float(np.max(np.abs(expected)))
    if err > tol:
        problems.append(f"values differ by {err:.3e} (tol {tol:.3e})")

    report = json.loads(report_path.read_text())
    pairs = [
        ("beta", ledger["beta"], report["beta"]),
        ("e_total", ledger["e_total"], report["energies"]["input"]),
        ("e_low", ledger["e_low"], report["energies"]["low"]),
        ("e_high", ledger["e_high"], report["energies"]["high"]),
    ]
    for label, ours, theirs in pairs:
        if theirs is None or _rel(ours, theirs) > LEDGER_RTOL:
            problems.append(f"{label}: oracle {ours!r} vs report {theirs!r}")
    return problems


def _cmd_oracle(args) -> int:
    ledger = oracle_phi_noise(args.noise, args.ref, args.config, args.out, args.ledger)
    print(
        f"beta {ledger['beta']:.12g}  energy {ledger['e_total']:.12g}  "
        f"wrote {args.out} and {args.ledger}"
    )
    return 0


def _cmd_gen_fixtures(args) -> int:
    names = generate(args.outdir)
    for name in names:
        print(f"wrote {Path(args.outdir) / name}")
    print(f"{len(names)} cases")
    return 0


def _cmd_verify(args) -> int:
    root = Path(args.fixtures)
    cases = sorted(p for p in root.iterdir() if (p / "config.json").exists()) if root.is_dir() else []
    if not cases:
        raise FileError(f"no fixture cases under {root}")
    phinoise_cmd = shlex.split(args.phinoise_cmd)

    failed = 0
    with tempfile.TemporaryDirectory() as scratch:
        for case_dir in cases:
            problems = verify_case(case_dir, phinoise_cmd, Path(scratch))
            if problems:
                failed += 1
                print(f"{case_dir.name}: FAIL")
                for line in problems:
                    print(f"  {line}")
            else:
                print(f"{case_dir.name}: ok")
    print(f"{len(cases) - failed} of {len(cases)} cases match")
    return 1 if failed else 0


def _cmd_inject(args) -> int:
    return inject_latent(args.pipeline_config, args.noise)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phinoise-adapter",
        description="independent oracle and fixture tooling for phi-noise conditioning",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("oracle", help="recompute one conditioning result from files")
    p.add_argument("--noise", required=True, help="input noise (NPY)")
    p.add_argument("--ref", required=True, help="reference latent (NPY)")
    p.add_argument("--config", required=True, help="JSON with domain, cutoff, gamma")
    p.add_argument("--out", required=True, help="conditioned latent (NPY)")
    p.add_argument("--ledger", required=True, help="energy ledger (JSON)")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("gen-fixtures", help="write the golden fixture corpus")
    p.add_argument("--outdir", required=True)
    p.set_defaults(func=_cmd_gen_fixtures)

    p = sub.add_parser("verify", help="replay fixtures through the main tool and compare")
    p.add_argument("--fixtures", required=True, help="directory of fixture cases")
    p.add_argument(
        "--phinoise-cmd",
        default="phinoise",
        help="command used to run the main tool (default: phinoise)",
    )
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("inject", help="feed a latent to the configured pipeline")
    p.add_argument("--pipeline-config", required=True, help="pipeline description (JSON)")
    p.add_argument("--noise", required=True, help="latent to inject (NPY)")
    p.set_defaults(func=_cmd_inject)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AdapterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
