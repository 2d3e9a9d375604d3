"""Command-line frontend.

Subcommands: `simulate` runs a Monte Carlo experiment grid and writes CSV or
JSON, `estimate` prints a single estimate for a sample file, and `exact`
evaluates the exact expected KL for small instances.

Exit codes: 0 success, 2 flag errors (argparse), 3 bad input values or
unknown names, 4 capacity limits.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

import numpy as np

from .distributions import Sample, parse_distribution, validate_distribution
from .errors import (
    CapacityError,
    ConfigurationError,
    InvalidParameterError,
    UndefinedEstimateError,
)
from .estimators import apply_estimator, parse_estimator
from .oracle import exact_expected_kl
from .profile import build_profile
from .simulation import ExperimentConfig, RegretRecord, run_experiment

CSV_HEADER = "distribution,estimator,k,n,trials,seed,mean_kl_nats,stderr_nats,inf_trials"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (ConfigurationError, InvalidParameterError, UndefinedEstimateError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cde",
        description="Compare discrete-distribution estimators under expected KL loss.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a Monte Carlo experiment grid")
    sim.add_argument("--k", type=int, required=True, help="alphabet size")
    sim.add_argument(
        "--n-grid",
        required=True,
        help="sample sizes: comma list (1000,2000) or start:stop:count (1000:50000:10)",
    )
    sim.add_argument("--trials", type=int, required=True, help="Monte Carlo trials per cell")
    sim.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    sim.add_argument("--estimators", required=True, help="comma list of estimator names")
    sim.add_argument("--distributions", required=True, help="comma list of distribution names")
    sim.add_argument("--out", required=True, help="output path")
    sim.add_argument("--format", choices=("csv", "json"), default="csv")
    sim.add_argument(
        "--fixed-prior",
        action="store_true",
        help="draw prior-based distributions once per cell instead of per trial",
    )
    sim.set_defaults(func=_cmd_simulate)

    est = sub.add_parser("estimate", help="print one estimate for a sample file")
    est.add_argument("--estimator", required=True)
    est.add_argument("--k", type=int, required=True)
    est.add_argument("--sample", required=True, help="file with one symbol index per line")
    est.add_argument("--dist", help="true distribution name (oracle estimators)")
    est.add_argument("--p", help="file with one probability per line (oracle estimators)")
    est.set_defaults(func=_cmd_estimate)

    exact = sub.add_parser("exact", help="exact expected KL by enumeration")
    exact.add_argument("--k", type=int, required=True)
    exact.add_argument("--n", type=int, required=True)
    exact.add_argument("--estimator", required=True)
    exact.add_argument("--dist", help="distribution name")
    exact.add_argument("--p", help="file with one probability per line")
    exact.set_defaults(func=_cmd_exact)

    return parser


def _cmd_simulate(args) -> int:
    config = ExperimentConfig(
        k=args.k,
        n_grid=parse_n_grid(args.n_grid),
        trials=args.trials,
        master_seed=args.seed,
        distributions=tuple(args.distributions.split(",")),
        estimators=tuple(args.estimators.split(",")),
        redraw_prior_per_trial=not args.fixed_prior,
    )
    records = run_experiment(config, workers=_workers_from_env())
    if args.format == "csv":
        text = format_csv(records)
    else:
        text = format_json(records, config)
    _write_atomic(args.out, text)
    return 0


def _cmd_estimate(args) -> int:
    spec = parse_estimator(args.estimator)
    symbols = _read_symbols(args.sample, args.k)
    sample = Sample(np.array(symbols, dtype=np.int64), args.k)
    profile = build_profile(sample)
    p = None
    if spec.requires_true_p:
        p = _resolve_true_p(args)
    q = apply_estimator(spec, profile, p)
    out = []
    for i in range(args.k):
        out.append(f"{i + 1}\t{_fmt9(float(q[i]))}")
    print("\n".join(out))
    return 0


def _cmd_exact(args) -> int:
    spec = parse_estimator(args.estimator)
    p = _resolve_true_p(args)
    result = exact_expected_kl(p, spec, args.n)
    print(_fmt12(result.expected_kl))
    return 0


def parse_n_grid(text: str) -> tuple[int, ...]:
    """Parse an n-grid flag: comma list, or start:stop:count for an evenly
    spaced inclusive grid rounded to integers."""
    try:
        if ":" in text:
            start_s, stop_s, count_s = text.split(":")
            start, stop, count = int(start_s), int(stop_s), int(count_s)
            if count < 1:
                raise ValueError("count must be >= 1")
            if count == 1:
                return (start,)
            return tuple(int(np.rint(v)) for v in np.linspace(start, stop, count))
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ConfigurationError(f"bad n-grid {text!r}: {exc}") from None


def _workers_from_env() -> int:
    raw = os.environ.get("CDE_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise ConfigurationError(f"CDE_THREADS must be an integer, got {raw!r}") from None


def _read_symbols(path: str, k: int) -> list[int]:
    symbols = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                value = int(text)
            except ValueError:
                raise InvalidParameterError(f"{path}:{lineno}: not an integer: {text!r}") from None
            if not 1 <= value <= k:
                raise InvalidParameterError(
                    f"{path}:{lineno}: symbol {value} outside [1..{k}]"
                )
            symbols.append(value)
    return symbols


def _read_probabilities(path: str) -> np.ndarray:
    values = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                values.append(float(text))
            except ValueError:
                raise InvalidParameterError(f"{path}:{lineno}: not a number: {text!r}") from None
    return validate_distribution(values)


def _resolve_true_p(args) -> np.ndarray:
    if args.p:
        p = _read_probabilities(args.p)
        if p.size != args.k:
            raise InvalidParameterError(
                f"probability file has {p.size} entries but --k is {args.k}"
            )
        return p
    if args.dist:
        spec = parse_distribution(args.dist)
        if spec.is_prior:
            raise ConfigurationError(
                f"distribution '{args.dist}' is a prior; supply a fixed vector via --p"
            )
        return spec.realize(args.k)
    raise ConfigurationError("a true distribution is required: pass --dist or --p")


def _fmt9(value: float) -> str:
    if math.isinf(value):
        return "inf"
    return format(value, ".9g")


def _fmt12(value: float) -> str:
    """Positional rendering with exactly 12 significant digits."""
    if math.isinf(value):
        return "inf"
    mantissa, exp_text = format(value, ".11e").split("e")
    negative = mantissa.startswith("-")
    digits = mantissa.lstrip("-").replace(".", "")
    exponent = int(exp_text)
    if exponent >= 0:
        if exponent + 1 >= len(digits):
            whole = digits + "0" * (exponent + 1 - len(digits))
            frac = ""
        else:
            whole = digits[: exponent + 1]
            frac = digits[exponent + 1 :]
    else:
        whole = "0"
        frac = "0" * (-exponent - 1) + digits
    text = whole + (f".{frac}" if frac else "")
    return f"-{text}" if negative else text


def format_csv(records: list[RegretRecord]) -> str:
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            f"{r.distribution},{r.estimator},{r.k},{r.n},{r.trials},{r.master_seed},"
            f"{_fmt9(r.mean_kl)},{_fmt9(r.stderr)},{r.inf_trials}"
        )
    return "\n".join(lines) + "\n"


def format_json(records: list[RegretRecord], config: ExperimentConfig) -> str:
    payload = {
        "metadata": {
            "k": config.k,
            "n_grid": list(config.n_grid),
            "trials": config.trials,
            "seed": config.master_seed,
            "distributions": list(config.distributions),
            "estimators": list(config.estimators),
            "redraw_prior_per_trial": config.redraw_prior_per_trial,
            "paired_samples": True,
        },
        "records": [_record_to_json(r) for r in records],
    }
    return json.dumps(payload, indent=2) + "\n"


def _record_to_json(r: RegretRecord) -> dict:
    return {
        "distribution": r.distribution,
        "estimator": r.estimator,
        "k": r.k,
        "n": r.n,
        "trials": r.trials,
        "seed": r.master_seed,
        "mean_kl_nats": "inf" if math.isinf(r.mean_kl) else float(_fmt9(r.mean_kl)),
        "stderr_nats": float(_fmt9(r.stderr)),
        "inf_trials": r.inf_trials,
    }


def read_csv(path: str) -> list[RegretRecord]:
    """Parse a file written by `simulate --format csv` back into records."""
    with open(path, encoding="utf-8") as handle:
        lines = [line.rstrip("\n") for line in handle if line.strip()]
    if not lines or lines[0] != CSV_HEADER:
        raise InvalidParameterError(f"{path}: missing or unexpected CSV header")
    records = []
    for line in lines[1:]:
        d, e, k, n, trials, seed, mean_kl, stderr, inf_trials = line.split(",")
        records.append(
            RegretRecord(
                distribution=d,
                estimator=e,
                k=int(k),
                n=int(n),
                trials=int(trials),
                mean_kl=float(mean_kl),
                stderr=float(stderr),
                inf_trials=int(inf_trials),
                master_seed=int(seed),
            )
        )
    return records


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".cde-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise


if __name__ == "__main__":
    sys.exit(main())
