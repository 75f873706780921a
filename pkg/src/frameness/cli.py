"""Command-line interface and the statistical verification harness.

Verbs: ``monotone`` evaluates a pure-state monotone, ``roof`` runs the
convex-roof optimizer, ``verify`` stress-tests monotonicity under random
covariant channels, ``channel sample`` emits a random channel, ``twirl``
dephases a state file, and ``appendix`` prints the qubit closed forms.

Exit codes: 0 on success, 1 when verification found violations, 2 on
invalid input.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channels import (
    U1Channel,
    apply_channel_pure,
    channel_to_dict,
    random_channel,
    validate_channel,
)
from .convexroof import RoofConfig, convex_roof
from .errors import FramenessError
from .monotones import MonotoneId, appendix_closed_form, weight_evaluator
from .states import (
    SectoredPureState,
    StandardState,
    density_from_dict,
    density_to_dict,
    random_standard_state,
    standard_form,
    state_from_dict,
    twirl,
)

VIOLATION_TOL = 1e-9


@dataclass(frozen=True)
class VerificationReport:
    """Summary of a monotonicity stress run."""

    measure: MonotoneId
    dim: int
    trials: int
    seed: int
    violations: int
    worst_margin: float
    runtime_ms: float

    def to_dict(self) -> dict:
        return {
            "measure": {"kind": self.measure.kind, "k": self.measure.k},
            "dim": self.dim,
            "trials": self.trials,
            "seed": self.seed,
            "violations": self.violations,
            "worst_margin": self.worst_margin,
            "runtime_ms": self.runtime_ms,
        }


def sample_trial(
    dim: int,
    shifts: tuple[int, ...],
    kraus_per_shift: int,
    seed: int,
    trial: int,
) -> tuple[StandardState, U1Channel]:
    """Deterministic (state, channel) pair for one verification trial.

    The derivation depends only on (seed, trial), so every measure sees the
    same trial stream.
    """
    state_rng = np.random.default_rng([seed, trial, 0])
    state = random_standard_state(dim, state_rng)
    channel = random_channel(dim, shifts, kraus_per_shift, seed=[seed, trial, 1])
    return state, channel


def _resolve_threads(threads: int | None) -> int:
    if threads is not None:
        return max(1, threads)
    env = os.environ.get("FRAMENESS_THREADS")
    if env is not None:
        return max(1, int(env))
    return os.cpu_count() or 1


def run_verification(
    measure: MonotoneId,
    dim: int,
    trials: int,
    seed: int,
    shifts: tuple[int, ...],
    kraus_per_shift: int = 1,
    threads: int | None = None,
) -> tuple[VerificationReport, list[tuple[int, float, int]]]:
    """Monotonicity margins over seeded random (state, channel) trials.

    The margin of a trial is the input value minus the probability-weighted
    average over channel outcomes; a violation is a margin below
    ``-VIOLATION_TOL``. Returns the report plus per-trial rows
    ``(trial, margin, p_count)``.
    """
    evaluator = weight_evaluator(measure, dim)

    def one(trial: int) -> tuple[float, int]:
        state, channel = sample_trial(dim, shifts, kraus_per_shift, seed, trial)
        ensemble = apply_channel_pure(channel, state)
        before = evaluator(state.weights)
        after = sum(p * evaluator(out.weights) for p, out in ensemble.members)
        return before - after, len(ensemble.members)

    start = time.perf_counter()
    workers = _resolve_threads(threads)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, range(trials)))
    else:
        results = [one(t) for t in range(trials)]
    runtime_ms = (time.perf_counter() - start) * 1e3

    rows = [(t, margin, count) for t, (margin, count) in enumerate(results)]
    margins = np.array([m for _, m, _ in rows])
    report = VerificationReport(
        measure=measure,
        dim=dim,
        trials=trials,
        seed=seed,
        violations=int((margins < -VIOLATION_TOL).sum()),
        worst_margin=float(margins.min()),
        runtime_ms=runtime_ms,
    )
    return report, rows


def _parse_shifts(text: str) -> tuple[int, ...]:
    parts = [p.strip() for p in text.split(",") if p.strip() != ""]
    if not parts:
        raise ValueError("empty shift list")
    return tuple(int(p) for p in parts)


def _emit(data: dict) -> None:
    print(json.dumps(data, indent=2, sort_keys=True))


def _load_weights(path: str, dim: int | None) -> StandardState:
    with open(path, encoding="utf-8") as fh:
        state = state_from_dict(json.load(fh))
    if isinstance(state, SectoredPureState):
        state = standard_form(state)
    if dim is not None:
        w = state.weights
        if dim < w.size:
            if w.size and float(w[dim:].max(initial=0.0)) > 0.0:
                raise ValueError(
                    f"cannot restrict to dimension {dim}: weight above it"
                )
            w = w[:dim]
        else:
            w = np.pad(w, (0, dim - w.size))
        state = StandardState(w)
    return state


def cmd_monotone(args: argparse.Namespace) -> int:
    measure = MonotoneId(args.measure, args.k)
    state = _load_weights(args.state, args.dim)
    value = weight_evaluator(measure, state.dim)(state.weights)
    print(f"{value:.12f}")
    return 0


def cmd_roof(args: argparse.Namespace) -> int:
    measure = MonotoneId(args.measure, args.k)
    with open(args.rho, encoding="utf-8") as fh:
        rho = density_from_dict(json.load(fh))
    cfg = RoofConfig(
        ensemble_size=args.ensemble_size,
        restarts=args.restarts,
        max_iters=args.max_iters,
        step_tolerance=args.step_tolerance,
        seed=args.seed,
    )
    result = convex_roof(measure, rho, cfg)
    _emit(
        {
            "value": result.value,
            "converged": result.converged,
            "iterations_used": result.iterations_used,
            "gapped_support": result.gapped_support,
            "ensemble": [
                {"p": p, "state": [[z.real, z.imag] for z in vec]}
                for p, vec in result.ensemble.members
            ],
        }
    )
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    measure = MonotoneId(args.measure, args.k)
    report, rows = run_verification(
        measure=measure,
        dim=args.dim,
        trials=args.trials,
        seed=args.seed,
        shifts=_parse_shifts(args.shifts),
        kraus_per_shift=args.kraus_per_shift,
        threads=args.threads,
    )
    if args.csv is not None:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["trial", "margin", "p_count"])
            writer.writerows(rows)
    _emit(report.to_dict())
    return 0 if report.violations == 0 else 1


def cmd_channel_sample(args: argparse.Namespace) -> int:
    channel = random_channel(
        args.dim, _parse_shifts(args.shifts), args.kraus_per_shift, args.seed
    )
    _emit(channel_to_dict(channel))
    if args.check:
        report = validate_channel(channel)
        for n, total in enumerate(report.per_sector_sums):
            print(f"sector {n}: completeness {float(total)!r}", file=sys.stderr)
    return 0


def cmd_twirl(args: argparse.Namespace) -> int:
    with open(args.infile, encoding="utf-8") as fh:
        data = json.load(fh)
    if "matrix" in data:
        rho = density_from_dict(data)
    else:
        state = state_from_dict(data)
        if isinstance(state, SectoredPureState):
            state = standard_form(state)
        rho = state.projector()
    _emit(density_to_dict(twirl(rho)))
    return 0


def cmd_appendix(args: argparse.Namespace) -> int:
    res = appendix_closed_form(args.p, args.alpha)
    _emit(
        {
            "mu1": res.mu1,
            "mu2": res.mu2,
            "concurrence": res.concurrence,
            "fof": res.fof,
            "rho": density_to_dict(res.rho),
        }
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frameness",
        description="Frameness monotones under a charge superselection rule",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_measure(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--measure",
            required=True,
            choices=["vidal", "entropy", "concurrence", "variance"],
        )
        p.add_argument("--k", type=int, default=None)

    p_mono = sub.add_parser("monotone", help="evaluate a pure-state monotone")
    add_measure(p_mono)
    p_mono.add_argument("--state", required=True)
    p_mono.add_argument("--dim", type=int, default=None)
    p_mono.set_defaults(func=cmd_monotone)

    p_roof = sub.add_parser("roof", help="convex-roof value of a density matrix")
    add_measure(p_roof)
    p_roof.add_argument("--rho", required=True)
    p_roof.add_argument("--ensemble-size", type=int, default=None)
    p_roof.add_argument("--restarts", type=int, default=32)
    p_roof.add_argument("--max-iters", type=int, default=120)
    p_roof.add_argument("--step-tolerance", type=float, default=1e-6)
    p_roof.add_argument("--seed", type=int, default=0)
    p_roof.set_defaults(func=cmd_roof)

    p_verify = sub.add_parser("verify", help="stress-test ensemble monotonicity")
    add_measure(p_verify)
    p_verify.add_argument("--dim", type=int, required=True)
    p_verify.add_argument("--trials", type=int, default=1000)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--shifts", required=True, help="e.g. --shifts=-1,0,1")
    p_verify.add_argument("--kraus-per-shift", type=int, default=1)
    p_verify.add_argument("--threads", type=int, default=None)
    p_verify.add_argument("--csv", default=None, help="write per-trial rows here")
    p_verify.set_defaults(func=cmd_verify)

    p_channel = sub.add_parser("channel", help="channel utilities")
    channel_sub = p_channel.add_subparsers(dest="channel_command", required=True)
    p_sample = channel_sub.add_parser("sample", help="sample a random channel")
    p_sample.add_argument("--dim", type=int, required=True)
    p_sample.add_argument("--shifts", required=True, help="e.g. --shifts=-1,0,1")
    p_sample.add_argument("--kraus-per-shift", type=int, default=1)
    p_sample.add_argument("--seed", type=int, default=0)
    p_sample.add_argument("--check", action="store_true")
    p_sample.set_defaults(func=cmd_channel_sample)

    p_twirl = sub.add_parser("twirl", help="dephase a state in the charge basis")
    p_twirl.add_argument("--in", dest="infile", required=True)
    p_twirl.set_defaults(func=cmd_twirl)

    p_appendix = sub.add_parser("appendix", help="qubit closed forms on the two-parameter family")
    p_appendix.add_argument("--p", type=float, required=True)
    p_appendix.add_argument("--alpha", type=float, required=True)
    p_appendix.set_defaults(func=cmd_appendix)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FramenessError, OSError, ValueError, KeyError, TypeError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
