"""``qmetric`` command line.

Exit codes: 0 when every verdict is Consistent or ReportOnly (or, for
``axioms``, every claimed axiom passes), 1 on any Inconsistent verdict,
2 on usage, input or configuration errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from pathlib import Path

import numpy as np

from . import experiments as ex
from .errors import QmetricError
from .formats import dumps, format_float, load_povm, load_profile, load_state
from .harness import ConformanceConfig, ConformanceReport, run_conformance
from .hilbert import BipartiteState, entanglement_entropy, overlap
from .metrics import (
    bures_candidate,
    complementarity_value,
    d_bures,
    d_entanglement_aware,
    d_fs,
    d_hilbert,
    d_trace_pure,
    distance_from_profile,
    entanglement_candidate,
    fidelity,
    fs_candidate,
    hilbert_candidate,
    measurement_candidate,
)
from .operational import FAMILIES, helstrom, qfi_finite_difference

DISTANCES = ("fs", "bures", "trace", "hilbert", "entanglement", "complementarity")
BIPARTITE_DISTANCES = ("entanglement", "complementarity")
DEFAULT_DIMS = {
    "inequalities": (2, 8, 64),
    "concentration": (2, 8, 64, 512, 1000),
    "axioms": (2, 3, 8),
}
DEFAULT_SAMPLES = {"inequalities": 100_000, "concentration": 100_000, "axioms": 200}


class UsageError(Exception):
    pass


def _dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"--dims expects comma-separated integers, got {text!r}")
    if not dims or min(dims) < 2:
        raise argparse.ArgumentTypeError("--dims needs at least one dimension, each >= 2")
    return dims


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def _seed(text: str) -> int:
    n = int(text, 0)
    if not 0 <= n < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return n


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--seed", type=_seed, default=d, help="root seed (fallback: $QMETRIC_SEED, then 0)")
    parser.add_argument("--samples", type=_positive, default=d)
    parser.add_argument("--dims", type=_dims, default=d, help="comma-separated dimensions")
    parser.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS if suppress else "json")
    parser.add_argument("--out", type=Path, default=d)
    parser.add_argument("--entropy-base", choices=("e", "2"), default=argparse.SUPPRESS if suppress else "e")
    parser.add_argument("--workers", type=_positive, default=argparse.SUPPRESS if suppress else 1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qmetric", description="Distances between pure quantum states.")
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help):
        p = sub.add_parser(name, help=help)
        _global_flags(p, suppress=True)
        return p

    p = add("dist", "distances between two state files")
    p.add_argument("state_a", type=Path)
    p.add_argument("state_b", type=Path)
    p.add_argument("--which", default="all", help=f"comma list from {', '.join(DISTANCES)} or 'all'")

    p = add("axioms", "run the axiom harness on a candidate")
    p.add_argument("candidate", help="fs, bures, hilbert, entanglement[:AxB], measurement[-l1]:<povm.json>, or a profile table")
    p.add_argument("--no-validate", action="store_true", help="run a profile table even if it is inadmissible")

    add("inequalities", "Monte-Carlo sweep of the inequality suites")
    add("concentration", "overlap statistics of Haar-random pairs")
    add("identities", "closed-form identities over Haar pairs")

    p = add("discriminate", "Helstrom discrimination of two state files")
    p.add_argument("state_a", type=Path)
    p.add_argument("state_b", type=Path)

    p = add("qfi", "finite-difference quantum Fisher information")
    p.add_argument("family", help=", ".join(FAMILIES))
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--step", type=float, default=1e-4)
    p.add_argument("--halvings", type=int, default=4, help="extra runs at step/2, step/4, ...")
    return parser


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("QMETRIC_SEED")
    if env is None:
        return 0
    try:
        return _seed(env)
    except (ValueError, argparse.ArgumentTypeError):
        raise UsageError(f"QMETRIC_SEED must be an unsigned 64-bit integer, got {env!r}")


def _base(args):
    return None if args.entropy_base == "e" else 2.0


# -- commands ---------------------------------------------------------------------

def cmd_dist(args) -> list[ex.ExperimentRecord]:
    a, b = load_state(args.state_a), load_state(args.state_b)
    which = DISTANCES if args.which == "all" else tuple(w.strip() for w in args.which.split(","))
    unknown = [w for w in which if w not in DISTANCES]
    if unknown:
        raise UsageError(f"unknown distance(s): {', '.join(unknown)}")
    va = a.state if isinstance(a, BipartiteState) else a
    vb = b.state if isinstance(b, BipartiteState) else b
    if va.shape != vb.shape:
        raise UsageError(f"{args.state_b}: dim {vb.size} does not match {args.state_a} dim {va.size}")
    bipartite = isinstance(a, BipartiteState) and isinstance(b, BipartiteState)
    if not bipartite and args.which != "all" and any(w in BIPARTITE_DISTANCES for w in which):
        raise UsageError("bipartite distances need dimA/dimB in both state files")
    base = _base(args)
    stats = {"overlap": float(overlap(va, vb)), "fidelity": float(fidelity(va, vb))}
    fns = {"fs": d_fs, "bures": d_bures, "trace": d_trace_pure, "hilbert": d_hilbert}
    for w in which:
        if w in fns:
            stats[w] = float(fns[w](va, vb))
        elif bipartite:
            if w == "entanglement":
                stats["entropyA"] = float(entanglement_entropy(a, base))
                stats["entropyB"] = float(entanglement_entropy(b, base))
                stats[w] = float(d_entanglement_aware(a, b, base))
            elif min(a.dim_a, a.dim_b) >= 2:
                stats[w] = float(complementarity_value(a, b))
    params = {"stateA": str(args.state_a), "stateB": str(args.state_b), "entropyBase": args.entropy_base}
    return [ex.ExperimentRecord("dist", params, stats, ex.REPORT_ONLY, dim=int(va.size))]


def resolve_candidate(name: str, base=None, validate: bool = True):
    builtin = {"fs": fs_candidate, "bures": bures_candidate, "hilbert": hilbert_candidate}
    if name in builtin:
        return builtin[name]()
    if name == "entanglement" or name.startswith("entanglement:"):
        split = name.partition(":")[2] or "2x2"
        try:
            da, db = (int(x) for x in split.lower().split("x"))
        except ValueError:
            raise UsageError(f"bad split {split!r}; expected AxB")
        return entanglement_candidate(da, db, base)
    for prefix, norm in (("measurement:", "l2"), ("measurement-l2:", "l2"), ("measurement-l1:", "l1")):
        if name.startswith(prefix):
            return measurement_candidate(load_povm(name[len(prefix):]), norm)
    if Path(name).is_file():
        return distance_from_profile(load_profile(name), validate=validate)
    raise UsageError(f"unknown candidate {name!r}")


def cmd_axioms(args, seed: int) -> ConformanceReport:
    c = resolve_candidate(args.candidate, _base(args), validate=not args.no_validate)
    povms = (c.context,) if c.context is not None else ()
    dims_ab = (c.bipartite,) if c.bipartite is not None else ((2, 2), (2, 3), (3, 3))
    config = ConformanceConfig(
        dims=args.dims or DEFAULT_DIMS["axioms"],
        trials=args.samples or DEFAULT_SAMPLES["axioms"],
        seed=seed,
        dims_ab=dims_ab,
        povms=povms,
        workers=args.workers,
    )
    return run_conformance(c, config)


def _config(args, seed: int, command: str) -> ex.ExperimentConfig:
    return ex.ExperimentConfig(
        seed=seed,
        dims=args.dims or DEFAULT_DIMS.get(command, (2, 3, 8, 64)),
        samples=args.samples or DEFAULT_SAMPLES.get(command, 100_000),
        entropy_base=_base(args),
        workers=args.workers,
    )


def cmd_discriminate(args) -> list[ex.ExperimentRecord]:
    a, b = load_state(args.state_a), load_state(args.state_b)
    va = a.state if isinstance(a, BipartiteState) else a
    vb = b.state if isinstance(b, BipartiteState) else b
    if va.shape != vb.shape:
        raise UsageError(f"{args.state_b}: dim {vb.size} does not match {args.state_a} dim {va.size}")
    res = helstrom(va, vb)
    gap = abs(res.l1_distance - 2.0 * np.sin(res.fs_distance))
    stats = {
        "pSuccess": res.p_success,
        "traceDistance": res.trace_distance,
        "fsDistance": res.fs_distance,
        "l1Distance": res.l1_distance,
        "l1Saturation": gap,
        "optimalPovm": [[[[z.real, z.imag] for z in row] for row in e] for e in res.optimal_povm.effects],
    }
    verdict = ex.CONSISTENT if gap <= 1e-9 else ex.INCONSISTENT
    params = {"stateA": str(args.state_a), "stateB": str(args.state_b)}
    witness = params if verdict == ex.INCONSISTENT else None
    return [ex.ExperimentRecord("discriminate", params, stats, verdict,
                                "P_succ = (1 + sin d_FS)/2, L1 = 2 sin d_FS", int(va.size), witness)]


def cmd_qfi(args) -> list[ex.ExperimentRecord]:
    if args.family not in FAMILIES:
        raise UsageError(f"unknown family {args.family!r}; choose from {', '.join(FAMILIES)}")
    family = FAMILIES[args.family]
    est = qfi_finite_difference(family, args.theta, args.step)
    steps = [args.step / 2**k for k in range(args.halvings + 1)]
    steps = [h for h in steps if h >= 1e-6]
    values = [qfi_finite_difference(family, args.theta, h).value for h in steps]
    stats = {"value": est.value, "buresSqOverStepSq": est.bures_sq_over_step_sq, "buresCheck": est.bures_check}
    verdict = ex.CONSISTENT if est.bures_check <= 1e-9 else ex.INCONSISTENT
    if len(values) >= 2:
        # Richardson extrapolation from the two finest steps (error is even in the step)
        converged = (4.0 * values[-1] - values[-2]) / 3.0
        errors = [abs(v - converged) for v in values]
        # amplitudes carry ~eps absolute error, so each value has relative error ~4 eps / step;
        # the extrapolated reference inherits 5/3 of the finest step's share
        noise = [4.0 * np.finfo(float).eps / h for h in steps]
        floor = [n + 5.0 / 3.0 * noise[-1] for n in noise]
        stats.update({"steps": steps, "values": values, "converged": converged, "errors": errors,
                      "roundingFloor": floor})
        shrinking = all(e2 <= e1 or e2 <= f2 for e1, e2, f2 in zip(errors[:-1], errors[1:], floor[1:]))
        stats["errorsShrink"] = shrinking
        if not shrinking:
            verdict = ex.INCONSISTENT
    params = {"family": args.family, "theta": args.theta, "step": args.step}
    witness = params if verdict == ex.INCONSISTENT else None
    return [ex.ExperimentRecord("qfi", params, stats, verdict, "d_B^2 = F_Q dtheta^2 / 4", witness=witness)]


# -- output ----------------------------------------------------------------------

def _csv_value(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return format_float(v)
    if isinstance(v, (list, tuple, dict, np.ndarray)):
        return dumps(v, indent=0).replace("\n", "")
    return str(v)


def records_csv(records: list[ex.ExperimentRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["experiment", "dim", "key", "value", "verdict"])
    for r in records:
        dim = "" if r.dim is None else r.dim
        for key, value in r.statistics.items():
            w.writerow([r.experiment, dim, key, _csv_value(value), r.verdict])
    return buf.getvalue()


def report_csv(report: ConformanceReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["axiom", "scope", "status", "trials", "maxViolation"])
    for v in report.verdicts:
        w.writerow([v.axiom.value, v.scope or "", v.status.value, v.trials, _csv_value(v.max_violation)])
    return buf.getvalue()


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        seed = _resolve_seed(args)
        if args.command == "axioms":
            report = cmd_axioms(args, seed)
            text = report.to_json() + "\n" if args.format == "json" else report_csv(report)
            _emit(text, args.out)
            return 0 if report.claims_hold else 1
        if args.command == "dist":
            records = cmd_dist(args)
        elif args.command == "discriminate":
            records = cmd_discriminate(args)
        elif args.command == "qfi":
            records = cmd_qfi(args)
        else:
            cfg = _config(args, seed, args.command)
            if args.command in ("inequalities", "concentration") and min(cfg.dims) < 2:
                raise UsageError("dims must be >= 2")
            suite = {
                "inequalities": ex.inequality_suite,
                "concentration": ex.concentration_suite,
                "identities": ex.identity_suite,
            }[args.command]
            records = suite(cfg)
    except (UsageError, QmetricError, ValueError, OSError) as exc:
        print(f"qmetric: error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        text = dumps({"command": args.command, "seed": seed, "records": [r.to_dict() for r in records]}) + "\n"
    else:
        text = records_csv(records)
    _emit(text, args.out)
    return 1 if any(r.verdict == ex.INCONSISTENT for r in records) else 0


if __name__ == "__main__":
    sys.exit(main())
