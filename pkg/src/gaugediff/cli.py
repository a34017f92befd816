"""Command-line interface.

Exit codes: 0 success, 1 domain failure (non-recurrent drift, non-trivial
stabilizer, failed verification, non-finite state), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import re
import sys
import time
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .errors import GaugeDiffError, StabilizerError
from .exact import (
    closed_form_rates,
    exact_sample,
    exact_sample_centered_graph,
    exponential_coordinates,
)
from .gauge import CoxeterGauge
from .io import (
    ConfigError,
    ModelSpec,
    load_config,
    make_report,
    parse_vector,
    write_csv,
    write_report,
)
from .permlaw import PERM_LIMIT, mode_check, perm_pmf, rank_pmf, urn_pmf
from .sim import SimulationError, run
from .streams import make_rng
from .verify import DEFAULT_SEED, SUITES, run_suite

__all__ = ["main", "build_parser"]


class UsageError(Exception):
    """Bad arguments detected after argparse (exit code 2)."""


def _number(text: str):
    """``"1/2"`` -> Fraction, ``"3"`` -> int, otherwise float."""
    text = text.strip()
    try:
        if "/" in text:
            return Fraction(text)
        value = float(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    return int(value) if value.is_integer() and "." not in text and "e" not in text.lower() else value


def _vector(text: str) -> list[float]:
    try:
        return parse_vector(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _exact_vector(text: str) -> list:
    return [_number(p) for p in text.strip().strip("()[]").split(",")]


def _fmt(v) -> str:
    return f"{float(v):.10g}"


def _common(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--seed", type=int, default=default, help="random seed (required by randomized commands)")
    parser.add_argument("--workers", type=int, default=default, help="number of independent simulation workers")
    parser.add_argument("--out", default=default, help="output file or directory")


def _model_args(p: argparse.ArgumentParser, families) -> None:
    p.add_argument("--family", required=True, choices=families)
    p.add_argument("--lambda", dest="lam", type=_vector, help="Coxeter parameter, e.g. 1,2,3")
    p.add_argument("--delta", type=_vector, help="rank drifts for family A, e.g. 2,0,-2")
    p.add_argument("--masses", type=_vector, help="masses for the gravity model")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaugediff",
        description="Invariant laws of diffusions with gauge drifts: rates, samplers, simulation and checks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("rates", help="exponential rates from the orbit pipeline and the closed form")
    _model_args(p, ("A", "B", "D"))
    _common(p, suppress=True)

    p = sub.add_parser("simulate", help="run an Euler-Maruyama experiment from a config file")
    p.add_argument("config", help="key = value or JSON config file")
    _common(p, suppress=True)

    p = sub.add_parser("exact-sample", help="draw from the exact invariant law")
    _model_args(p, ("A", "B", "D", "mass"))
    p.add_argument("--size", type=int, default=1000)
    _common(p, suppress=True)

    p = sub.add_parser("perm-law", help="ordering law of the gravity model")
    p.add_argument("--masses", required=True, type=_exact_vector, help="e.g. 2,1,1 (fractions allowed)")
    p.add_argument("--particle", type=int, default=1, help="particle whose rank marginal is printed")
    _common(p, suppress=True)

    p = sub.add_parser("rank-law", help="rank law of a particle of mass alpha among n - 1 unit masses")
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--alpha", required=True, type=_number)
    _common(p, suppress=True)

    p = sub.add_parser("urn", help="Polya urn red-draw law after n - 1 draws from (a, a)")
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--a", required=True, type=_number)
    _common(p, suppress=True)

    p = sub.add_parser("verify", help="run a verification suite and write a JSON report")
    p.add_argument("suite", help=f"one of {', '.join(SUITES)}")
    _common(p, suppress=True)
    return parser


# ---------------------------------------------------------------------------
# Commands


def _spec_from_args(args) -> ModelSpec:
    given = {k: getattr(args, k) for k in ("lam", "delta", "masses") if getattr(args, k, None) is not None}
    if len(given) != 1:
        raise UsageError("give exactly one of --lambda, --delta, --masses")
    key, value = next(iter(given.items()))
    allowed = {"A": ("lam", "delta"), "B": ("lam",), "D": ("lam",), "mass": ("masses",)}[args.family]
    if key not in allowed:
        raise UsageError(f"family {args.family} takes {' or '.join('--' + a.replace('lam', 'lambda') for a in allowed)}")
    try:
        return ModelSpec(args.family, **{key: tuple(value)})
    except ConfigError as exc:
        raise UsageError(str(exc).split(": ", 1)[-1]) from None


def _closed_names(fam: str, count: int) -> list[str]:
    if fam == "A":
        return [f"X[{j + 1}]-X[{j}]" for j in range(1, count + 1)]
    if fam == "B":
        return ["|X|[1]"] + [f"|X|[{j + 1}]-|X|[{j}]" for j in range(1, count)]
    return ["H[1]+H[2]", "H[2]-H[1]"] + [f"H[{j}]-H[{j - 1}]" for j in range(3, count + 1)]


def cmd_rates(args, out) -> int:
    spec = _spec_from_args(args)
    fam = spec.family
    notes = []
    if fam == "A":
        delta = np.asarray(spec.delta if spec.delta is not None else [-v for v in spec.lam])
        lam = -delta
        closed = closed_form_rates("A", delta)
    else:
        lam = np.asarray(spec.lam)
        try:
            closed = closed_form_rates(fam, lam)
        except ValueError as exc:
            closed = None
            notes.append(f"closed form n/a: {exc}")
    coords = None
    if fam == "A" and np.any(np.diff(delta) > 0):
        notes.append("pipeline n/a: the orbit pipeline covers non-increasing rank drifts only")
    else:
        try:
            coords = exponential_coordinates(CoxeterGauge.from_spec(fam, lam))
        except StabilizerError as exc:
            if closed is None:
                raise
            notes.append(f"pipeline n/a: {exc}")
    pipeline = None if coords is None else coords.rates
    best = pipeline if pipeline is not None else closed
    names = coords.variable_names if coords is not None else _closed_names(fam, len(best))

    print(f"family {fam}, parameter {','.join(_fmt(v) for v in spec.parameter)}", file=out)
    print(f"{'variable':<16} {'pipeline':>14} {'closed_form':>14}", file=out)
    for j, name in enumerate(names):
        pv = "n/a" if pipeline is None else _fmt(pipeline[j])
        cv = "n/a" if closed is None else _fmt(closed[j])
        print(f"{name:<16} {pv:>14} {cv:>14}", file=out)
    print("rates: " + ",".join(_fmt(v) for v in best), file=out)
    if pipeline is not None and closed is not None:
        print(f"max |pipeline - closed form| = {np.max(np.abs(pipeline - closed)):.3g}", file=out)
    for note in notes:
        print(note, file=out)
    if args.out:
        param = ",".join(repr(float(v)) for v in spec.parameter)
        header = ["variable_name", "rate", "family", "parameter_vector"]
        write_csv(args.out, header, ([name, float(r), fam, param] for name, r in zip(names, best)))
    return 0


def _require_seed(args) -> int:
    if getattr(args, "seed", None) is None:
        raise UsageError("this command is randomized: pass --seed")
    return args.seed


def cmd_simulate(args, out) -> int:
    cfg = load_config(args.config, overrides={"seed": args.seed, "workers": args.workers})
    sim = cfg.sim
    if sim is None:
        raise ConfigError("no simulation fields (functional, dt, total_steps, ...) in config", source=args.config)
    if sim.workers > 1:
        sim = replace(sim, parallel=True)
    model = cfg.model.build()
    try:
        res = run(model, sim, cfg.functional)
    except ValueError as exc:
        raise ConfigError(str(exc), field="functional", source=args.config) from None
    out_dir = Path(args.out or cfg.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_csv(out_dir / "samples.csv", res.columns, res.matrix)
    ess = res.ess() if res.matrix.shape[0] >= 100 else [float("nan")] * len(res.columns)
    config = cfg.to_dict()
    config["sim"] = {k: v for k, v in vars(res.config).items()}
    report = make_report(cfg.model.to_dict(), config, [], res.wall_time_s,
                         columns=res.columns, ess=dict(zip(res.columns, ess)),
                         n_samples=int(res.matrix.shape[0]))
    write_report(out_dir / "run.json", report)
    print(f"wrote {res.matrix.shape[0]} samples x {len(res.columns)} columns to {out_dir / 'samples.csv'}", file=out)
    for c, e in zip(res.columns, ess):
        print(f"  {c}: mean={np.mean(res.matrix[:, res.columns.index(c)]):.6g} ess={e:.0f}", file=out)
    print(f"wall time {res.wall_time_s:.2f} s", file=out)
    return 0


def cmd_exact_sample(args, out) -> int:
    seed = _require_seed(args)
    spec = _spec_from_args(args)
    rng = make_rng(seed)
    if args.size < 1:
        raise UsageError("--size must be positive")
    if spec.family == "mass":
        if spec.n > PERM_LIMIT:
            raise UsageError(f"exact mass-model sampling enumerates n! orderings; n <= {PERM_LIMIT}")
        x = exact_sample_centered_graph(spec.masses, rng, args.size)
    else:
        x = exact_sample(spec.build(), rng, args.size)
    header = [f"x_{j}" for j in range(1, x.shape[1] + 1)]
    if args.out:
        write_csv(args.out, header, x)
        print(f"wrote {len(x)} samples to {args.out}", file=out)
    else:
        write_csv(out, header, x)
    return 0


def _pmf_text(p) -> str:
    return ",".join(f"{float(v):.10g}" for v in p)


def cmd_perm_law(args, out) -> int:
    masses = args.masses
    n = len(masses)
    if n > PERM_LIMIT:
        raise UsageError(f"n={n} exceeds the enumeration guard n <= {PERM_LIMIT} (n! orderings)")
    if not 1 <= args.particle <= n:
        raise UsageError(f"--particle must be in 1..{n}")
    law = perm_pmf(masses)
    header = ["permutation", "probability"]
    rows = law.rows()
    write_csv(out, header, rows)
    marg = law.rank_marginal(args.particle - 1)
    print(f"P(rank{args.particle})={_pmf_text(marg)}", file=out)
    summary = law.summary()
    print(f"entropy={summary['entropy']:.10g} mode={';'.join(summary['mode'])} "
          f"tv_vs_uniform={summary['tv_vs_uniform']:.10g}", file=out)
    if args.out:
        _write_law(args.out, header, rows, summary)
    return 0


def _write_law(target, header, rows, summary) -> None:
    """CSV at ``target`` plus the JSON summary next to it (suffix ``.json``)."""
    path = Path(target)
    write_csv(path, header, rows)
    write_report(path.with_suffix(".json"), summary)


def _law_output(out, probs, label: str, index_name: str, start: int) -> tuple[list, list]:
    header = [index_name, "probability"]
    rows = [[j + start, float(p)] for j, p in enumerate(probs)]
    write_csv(out, header, rows)
    print(f"{label}={_pmf_text(probs)}", file=out)
    return header, rows


def cmd_rank_law(args, out) -> int:
    if args.n < 1 or args.alpha <= 0:
        raise UsageError("need n >= 1 and alpha > 0")
    law = rank_pmf(args.n, args.alpha)
    header, rows = _law_output(out, law.pmf, "pmf", "rank", 1)
    if args.alpha != 1:
        print("mode=" + ",".join(str(m) for m in mode_check(args.n, args.alpha)), file=out)
    if args.out:
        _write_law(args.out, header, rows, law.summary())
    return 0


def cmd_urn(args, out) -> int:
    if args.n < 1 or args.a <= 0:
        raise UsageError("need n >= 1 and a > 0")
    header, rows = _law_output(out, urn_pmf(args.n, args.a), "pmf", "red_draws", 0)
    if args.out:
        write_csv(args.out, header, rows)
    return 0


def cmd_verify(args, out) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; expected one of {', '.join(SUITES)}")
    seed = DEFAULT_SEED if args.seed is None else args.seed
    t0 = time.perf_counter()

    def show(res):
        print(res.line(), file=out)
        for rep in res.reports:
            print("    " + rep.line(), file=out)
        out.flush()

    results = run_suite(args.suite, seed=seed, progress=show)
    passed = all(r.passed for r in results)
    reports = [rep for r in results for rep in r.reports]
    report = make_report(
        {"suite": args.suite},
        {"seed": seed, "level": 0.01},
        reports,
        time.perf_counter() - t0,
        criteria=[{"number": r.number, "title": r.title, "verdict": "pass" if r.passed else "fail",
                   "wall_time_s": r.wall_time_s, "extra": r.extra} for r in results],
    )
    if args.out:
        write_report(args.out, report)
    print(f"suite {args.suite}: {'PASS' if passed else 'FAIL'} "
          f"({sum(r.passed for r in results)}/{len(results)} criteria)", file=out)
    return 0 if passed else 1


_COMMANDS = {
    "rates": cmd_rates,
    "simulate": cmd_simulate,
    "exact-sample": cmd_exact_sample,
    "perm-law": cmd_perm_law,
    "rank-law": cmd_rank_law,
    "urn": cmd_urn,
    "verify": cmd_verify,
}


_VECTOR_FLAGS = ("--lambda", "--delta", "--masses")
_NEGATIVE_LIST = re.compile(r"^-[\d.]")


def _attach_negative_vectors(argv: list[str]) -> list[str]:
    """``--lambda -1,2,3`` -> ``--lambda=-1,2,3`` so argparse does not read a flag."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VECTOR_FLAGS and i + 1 < len(argv) and _NEGATIVE_LIST.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_attach_negative_vectors(argv))
    try:
        return _COMMANDS[args.command](args, out)
    except (UsageError, ConfigError) as exc:
        print(f"gaugediff {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (GaugeDiffError, SimulationError) as exc:
        print(f"gaugediff {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"gaugediff {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
