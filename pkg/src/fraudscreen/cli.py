"""Command-line front end.

Exit status reports operational failures only; the statistical decision is
carried in the report:

    0  run completed (whatever the H0 decision)
    2  usage error (bad flags or argument values)
    3  data error (unreadable file, unusable column, malformed factors)
    4  numeric or capacity error
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import report as rpt
from . import rng
from .benford import benford_distribution
from .errors import CapacityError, DataError, DomainError, NumericError, PreconditionError
from .gof import SignificanceConfig, benford_gof_test
from .ingest import SamplingPlan, draw_sample, load_ledger, sample_digit_counts
from .mi_matrix import CaseDescriptor, ManipulationKind, MICell, Multiplicity, Structure, classify
from .montecarlo import DEFAULT_MAX_DRAWS, MonteCarloConfig, simulate
from .neutrosophic import DEFAULT_TAU, conditional_fraud_probability, interpret_outcome, load_assessment
from .synth import DEFAULT_DRAW_BUDGET, ManipulationScheme, calibrate

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERIC = 4

NOTE_NO_FACTORS = "neutrosophic assessment skipped: no factors supplied"
NOTE_RETAINED = "neutrosophic assessment skipped: H0 retained, so NP(F|E^c) is undefined"

log = logging.getLogger("fraudscreen")


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--output", type=Path, help="write the report here instead of stdout")


def _kinds(value: str) -> list[str]:
    return [k.strip() for k in value.split(",") if k.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fraudscreen", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log warnings and progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("screen", help="load a ledger, sample it, simulate reference frequencies and test")
    s.add_argument("--input", required=True, type=Path)
    s.add_argument("--column", default="amount")
    s.add_argument("--delimiter", default=",")
    s.add_argument("--sample-size", required=True, type=int)
    s.add_argument("--sample-method", choices=("simple", "systematic"), default="simple")
    s.add_argument("--epsilon", type=float, default=0.005)
    s.add_argument("--alpha", type=float, default=0.05)
    s.add_argument("--min-expected", type=float, default=5.0)
    s.add_argument("--pool-low-expected", action="store_true")
    s.add_argument("--expected", choices=("simulated", "theoretical"), default="simulated",
                   help="'theoretical' compares against exact Benford probabilities (non-canonical)")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--max-draws", type=int, default=DEFAULT_MAX_DRAWS)
    s.add_argument("--factors", type=Path)
    s.add_argument("--tau", type=float, default=DEFAULT_TAU)
    s.add_argument("--involvement", type=int, choices=range(1, 9), metavar="I")
    s.add_argument("--manipulation", type=int, choices=range(1, 6), metavar="J")
    s.add_argument("--potentiality", help="free-text fraud potentiality note attached to the report")
    _add_output_flags(s)

    m = sub.add_parser("simulate", help="run the Monte Carlo reference simulation alone")
    m.add_argument("--epsilon", type=float, default=0.005)
    m.add_argument("--n", type=int, required=True, help="epoch size (audit sample size)")
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--workers", type=int, default=1)
    m.add_argument("--max-draws", type=int, default=DEFAULT_MAX_DRAWS)
    m.add_argument("--include-epochs", action="store_true", help="also emit per-epoch frequencies")
    _add_output_flags(m)

    c = sub.add_parser("calibrate", help="measure rejection rates on synthetic ledgers")
    c.add_argument("--scheme", choices=("benford", "uniform", "inflation"), required=True)
    c.add_argument("--digit", type=int, help="inflated digit (inflation scheme)")
    c.add_argument("--boost", type=float, help="mass moved onto --digit (inflation scheme)")
    c.add_argument("--trials", type=int, default=1000)
    c.add_argument("--n", type=int, default=500)
    c.add_argument("--epsilon", type=float, default=0.005)
    c.add_argument("--alpha", type=float, default=0.05)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--compare-theoretical", action="store_true")
    c.add_argument("--draw-budget", type=int, default=DEFAULT_DRAW_BUDGET)
    _add_output_flags(c)

    k = sub.add_parser("classify", help="place a case on the manipulation-involvement matrix")
    k.add_argument("--fraud-multiplicity", required=True, choices=[e.value for e in Multiplicity])
    k.add_argument("--structure", required=True, choices=[e.value for e in Structure])
    k.add_argument("--kinds", required=True, type=_kinds,
                   help="comma-separated: " + ", ".join(e.value for e in ManipulationKind))
    k.add_argument("--potentiality", help="free-text fraud potentiality note attached to the report")
    _add_output_flags(k)
    return parser


def cmd_screen(args: argparse.Namespace) -> dict:
    cfg = SignificanceConfig(args.alpha, args.min_expected, args.pool_low_expected)
    mc_config = MonteCarloConfig(args.epsilon, args.sample_size, rng.derive_seed(args.seed, 1))
    plan = SamplingPlan(args.sample_method, args.sample_size, rng.derive_seed(args.seed, 0))
    if (args.involvement is None) != (args.manipulation is None):
        raise DomainError("--involvement and --manipulation must be given together")
    cell = MICell(args.involvement, args.manipulation) if args.involvement is not None else None
    assessment = load_assessment(args.factors) if args.factors is not None else None

    load = load_ledger(args.input, args.column, args.delimiter)
    counts = sample_digit_counts(draw_sample(load.records, plan))
    sim = simulate(mc_config, workers=args.workers, max_draws=args.max_draws)
    if args.expected == "theoretical":
        gof = benford_gof_test(counts, benford_distribution(), cfg, expected_source="theoretical")
    else:
        gof = benford_gof_test(counts, sim.pooled_frequencies, cfg)

    notes = []
    neutro = None
    if not gof.rejected:
        if assessment is not None:
            notes.append(NOTE_RETAINED)
    elif assessment is None:
        notes.append(NOTE_NO_FACTORS)
    else:
        triple = conditional_fraud_probability(gof, assessment)
        outcome = interpret_outcome(triple, args.tau)
        neutro = rpt.neutrosophic_section(triple, outcome, args.tau, gof)
    return rpt.screen_report(
        load, plan, sim, args.epsilon, gof, cfg.min_expected,
        neutrosophic=neutro, mi_cell=cell, potentiality=args.potentiality, notes=notes,
    )


def cmd_simulate(args: argparse.Namespace) -> dict:
    sim = simulate(MonteCarloConfig(args.epsilon, args.n, args.seed), workers=args.workers, max_draws=args.max_draws)
    return rpt.simulation_report(sim, args.epsilon, args.include_epochs)


def cmd_calibrate(args: argparse.Namespace) -> dict:
    scheme = ManipulationScheme(args.scheme, args.digit, args.boost)
    rep = calibrate(
        scheme, args.trials, args.n, args.epsilon, args.alpha, args.seed,
        workers=args.workers, compare_theoretical=args.compare_theoretical, draw_budget=args.draw_budget,
    )
    return rpt.calibration_report(rep)


def cmd_classify(args: argparse.Namespace) -> dict:
    case = CaseDescriptor(args.fraud_multiplicity, args.structure, frozenset(args.kinds))
    return rpt.classification_report(classify(case), args.potentiality)


COMMANDS = {
    "screen": cmd_screen,
    "simulate": cmd_simulate,
    "calibrate": cmd_calibrate,
    "classify": cmd_classify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        report = COMMANDS[args.command](args)
        text = rpt.to_json(report) if args.format == "json" else rpt.to_text(report)
    except DataError as exc:
        print(f"fraudscreen: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (NumericError, CapacityError) as exc:
        print(f"fraudscreen: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (DomainError, PreconditionError, ValueError, TypeError) as exc:
        print(f"fraudscreen: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.output is not None:
        try:
            args.output.write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"fraudscreen: data error: cannot write {args.output}: {exc.strerror}", file=sys.stderr)
            return EXIT_DATA
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
