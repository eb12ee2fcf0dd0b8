"""Command line entry point: ``zipfabbrev analyze`` and ``zipfabbrev single``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from zipfabbrev.model import Unit
from zipfabbrev.report import (
    FORMATS,
    BatchConfig,
    BatchResult,
    ConfigError,
    LanguageEntry,
    significance_marker,
    run_batch,
)

EXIT_OK, EXIT_FATAL, EXIT_PARTIAL = 0, 1, 2


def _summary_table(result: BatchResult) -> str:
    head = f"{'language':<20} {'n':>7} {'T':>9} {'L':>6} {'L_r':>6} {'tau':>6} {'tau_p_adj':>10}    {'r':>6} {'r_p_adj':>10}"
    lines = [head]
    for rep in result.reports:
        s = rep.summary
        lines.append(
            f"{rep.language:<20} {rep.n_filtered:>7} {rep.T_filtered:>9} {s.L:>6.2f} {s.L_r:>6.2f} "
            f"{s.tau:>6.2f} {rep.tau_p_adjusted:>10.2e} {significance_marker(rep.tau_p_adjusted):<3} "
            f"{s.r:>6.2f} {rep.r_p_adjusted:>10.2e} {significance_marker(rep.r_p_adjusted)}"
        )
    for lang, err in result.errors.items():
        lines.append(f"{lang:<20} ERROR {err}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zipfabbrev", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    an = sub.add_parser("analyze", help="run every language listed in a JSON config")
    an.add_argument("--config", required=True, type=Path)
    an.add_argument("--out-dir", type=Path, default=Path("."))
    an.add_argument("--seed", type=int)
    an.add_argument("--trials", type=int, help="Monte Carlo permutation trials (0 = skip)")

    one = sub.add_parser("single", help="analyze one input file")
    one.add_argument("--input", required=True, type=Path)
    one.add_argument("--format", required=True, choices=FORMATS)
    one.add_argument("--unit", required=True, choices=[u.value for u in Unit])
    one.add_argument("--mapping", type=Path)
    one.add_argument("--optional-filter", choices=("on", "off"), default="on")
    one.add_argument("--cjk-mode", action="store_true")
    one.add_argument("--language", default=None)
    one.add_argument("--out-dir", type=Path)
    one.add_argument("--seed", type=int, default=0)
    one.add_argument("--trials", type=int, default=0)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "analyze":
            result = run_batch(args.config, args.out_dir, seed=args.seed, trials=args.trials)
        else:
            if args.unit == Unit.MAPPED.value and args.format != "typelist" and args.mapping is None:
                print("error: --unit mapped needs --mapping", file=sys.stderr)
                return EXIT_FATAL
            if not args.input.is_file():
                print(f"error: cannot read {args.input}", file=sys.stderr)
                return EXIT_FATAL
            entry = LanguageEntry(
                language=args.language or args.input.stem,
                input=args.input,
                format=args.format,
                unit=Unit(args.unit),
                mapping=args.mapping,
                optional_filter=args.optional_filter == "on",
                cjk_mode=args.cjk_mode,
            )
            config = BatchConfig(languages=(entry,), seed=args.seed, trials=args.trials)
            result = run_batch(config, args.out_dir)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FATAL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FATAL

    print(_summary_table(result))
    return EXIT_PARTIAL if result.errors else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
