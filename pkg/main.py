"""
Command-line entry point for the Harbourne index toolkit.

Commands: compute, verify, generate, pseudolines, census.
Exit codes: 0 success, 1 bound violation, 2 input error.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from domain import SurfaceKind
from utils import container, event_bus, ReportCreatedEvent, ScanCompletedEvent
from utils.config import config
from utils.errors import HarbourneError, InvalidInputError
from utils.logging_setup import LOG_LEVELS, setup_logging
from services.arrangement_service import GENERATORS
from services.report_service import PSEUDOLINE_CSV_COLUMNS

logger = logging.getLogger("harbourne")

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT_ERROR = 2

SCAN_COLUMNS = [
    "k", "class_count", "min_index", "argmin_index", "argmin_index_t_vector",
    "min_shnurnikov_margin", "argmin_shnurnikov", "argmin_shnurnikov_t_vector", "flat_bound_violations",
]


class _Parser(argparse.ArgumentParser):
    """Argument errors are input errors"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="harbourne", description="Exact Harbourne indices, bounds and pseudoline scans")
    parser.add_argument("--log-level", type=str.upper, choices=LOG_LEVELS, default=None,
                        help="override LOG_LEVEL")
    parser.add_argument("--store", action="store_true", help="persist results to the census store")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    presets = [kind.value for kind in SurfaceKind if kind is not SurfaceKind.CUSTOM]
    for name, help_text in (("compute", "evaluate a configuration file"),
                            ("verify", "exit 1 if an asserted bound fails")):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("path")
        cmd.add_argument("--surface-preset", choices=presets, default=None)
        cmd.add_argument("--d", type=int, default=None, help="degree for DegreeDInP3")
        if name == "compute":
            cmd.add_argument("--format", choices=("json", "csv"), default="json")
            cmd.add_argument("--out", default=None)
            cmd.add_argument("--sweep-smooth", type=int, default=None, metavar="N",
                             help="also sweep selections with up to N smooth points")

    gen = sub.add_parser("generate", help="write a configuration file for a named configuration")
    gen.add_argument("name", help=f"one of {', '.join(GENERATORS + ('random',))}")
    gen.add_argument("--d", type=int, default=None)
    gen.add_argument("--k", type=int, default=None)
    gen.add_argument("--n-isolated", type=int, default=0)
    gen.add_argument("--stars", type=int, default=1, help="schur stars in a disjoint-union")
    gen.add_argument("--seed", type=int, default=None)
    gen.add_argument("--bound", type=int, default=10, help="coefficient bound for random")
    gen.add_argument("--generic", action="store_true", help="random: only double points")
    gen.add_argument("--out", default=None)

    pl = sub.add_parser("pseudolines", help="enumerate or scan pseudoline arrangements")
    pl.add_argument("--k", type=int, required=True)
    pl.add_argument("--mode", choices=("enumerate", "scan"), default="enumerate")
    pl.add_argument("--limit", type=int, default=None)
    pl.add_argument("--workers", type=int, default=None, help="0 = one per CPU")
    pl.add_argument("--override-k-limit", action="store_true")
    pl.add_argument("--format", choices=("json", "csv"), default="csv")
    pl.add_argument("--out", default=None)

    census = sub.add_parser("census", help="list stored scan summaries")
    census.add_argument("--k", type=int, default=None)
    return parser


def _write(text: str, out: Optional[str]):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")
        logger.info(f"Wrote {out}")


def cmd_compute(args) -> int:
    reports = container.get_report_service()
    report, document = reports.create_report(args.path, args.surface_preset, args.d, args.sweep_smooth)
    verdict = "violation" if report.violations() else "ok"
    payload = reports.emit_json(document)
    event_bus.publish_report_created(ReportCreatedEvent(
        source=args.path, index=report.index, verdict=verdict, payload=payload
    ))
    _write(payload if args.format == "json" else reports.emit_csv(document), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    reports = container.get_report_service()
    report, document = reports.create_report(args.path, args.surface_preset, args.d)
    violations = report.violations()
    event_bus.publish_report_created(ReportCreatedEvent(
        source=args.path,
        index=report.index,
        verdict="violation" if violations else "ok",
        payload=reports.emit_json(document),
    ))
    if violations:
        for outcome in violations:
            logger.warning(f"Bound {outcome.name} violated with margin {outcome.margin}")
            print(f"VIOLATED {outcome.name} margin {outcome.margin.numerator}/{outcome.margin.denominator}")
        return EXIT_VIOLATION
    print(f"OK {len(report.bound_results)} bounds hold, index {document.index}")
    return EXIT_OK


def cmd_generate(args) -> int:
    arrangements = container.get_arrangement_service()
    surfaces = container.get_surface_service()
    name = args.name.replace("_", "-")

    def need(value, flag):
        if value is None:
            raise InvalidInputError(f"{name} needs {flag}")
        return value

    if name == "schur-star":
        d = need(args.d, "--d")
        generated, surface = arrangements.schur_star(d), surfaces.preset(SurfaceKind.DEGREE_D, d)
    elif name == "disjoint-union":
        d = need(args.d, "--d")
        stars = [arrangements.schur_star(d) for _ in range(args.stars)]
        generated = arrangements.disjoint_union(stars, args.n_isolated, d)
        surface = surfaces.preset(SurfaceKind.DEGREE_D, d)
    elif name == "random":
        generated = arrangements.random_arrangement(
            need(args.k, "--k"), seed=args.seed, coefficient_bound=args.bound, generic=args.generic
        )
        surface = surfaces.preset(SurfaceKind.P2R)
    else:
        generated = arrangements.generate(name, k=need(args.k, "--k"))
        surface = surfaces.preset(SurfaceKind.P2R)

    document = container.get_report_service().config_document(generated, surface)
    _write(json.dumps(document, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_pseudolines(args) -> int:
    pseudolines = container.get_pseudoline_service()
    reports = container.get_report_service()

    if args.mode == "scan":
        enumerated = list(pseudolines.enumerate(args.k, None, args.workers, args.override_k_limit))
        result = pseudolines.scan_of(args.k, enumerated)
        classes = [(cls, *pseudolines.class_metrics(cls)) for cls in enumerated]
        event_bus.publish_scan_completed(ScanCompletedEvent(k=args.k, classes=classes, result=result))
        _write(reports.emit_table([reports.scan_row(result)], SCAN_COLUMNS, args.format), args.out)
        return EXIT_VIOLATION if result.flat_bound_violations else EXIT_OK

    classes = [(cls, *pseudolines.class_metrics(cls))
               for cls in pseudolines.enumerate(args.k, args.limit, args.workers, args.override_k_limit)]
    event_bus.publish_scan_completed(ScanCompletedEvent(k=args.k, classes=classes))
    rows = reports.pseudoline_rows(classes)
    _write(reports.emit_table(rows, PSEUDOLINE_CSV_COLUMNS, args.format), args.out)
    return EXIT_OK if all(row["flat_bound_ok"] for row in rows) else EXIT_VIOLATION


def cmd_census(args) -> int:
    container.enable_storage()
    census = container.get_census_service()
    db = census.session_factory()
    try:
        rows = [
            {
                "k": scan.k,
                "class_count": scan.class_count,
                "min_index": scan.min_index,
                "argmin_index": scan.argmin_index,
                "min_shnurnikov_margin": scan.min_shnurnikov_margin,
                "argmin_shnurnikov": scan.argmin_shnurnikov,
                "flat_bound_violations": scan.flat_bound_violations,
            }
            for scan in census.list_scans(db, args.k)
        ]
    finally:
        db.close()
    columns = [c for c in SCAN_COLUMNS if not c.endswith("_t_vector")]
    _write(container.get_report_service().emit_table(rows, columns, "csv"), None)
    return EXIT_OK


COMMANDS = {
    "compute": cmd_compute,
    "verify": cmd_verify,
    "generate": cmd_generate,
    "pseudolines": cmd_pseudolines,
    "census": cmd_census,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.store:
        config.STORE_RESULTS = True

    try:
        setup_logging(args.log_level)
        container.initialize()
        if config.STORE_RESULTS:
            container.enable_storage()
        return COMMANDS[args.command](args)
    except HarbourneError as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
