"""
Elliptic WDVV - verification of elliptic trilogarithm solutions of the WDVV equations.
"""

import argparse
import asyncio
import json
import logging
import sys
import time
from typing import List, Optional, Sequence

from pydantic import ValidationError

from helpers import resolve_system
from models import (
    CHECK_FAMILIES,
    DEFAULT_FD_TOL,
    DEFAULT_HURWITZ_TOL,
    DEFAULT_IDENTITY_TOL,
    DEFAULT_MAX_TERMS,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_TOL,
    DEFAULT_WDVV_TOL,
    CatalogError,
    ConfigError,
    RunConfig,
    SeriesParams,
    VerificationError,
    VerificationReport,
)
from tools import run_family
from utils import reports_to_json, reports_to_text, write_report
from vee_systems import CATALOG, VSystem

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def progress(message: str):
    """Human progress lines go to stderr so stdout stays a clean report."""
    print(f"- {message}", file=sys.stderr)


async def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point for the application."""
    args = parse_arguments(argv)
    logging.basicConfig(
        level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    if args.command == "list":
        print(cmd_list(args.json), end="")
        return EXIT_OK

    try:
        config = build_run_config(args)
        progress(f"Resolving {args.system}...")
        system = resolve_system(args.system, config.params)
    except (ConfigError, CatalogError) as exc:
        progress(f"Error: {exc}")
        return EXIT_USAGE

    try:
        return await cmd_verify(system, config)
    except OSError as exc:
        progress(f"Error: cannot write {config.output}: {exc.strerror or exc}")
        return EXIT_USAGE


def parse_arguments(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(prog="elliptic-wdvv", description="Verify elliptic vee-systems and their WDVV solutions")
    commands = parser.add_subparsers(dest="command", required=True)

    list_parser = commands.add_parser("list", help="List the catalog systems")
    list_parser.add_argument("--json", action="store_true", default=False, help="Print the catalog as JSON")

    verify = commands.add_parser("verify", help="Run checks on a catalog system or a system JSON file")
    verify.add_argument("system", type=str, help="Catalog name such as A2, G2(h=0), AN(3), or a path to a JSON file")
    verify.add_argument("--checks", type=str, required=False, default=None,
                        help=f"Comma separated check families out of {', '.join(CHECK_FAMILIES)}")
    verify.add_argument("--all", action="store_true", default=False, help="Run every check family")
    verify.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                        help="Catalog parameter, may be repeated")
    verify.add_argument("--tol", type=float, default=DEFAULT_TOL, help="Tolerance of special function checks")
    verify.add_argument("--fd-tol", type=float, default=DEFAULT_FD_TOL, help="Tolerance of finite difference oracles")
    verify.add_argument("--wdvv-tol", type=float, default=DEFAULT_WDVV_TOL,
                        help="Tolerance of associators, transformation laws and limits")
    verify.add_argument("--hurwitz-tol", type=float, default=DEFAULT_HURWITZ_TOL,
                        help="Tolerance of the residue and Jacobian checks")
    verify.add_argument("--identity-tol", type=float, default=DEFAULT_IDENTITY_TOL,
                        help="Tolerance of the functional identities")
    verify.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS, help="Largest number of q-series terms")
    verify.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="Number of random sample points")
    verify.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Seed of the sample points")
    verify.add_argument("--json", action="store_true", default=False, help="Emit the reports as JSON")
    verify.add_argument("--output", type=str, default=None, help="Write the report to this file")
    verify.add_argument("--timings", action="store_true", default=False, help="Record elapsed time per check")
    verify.add_argument("--verbose", action="store_true", default=False, help="Log progress at INFO level")
    verify.add_argument("--high-rank", action="store_true", default=False,
                        help="Run the residue comparison for ranks above two")
    return parser.parse_args(argv)


def parse_params(pairs: Sequence[str]) -> dict:
    """
    Turn repeated --param key=value flags into a dictionary.

    Args:
        pairs: The raw flag values

    Returns:
        Stripped keys mapped to stripped values

    Raises:
        ConfigError: If a pair has no "=" or an empty key or value
    """
    params = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key.strip() or not value.strip():
            raise ConfigError(f"--param expects key=value, got {pair!r}")
        params[key.strip()] = value.strip()
    return params


def parse_checks(checks: Optional[str], run_all: bool) -> List[str]:
    """The selected families in their fixed order."""
    if run_all or not checks:
        return list(CHECK_FAMILIES)
    selected = {c.strip() for c in checks.split(",") if c.strip()}
    unknown = sorted(selected - set(CHECK_FAMILIES))
    if unknown:
        raise ConfigError(f"unknown check {', '.join(unknown)}; choose from {', '.join(CHECK_FAMILIES)}")
    if not selected:
        raise ConfigError("--checks selects no check family")
    return [family for family in CHECK_FAMILIES if family in selected]


def build_run_config(args: argparse.Namespace) -> RunConfig:
    """
    Build the run configuration from parsed arguments.

    Raises:
        ConfigError: For a malformed --param or --checks value or an out of range number
    """
    try:
        return RunConfig(
            tol=args.tol,
            fd_tol=args.fd_tol,
            wdvv_tol=args.wdvv_tol,
            hurwitz_tol=args.hurwitz_tol,
            identity_tol=args.identity_tol,
            series=SeriesParams(max_terms=args.max_terms),
            samples=args.samples,
            seed=args.seed,
            output=args.output,
            output_format="json" if args.json else "text",
            params=parse_params(args.param),
            checks=parse_checks(args.checks, args.all),
            timings=args.timings,
            high_rank=args.high_rank,
        )
    except ValidationError as exc:
        details = "; ".join(f"{'.'.join(map(str, e['loc']))}: {e['msg']}" for e in exc.errors())
        raise ConfigError(f"invalid configuration: {details}") from exc


def cmd_list(as_json: bool = False) -> str:
    """The catalog names with their ranks and parameter slots."""
    def signature(name: str, params: List[str]) -> str:
        return f"{name}({', '.join(params)})" if params else name

    if as_json:
        entries = [{"signature": signature(e.name, e.params), **e.model_dump()} for e in CATALOG]
        return json.dumps(entries, indent=2) + "\n"
    lines = [f"- {signature(e.name, e.params)} (rank {e.rank}): {e.notes}" for e in CATALOG]
    return "\n".join(lines) + "\n"


def _run_guarded(family: str, system: VSystem, config: RunConfig) -> List[VerificationReport]:
    try:
        return run_family(family, system, config)
    except VerificationError as exc:
        logging.getLogger(__name__).warning("%s checks on %s raised %s", family, system.name, exc)
        return [VerificationReport(check=family, target=system.name, status="fail", seed=config.seed,
                                   tolerances=config.tolerances(),
                                   details={"reason": f"{type(exc).__name__}: {exc}"})]


async def cmd_verify(system: VSystem, config: RunConfig) -> int:
    """
    Run the selected check families on a system and emit the report.

    Families run concurrently in worker threads; the reports are reassembled in
    the fixed family order.

    Returns:
        0 when nothing failed, 1 otherwise
    """
    start_time = time.time()
    progress(f"Running {', '.join(config.checks)} checks on {system.name}...")
    results = await asyncio.gather(*(
        asyncio.to_thread(_run_guarded, family, system, config) for family in config.checks
    ))
    reports = [report for family_reports in results for report in family_reports]
    total_time_in_seconds = round(time.time() - start_time, 2)
    progress(f"Checks finished in {total_time_in_seconds} seconds")

    text = reports_to_json(reports) if config.output_format == "json" else reports_to_text(reports)
    if config.output:
        write_report(config.output, text)
        progress(f"Report written to {config.output}")
    else:
        print(text, end="")

    failed = sum(report.status == "fail" for report in reports)
    if failed:
        progress(f"{failed} checks failed")
        return EXIT_FAILED
    return EXIT_OK


def run():
    sys.exit(asyncio.run(main()))


if __name__ == "__main__":
    run()
