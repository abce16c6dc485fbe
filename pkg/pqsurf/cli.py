# Command-line front end for pqsurf

# Author  : pqsurf contributors
# Date    : 2024-09-11
# License : BSD-3-Clause

"""
### cli.py
`pqsurf <command> JOB [options]` runs one stage on a job file and writes a JSON report to
standard output or `--out`. `pqsurf verify-paper` runs the bundled cases.\n

Exit codes: 0 success, 1 validation error, 2 resource cap, 3 inconsistency.
"""

# fmt: off
import sys
import logging
import argparse
from pathlib import Path

from pqsurf.checks import CASES, run_case_checks
from pqsurf.errors import PQSurfError
from pqsurf.params import ExitCode
from pqsurf.pqsurf import Config, PQSurf
# fmt: on

logger = logging.getLogger("pqsurf")

# subcommand -> (stages, help)
COMMANDS = {
    "group": (("group",), "Order, class table and element-order histogram of the job's group."),
    "subgroups": (("subgroups",), "Subgroups generated by <= 2 elements up to conjugacy, with quotient genera."),
    "cover": (("covers",), "Validate the job's systems and print genus and signature."),
    "enumerate": (("enumeration",), "Enumerate systems for the job's classes or signature, with outer orbits."),
    "quotient": (("quotient",), "Induced monodromy and genus of C/H for the job's subgroup."),
    "basket": (("basket",), "Basket and k/e/B/D for the job's pair of systems."),
    "surface": (("surface",), "Full surface invariants for the job's pair of systems."),
    "pi1": (("pi1",), "Good-presentation certificate search (pi_1 = 1)."),
    "twists": (("twists",), "Invariants over all ordered pairs of systems, with min (K-E)^2."),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pqsurf", description="Invariants of product-quotient surfaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--threads", type=int, help="Worker threads (results do not depend on it).")
        p.add_argument("--order-cap", type=int, dest="order_cap", help="Largest group order to materialize.")
        p.add_argument("--node-cap", type=int, dest="search_node_cap", help="Spherical-system search node cap.")
        p.add_argument("--coset-cap", type=int, dest="coset_cap", help="Todd-Coxeter coset cap.")
        p.add_argument("--word-bound", type=int, dest="word_bound", help="Conjugator word bound for certificates.")
        p.add_argument("--cache", help="sqlite cache file for enumerated systems.")
        p.add_argument("--log-dir", dest="log_dir", help="Also append logs to <dir>/pqsurf_<date>.log.")
        p.add_argument("-v", "--verbose", action="store_true", help="Debug logging.")

    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("job", type=Path, help="Job file (JSON, schema 1).")
        p.add_argument("--out", type=Path, help="Write the report here instead of standard output.")
        common(p)

    p = sub.add_parser("verify-paper", help="Run the bundled cases and compare against expected values.")
    p.add_argument("--case", action="append", choices=CASES, help="Only this case (repeatable).")
    p.add_argument("--out", type=Path, help="Directory for the per-case reports.")
    common(p)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {
        key: getattr(args, key)
        for key in ("threads", "order_cap", "search_node_cap", "coset_cap", "word_bound", "cache", "log_dir")
    }
    try:
        app = PQSurf(Config.from_env(), overrides, logging.DEBUG if args.verbose else logging.INFO)
        if args.command == "verify-paper":
            names = tuple(args.case) if args.case else None
            reports, results = run_case_checks(app, names)
            if args.out:
                args.out.mkdir(parents=True, exist_ok=True)
                for report in reports:
                    (args.out / f"{report.name}.json").write_text(report.to_json(), encoding="utf-8")
            return ExitCode.OK if all(results) else ExitCode.INCONSISTENCY

        job = app.load_job(args.job)
        stages, _ = COMMANDS[args.command]
        report = app.run(job, stages)
        out = args.out or job.options.get("out")
        if out:
            Path(out).write_text(report.to_json(), encoding="utf-8")
            logger.info(f"Report written to {out}")
        else:
            sys.stdout.write(report.to_json())
        return ExitCode.OK
    except PQSurfError as err:
        logger.error(f"{type(err).__name__}: {err}")
        return err.exit_code


if __name__ == "__main__":
    sys.exit(main())
