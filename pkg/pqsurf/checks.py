# PASS/FAIL comparison of reports against the bundled expectations

# Author  : pqsurf contributors
# Date    : 2024-09-11
# License : BSD-3-Clause

import sys
import json
from pathlib import Path
from typing import Any, TextIO

from pqsurf.errors import ValidationError
from pqsurf.pqsurf import PQSurf, Report

DATA_DIR = Path(__file__).parent / "data"
CASES = ("D7", "D7_twisted", "D6", "A4")


class CaseChecks:
    """
    Expectation files live in `data/expected/<case>.json`:
    `{"case": ..., "job": <file in data/jobs>, "stages": [...], "expect": {stage: {field: value}}}`.

    A field expected on a list-valued stage is checked on every row. An expected value of the form
    `{"includes": [...]}` passes when every listed item occurs in the reported list.
    """

    @staticmethod
    def load_cases(names: tuple[str, ...] | None = None, data_dir: Path = DATA_DIR) -> list[dict]:
        cases = []
        for name in names or CASES:
            path = Path(data_dir) / "expected" / f"{name}.json"
            if not path.exists():
                raise ValidationError(f"No expectation file for case {name!r} ({path})")
            case = json.loads(path.read_text(encoding="utf-8"))
            case["job_path"] = str(Path(data_dir) / "jobs" / case["job"])
            cases.append(case)
        return cases

    @staticmethod
    def field_matches(actual: Any, expected: Any) -> bool:
        if isinstance(expected, dict) and set(expected) == {"includes"}:
            return isinstance(actual, list) and all(item in actual for item in expected["includes"])
        return actual == expected

    @staticmethod
    def compare(report: Report, expect: dict) -> list[tuple[str, bool]]:
        """
        `(check name, passed)` for every expected field, in expectation order.
        """
        results = []
        for stage, fields in expect.items():
            section = report.sections.get(stage)
            rows = section if isinstance(section, list) else [section]
            for field, expected in fields.items():
                if section is None or not rows:
                    results.append((f"{stage}.{field}", False))
                    continue
                passed = all(
                    isinstance(row, dict) and CaseChecks.field_matches(row.get(field), expected) for row in rows
                )
                results.append((f"{stage}.{field} = {json.dumps(expected)}", passed))
        return results

    @staticmethod
    def verify_reports(reports: list[Report], cases: list[dict], stream: TextIO | None = None) -> list[bool]:
        """
        Check any number of `reports` against their expectation `cases`.

        ### Returns:
            `list[bool]` - A `list` containing the `bool` results of each case.
        """
        if len(reports) != len(cases):
            raise ValidationError("The reports list does not match the length of the cases list.")
        out = stream or sys.stdout

        result_bools = []
        for report, case in zip(reports, cases):
            print(f"{'=' * 80}\n\nRunning checks for {case['case']}...\n", file=out)

            pass_count = 0
            fail_count = 0
            for name, passed in CaseChecks.compare(report, case["expect"]):
                print(f"Checking {case['case']} {name}"[:69].ljust(70), end="", file=out)
                if passed:
                    print("| Pass ✔", file=out)
                    pass_count += 1
                else:
                    print("| FAIL ✘", file=out)
                    fail_count += 1

            print(
                f"\nAll checks for '{case['case']}' have been completed ({pass_count} passed, {fail_count} failed).\n"
                f"Result: {'PASS ✔' if fail_count == 0 else 'FAIL ✘'}\n",
                file=out,
            )
            result_bools.append(fail_count == 0)

        return result_bools


def run_case_checks(
    app: PQSurf,
    names: tuple[str, ...] | None = None,
    data_dir: Path = DATA_DIR,
    stream: TextIO | None = None,
) -> tuple[list[Report], list[bool]]:
    """
    Run every bundled case through `app` and print the PASS/FAIL table with a summary.
    """
    out = stream or sys.stdout
    cases = CaseChecks.load_cases(names, data_dir)
    reports = [app.run(app.load_job(case["job_path"]), tuple(case["stages"])) for case in cases]
    results = CaseChecks.verify_reports(reports, cases, out)

    passed_count = sum(results)
    print("========================= SUMMARY =========================", file=out)
    if not all(results):
        print("\nThe following cases require attention:\n", file=out)
        for case, result in zip(cases, results):
            if not result:
                print(f"-> {case['case']}", file=out)
    print(f"\n{passed_count} of {len(results)} cases passed. {len(results) - passed_count} failed.\n", file=out)
    return reports, results
