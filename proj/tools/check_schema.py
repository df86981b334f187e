#!/usr/bin/env python3
"""Validate the corpus and every report the crystorb binary emits against the JSON schemas."""

import argparse
import json
import pathlib
import subprocess
import sys

import jsonschema

COMMANDS = ["verify", "realize", "even", "jstruct", "action", "teich", "platonic"]


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("binary")
    ap.add_argument("corpus")
    ap.add_argument("schemas")
    args = ap.parse_args()

    schemas = pathlib.Path(args.schemas)
    input_schema = json.loads((schemas / "input.schema.json").read_text())
    report_schema = json.loads((schemas / "report.schema.json").read_text())
    cls = jsonschema.Draft202012Validator
    cls.check_schema(input_schema)
    cls.check_schema(report_schema)
    inputs = cls(input_schema)
    reports = cls(report_schema)

    failures = []
    files = sorted(pathlib.Path(args.corpus).glob("*.json"))
    for path in files:
        doc = json.loads(path.read_text())
        for err in inputs.iter_errors(doc):
            failures.append(f"{path.name}: input schema: {err.message}")
        for cmd in COMMANDS:
            argv = [args.binary, cmd, "--input", str(path), "--format", "json"]
            first = subprocess.run(argv, capture_output=True, text=True)
            second = subprocess.run(argv, capture_output=True, text=True)
            tag = f"{path.name} {cmd}"
            if first.stdout != second.stdout:
                failures.append(f"{tag}: output differs between runs")
            if first.returncode not in (0, 1, 2):
                failures.append(f"{tag}: exit code {first.returncode}")
                continue
            report = json.loads(first.stdout)
            if ("error" in report) != (first.returncode != 0):
                failures.append(f"{tag}: exit code {first.returncode} disagrees with report")
            for err in reports.iter_errors(report):
                failures.append(f"{tag}: report schema: {err.message}")

    bad = {"rank": 2, "generators": [], "colour": "red"}
    if inputs.is_valid(bad):
        failures.append("input schema accepts an unknown field")

    for f in failures:
        print(f)
    print(f"{len(files)} corpus files, {len(failures)} problems")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
