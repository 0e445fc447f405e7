"""Validate every JSON-emitting recordlab command against the shipped schema."""

import json
import subprocess
import sys

import jsonschema

INVOCATIONS = [
    ["simulate", "--d", "2", "--n", "50", "--n", "200", "--reps", "100"],
    ["simulate", "--model", "cube", "--d", "1", "--n", "30", "--reps", "50", "--timing"],
    ["run", "--model", "cube", "--d", "4", "--n", "1000", "--reps", "100", "--max-points", "20000"],
    ["exact", "--d", "3", "--nmax", "5"],
    ["exact", "--model", "cube", "--d", "2", "--stat", "dominating", "--n", "3", "--n", "100"],
    ["exact", "--d", "2", "--n", "200"],
    ["exact", "--model", "cube", "--d", "3", "--kernel", "--n", "6"],
    ["asymptotic", "--d", "2", "--n", "10000"],
    ["asymptotic", "--model", "cube", "--d", "3", "--n", "100", "--stat", "pareto,maxima"],
    ["asymptotic", "--model", "cube", "--d", "1", "--n", "100"],
    ["asymptotic", "--summary", "--d", "4"],
    ["constants", "--which", "v,vtilde,K", "--dmax", "3", "--out", "json"],
    ["constants", "--which", "K", "--d", "3", "--oracle", "--out", "json"],
    ["zeros", "--dmax", "5", "--resolution", "20", "--out", "json"],
    ["figure", "dom-rec", "--out", "json"],
]


def main() -> int:
    exe, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path, encoding="utf-8") as fh:
        schema = json.load(fh)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    bad = {"config": {"program": "recordlab", "version": "1.0.0", "command": "exact"}, "rows": [{"n": 0}]}
    if validator.is_valid(bad):
        print("FAIL schema accepts a malformed document")
        failures += 1
    for args in INVOCATIONS:
        proc = subprocess.run([exe, *args], capture_output=True, text=True, check=False)
        if proc.returncode != 0:
            print(f"FAIL {' '.join(args)}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        errors = list(validator.iter_errors(json.loads(proc.stdout)))
        if errors:
            print(f"FAIL {' '.join(args)}: {errors[0].message}")
            failures += 1
        else:
            print(f"ok   {' '.join(args)}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
