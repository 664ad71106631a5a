"""Runs the geolab tool over every command and validates each JSON report
against schema/reports.schema.json."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

COMMANDS = [
    ["geodesic", "--from", "0,0", "--to", "0.5,0"],
    ["geodesic", "--at", "0.1,0.2", "--dir", "1,0"],
    ["bloch", "--region", "annulus 0.3", "--center-samples", "32"],
    ["bloch", "--region", "kball 0.1,0 0.5", "--center-samples", "32"],
    ["lipschitz", "--region", "euclid 0,0 0.5"],
    ["certify", "--region", "kball 0,0 0.5", "--devices", "2", "--points-per-region", "32",
     "--center-samples", "16"],
    ["certify", "--region", "horodiff 2 1", "--mode", "c-bloch", "--devices", "2", "--points-per-region", "32",
     "--center-samples", "16", "--avoid", "1,0"],
    ["ifs-run", "--preset", "example14"],
    ["ifs-run", "--preset", "contraction-C0.5493", "--seeds", "3"],
    ["reduce", "--preset", "product-shrink", "--from", "0.3,0", "--to", "-0.5,0.2", "--steps", "5"],
    ["reduce", "--preset", "kball-contraction", "--from", "0.3,0", "--to", "-0.5,0.2", "--steps", "5"],
    ["verify", "--only", "product_counterexample", "--only", "sandwich"],
]


def main() -> int:
    tool, schema_path = sys.argv[1], sys.argv[2]
    schema = json.loads(pathlib.Path(schema_path).read_text())
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    checked = 0
    for i, args in enumerate(COMMANDS):
        with tempfile.TemporaryDirectory() as out:
            proc = subprocess.run([tool, *args, "--output-dir", out], capture_output=True, text=True)
            if proc.returncode != 0:
                print(f"command failed ({proc.returncode}): {' '.join(args)}\n{proc.stderr}")
                failures += 1
                continue
            files = sorted(pathlib.Path(out).glob("*.json"))
            if not files:
                print(f"no JSON written by: {' '.join(args)}")
                failures += 1
            for f in files:
                checked += 1
                errors = list(validator.iter_errors(json.loads(f.read_text())))
                for e in errors:
                    print(f"{' '.join(args)} -> {f.name}: {'/'.join(map(str, e.absolute_path))}: {e.message[:200]}")
                failures += bool(errors)
    print(f"validated {checked} reports, {failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
