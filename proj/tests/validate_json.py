"""Runs each hecke-mod subcommand with --format json and validates the
output against the schema files."""

import json
import pathlib
import subprocess
import sys

import jsonschema

RUNS = {
    "charpoly": [["charpoly", "--prime", "2", "--weight", "24", "--ell", "5"],
                 ["charpoly", "--prime", "3", "--weight", "10"]],
    "table": [["table", "--ell", "5"], ["table", "--ell", "13", "--single-period"]],
    "trace": [["trace", "--n", "25", "--weight", "40"]],
    "period": [["period", "--prime", "2", "--ell", "13", "--kclass", "0"]],
    "certify": [["certify", "--prime", "2", "--weight", "48"]],
    "deduce": [["deduce", "--weight", "24", "--max-prime", "40"],
               ["deduce", "--weight", "36", "--target-prime", "3", "--discharge"]],
}


def main():
    exe, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    failures = 0
    for command, runs in RUNS.items():
        schema = json.loads((schema_dir / f"{command}.schema.json").read_text())
        for args in runs:
            proc = subprocess.run([exe, "--format", "json", *args], capture_output=True, text=True)
            if proc.returncode != 0:
                print(f"FAIL {' '.join(args)}: exit {proc.returncode}: {proc.stderr.strip()}")
                failures += 1
                continue
            doc = json.loads(proc.stdout)
            try:
                jsonschema.validate(doc, schema)
            except jsonschema.ValidationError as e:
                print(f"FAIL {' '.join(args)}: {e.message}")
                failures += 1
                continue
            if proc.stdout != json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n":
                print(f"FAIL {' '.join(args)}: keys not sorted")
                failures += 1
                continue
            print(f"ok   {' '.join(args)}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
