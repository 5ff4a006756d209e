"""Runs every froblift subcommand in machine mode and validates the reports.

Usage: validate_reports.py FROBLIFT_BINARY DATA_DIR SCHEMA
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

# (arguments, expected exit status)
CASES = [
    (["witt", "--p", "3", "--a", "1,0", "--b", "1,0"], 0),
    (["witt", "--p", "5", "--exhaustive"], 0),
    (["lift-validate", "--chart", "{data}/toric2.json"], 0),
    (["lift-validate", "--chart", "{tmp}/notlift.json"], 1),
    (["delta", "--chart", "{data}/boundary2.json", "--f", "x*y"], 0),
    (["xi-det", "--p", "3", "--chart", "{data}/toric2.json"], 0),
    (["log-xi-det", "--chart", "{data}/boundary2.json"], 0),
    (["log-xi-det", "--chart", "{data}/toric2.json", "--log-rank", "1"], 0),
    (["split-from-lift", "--chart", "{data}/boundary2.json"], 0),
    (["compat", "--chart", "{data}/boundary2.json", "--gen", "x"], 0),
    (["compat", "--chart", "{data}/nonext2.json", "--gen", "x", "--gen", "y"], 1),
    (["blowup", "--chart", "{data}/toric2.json"], 0),
    (["blowup", "--chart", "{data}/nonext2.json"], 1),
    (["product", "--chart", "{data}/boundary2.json", "--chart2", "{data}/toric2.json"], 2),
    (["product", "--chart", "{data}/toric2.json", "--chart2", "{data}/toric2.json"], 0),
    (["restrict", "--chart", "{data}/boundary2.json", "--var", "x"], 0),
    (["psi", "--chart", "{data}/toric2.json", "--phi", "x^2", "--phi", "x*y", "--source-vars", "x,y"], 0),
    (["psi", "--chart", "{data}/toric2.json", "--phi", "x^2", "--phi", "y", "--source-chart", "{data}/toric2.json"], 0),
    (["point-lift", "--chart", "{data}/toric2.json", "--point", "2,1"], 0),
    (["roundtrip", "--chart", "{data}/boundary2.json", "--f", "x + 1"], 0),
    (["roundtrip", "--chart", "{data}/boundary2.json", "--samples", "10"], 0),
    (["fedder", "--p", "2", "--vars", "x,y", "--f", "y^2 - x^3"], 1),
    (["fedder", "--p", "5", "--vars", "x,y", "--f", "x*y"], 0),
    (["compat-split", "--splitting", "{data}/toric_split3.json", "--gen", "x"], 0),
    (["divisor", "--splitting", "{data}/toric_split3.json", "--factor", "x", "--factor", "y"], 0),
    (["average", "--splitting", "{data}/line_split3.json", "--group", "{data}/sign3.json"], 0),
    (["average", "--splitting", "{data}/toric_split3.json", "--group", "{data}/swap3.json"], 0),
    (["canonical-lift-check", "--splitting", "{data}/toric_split3.json"], 0),
    (["canonical-lift-check", "--splitting", "{data}/line_split3.json"], 1),
    (["canonical-lift-check", "--chart", "{data}/boundary2.json", "--samples", "10"], 0),
    (["p1-scan", "--p", "2,3,5,7,11,13"], 0),
    (["p1-scan", "--p", "3,5,7", "--jobs", "2"], 0),
    (["fano-screen", "{data}/refrows.csv"], 0),
    (["fano-screen", "{tmp}/odd.csv"], 0),
    (["bounds", "--m", "2", "--M", "3"], 0),
    (["bounds", "--m", "1", "--M", "1"], 0),
]


def main() -> int:
    binary, data, schema_path = sys.argv[1:4]
    schema = json.loads(Path(schema_path).read_text())
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    seen = set()
    with tempfile.TemporaryDirectory() as tmp:
        Path(tmp, "notlift.json").write_text('{"p": 3, "vars": ["x"], "images": ["x^2"]}')
        Path(tmp, "odd.csv").write_text("id,degree,rho,b3\nA,64,1,3\nV4,4,1,60\n")
        for args, status in CASES:
            argv = [binary] + [a.format(data=data, tmp=tmp) for a in args] + ["--json"]
            first = subprocess.run(argv, capture_output=True, text=True)
            second = subprocess.run(argv, capture_output=True, text=True)
            label = " ".join(args)
            if first.returncode != status:
                print(f"FAIL {label}: exit {first.returncode}, expected {status}\n{first.stderr}")
                failures += 1
                continue
            if status == 2:
                if first.stdout or "error:" not in first.stderr:
                    print(f"FAIL {label}: precondition error should only write to stderr")
                    failures += 1
                continue
            if first.stdout != second.stdout:
                print(f"FAIL {label}: output is not reproducible")
                failures += 1
                continue
            report = json.loads(first.stdout)
            errors = sorted(validator.iter_errors(report), key=lambda e: list(e.path))
            if errors:
                print(f"FAIL {label}: {errors[0].message} at {list(errors[0].path)}")
                failures += 1
                continue
            seen.add(report["command"])
            print(f"ok   {label}")
    missing = set(schema["properties"]["command"]["enum"]) - seen
    if missing:
        print(f"FAIL subcommands without a validated report: {sorted(missing)}")
        failures += 1
    print(f"{failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
