#!/usr/bin/env python3
"""Runs every jetham subcommand with --format json on the bundled problems and
validates the output against schemas/*.schema.json."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource

SCHEMA_OF = {
    "el": "system",
    "elh": "system",
    "constraints": "system",
    "prolong": "system",
    "shift": "system",
    "legendre": "form",
    "hessian": "hessian",
    "reduce": "reduce",
    "energy": "energy",
    "check-solution": "residual",
}


def load_schemas(directory):
    schemas = {}
    registry = Registry()
    for path in sorted(directory.glob("*.schema.json")):
        schema = json.loads(path.read_text())
        schemas[path.name.removesuffix(".schema.json")] = schema
        registry = registry.with_resource(path.name, Resource.from_contents(schema))
    return schemas, registry


def main():
    jetham, soliton_grid, schema_dir, problem_dir = map(pathlib.Path, sys.argv[1:5])
    schemas, registry = load_schemas(schema_dir)
    failures = 0
    checked = 0
    with tempfile.TemporaryDirectory() as tmp:
        grid = pathlib.Path(tmp) / "soliton.grid"
        subprocess.run([soliton_grid, "--points", "96", "--out", grid], check=True)
        for problem in sorted(problem_dir.glob("*.problem")):
            has_rho = any(line.split("=")[0].strip() == "rho" for line in problem.read_text().splitlines())
            kdv_like = "independents = t, x" in problem.read_text() and "dependents = u\n" in problem.read_text()
            for command, schema_name in SCHEMA_OF.items():
                args = [jetham, command, problem, "--format", "json"]
                if command == "shift" and not has_rho:
                    continue
                if command == "check-solution":
                    if not kdv_like:
                        continue
                    args += ["--grid", grid]
                run = subprocess.run(args, capture_output=True, text=True)
                label = f"{problem.name} {command}"
                if run.returncode != 0:
                    print(f"FAIL {label}: exit {run.returncode}: {run.stderr.strip()}")
                    failures += 1
                    continue
                validator = jsonschema.Draft202012Validator(schemas[schema_name], registry=registry)
                errors = list(validator.iter_errors(json.loads(run.stdout)))
                checked += 1
                for error in errors:
                    print(f"FAIL {label}: {error.json_path}: {error.message}")
                failures += bool(errors)
    print(f"{checked} outputs validated, {failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
