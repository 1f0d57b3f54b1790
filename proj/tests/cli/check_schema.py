#!/usr/bin/env python3
"""Validate report.json files against the run report schema."""
import json
import sys

import jsonschema


def main():
    schema_path, *reports = sys.argv[1:]
    with open(schema_path) as fh:
        schema = json.load(fh)
    validator = jsonschema.Draft202012Validator(schema)
    bad = 0
    for path in reports:
        with open(path) as fh:
            doc = json.load(fh)
        for err in validator.iter_errors(doc):
            print(f"{path}: {'/'.join(map(str, err.path))}: {err.message}")
            bad += 1
    print(f"{len(reports)} report(s), {bad} schema error(s)")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
