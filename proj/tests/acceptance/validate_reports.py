"""Validate every *.json report in a directory against the report schema."""
import json
import pathlib
import sys

import jsonschema


def main() -> int:
    schema = json.loads(pathlib.Path(sys.argv[1]).read_text())
    validator = jsonschema.Draft202012Validator(schema)
    bad = 0
    files = sorted(pathlib.Path(sys.argv[2]).glob("*.json"))
    for f in files:
        for err in validator.iter_errors(json.loads(f.read_text())):
            print(f"{f.name}: {err.json_path}: {err.message}")
            bad += 1
    if not files:
        print("no reports found")
        return 1
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
