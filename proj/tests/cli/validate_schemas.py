"""Runs every sample configuration through dimerlab and validates configs and
JSON outputs against the schemas in docs/schemas."""

import json
import pathlib
import subprocess
import sys

import jsonschema

COMMANDS = ["critical", "bifurcation", "portrait", "simulate", "reduce"]


def load(path):
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def main():
    binary, docs, work = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    schemas = docs / "schemas"
    failures = 0
    for config_path in sorted((docs / "configs").glob("*.json")):
        config = load(config_path)
        command = config["command"]
        jsonschema.validate(config, load(schemas / f"{command}.config.schema.json"))
        out = work / config_path.stem
        out.mkdir(parents=True, exist_ok=True)
        proc = subprocess.run([binary, command, "--config", str(config_path), "--out-dir", str(out)],
                              capture_output=True, text=True)
        if proc.returncode != 0:
            print(f"FAIL {config_path.name}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        try:
            jsonschema.validate(load(out / f"{command}.json"), load(schemas / f"{command}.output.schema.json"))
            print(f"ok   {config_path.name}")
        except jsonschema.ValidationError as e:
            print(f"FAIL {config_path.name}: {e.message}")
            failures += 1
    for command in COMMANDS:
        jsonschema.Draft202012Validator.check_schema(load(schemas / f"{command}.output.schema.json"))
        jsonschema.Draft202012Validator.check_schema(load(schemas / f"{command}.config.schema.json"))
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
