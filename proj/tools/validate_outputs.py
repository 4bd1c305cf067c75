#!/usr/bin/env python3
"""Runs the CLI on sample inputs and validates every JSON output against the
shipped schemas. Also checks exit codes, the machine-readable error channel,
and byte-identical determinism. Usage: validate_outputs.py <cli> <schema_dir>.
"""
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource


def main():
    cli = sys.argv[1]
    schema_dir = pathlib.Path(sys.argv[2])

    resources = []
    schemas = {}
    for path in sorted(schema_dir.glob("*.schema.json")):
        doc = json.loads(path.read_text())
        schemas[path.name] = doc
        # register under both the $id and the bare file name used in $refs
        resources.append((doc["$id"], Resource.from_contents(doc)))
        resources.append((path.name, Resource.from_contents(doc)))
        base = doc["$id"].rsplit("/", 1)[0] + "/"
        resources.append((base + path.name, Resource.from_contents(doc)))
    registry = Registry().with_resources(resources)

    failures = []

    def validate(name, instance, schema_file):
        validator = jsonschema.Draft202012Validator(
            schemas[schema_file], registry=registry
        )
        errors = list(validator.iter_errors(instance))
        if errors:
            failures.append(f"{name}: {errors[0].message}")
        else:
            print(f"ok: {name} conforms to {schema_file}")

    def run(args, expect_code=0):
        proc = subprocess.run([cli] + args, capture_output=True, text=True)
        if proc.returncode != expect_code:
            failures.append(
                f"{' '.join(args)}: exit {proc.returncode}, expected {expect_code}"
                f" (stderr: {proc.stderr.strip()[:200]})"
            )
        return proc

    with tempfile.TemporaryDirectory() as td:
        tmp = pathlib.Path(td)
        rep = tmp / "rep.json"
        rep.write_text(json.dumps({"n": 2, "dims": ["1", "1"], "maps": [[["1"]]]}))
        validate("rep input", json.loads(rep.read_text()), "rep.schema.json")

        charge = tmp / "charge.json"
        charge.write_text(
            json.dumps(
                {
                    "nodes": [
                        {"re": ["-1"], "im": ["1"]},
                        {"re": ["-2"], "im": ["1"]},
                    ]
                }
            )
        )
        validate("charge input", json.loads(charge.read_text()), "charge.schema.json")

        qform = tmp / "qform.json"
        qform.write_text(json.dumps({"matrix": [["-1", "0"], ["0", "-1"]]}))
        samples = tmp / "samples.json"
        samples.write_text(
            json.dumps([{"kind": "quiver", "n": 2, "coords": ["1", "-1"]}])
        )
        sod = tmp / "sod.json"
        sod.write_text(
            json.dumps(
                {
                    "components": [
                        {"label": "A", "generators": 1},
                        {"label": "B", "generators": 2},
                    ],
                    "gram": [["1", "0", "1"], ["0", "1", "0"], ["0", "0", "1"]],
                }
            )
        )
        validate("sod input", json.loads(sod.read_text()), "sod.schema.json")

        p = run(["decompose", str(rep)])
        validate("decompose", json.loads(p.stdout), "interval_sum.schema.json")

        p = run(["ss-check", str(rep), "--alpha", "1,0"], expect_code=0)
        validate("ss-check semistable", json.loads(p.stdout), "verdict.schema.json")
        p = run(["ss-check", str(rep), "--alpha", "0,1"], expect_code=1)
        validate("ss-check unstable", json.loads(p.stdout), "verdict.schema.json")

        p = run(["hn", str(rep), "--alpha", "0,1"])
        validate("hn", json.loads(p.stdout), "hn.schema.json")

        p = run(["walls", "--beta", "1,1", "--model", "quiver"])
        validate("walls quiver", json.loads(p.stdout), "walls.schema.json")

        p = run(
            ["walls", "--beta", "1,1,1,1", "--model", "chain", "--bounds", "-2,2,-2,2"]
        )
        validate("walls chain", json.loads(p.stdout), "walls.schema.json")

        p = run(["glue-check", "--shifts", "0,1"])
        validate("glue-check", json.loads(p.stdout), "glue.schema.json")

        p = run(
            [
                "support-check",
                "--charge",
                str(charge),
                "--qform",
                str(qform),
                "--samples",
                str(samples),
            ]
        )
        validate("support-check", json.loads(p.stdout), "support.schema.json")

        p = run(["tower", "--n", "3", "--derive", "gluing"])
        doc, end = json.JSONDecoder().raw_decode(p.stdout)
        validate("tower gluing", doc, "tower_output.schema.json")
        if not p.stdout.rstrip().endswith("[A9]"):
            failures.append("tower gluing: pretty chain missing")
        if "E[-1]" not in p.stdout[end:]:
            failures.append("tower gluing: chain does not reach E[-1]")

        p = run(["tower", "--n", "4", "--derive", "sod"])
        doc, _ = json.JSONDecoder().raw_decode(p.stdout)
        validate("tower sod", doc, "tower_output.schema.json")

        p = run(["mutate", "--sod", str(sod), "--index", "1", "--side", "left"])
        validate("mutate", json.loads(p.stdout), "sod.schema.json")

        # chambers CSV: header plus grid^2 rows of rational strings
        p = run(["chambers", "--beta", "1,1", "--box", "-1,1,-1,1", "--grid", "3"])
        lines = p.stdout.strip().splitlines()
        if lines[0] != "param_1,param_2,n_semistable,hn_type_id" or len(lines) != 10:
            failures.append("chambers: unexpected CSV shape")
        elif any("." in ln for ln in lines[1:]):
            failures.append("chambers: CSV contains decimal points")
        else:
            print("ok: chambers CSV shape and exact entries")

        # error channel: malformed JSON -> exit 2, error object on stderr
        bad = tmp / "bad.json"
        bad.write_text("{not json")
        p = run(["decompose", str(bad)], expect_code=2)
        validate("error object", json.loads(p.stderr), "error.schema.json")

        # determinism: byte-identical reruns
        a = run(["hn", str(rep), "--alpha", "0,1"]).stdout
        b = run(["hn", str(rep), "--alpha", "0,1"]).stdout
        if a != b:
            failures.append("determinism: hn output differs between runs")
        else:
            print("ok: byte-identical reruns")

    if failures:
        for f in failures:
            print("FAIL:", f, file=sys.stderr)
        return 1
    print("all schema checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
