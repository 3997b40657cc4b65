#!/usr/bin/env python3
"""Run the helly CLI and validate every JSON output against schemas/."""

import argparse
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource


def load_registry(schema_dir):
    resources = []
    for path in sorted(schema_dir.glob("*.schema.json")):
        doc = json.loads(path.read_text())
        resources.append((path.name, Resource.from_contents(doc)))
    return Registry().with_resources(resources)


def validator_for(registry, name):
    schema = registry[name].contents
    cls = jsonschema.validators.validator_for(schema)
    cls.check_schema(schema)
    return cls(schema, registry=registry)


class Runner:
    def __init__(self, helly, workdir):
        self.helly = helly
        self.workdir = workdir
        self.failures = 0
        self.checked = 0

    def run(self, args, expect_code=0):
        proc = subprocess.run([self.helly, *args], capture_output=True, text=True, check=False)
        if proc.returncode != expect_code:
            self.fail(f"{' '.join(args)}: exit {proc.returncode}, expected {expect_code}\n{proc.stderr}")
            return None
        return json.loads(proc.stdout)

    def save(self, name, doc):
        p = self.workdir / name
        p.write_text(json.dumps(doc))
        return str(p)

    def expect(self, validator, doc, label):
        self.checked += 1
        errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
        if errors:
            self.fail(f"{label}: {errors[0].message} at {list(errors[0].path)}")

    def expect_invalid(self, validator, doc, label):
        self.checked += 1
        if validator.is_valid(doc):
            self.fail(f"{label}: schema accepted an invalid document")

    def fail(self, message):
        self.failures += 1
        print(f"FAIL {message}")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("helly", help="path to the helly executable")
    parser.add_argument("schemas", type=pathlib.Path, help="schema directory")
    args = parser.parse_args()

    registry = load_registry(args.schemas)
    v = {name: validator_for(registry, f"{name}.schema.json")
         for name in ["family", "set", "points", "hypergraph", "pq_report", "piercing",
                      "transversal", "catalog_entry", "pipeline_report"]}

    with tempfile.TemporaryDirectory() as tmp:
        r = Runner(args.helly, pathlib.Path(tmp))

        cx = r.run(["construct", "counterexample", "--d", "1", "--n-max", "8", "--n-bounded", "3"])
        r.expect(v["family"], cx, "counterexample family")
        for s in cx["sets"]:
            r.expect(v["set"], s, f"set {s['label']}")
        r.expect(v["family"], r.run(["construct", "simplex", "--d", "3"]), "simplex family")
        r.expect(v["family"], r.run(["construct", "gruenbaum", "--n-max", "4", "--copies", "2"]), "gruenbaum")
        r.expect(v["family"], r.run(["construct", "free-flats", "--d", "3", "--k", "2", "--count", "4"]),
                 "free flats")
        cx_path = r.save("cx.json", cx)
        gr_path = r.save("gr.json", r.run(["construct", "gruenbaum", "--n-max", "4", "--copies", "2"]))

        r.expect(v["pq_report"], r.run(["check", "pq", "--p", "4", "--q", "3", "--input", cx_path, "--record"]),
                 "pq report (holds)")
        r.expect(v["pq_report"], r.run(["check", "pq", "--p", "4", "--q", "3", "--input", gr_path], 1),
                 "pq report (fails)")
        r.expect(v["piercing"], r.run(["solve", "pierce", "--input", cx_path]), "piercing")
        gf = r.run(["analyze", "gf", "--input", cx_path])
        r.expect(v["hypergraph"], gf, "G_F")
        r.expect(v["transversal"], r.run(["solve", "transversal", "--input", r.save("gf.json", gf)]),
                 "transversal")
        r.expect(v["family"], r.run(["analyze", "project", "--input", cx_path]), "projection")

        for lam, k in [(3, 2), (3, 3), (4, 2)]:
            r.expect(v["catalog_entry"], r.run(["bounds", "eta", "--lam", str(lam), "--k", str(k)]),
                     f"eta({lam},{k})")
        r.expect(v["catalog_entry"], r.run(["bounds", "xi", "--p", "4", "--q", "3", "--d", "2"]), "xi(4,3,2)")
        r.expect(v["catalog_entry"], r.run(["bounds", "xi", "--p", "9", "--q", "4", "--d", "3"], 1), "xi miss")

        esc = r.run(["escape", "--d", "1", "--random", "5", "--range", "50"])
        r.expect(v["points"], esc["candidates"], "escape candidates")

        r.expect(v["pipeline_report"],
                 r.run(["pipeline", "counterexample", "--d", "1", "--n-max", "6", "--n-bounded", "2",
                        "--k-max", "1"]),
                 "counterexample pipeline")
        r.expect(v["pipeline_report"],
                 r.run(["pipeline", "s1", "--input", cx_path, "--t", "1", "--p", "6"], 1),
                 "failed s1 pipeline")
        r.expect(v["pipeline_report"],
                 r.run(["pipeline", "s2", "--input", gr_path, "--free", "0,1", "--p", "4", "--q", "3"], 1),
                 "failed s2 pipeline")
        line = {"dimension": 1, "sets": [
            {"label": "B1", "dim": 1, "vrep": {"points": [[0], [1]]}},
            {"label": "B2", "dim": 1, "vrep": {"points": [[0], [2]]}},
            {"label": "R1", "dim": 1, "hrep": [{"normal": [-1], "offset": "-1/2"}]},
            {"label": "R2", "dim": 1, "hrep": [{"normal": [-1], "offset": "-3/2"}]},
            {"label": "L", "dim": 1, "hrep": [{"normal": [1], "offset": 1}]}]}
        line_path = r.save("line.json", line)
        main_args = ["pipeline", "main", "--input", line_path, "--compact", "0,1", "--p", "4", "--q", "3"]
        r.expect(v["pipeline_report"], r.run(main_args), "main pipeline")
        r.expect(v["pipeline_report"], r.run(["--budget", "3", *main_args], 3), "budget-exhausted main pipeline")

        plane = {"dimension": 2, "sets": [
            {"label": "P", "dim": 2, "vrep": {"points": [[0, 0], [1, 0], [0, 1], [1, 1]]}},
            {"label": "Q", "dim": 2, "vrep": {"points": [[3, 0], [4, 0], [3, 1], [4, 1]]}},
            {"label": "H", "dim": 2, "hrep": [{"normal": [0, -1], "offset": 0}]},
            {"label": "W", "dim": 2, "hrep": [{"normal": [0, 1], "offset": 1}]},
            {"label": "E", "dim": 2, "hrep": [{"normal": [-1, 0], "offset": 1}]}]}
        r.expect(v["family"], plane, "hand-written plane family")
        ok = r.run(["pipeline", "s2", "--input", r.save("plane.json", plane), "--free", "0,1", "--p", "4",
                    "--q", "3", "--exact"])
        r.expect(v["pipeline_report"], ok, "s2 pipeline")

        r.expect_invalid(v["family"], {"dimension": 2, "sets": [{"label": "X", "dim": 2}]}, "set without rep")
        r.expect_invalid(v["set"], {"label": "X", "dim": 1, "vrep": {"points": [[0.5]]}}, "float coordinate")
        r.expect_invalid(v["set"], {"label": "X", "dim": 1, "vrep": {"points": [["1/0"]]}}, "zero denominator")
        r.expect_invalid(v["pq_report"], {"p": 2, "q": 2, "holds": True, "checked_tuples": 1,
                                          "violating_tuple": [0, 1]}, "holds with a violation")

    print(f"{r.checked} documents checked, {r.failures} failures")
    return 1 if r.failures else 0


if __name__ == "__main__":
    sys.exit(main())
