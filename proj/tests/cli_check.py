"""Runs every CLI subcommand on the corpus: schema validity, byte-identical
reruns, exit codes and the documented example outputs."""

import json
import subprocess
import sys
import xml.etree.ElementTree as ET
from pathlib import Path

import jsonschema

BIN = sys.argv[1]
ROOT = Path(sys.argv[2])
CORPUS = ROOT / "corpus"

failures = []


def check(cond, what):
    if not cond:
        failures.append(what)
        print("FAIL", what)


def run(*args):
    p = subprocess.run([BIN, *args], capture_output=True, text=True)
    return p.returncode, p.stdout, p.stderr


action_schema = json.loads((ROOT / "action.schema.json").read_text())
report_schema = json.loads((ROOT / "report.schema.json").read_text())
for f in sorted(CORPUS.glob("*.json")):
    try:
        jsonschema.validate(json.loads(f.read_text()), action_schema)
    except jsonschema.ValidationError as e:
        check(False, f"{f.name} against action schema: {e.message}")

ex = str(CORPUS / "ex1_7.json")
sec = str(CORPUS / "sec7_1.json")
toy = str(CORPUS / "external_toy.json")
runs = [
    ["stability", "--input", ex, "--point", "all", "--twist", "-1/2"],
    ["stability", "--input", sec, "--point", "x_generic"],
    ["beta", "--input", ex],
    ["beta", "--input", sec],
    ["chambers", "--input", ex],
    ["chambers", "--input", sec],
    ["strata", "--input", ex],
    ["strata", "--input", sec],
    ["strata", "--input", toy],
    ["admissible-cone", "--input", sec],
    ["admissible-cone", "--input", sec, "--group", "H_b0"],
    ["adapted", "--input", sec, "--lambda", "5,-1", "--twist", "-13,1"],
    ["adapted", "--input", ex, "--lambda", "1", "--epsilon", "1/2"],
    ["fan", "--input", sec],
    ["fan", "--input", sec, "--group", "H_b0"],
    ["usweep", "--input", sec, "--lambda", "5,-1"],
    ["hstable", "--input", sec, "--twist", "-1,0"],
    ["hstable", "--input", toy],
    ["external-equiv", "--input", toy],
]
outputs = {}
for args in runs:
    code, out, err = run(*args)
    key = " ".join(a if "/" not in a or a.startswith("-") else Path(a).name for a in args)
    check(code == 0, f"{key}: exit {code} {err.strip()}")
    if code != 0:
        continue
    code2, out2, _ = run(*args)
    check(out == out2, f"{key}: output differs between runs")
    doc = json.loads(out)
    try:
        jsonschema.validate(doc, report_schema)
    except jsonschema.ValidationError as e:
        check(False, f"{key}: report schema: {e.message}")
    check(out == json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n", f"{key}: keys not sorted")
    outputs[key] = doc

stab = outputs.get("stability --input ex1_7.json --point all --twist -1/2")
if stab:
    check(stab["semistable"] == [[0, 1], [0, 1, 2], [0, 2]], "stability at -1/2 matches the git class")
ch = outputs.get("chambers --input ex1_7.json")
if ch:
    check([w["point"] for w in ch["walls"]] == [["-1"], ["0"], ["2"]], "ex1_7 walls at -1, 0, 2")
    check([ch["faces"][i]["sample"] for i in ch["chambers"]] == [["-1/2"], ["1"]], "ex1_7 chamber samples")
cone = outputs.get("admissible-cone --input sec7_1.json")
if cone:
    check([h["normal"] for h in cone["halfspaces"]] == [["1", "-1"], ["2", "1"]], "sec7_1 admissible halfspaces")
    check(all(h["strict"] for h in cone["halfspaces"]), "admissible halfspaces strict")
fan = outputs.get("fan --input sec7_1.json --group H_b0")
if fan:
    check(fan["universal"] is None and len(fan["pieces"]) > 1, "H_b0 fan has no universal 1PS")
for key in ("strata --input ex1_7.json", "strata --input sec7_1.json", "strata --input external_toy.json"):
    if key in outputs:
        check(outputs[key]["ok"] and not outputs[key]["violations"], f"{key}: no violations")
ext = outputs.get("external-equiv --input external_toy.json")
if ext:
    check(ext["passed"], "external toy passes")

code, svg, _ = run("svg", "--input", sec)
check(code == 0, "svg exit")
code2, svg2, _ = run("svg", "--input", sec)
check(svg == svg2, "svg deterministic")
tree = ET.fromstring(svg)
ns = "{http://www.w3.org/2000/svg}"
check(len(tree.findall(f"{ns}path[@class='hull']")) == 1, "svg hull outline")
check(len(tree.findall(f"{ns}path[@class='cone']")) == 1, "svg cone overlay")
hull = tree.find(f"{ns}path[@class='hull']").get("d")
check(hull.count("L") == 5, "svg hull has 6 vertices")
code, svg, _ = run("svg", "--input", sec, "--overlays", "slab", "--lambda", "5,-1")
check(code == 0 and "class=\"slab\"" in svg, "svg slab overlay")

for args, want in [
    (["svg", "--input", ex], 2),
    (["adapted", "--input", sec], 2),
    (["stability", "--input", ex, "--point", "nope"], 2),
    (["stability", "--input", str(ROOT / "missing.json")], 2),
    (["stability", "--input", ex, "--twist", "1,2"], 2),
    (["stability", "--input", ex, "--twist", "x"], 2),
    (["external-equiv", "--input", ex], 2),
    (["bogus", "--input", ex], 2),
    (["hstable", "--input", sec, "--strict", "--point", "x_generic"], 0),
]:
    code, _, err = run(*args)
    check(code == want, f"{' '.join(args[:1])} expected exit {want}, got {code}")
    if want == 2:
        check(err.strip() != "", f"{args[0]}: error message present")

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
