"""Regenerate testdata/golden.  Run from the repository root after a change
has been checked against the oracles; the golden tests then pin the output."""
import io
import json
from pathlib import Path

from periodic_homology import corpus
from periodic_homology.cli import run
from periodic_homology.periodic import difference_polys, jones_relations, orbit_change_triple

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = ROOT / "testdata" / "golden"

# file name -> CLI arguments (paths relative to the repository root)
CLI_GOLDEN = {
    "trefoil_homology.json": ["compute-homology", "--pd", "testdata/trefoil.pd", "--N", "2"],
    "trefoil_generic.json": ["compute-homology", "--knot", "trefoil", "--spec", "generic"],
    "unknot_rt4.json": ["compute-rt", "--pd", "testdata/unknot.pd", "--N", "4", "--unreduced"],
    "trefoil3_equivariant.json": ["compute-equivariant", "--tangle", "testdata/sigma1.tangle",
                                  "--period", "3"],
    "trefoil3_verification.json": ["check-periodicity", "--tangle", "testdata/sigma1.tangle",
                                   "--period", "3"],
    "trefoil_obstruction.json": ["check-periodicity", "--knot", "trefoil", "--p", "3", "--ell", "1",
                                 "--N", "3"],
    "trefoil3_difference.json": ["diff-polynomials", "--knot", "trefoil/3"],
    "hopf2_lee.json": ["compute-lee", "--knot", "hopf/2"],
    "hopf2_skein.json": ["skein-ss", "--knot", "hopf/2", "--u", "1"],
    "hopf2_signs.json": ["dump-signs", "--knot", "hopf/2"],
}


def cli_json(argv):
    buf = io.StringIO()
    code = run(list(argv) + ["--json"], out=buf)
    if code:
        raise RuntimeError(f"{argv} exited with {code}")
    return json.loads(buf.getvalue())


def jones_m3():
    triple = orbit_change_triple(corpus.periodic("trefoil/3"))
    return jones_relations(*(difference_polys(x) for x in triple), 3).to_json()


def generate():
    out = {name: cli_json(argv) for name, argv in CLI_GOLDEN.items()}
    out["trefoil3_jones.json"] = jones_m3()
    return out


if __name__ == "__main__":
    import os
    os.chdir(ROOT)
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name, obj in generate().items():
        (GOLDEN / name).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")
        print("wrote", name)
