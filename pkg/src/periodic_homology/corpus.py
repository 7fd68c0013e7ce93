"""Built-in diagrams: a small knot table, torus links and periodic diagrams."""
from __future__ import annotations

from typing import Callable, Dict

from .diagram import (Diagram, PeriodicDiagram, braid_closure, braid_tangle, build_periodic,
                      mirror, parse_pd, periodic_mirror)

# Rolfsen-table PD codes
PD_CODES = {
    "3_1": "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]",
    "4_1": "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]",
    "5_1": "X[1,6,2,7] X[3,8,4,9] X[5,10,6,1] X[7,2,8,3] X[9,4,10,5]",
    "5_2": "X[1,4,2,5] X[3,8,4,9] X[5,10,6,1] X[9,6,10,7] X[7,2,8,3]",
    "6_1": "X[1,4,2,5] X[7,10,8,11] X[3,9,4,8] X[9,3,10,2] X[5,12,6,1] X[11,6,12,7]",
    "6_2": "X[1,4,2,5] X[5,10,6,11] X[3,9,4,8] X[9,3,10,2] X[7,12,8,1] X[11,6,12,7]",
    "6_3": "X[4,2,5,1] X[8,4,9,3] X[12,9,1,10] X[10,5,11,6] X[6,11,7,12] X[2,8,3,7]",
}

# (word, strands)
BRAIDS = {
    "trefoil": ((1, 1, 1), 2),
    "hopf": ((1, 1), 2),
    "T(2,4)": ((1,) * 4, 2),
    "T(2,5)": ((1,) * 5, 2),
    "T(2,6)": ((1,) * 6, 2),
    "figure8": ((1, -2, 1, -2), 3),
    "granny": ((1, 1, 1, 2, 2, 2), 3),
    "square": ((1, 1, 1, -2, -2, -2), 3),
    "3_1#4_1": ((1, 1, 1, 2, -3, 2, -3), 4),
}


def _diagrams() -> Dict[str, Callable[[], Diagram]]:
    out = {"unknot": lambda: parse_pd("O:1"), "unlink2": lambda: parse_pd("O:2")}
    for name, pd in PD_CODES.items():
        out[name] = (lambda pd=pd: parse_pd(pd))
    for name, (word, n) in BRAIDS.items():
        out[name] = (lambda word=word, n=n: braid_closure(word, n))
    out["mirror_trefoil"] = lambda: mirror(braid_closure((1, 1, 1), 2))
    return out


DIAGRAMS = _diagrams()

KNOTS = ("unknot", "3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3", "trefoil", "mirror_trefoil",
         "T(2,5)", "figure8", "granny", "square", "3_1#4_1")

# (quotient tangle, period)
PERIODIC = {
    "hopf/2": (braid_tangle((1,), 2), 2),
    "trefoil/2": (braid_tangle((1, 2), 3), 2),
    "trefoil/3": (braid_tangle((1,), 2), 3),
    "figure8/2": (braid_tangle((1, -2), 3), 2),
    "T(2,4)/2-swap": (braid_tangle((1, 2, 3), 4), 2),
    "T(2,4)/2-keep": (braid_tangle((1, 1), 2), 2),
    "T(2,4)/4": (braid_tangle((1,), 2), 4),
    "T(2,5)/5": (braid_tangle((1,), 2), 5),
    "T(3,4)/4": (braid_tangle((1, 2), 3), 4),
}


def diagram(name: str) -> Diagram:
    try:
        return DIAGRAMS[name]()
    except KeyError:
        raise KeyError(f"unknown diagram {name!r}; known: {', '.join(sorted(DIAGRAMS))}") from None


def periodic(name: str) -> PeriodicDiagram:
    if name.startswith("mirror:"):
        return periodic_mirror(periodic(name[len("mirror:"):]))
    try:
        tangle, m = PERIODIC[name]
    except KeyError:
        raise KeyError(f"unknown periodic diagram {name!r}; known: {', '.join(sorted(PERIODIC))}") from None
    return build_periodic(tangle, m)
