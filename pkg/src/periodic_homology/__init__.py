"""Equivariant N=2 link homology, RT_N polynomials and periodicity checks."""
from .diagram import (Diagram, DiagramError, PeriodicDiagram, build_periodic, braid_closure,
                      braid_tangle, linking_matrix, mirror, parse_pd, resolve)
from .cube import action_data, solve_coboundary, standard_sign, verify_cocycle
from .khcomplex import (FrobeniusSpec, build_complex, eigenspace_homology, homology_bigraded,
                        lee_gornik, periodic_complexes, s_invariant)
from .skeinpoly import homfly, in_ideal, rt, t_poly
from .periodic import (check_periodicity, difference_polys, e1_page, equivariant_lee,
                       jones_relations, orbit_resolutions, skein_bicomplex)

__all__ = [
    "Diagram", "DiagramError", "PeriodicDiagram", "build_periodic", "braid_closure", "braid_tangle",
    "linking_matrix", "mirror", "parse_pd", "resolve",
    "action_data", "solve_coboundary", "standard_sign", "verify_cocycle",
    "FrobeniusSpec", "build_complex", "eigenspace_homology", "homology_bigraded", "lee_gornik",
    "periodic_complexes", "s_invariant",
    "homfly", "in_ideal", "rt", "t_poly",
    "check_periodicity", "difference_polys", "e1_page", "equivariant_lee", "jones_relations",
    "orbit_resolutions", "skein_bicomplex",
]

__version__ = "0.1.0"
