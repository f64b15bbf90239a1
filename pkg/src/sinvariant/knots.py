"""Built-in diagrams of the prime knots with at most seven crossings.

Every such knot is two-bridge, so each entry is the 4-plat closure of its
Conway continued fraction.  ``determinant`` recomputes the knot determinant
from the Fox coloring matrix, which identifies each entry among knots with
the same crossing number.
"""

from __future__ import annotations

import numpy as np

from .planar import TangleDiagram, parse_braid

__all__ = ["CONWAY", "DETERMINANTS", "knot", "knot_table", "determinant", "fox_matrix"]

CONWAY = {
    "3_1": (3,),
    "4_1": (2, 2),
    "5_1": (5,),
    "5_2": (3, 2),
    "6_1": (4, 2),
    "6_2": (3, 1, 2),
    "6_3": (2, 1, 1, 2),
    "7_1": (7,),
    "7_2": (5, 2),
    "7_3": (4, 3),
    "7_4": (3, 1, 3),
    "7_5": (3, 2, 2),
    "7_6": (2, 2, 1, 2),
    "7_7": (2, 1, 1, 1, 2),
}

DETERMINANTS = {
    "3_1": 3,
    "4_1": 5,
    "5_1": 5,
    "5_2": 7,
    "6_1": 9,
    "6_2": 11,
    "6_3": 13,
    "7_1": 7,
    "7_2": 11,
    "7_3": 13,
    "7_4": 15,
    "7_5": 17,
    "7_6": 19,
    "7_7": 21,
}


def _plat_word(terms):
    terms = list(terms)
    if len(terms) % 2 == 0:
        # [.., a] = [.., a - 1, 1] keeps the 4-plat ending on the middle strands
        terms[-1:] = [terms[-1] - 1, 1]
    word = []
    for i, a in enumerate(terms):
        g = 2 if i % 2 == 0 else -1
        word.extend([g] * a)
    return word


def knot(name: str) -> TangleDiagram:
    """The alternating 4-plat diagram of a knot such as ``"5_2"``."""
    if name not in CONWAY:
        raise KeyError(f"unknown knot {name!r}; available: {', '.join(CONWAY)}")
    return parse_braid(_plat_word(CONWAY[name]), strands=4, closure="plat", name=name)


def knot_table() -> dict:
    return {name: knot(name) for name in CONWAY}


def fox_matrix(T: TangleDiagram) -> np.ndarray:
    """Rows are crossings, columns are over-arcs: 2 over - under in - under out."""
    parent = {e: e for e in T.edges}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x in T.pd:
        a, b = find(x[1]), find(x[3])
        if a != b:
            parent[max(a, b)] = min(a, b)
    arcs = sorted({find(e) for e in T.edges})
    col = {a: i for i, a in enumerate(arcs)}
    M = np.zeros((T.n_crossings, len(arcs)), dtype=np.int64)
    for r, x in enumerate(T.pd):
        M[r, col[find(x[1])]] += 2
        M[r, col[find(x[0])]] -= 1
        M[r, col[find(x[2])]] -= 1
    return M


def determinant(T: TangleDiagram) -> int:
    """|det| of a first minor of the coloring matrix (1 for crossingless knots)."""
    if T.n_crossings == 0:
        return 1
    M = fox_matrix(T)
    return int(round(abs(np.linalg.det(M[1:, 1:].astype(float)))))
