"""Brute-force cube of resolutions, used to validate the scanning pipeline.

Two specialisations of the Frobenius algebra F[H][X]/(X^2 - HX) are used.
At H = 1 the complex is filtered by q-degree and the H-divisibility of the
Lee cycle becomes a filtered membership test.  At H = 0 it is the ordinary
Khovanov complex, whose homology gives the graded ranks of any minimal
(fully reduced) complex.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from itertools import product
from math import comb

import numpy as np

from .kernels import MERSENNE, in_column_space, rank_mod_p
from .planar import TangleDiagram

__all__ = [
    "CubeComplex",
    "cube_complex",
    "brute_d_h",
    "brute_s",
    "khovanov_ranks",
    "cube_euler",
    "oracle_prime",
    "OracleError",
]

MAX_CROSSINGS = 12


class OracleError(ValueError):
    pass


def oracle_prime(field) -> int:
    """Characteristic used for an F_p computation standing in for ``field``."""
    p = getattr(field, "p", field)
    return MERSENNE if p == 0 else p


def _circles(T: TangleDiagram, v):
    """Circles of the resolution at vertex v; returns (edge -> circle, count)."""
    parent = {e: e for e in T.edges}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c, (x, bit) in enumerate(zip(T.pd, v)):
        pairs = ((0, 1), (2, 3)) if bit == 0 else ((0, 3), (1, 2))
        for a, b in pairs:
            ra, rb = find(x[a]), find(x[b])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    roots = sorted({find(e) for e in T.edges})
    idx = {r: i for i, r in enumerate(roots)}
    return {e: idx[find(e)] for e in T.edges}, len(roots) + T.free_loops


@dataclass
class CubeComplex:
    """Explicit cube complex over F_p, either at H = 1 or at H = 0.

    ``basis[i]`` lists ``(vertex, word)`` at homological degree i, where bit k
    of ``word`` is 1 when circle k carries X.  ``qdeg[i]`` holds the quantum
    degrees and ``diffs[i]`` the matrix from degree i to i + 1.
    """

    p: int
    h: int
    n_plus: int
    n_minus: int
    basis: dict = field(default_factory=dict)
    qdeg: dict = field(default_factory=dict)
    diffs: dict = field(default_factory=dict)

    def rank_at(self, i):
        return len(self.basis.get(i, []))


def cube_complex(T: TangleDiagram, field=0, h: int = 1, degrees=None) -> CubeComplex:
    """Build the cube complex of a closed diagram.

    ``degrees`` restricts the homological degrees built (the differentials
    out of each listed degree are built when the next degree is listed too).
    """
    if not T.is_closed:
        raise OracleError("oracle needs a closed diagram")
    n = T.n_crossings
    if n > MAX_CROSSINGS:
        raise OracleError(f"too many crossings for the oracle ({n} > {MAX_CROSSINGS})")
    p = oracle_prime(field)
    np_, nm = T.n_plus, T.n_minus
    C = CubeComplex(p, h, np_, nm)
    want = None if degrees is None else set(degrees)
    verts = defaultdict(list)
    for v in product((0, 1), repeat=n):
        deg = sum(v) - nm
        if want is None or deg in want:
            verts[deg].append(v)
    circ = {}
    index = {}
    for deg in sorted(verts):
        basis, q = [], []
        for v in verts[deg]:
            emap, m = _circles(T, v)
            circ[v] = (emap, m)
            shift = sum(v) + np_ - 2 * nm
            for w in range(1 << m):
                index[(v, w)] = len(basis)
                basis.append((v, w))
                q.append(m - 2 * bin(w).count("1") + shift)
        C.basis[deg] = basis
        C.qdeg[deg] = np.array(q, dtype=np.int64)
    for deg in sorted(verts):
        if deg + 1 not in verts:
            continue
        D = np.zeros((len(C.basis[deg + 1]), len(C.basis[deg])), dtype=np.int64)
        for v in verts[deg]:
            emap, m = circ[v]
            for i in range(n):
                if v[i]:
                    continue
                u = v[:i] + (1,) + v[i + 1 :]
                sign = -1 if sum(v[:i]) % 2 else 1
                umap, um = circ[u]
                x = T.pd[i]
                # correspondence of untouched circles
                a, b = emap[x[0]], emap[x[2]]
                corr = {}
                for e in T.edges:
                    corr.setdefault(emap[e], set()).add(umap[e])
                for k in range(T.free_loops):
                    corr[m - T.free_loops + k] = {um - T.free_loops + k}
                for w in range(1 << m):
                    col = index[(v, w)]
                    for w2, coef in _edge_map(w, m, a, b, corr, umap, x, h):
                        row = index[(u, w2)]
                        D[row, col] = (D[row, col] + sign * coef) % p
        C.diffs[deg] = D
    return C


def _edge_map(w, m, a, b, corr, umap, x, h):
    """Image of basis word w under the merge or split at one crossing."""
    bits = [(w >> k) & 1 for k in range(m)]
    base = 0
    for k in range(m):
        if k in (a, b):
            continue
        (t,) = corr[k]
        base |= bits[k] << t
    if a != b:
        (c,) = corr[a]
        xa, xb = bits[a], bits[b]
        if xa and xb:
            return [(base | 1 << c, h)] if h else []
        return [(base | (xa | xb) << c, 1)]
    c1, c2 = umap[x[0]], umap[x[1]]
    if bits[a]:
        return [(base | 1 << c1 | 1 << c2, 1)]
    out = [(base | 1 << c1, 1), (base | 1 << c2, 1)]
    if h:
        out.append((base, -h))
    return out


def _seifert_vertex(T: TangleDiagram):
    return tuple(0 if s > 0 else 1 for s in T.signs)


def lee_vector(T: TangleDiagram, C: CubeComplex) -> np.ndarray:
    """The Lee cycle at H = 1, from a 2-coloring of the Seifert graph."""
    v = _seifert_vertex(T)
    emap, m = _circles(T, v)
    adj = defaultdict(set)
    for x in T.pd:
        a, b = emap[x[0]], emap[x[2]]
        adj[a].add(b)
        adj[b].add(a)
    color = {}
    for start in range(m):
        if start in color:
            continue
        color[start] = 1
        dq = deque([start])
        while dq:
            g = dq.popleft()
            for h in adj[g]:
                if h not in color:
                    color[h] = 1 - color[g]
                    dq.append(h)
                elif color[h] == color[g]:
                    raise OracleError("Seifert graph is not bipartite")
    vec = np.zeros(len(C.basis[0]), dtype=np.int64)
    index = {bw: i for i, bw in enumerate(C.basis[0])}
    # X carries bit 1; Y = X - 1 carries bit 1 or -1 times bit 0
    choices = [((1, 1),) if color[k] else ((1, 1), (0, -1)) for k in range(m)]
    for pick in product(*choices):
        w = sum(bit << k for k, (bit, _) in enumerate(pick))
        coef = 1
        for _, c in pick:
            coef *= c
        vec[index[(v, w)]] = (vec[index[(v, w)]] + coef) % C.p
    return vec


def brute_d_h(T: TangleDiagram, field=0, bound: int | None = None) -> int:
    """Maximal H-divisibility of the Lee class, by filtered linear algebra.

    At H = 1 a degree-j element of the graded complex is a combination of
    basis vectors of q-degree >= j.  Hence alpha is H^k times a cycle modulo
    boundaries and H-torsion exactly when, for J = qdeg(alpha) + 2k, the
    part of alpha below q-degree J is hit by the differential from degree -1
    restricted to q-degree < J.
    """
    if not T.is_closed:
        raise OracleError("oracle needs a closed diagram")
    C = cube_complex(T, field, h=1, degrees=(-1, 0))
    alpha = lee_vector(T, C)
    r = len(_seifert_circle_count(T))
    j0 = T.writhe - r
    bound = T.n_crossings + 2 if bound is None else bound
    q0 = C.qdeg[0]
    D = C.diffs.get(-1, np.zeros((len(q0), 0), dtype=np.int64))
    qm = C.qdeg.get(-1, np.zeros(0, dtype=np.int64))
    k = 0
    while k < bound:
        J = j0 + 2 * (k + 1)
        rows = q0 < J
        cols = qm < J
        if not in_column_space(D[np.ix_(rows, cols)], alpha[rows], C.p):
            return k
        k += 1
    return bound


def _seifert_circle_count(T):
    emap, m = _circles(T, _seifert_vertex(T))
    return range(m)


def brute_s(T: TangleDiagram, field=0) -> int:
    r = len(_seifert_circle_count(T))
    return 2 * brute_d_h(T, field) + T.writhe - r + 1


def khovanov_ranks(T: TangleDiagram, field=0) -> dict:
    """Khovanov homology (H = 0) as ``{(i, j): dim}``."""
    C = cube_complex(T, field, h=0)
    out = {}
    for i in sorted(C.basis):
        qi = C.qdeg[i]
        for j in sorted(set(qi.tolist())):
            rows = qi == j
            dim = int(rows.sum())
            rk_out = 0
            if i in C.diffs:
                rk_out = rank_mod_p(C.diffs[i][np.ix_(C.qdeg[i + 1] == j, rows)], C.p)
            rk_in = 0
            if i - 1 in C.diffs:
                rk_in = rank_mod_p(C.diffs[i - 1][np.ix_(rows, C.qdeg[i - 1] == j)], C.p)
            d = dim - rk_out - rk_in
            if d:
                out[(i, j)] = d
    return out


def cube_euler(T: TangleDiagram) -> dict:
    """Graded Euler characteristic ``{q: coefficient}`` of the cube complex."""
    out = defaultdict(int)
    n = T.n_crossings
    for v in product((0, 1), repeat=n):
        _, m = _circles(T, v)
        deg = sum(v) - T.n_minus
        shift = sum(v) + T.n_plus - 2 * T.n_minus
        for k in range(m + 1):
            out[m - 2 * k + shift] += (-1) ** (deg % 2) * comb(m, k)
    return {q: c for q, c in out.items() if c}
