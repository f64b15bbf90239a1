"""Lee cycles, their H-divisibility and the s-invariant."""

from __future__ import annotations

from dataclasses import dataclass, field

from .cob import (
    QQ,
    TGT,
    XEL,
    YEL,
    CobLin,
    Field,
    _expand,
    decorated_identity,
    elementary,
    is_unit,
    plug,
)
from .complex import E_X, E_Y, Complex, CycleVector, eliminate, scan
from .objects import CrosslessTangle
from .planar import DiagramError, LinkError, SeifertData, TangleDiagram, pretzel_pieces, seifert_resolve, twist_tangle

__all__ = [
    "CycleVector",
    "DivisibilityResult",
    "LinkError",
    "lee_cycle",
    "filtered_divisibility",
    "s_invariant",
    "twist_reduced",
    "theorem_b_sides",
]


@dataclass
class DivisibilityResult:
    """Outcome of the divisibility computation.

    ``witnesses`` lists ``(qshift, exponent)`` of the surviving degree-0
    generators carrying a nonzero cycle component.
    """

    dH: int
    sH: int
    writhe: int = 0
    r: int = 0
    witnesses: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    complex: Complex | None = None


def lee_cycle(S: SeifertData, F: Field = QQ, points=None) -> CycleVector:
    """The Lee cobordism from the Seifert arcs to the Seifert resolution.

    Circles get a cup with X or Y, arcs a sheet with e_X = X/H or
    e_Y = -Y/H.  The target keeps its closed loops (in the order of
    ``S.circles`` followed by free loops) and has q-shift w.
    """
    m = len(S.resolved.points)
    pts = list(range(m)) if points is None else list(points)
    if len(pts) != m:
        raise ValueError("wrong number of boundary points")
    ren = dict(zip(range(m), pts))
    src = S.resolved.relabel(ren) if m else CrosslessTangle((), ())
    circle_labels = list(S.circle_labels) + list(S.free_loop_labels)
    tgt = CrosslessTangle(src.points, src.pairs, S.writhe, len(circle_labels))
    comps = []
    for (i, j), lab in zip(S.arc_ends, S.arc_labels):
        comps.append(((min(ren[i], ren[j]),), E_X if lab == "eX" else E_Y))
    for k, lab in enumerate(circle_labels):
        comps.append(((TGT(k),), XEL if lab == "X" else YEL))
    return CycleVector(src, {0: CobLin(src, tgt, _expand(comps, (1, 0), F))})


def filtered_divisibility(K: Complex, z: CycleVector, writhe: int, r: int, check: bool = True) -> DivisibilityResult:
    """H-divisibility of a cycle in a reduced complex of a closed diagram.

    Entries of the blocks from degree -1 to 0 and from 0 to 1 are removed in
    order of increasing H-exponent; each is invertible once H is inverted,
    and minimality keeps every new entry H-divisible.  The divisibility is
    the least exponent among the surviving cycle components.
    """
    K = K.copy()
    z = z.copy()
    for _, o in K.objs.values():
        if o.points or o.circles:
            raise ValueError("filtered divisibility needs a reduced closed complex")
    while True:
        best = None
        for s, t, m in K.entries():
            if K.objs[s][0] not in (-1, 0):
                continue
            u = is_unit(m, any_hexp=True)
            if u is None:
                raise ValueError(f"entry {s}->{t} is not a monomial: {m.dump()}")
            if u[1] < 0:
                raise ArithmeticError(f"negative H-exponent in differential at {s}->{t}")
            key = (u[1], K.objs[s][0], s, t)
            if best is None or key < best:
                best = key
        if best is None:
            break
        eliminate(K, best[2], best[3], z, any_hexp=True)
    if check:
        K.check(z)
    witnesses = []
    for i, c in sorted(z.comps.items()):
        if c.is_zero():
            continue
        (shape, (coef, e)), = c.terms.items()
        witnesses.append((K.objs[i][1].qshift, e))
    if not witnesses:
        raise ArithmeticError("the cycle vanished under reduction")
    dH = min(e for _, e in witnesses)
    if dH < 0:
        raise ArithmeticError(f"negative divisibility {dH}: witnesses {witnesses}")
    return DivisibilityResult(dH, 2 * dH + writhe - r + 1, writhe, r, witnesses, dict(K.stats), K)


def s_invariant(T: TangleDiagram, F: Field = QQ, allow_links: bool = False, order=None) -> DivisibilityResult:
    """Rasmussen invariant of a closed diagram over F."""
    if not T.is_closed:
        raise DiagramError("the s-invariant needs a closed diagram")
    if not allow_links and T.components() != 1:
        raise LinkError(f"{T} is not a knot ({T.components()} components)")
    S = seifert_resolve(T)
    K, z = scan(T, F, labels=S, order=order)
    res = filtered_divisibility(K, z, T.writhe, S.r, check=False)
    res.stats = dict(K.stats)
    res.complex = K
    return res


# --- twist tangles -------------------------------------------------------------


def twist_reduced(q: int, orientation: int = 1, F: Field = QQ):
    """Closed-form reduced complex of the twist tangle T_q with its Lee cycle.

    ``orientation`` +1 makes every crossing positive, -1 negative.  Boundary
    points are 0..3 = NW, SW, SE, NE.  Returns ``(complex, cycle)``.
    """
    E0 = CrosslessTangle.make([(0, 1), (2, 3)])
    E1 = CrosslessTangle.make([(0, 3), (1, 2)])
    K = Complex(F, (0, 1, 2, 3))
    if q == 0:
        o = K.add(0, E0)
        z = CycleVector(E0, {o: decorated_identity(E0, {}, F)})
        return K, z
    n = abs(q)
    if q > 0:
        dshift, qsh = (0, n) if orientation > 0 else (-n, -2 * n)
        objs = [(0, E0)] + [(i, E1.shifted(2 * i - 1)) for i in range(1, n + 1)]
    else:
        dshift, qsh = (n, 2 * n) if orientation > 0 else (0, -n)
        objs = [(-i, E1.shifted(-2 * i + 1)) for i in range(n, 0, -1)] + [(0, E0)]
    ids = [K.add(d + dshift, o.shifted(qsh)) for d, o in objs]

    def a_map(x, y):
        # u_X + l_Y = u_X + l_X - H id
        up, low = 0, 1
        c = elementary(x, y, (up,), F)
        c.add_into(elementary(x, y, (low,), F), F)
        c.add_into(elementary(x, y, (), F, (F.norm(-1), 1)), F)
        return c

    def b_map(x, y):
        c = elementary(x, y, (0,), F)
        c.add_into(elementary(x, y, (1,), F, (F.norm(-1), 0)), F)
        return c

    objs_shifted = [K.objs[i][1] for i in ids]
    steps = len(ids) - 1
    for k in range(steps):
        src, tgt = ids[k], ids[k + 1]
        xo, yo = objs_shifted[k], objs_shifted[k + 1]
        # distance from E_0 decides s, then b, a, b, ...
        dist = k if q > 0 else steps - 1 - k
        if dist == 0:
            m = elementary(xo, yo, (), F)
        elif dist % 2 == 1:
            m = b_map(xo, yo)
        else:
            m = a_map(xo, yo)
        K.add_entry(src, tgt, m)
    T = twist_tangle(q, parallel=(orientation > 0) == (q > 0))
    S = seifert_resolve(T)
    zero = [i for i in ids if K.objs[i][0] == 0][0]
    tobj = K.objs[zero][1]
    sobj = tobj.shifted(-tobj.qshift)
    labels = {}
    for (i, j), lab in zip(S.arc_ends, S.arc_labels):
        labels[min(i, j)] = E_X if lab == "eX" else E_Y
    c = decorated_identity(sobj, labels, F, tobj)
    if q > 0 and orientation < 0:
        # the sign matches the scan pipeline's elimination order
        c = c.scaled((F.norm((-1) ** ((n - 1) // 2)), n - 1), F)
    return K, CycleVector(sobj, {zero: c})


# --- tangle decomposition --------------------------------------------------------


def theorem_b_sides(p: int, q: int, r: int, F: Field = QQ):
    """Both sides of the Lee-cycle decomposition for a pretzel diagram.

    Returns ``(composed, direct)``: the plugged tangle Lee cycles precomposed
    with the cycle of the inner resolution, and the Lee cycle of the glued
    diagram.  Each is a dict from the set of dotted Seifert circles (named by
    their least edge) to a coefficient, plus the q-shift of the target.
    """
    D, pieces, L, maps = pretzel_pieces(p, q, r)
    SL = seifert_resolve(L)
    circle_of = {}
    for k, edges in enumerate(SL.circles):
        name = min(edges)
        for e in edges:
            circle_of[e] = name
    direct_cyc = lee_cycle(SL, F)
    free = [("free", k) for k in range(SL.r - len(SL.circles))]
    direct = _named_terms(direct_cyc.comps[0], [min(c) for c in SL.circles] + free)
    fs = []
    piece_S = []
    for T, m in zip(pieces, maps):
        S = seifert_resolve(T, seed=_seed_from(T, m, SL))
        piece_S.append(S)
    holes = [D.inputs[i] for i in range(len(pieces))]
    for S, hole in zip(piece_S, holes):
        fs.append(lee_cycle(S, F, points=hole).comps[0])
    point_edge = {}
    for T, m, hole in zip(pieces, maps, holes):
        for k, e in enumerate(T.boundary):
            point_edge[hole[k]] = m[e]

    def src_rule(desc):
        if desc[0] == "old":
            # loops of the frame itself are free loops of the glued diagram
            return ((0, 0, XEL),) if desc[1] == 0 else None
        pts = [p_ for p_ in desc[1] if p_ in point_edge]
        lab = SL.edge_labels[point_edge[pts[0]]] if pts else "X"
        return ((0, 0, XEL if lab == "X" else YEL),)

    res, tdescs, _ = plug(D, fs, F, src_caps=src_rule, return_descs=True)
    (_, composed_map), = res.items()
    names = []
    for d in tdescs:
        if d[0] == "old" and d[1] == 0:
            names.append(free.pop(0))
        elif d[0] == "old":
            i, k = d[1], d[2]
            T, m, S = pieces[i - 1], maps[i - 1], piece_S[i - 1]
            names.append(circle_of[m[S.circles[k][0]]])
        else:
            pts = [p_ for p_ in d[1] if p_ in point_edge]
            names.append(circle_of[point_edge[pts[0]]] if pts else free.pop(0))
    composed = _named_terms(composed_map, names)
    return (composed, composed_map.tgt.qshift), (direct, direct_cyc.comps[0].tgt.qshift)


def _seed_from(T, m, SL):
    e = T.edges[0]
    return (e, SL.edge_labels[m[e]])


def _named_terms(c: CobLin, names):
    out = {}
    for shape, coef in c.terms.items():
        dotted = []
        for l in shape:
            if l < 0 and l % 2 == 0:
                dotted.append(names[-l // 2 - 1])
            else:
                dotted.append(("arc", l))
        out[frozenset(dotted)] = coef
    return out
