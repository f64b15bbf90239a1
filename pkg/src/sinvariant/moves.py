"""Reidemeister moves as PD rewrites that keep every strand's orientation.

Sites come from :func:`move_sites`.  ``R1+``/``R1-`` insert a positive kink
(loop to the left or right of the strand), ``R1'+``/``R1'-`` a negative one.
``R2`` pushes one edge of a face across another, ``R2inv`` removes a bigon
and ``R3`` flips a triangular face.
"""

from __future__ import annotations

from dataclasses import dataclass

from .planar import DiagramError, TangleDiagram, _faces, seifert_resolve

__all__ = ["MOVES", "MoveResult", "apply_reidemeister", "move_sites", "random_move"]

MOVES = ("R1+", "R1-", "R1'+", "R1'-", "R2", "R2inv", "R3")

# kink crossings for (sign, side), as functions of (in, out, loop)
_KINKS = {
    (1, "L"): lambda i, o, l: (i, o, l, l),
    (1, "R"): lambda i, o, l: (l, l, o, i),
    (-1, "R"): lambda i, o, l: (i, l, l, o),
    (-1, "L"): lambda i, o, l: (l, i, o, l),
}
_R1 = {"R1+": (1, "L"), "R1-": (1, "R"), "R1'+": (-1, "L"), "R1'-": (-1, "R")}


@dataclass(frozen=True)
class MoveResult:
    """The new diagram, the changes in writhe and Seifert circle count, and a site undoing R2."""

    diagram: TangleDiagram
    dw: int
    dr: int
    inverse_site: tuple | None = None


class _Editor:
    """Mutable PD with addressable edge ends."""

    def __init__(self, T: TangleDiagram):
        self.T = T
        self.pd = [list(x) for x in T.pd]
        self.signs = list(T.signs)
        self.boundary = list(T.boundary)
        self.free = T.free_loops
        self.next = max(T.edges, default=0) + 1

    def fresh(self):
        self.next += 1
        return self.next - 1

    def put(self, end, label):
        if end[0] == "x":
            self.pd[end[1]][end[2]] = label
        else:
            self.boundary[end[1]] = label

    def add(self, x, sign):
        self.pd.append(list(x))
        self.signs.append(sign)

    def build(self, name=None):
        return TangleDiagram(
            tuple(tuple(x) for x in self.pd),
            tuple(self.signs),
            tuple(self.boundary),
            self.free,
            self.T.name if name is None else name,
        )


def _orient(g, in_under, in_over):
    """Rotate a counterclockwise 4-tuple so the incoming under edge is first."""
    x = tuple(g[in_under:]) + tuple(g[:in_under])
    k = (in_over - in_under) % 4
    if k not in (1, 3):
        raise DiagramError("strands do not cross transversally")
    return x, 1 if k == 3 else -1


def _r1(T, move, site):
    sign, side = _R1[move]
    ed = _Editor(T)
    loop = ed.fresh()
    if site == ("loop",):
        if not T.free_loops:
            raise DiagramError("no free loop to kink")
        ed.free -= 1
        e = ed.fresh()
        ed.add(_KINKS[(sign, side)](e, e, loop), sign)
        return ed.build()
    e = site[0] if isinstance(site, tuple) else site
    if e not in T.edges:
        raise DiagramError(f"no edge {e}")
    _, head = T.direction(e)
    out = ed.fresh()
    ed.put(head, out)
    ed.add(_KINKS[(sign, side)](e, out, loop), sign)
    return ed.build()


def _r2(T, site):
    (e, pe), (f, pf), e_over = site
    faces, face_of = _faces(T)
    if (e, pe) not in face_of or (f, pf) not in face_of:
        raise DiagramError("R2 site must name two darts")
    if face_of[(e, pe)] != face_of[(f, pf)] or e == f:
        raise DiagramError("R2 needs two distinct edges on one face")
    ed = _Editor(T)
    qe = [x for x in T.ends(e) if x != pe][0]
    qf = [x for x in T.ends(f) if x != pf][0]
    e_fwd = T.direction(e)[0] == pe
    f_fwd = T.direction(f)[0] == pf
    e2, e3, f2, f3 = ed.fresh(), ed.fresh(), ed.fresh(), ed.fresh()
    ed.put(qe, e3)
    ed.put(qf, f3)
    # the finger of e enters the face, crosses f at A, runs beyond it and
    # returns across f at B; f runs from its start through B then A
    A = (e, f2, e2, f3)
    B = (e3, f, e2, f2)
    ia_e, ia_f = (0 if e_fwd else 2), (1 if f_fwd else 3)
    ib_e, ib_f = (2 if e_fwd else 0), (1 if f_fwd else 3)
    if e_over:
        xa, sa = _orient(A, ia_f, ia_e)
        xb, sb = _orient(B, ib_f, ib_e)
    else:
        xa, sa = _orient(A, ia_e, ia_f)
        xb, sb = _orient(B, ib_e, ib_f)
    ed.add(xa, sa)
    ed.add(xb, sb)
    return ed.build(), (e2, f2)


def _r2inv(T, site):
    x, y = site
    if x == y or x not in T.edges or y not in T.edges:
        raise DiagramError("R2inv needs two distinct edges")
    ex, ey = T.ends(x), T.ends(y)
    if any(end[0] != "x" for end in ex + ey):
        raise DiagramError("bigon edges must end at crossings")
    cx = sorted(end[1] for end in ex)
    cy = sorted(end[1] for end in ey)
    if cx != cy or cx[0] == cx[1]:
        raise DiagramError("edges do not bound a bigon between two crossings")
    faces, face_of = _faces(T)
    if not any(len(fc) == 2 and {d[0] for d in fc} == {x, y} for fc in faces):
        raise DiagramError("edges do not bound a bigon face")
    slot = {}
    for e, ends in ((x, ex), (y, ey)):
        for _, c, s in ends:
            slot[(e, c)] = s
    A, B = cx
    if slot[(x, A)] % 2 != slot[(x, B)] % 2:
        raise DiagramError("bigon is not removable: the strands alternate")
    parent = {}

    def find(a):
        while parent.get(a, a) != a:
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for e in (x, y):
        outs = [T.pd[c][(slot[(e, c)] + 2) % 4] for c in (A, B)]
        union(*outs)
    pd, signs = [], []
    for c, (xx, s) in enumerate(zip(T.pd, T.signs)):
        if c not in (A, B):
            pd.append(tuple(find(e) for e in xx))
            signs.append(s)
    boundary = tuple(find(e) for e in T.boundary)
    used = {e for xx in pd for e in xx} | set(boundary)
    gone = {find(e) for e in T.edges if e not in (x, y)} - used
    return TangleDiagram(tuple(pd), tuple(signs), boundary, T.free_loops + len(gone), T.name)


def _triangle(T, darts):
    """Crossings, side slots and validity of a triangular face."""
    crossings = []
    for e, start in darts:
        if start[0] != "x":
            return None
        crossings.append(start)
    if len({c[1] for c in crossings}) != 3 or len({d[0] for d in darts}) != 3:
        return None
    return crossings


def _r3(T, site):
    faces, face_of = _faces(T)
    darts = faces[site] if isinstance(site, int) else site
    if len(darts) != 3:
        raise DiagramError("R3 needs a triangular face")
    if _triangle(T, darts) is None:
        raise DiagramError("triangle must have three distinct crossings and edges")
    # each side edge lies on one strand; find its slots at both ends
    sides = []
    for e, _ in darts:
        (_, c1, s1), (_, c2, s2) = T.ends(e)
        sides.append(((c1, s1), (c2, s2)))
    # a movable triangle has a top and a bottom side; when every side
    # changes level the strands are cyclically layered
    if all(s1 % 2 != s2 % 2 for (_, s1), (_, s2) in sides):
        raise DiagramError("R3 strands are cyclically layered")
    pd = [list(x) for x in T.pd]
    for e, _ in darts:
        (_, c1, s1), (_, c2, s2) = T.ends(e)
        out1 = T.pd[c1][(s1 + 2) % 4]
        out2 = T.pd[c2][(s2 + 2) % 4]
        pd[c1][s1], pd[c1][(s1 + 2) % 4] = out2, e
        pd[c2][s2], pd[c2][(s2 + 2) % 4] = out1, e
    return TangleDiagram(tuple(tuple(x) for x in pd), T.signs, T.boundary, T.free_loops, T.name)


def apply_reidemeister(T: TangleDiagram, move: str, site) -> MoveResult:
    """Apply one move at ``site`` and report the changes in w and r."""
    if move in _R1:
        new, inv = _r1(T, move, site), None
    elif move == "R2":
        new, inv = _r2(T, site)
    elif move == "R2inv":
        new, inv = _r2inv(T, site), None
    elif move == "R3":
        new, inv = _r3(T, site), None
    else:
        raise DiagramError(f"unknown move {move!r}")
    dr = seifert_resolve(new).r - seifert_resolve(T).r
    return MoveResult(new, new.writhe - T.writhe, dr, inv)


def move_sites(T: TangleDiagram, move: str) -> list:
    """All valid sites for ``move`` on T."""
    if move in _R1:
        return [(e,) for e in T.edges] + ([("loop",)] if T.free_loops else [])
    faces, _ = _faces(T)
    if move == "R2":
        out = []
        for fc in faces:
            for i, d1 in enumerate(fc):
                for d2 in fc[i + 1 :]:
                    if d1[0] != d2[0]:
                        out.extend([(d1, d2, True), (d1, d2, False)])
        return out
    if move == "R2inv":
        out = []
        for fc in faces:
            if len(fc) == 2 and fc[0][0] != fc[1][0]:
                site = (fc[0][0], fc[1][0])
                try:
                    _r2inv(T, site)
                except DiagramError:
                    continue
                out.append(site)
        return out
    if move == "R3":
        out = []
        for k, fc in enumerate(faces):
            if len(fc) == 3 and _triangle(T, fc) is not None:
                try:
                    _r3(T, k)
                except DiagramError:
                    continue
                out.append(k)
        return out
    raise DiagramError(f"unknown move {move!r}")


def random_move(T: TangleDiagram, rng, moves=MOVES):
    """A random applicable move: first a move type, then one of its sites.

    Returns ``(move, site, result)``.
    """
    options = {m: move_sites(T, m) for m in moves}
    kinds = [m for m in moves if options[m]]
    if not kinds:
        raise DiagramError("no applicable move")
    m = kinds[rng.randrange(len(kinds))]
    site = options[m][rng.randrange(len(options[m]))]
    return m, site, apply_reidemeister(T, m, site)
