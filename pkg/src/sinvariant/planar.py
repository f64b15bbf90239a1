"""Oriented tangle diagrams, parsers, Seifert resolution and planar arc diagrams.

PD convention: ``X[a,b,c,d]`` lists the four edges counterclockwise, starting
with the incoming under-strand, so the under-strand runs a -> c.  The crossing
is positive when the over-strand runs d -> b.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field

from .objects import CrosslessTangle

__all__ = [
    "DiagramError",
    "LinkError",
    "TangleDiagram",
    "SeifertData",
    "PlanarArcDiagram",
    "parse_pd",
    "parse_braid",
    "twist_tangle",
    "pretzel_arc_diagram",
    "pretzel_diagram",
    "pretzel_pieces",
    "seifert_resolve",
]


class DiagramError(ValueError):
    """Malformed or inconsistent diagram input."""


class LinkError(DiagramError):
    """A multi-component diagram given where a knot is required."""


def _other_end(ends, e, end):
    a, b = ends[e]
    return b if a == end else a


@dataclass(frozen=True)
class TangleDiagram:
    """An oriented tangle diagram in a disk.

    ``pd`` holds one ``(a, b, c, d)`` per crossing in the PD convention above
    and ``signs`` the matching crossing signs.  ``boundary`` lists the edges
    that end on the disk boundary in counterclockwise order (empty for a
    closed diagram).  ``free_loops`` counts crossingless closed components.
    """

    pd: tuple = ()
    signs: tuple = ()
    boundary: tuple = ()
    free_loops: int = 0
    name: str = ""
    _ends: dict = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(self.pd) != len(self.signs):
            raise DiagramError("one sign per crossing required")
        ends = {}
        for c, x in enumerate(self.pd):
            if len(x) != 4:
                raise DiagramError(f"crossing {c} does not have four edges")
            for s, e in enumerate(x):
                ends.setdefault(e, []).append(("x", c, s))
        for i, e in enumerate(self.boundary):
            ends.setdefault(e, []).append(("b", i))
        for e, lst in ends.items():
            if len(lst) == 1:
                raise DiagramError(f"dangling edge {e}")
            if len(lst) > 2:
                raise DiagramError(f"edge {e} used {len(lst)} times")
        object.__setattr__(self, "_ends", {e: tuple(v) for e, v in ends.items()})
        for e, (u, v) in self._ends.items():
            ru, rv = self._role(u), self._role(v)
            if ru is not None and rv is not None and ru == rv:
                raise DiagramError(f"inconsistent orientation on edge {e}")

    def _role(self, end):
        """True if the edge enters the crossing at this end, None on the boundary."""
        if end[0] == "b":
            return None
        _, c, s = end
        if s == 0:
            return True
        if s == 2:
            return False
        positive = self.signs[c] > 0
        return (s == 3) == positive

    # --- basic queries ---

    @property
    def n_crossings(self) -> int:
        return len(self.pd)

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    @property
    def n_plus(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    @property
    def is_closed(self) -> bool:
        return not self.boundary

    @property
    def edges(self):
        return sorted(self._ends)

    def ends(self, e):
        return self._ends[e]

    def direction(self, e):
        """``(tail, head)`` ends of an edge."""
        u, v = self._ends[e]
        ru, rv = self._role(u), self._role(v)
        if ru is None and rv is None:
            return (u, v)
        if ru is True or rv is False:
            return (v, u)
        return (u, v)

    def components(self) -> int:
        """Closed link components (open strands are not counted)."""
        seen = set()
        count = self.free_loops
        for e in self.edges:
            if e in seen:
                continue
            strand, closed = self._strand(e)
            seen.update(strand)
            count += closed
        return count

    def _strand(self, e):
        """Edges of the component through e, and whether it is closed."""
        out = [e]
        closed = True
        for forward in (True, False):
            cur = e
            while True:
                tail, head = self.direction(cur)
                end = head if forward else tail
                if end[0] == "b":
                    closed = False
                    break
                _, c, s = end
                nxt = self.pd[c][(s + 2) % 4]
                if nxt == e:
                    break
                out.append(nxt)
                cur = nxt
            if closed:
                break
        return out, closed

    def is_planar(self) -> bool:
        """Euler characteristic test of the traced faces of a closed diagram."""
        if not self.is_closed or not self.pd:
            return True
        faces, _ = _faces(self)
        parent = list(range(len(self.pd)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            (_, a, _), (_, b, _) = self._ends[e]
            parent[find(a)] = find(b)
        pieces = len({find(c) for c in range(len(self.pd))})
        n = len(self.pd)
        return n - 2 * n + len(faces) == 2 * pieces

    def is_knot(self) -> bool:
        return self.is_closed and self.components() == 1

    def pd_string(self) -> str:
        return " ".join("X[" + ",".join(map(str, x)) + "]" for x in self.pd)

    def __str__(self):
        return self.name or self.pd_string() or "unknot"

    # --- derived diagrams ---

    def mirror(self) -> "TangleDiagram":
        pd = []
        for (a, b, c, d), s in zip(self.pd, self.signs):
            pd.append((d, a, b, c) if s > 0 else (b, c, d, a))
        signs = tuple(-s for s in self.signs)
        return TangleDiagram(tuple(pd), signs, self.boundary, self.free_loops, self.name + "*" if self.name else "")

    def reversed(self) -> "TangleDiagram":
        pd = tuple((c, d, a, b) for a, b, c, d in self.pd)
        return TangleDiagram(pd, self.signs, self.boundary, self.free_loops, self.name)

    def relabeled(self) -> "TangleDiagram":
        """Edges renumbered 1.. in order of first appearance."""
        ren = {}
        for x in self.pd:
            for e in x:
                ren.setdefault(e, len(ren) + 1)
        for e in self.boundary:
            ren.setdefault(e, len(ren) + 1)
        pd = tuple(tuple(ren[e] for e in x) for x in self.pd)
        return TangleDiagram(pd, self.signs, tuple(ren[e] for e in self.boundary), self.free_loops, self.name)


def _assemble(geo, boundary=(), free_loops=0, name="", merges=(), inward=None):
    """Build an oriented diagram from unoriented crossings.

    ``geo`` holds counterclockwise 4-tuples with the under-strand in slots 0
    and 2.  Edge labels listed in ``merges`` are identified first.  Each
    component is oriented by traversal; ``inward`` optionally maps boundary
    edges to True (pointing into the disk) or False.
    """
    parent = {}

    def find(x):
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    for a, b in merges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    geo = [tuple(find(e) for e in x) for x in geo]
    boundary = tuple(find(e) for e in boundary)
    all_labels = {e for pr in merges for e in pr} | {e for x in geo for e in x} | set(boundary)
    used = {e for x in geo for e in x} | set(boundary)
    free_loops += len({find(e) for e in all_labels} - used)
    inward = {find(k): v for k, v in (inward or {}).items()}

    ends = {}
    for c, x in enumerate(geo):
        for s, e in enumerate(x):
            ends.setdefault(e, []).append(("x", c, s))
    for i, e in enumerate(boundary):
        ends.setdefault(e, []).append(("b", i))
    for e, lst in ends.items():
        if len(lst) != 2:
            raise DiagramError(f"edge {e} has {len(lst)} ends")

    incoming = set()  # (c, s) where the strand enters crossing c
    seen = set()

    def walk(e, tail):
        """Follow the strand from edge e leaving ``tail``; list (edge, tail, head)."""
        path = []
        while True:
            head = _other_end(ends, e, tail)
            path.append((e, tail, head))
            seen.add(e)
            if head[0] == "b":
                return path, False
            _, c, s = head
            nxt = geo[c][(s + 2) % 4]
            tail = ("x", c, (s + 2) % 4)
            if nxt == path[0][0] and tail == path[0][1]:
                return path, True
            e = nxt

    order = [e for e in boundary] + sorted(ends)
    for e in order:
        if e in seen:
            continue
        u, v = ends[e]
        if e in boundary:
            b_end = u if u[0] == "b" else v
            path, _ = walk(e, b_end)
            last = path[-1][0]
            want = inward.get(e)
            if want is None:
                want = not inward.get(last, True) if last in inward else True
            if not want:
                path = [(x, h, t) for x, t, h in reversed(path)]
        else:
            path, _ = walk(e, u)
        for _, _, head in path:
            if head[0] == "x":
                incoming.add(head[1:])
    pd = []
    signs = []
    for c, x in enumerate(geo):
        if (c, 0) not in incoming:
            x = (x[2], x[3], x[0], x[1])
            over_in_d = (c, 1) in incoming
        else:
            over_in_d = (c, 3) in incoming
        pd.append(x)
        signs.append(1 if over_in_d else -1)
    return TangleDiagram(tuple(pd), tuple(signs), boundary, free_loops, name)


# --- parsers ---------------------------------------------------------------

_CROSSING = re.compile(r"X\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]")


def parse_pd(text: str, name: str = "") -> TangleDiagram:
    """Parse a closed diagram given as ``X[a,b,c,d] X[...] ...``."""
    src = text.strip()
    if src.startswith("PD[") and src.endswith("]"):
        src = src[3:-1]
    pd = []
    pos = 0
    while True:
        while pos < len(src) and (src[pos].isspace() or src[pos] == ","):
            pos += 1
        if pos >= len(src):
            break
        m = _CROSSING.match(src, pos)
        if not m:
            raise DiagramError(f"syntax error at position {pos}: {src[pos:pos + 12]!r}")
        x = tuple(int(g) for g in m.groups())
        if any(e <= 0 for e in x):
            raise DiagramError(f"edge labels must be positive at position {pos}")
        pd.append(x)
        pos = m.end()
    ends = {}
    for c, x in enumerate(pd):
        for s, e in enumerate(x):
            ends.setdefault(e, []).append((c, s))
    for e, lst in ends.items():
        if len(lst) == 1:
            raise DiagramError(f"dangling edge {e}")
        if len(lst) > 2:
            raise DiagramError(f"edge {e} used {len(lst)} times")
    # over-strand direction per crossing: True means it enters at slot 3
    over_d = [None] * len(pd)

    def role(c, s):
        if s == 0:
            return True
        if s == 2:
            return False
        if over_d[c] is None:
            return None
        return (s == 3) == over_d[c]

    def settle(c, s, r):
        """Force role r at slot s (1 or 3) of crossing c; report change."""
        want = (s == 3) == r
        if over_d[c] is None:
            over_d[c] = want
            return True
        if over_d[c] != want:
            raise DiagramError(f"inconsistent orientation at crossing {c + 1}")
        return False

    def propagate():
        queue = deque(ends)
        while queue:
            e = queue.popleft()
            (c1, s1), (c2, s2) = ends[e]
            r1, r2 = role(c1, s1), role(c2, s2)
            if r1 is not None and r2 is not None:
                if r1 == r2:
                    raise DiagramError(f"inconsistent orientation on edge {e}")
                continue
            if r1 is None and r2 is None:
                continue
            c, s, r = (c2, s2, not r1) if r1 is not None else (c1, s1, not r2)
            if settle(c, s, r):
                queue.extend(pd[c][t] for t in (1, 3))

    propagate()
    for c in range(len(pd)):
        if over_d[c] is None:
            # a component that only passes over: orient it by label order
            over_d[c] = pd[c][3] < pd[c][1]
            propagate()
    signs = tuple(1 if d else -1 for d in over_d)
    T = TangleDiagram(tuple(pd), signs, (), 0, name)
    if not T.is_planar():
        raise DiagramError("PD code does not describe a planar diagram")
    return T


def parse_braid(word, strands: int | None = None, closure: str = "trace", name: str = "") -> TangleDiagram:
    """Closure of a braid word; ``+i`` is a positive crossing of strands i, i+1.

    Strands run downward.  ``closure`` is ``"trace"`` or ``"plat"``.
    """
    if isinstance(word, str):
        try:
            word = [int(t) for t in word.replace(",", " ").split()]
        except ValueError as exc:
            raise DiagramError(f"bad braid word: {exc}") from None
    word = list(word)
    if any(g == 0 for g in word):
        raise DiagramError("braid generator index must be nonzero")
    n = max([abs(g) + 1 for g in word], default=1)
    if strands is not None:
        if strands < n:
            raise DiagramError(f"braid needs at least {n} strands")
        n = strands
    top = list(range(1, n + 1))
    cur = list(top)
    nxt = n + 1
    geo = []
    for g in word:
        i = abs(g) - 1
        tl, tr = cur[i], cur[i + 1]
        bl, br = nxt, nxt + 1
        nxt += 2
        geo.append((tl, bl, br, tr) if g > 0 else (tr, tl, bl, br))
        cur[i], cur[i + 1] = bl, br
    if closure == "trace":
        merges = list(zip(cur, top))
    elif closure == "plat":
        if n % 2:
            raise DiagramError("plat closure needs an even strand count")
        merges = [(top[k], top[k + 1]) for k in range(0, n, 2)]
        merges += [(cur[k], cur[k + 1]) for k in range(0, n, 2)]
    else:
        raise DiagramError(f"unknown closure {closure!r}")
    label = name or ("braid " + " ".join(map(str, word)))
    return _assemble(geo, merges=merges, name=label).relabeled()


# --- twist tangles and pretzels ------------------------------------------------


def twist_tangle(q: int, parallel: bool = True, nw_in: bool = True, ne_in: bool | None = None) -> TangleDiagram:
    """The 2-strand twist tangle with ``q`` vertical half-twists.

    Boundary edges are listed NW, SW, SE, NE.  A positive half-twist has its
    over-strand running NE-SW; with both strands pointing down (``parallel``)
    these crossings are positive.  ``nw_in``/``ne_in`` say whether the NW
    and NE edges point into the disk; ``ne_in`` defaults from ``parallel``.
    """
    if ne_in is None:
        ne_in = nw_in if parallel else not nw_in
    left, right = 1, 2
    nw, ne = left, right
    nxt = 3
    geo = []
    for _ in range(abs(q)):
        bl, br = nxt, nxt + 1
        nxt += 2
        geo.append((left, bl, br, right) if q > 0 else (right, left, bl, br))
        left, right = bl, br
    if q == 0:
        raise DiagramError("twist tangle needs q != 0")
    boundary = (nw, left, right, ne)
    return _assemble(geo, boundary, inward={nw: nw_in, ne: ne_in}, name=f"T_{q}")


@dataclass(frozen=True)
class PlanarArcDiagram:
    """A disk with ``d`` input holes and crossingless arcs between boundary points.

    ``outputs`` lists the outer boundary points counterclockwise and
    ``inputs[i]`` those of hole i, also counterclockwise.  ``arcs`` pairs up
    all points; ``circles`` counts closed arcs.
    """

    outputs: tuple = ()
    inputs: tuple = ()
    arcs: tuple = ()
    circles: int = 0

    def __post_init__(self):
        pts = list(self.outputs) + [p for hole in self.inputs for p in hole]
        if len(set(pts)) != len(pts):
            raise DiagramError("boundary points must be distinct")
        covered = [p for a in self.arcs for p in a]
        if sorted(covered) != sorted(pts):
            raise DiagramError("arcs must pair up every boundary point exactly once")

    @classmethod
    def identity(cls, points, hole_points=None) -> "PlanarArcDiagram":
        """One hole; each output point joined radially to the hole."""
        points = tuple(points)
        if hole_points is None:
            off = max(points, default=0) + 1
            hole_points = tuple(p + off for p in points)
        return cls(points, (tuple(hole_points),), tuple(zip(points, hole_points)), 0)

    @property
    def arity(self) -> int:
        return len(self.inputs)

    def substitute(self, i: int, E: "PlanarArcDiagram") -> "PlanarArcDiagram":
        """Insert diagram E into hole i; E's outputs are the points of hole i."""
        from .cob import trace_arcs

        hole = self.inputs[i]
        if tuple(E.outputs) != tuple(hole):
            raise DiagramError("outputs of the inserted diagram must match the hole")
        mine = set(self.outputs) | {p for h in self.inputs for p in h}
        theirs = {p for h in E.inputs for p in h}
        clash = (theirs & mine) - set(hole)
        off = max(mine | theirs | set(hole), default=0) + 1
        ren = {p: p + off for p in theirs} if clash else {}
        e_inputs = tuple(tuple(ren.get(p, p) for p in h) for h in E.inputs)
        e_arcs = [(ren.get(a, a), ren.get(b, b)) for a, b in E.arcs]
        fresh = {p: p + 2 * off + 1 for p in hole}
        d_arcs = [(fresh.get(a, a), fresh.get(b, b)) for a, b in self.arcs]
        glue_pairs = [(fresh[p], p) for p in hole]
        pairs, circles = trace_arcs([d_arcs, e_arcs], glue_pairs)
        inputs = self.inputs[:i] + e_inputs + self.inputs[i + 1 :]
        return PlanarArcDiagram(self.outputs, inputs, tuple(pairs), self.circles + E.circles + len(circles))

    def plug_diagrams(self, tangles, name: str = "", reorient: bool = False):
        """Insert tangle diagrams into the holes.

        ``tangles[i].boundary[k]`` is attached at ``inputs[i][k]``.  Returns
        the glued diagram and, per input, a map from its edge labels to the
        glued labels.  With ``reorient`` the result is re-oriented by traversal
        instead of requiring the pieces' orientations to match.
        """
        if len(tangles) != self.arity:
            raise DiagramError(f"diagram has {self.arity} holes, got {len(tangles)} tangles")
        off = 0
        geo = []
        maps = []
        at_point = {}
        inward = {}
        for T, hole in zip(tangles, self.inputs):
            if len(T.boundary) != len(hole):
                raise DiagramError("tangle boundary does not match hole")
            m = {e: e + off for e in T.edges}
            maps.append(m)
            geo.extend(tuple(m[e] for e in x) for x in T.pd)
            for k, (e, p) in enumerate(zip(T.boundary, hole)):
                at_point[p] = m[e]
                tail, _ = T.direction(e)
                inward[m[e]] = tail == ("b", k)
            off += max(T.edges, default=0) + 1
        nxt = off
        merges = []
        boundary = {}
        loops = self.circles
        for a, b in self.arcs:
            ea, eb = at_point.get(a), at_point.get(b)
            if ea is not None and eb is not None:
                if not reorient and inward[ea] == inward[eb]:
                    raise DiagramError("piece orientations do not match along an arc")
                merges.append((ea, eb))
            elif ea is not None or eb is not None:
                e = ea if ea is not None else eb
                boundary[b if ea is not None else a] = e
            else:
                boundary[a] = nxt
                boundary[b] = nxt
                nxt += 1
        bd = tuple(boundary[p] for p in self.outputs)
        parent = {}

        def find(x):
            while parent.get(x, x) != x:
                x = parent[x]
            return x

        for a, b in merges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        maps = [{e: find(v) for e, v in m.items()} for m in maps]
        free = loops + sum(T.free_loops for T in tangles)
        if reorient:
            D = _assemble(geo, bd, free, name, merges)
        else:
            pd = tuple(tuple(find(e) for e in x) for x in geo)
            signs = tuple(s for T in tangles for s in T.signs)
            used = {e for x in pd for e in x} | set(bd)
            free += len({find(e) for m in maps for e in m.values()} - used)
            D = TangleDiagram(pd, signs, tuple(find(e) for e in bd), free, name)
        return D, maps


def pretzel_arc_diagram() -> PlanarArcDiagram:
    """The closed 3-input diagram joining three twist tangles side by side.

    Hole i has points ``(4i, 4i+1, 4i+2, 4i+3)`` = NW, SW, SE, NE.
    """
    nw = lambda i: 4 * i
    sw = lambda i: 4 * i + 1
    se = lambda i: 4 * i + 2
    ne = lambda i: 4 * i + 3
    arcs = []
    for i in range(3):
        j = (i + 1) % 3
        arcs.append((ne(i), nw(j)))
        arcs.append((se(i), sw(j)))
    inputs = tuple(tuple(range(4 * i, 4 * i + 4)) for i in range(3))
    return PlanarArcDiagram((), inputs, tuple(arcs), 0)


def _vertical_frame(i_nw, i_sw, i_se, i_ne):
    return [(i_nw, i_sw), (i_ne, i_se)]


def pretzel_diagram(p: int, q: int, r: int, allow_links: bool = False) -> TangleDiagram:
    """The standard diagram of the pretzel link P(p, q, r)."""
    evens = sum(1 for x in (p, q, r) if x % 2 == 0)
    if evens > 1 and not allow_links:
        raise LinkError(f"P({p},{q},{r}) is not a knot")
    D, pieces = _pretzel_frame(p, q, r)
    T, _ = D.plug_diagrams(pieces, name=f"P({p},{q},{r})", reorient=True)
    return T.relabeled()


def _pretzel_frame(p, q, r):
    """Reduce zero columns to plain arcs; return a diagram and its pieces."""
    D = pretzel_arc_diagram()
    pieces = []
    for i, t in enumerate((p, q, r)):
        if t == 0:
            hole = D.inputs[len(pieces)]
            E = PlanarArcDiagram(tuple(hole), (), tuple(_vertical_frame(*hole)), 0)
            D = D.substitute(len(pieces), E)
        else:
            pieces.append(twist_tangle(t))
    return D, pieces


def pretzel_pieces(p: int, q: int, r: int):
    """Oriented pieces of P(p, q, r) compatible with its orientation.

    Returns ``(D, pieces, glued, maps)`` with ``glued`` equal to
    ``D.plug_diagrams(pieces)`` without reorientation.
    """
    D, pieces = _pretzel_frame(p, q, r)
    glued, maps = D.plug_diagrams(pieces, reorient=True)
    fixed = []
    base = 0
    for T, m, t in zip(pieces, maps, [x for x in (p, q, r) if x]):
        flags = []
        for k in (0, 3):
            e = T.boundary[k]
            _, c, s0 = [end for end in T.ends(e) if end[0] == "x"][0]
            _, head = glued.direction(m[e])
            flags.append(head == ("x", base + c, _rotated_slot(T.pd[c], glued.pd[base + c], m, s0)))
        fixed.append(twist_tangle(t, nw_in=flags[0], ne_in=flags[1]))
        base += T.n_crossings
    glued, maps = D.plug_diagrams(fixed, name=f"P({p},{q},{r})")
    return D, fixed, glued, maps


def _rotated_slot(x, y, m, s0):
    """Slot of ``y`` holding what sits at slot ``s0`` of ``x``, y a rotation of m(x)."""
    mx = [m[e] for e in x]
    for k in range(4):
        if all(mx[(i + k) % 4] == y[i] for i in range(4)):
            return (s0 - k) % 4
    raise DiagramError("crossing is not a rotation of its piece")


# --- Seifert resolution ------------------------------------------------------


@dataclass(frozen=True)
class SeifertData:
    """Seifert resolution with checkerboard labels.

    ``resolved`` is the matching on boundary positions ``0..m-1``.
    ``circles`` and ``arcs`` are edge lists (arcs run from tail boundary
    point to head boundary point).  ``edge_labels[e]`` is ``"X"`` or ``"Y"``;
    arcs carry ``"eX"``/``"eY"``.  ``r`` counts circles including free loops.
    """

    resolved: CrosslessTangle
    circles: tuple
    arcs: tuple
    circle_labels: tuple
    arc_labels: tuple
    edge_labels: dict
    black_faces: frozenset
    faces: tuple
    writhe: int
    r: int
    free_loop_labels: tuple = ()
    arc_ends: tuple = ()

    def labels(self):
        return list(self.circle_labels) + list(self.free_loop_labels), list(self.arc_labels)

    def swapped(self) -> "SeifertData":
        """Labels for the opposite coloring (the reversed cycle)."""
        sw = {"X": "Y", "Y": "X", "eX": "eY", "eY": "eX"}
        return SeifertData(
            self.resolved,
            self.circles,
            self.arcs,
            tuple(sw[x] for x in self.circle_labels),
            tuple(sw[x] for x in self.arc_labels),
            {e: sw[x] for e, x in self.edge_labels.items()},
            frozenset(range(len(self.faces))) - self.black_faces,
            self.faces,
            self.writhe,
            self.r,
            tuple(sw[x] for x in self.free_loop_labels),
            self.arc_ends,
        )


def oriented_smoothing(sign: int):
    """Slot pairs joined by the orientation-preserving smoothing."""
    return ((0, 1), (2, 3)) if sign > 0 else ((0, 3), (1, 2))


def _faces(T: TangleDiagram):
    """Trace faces; return (faces as dart lists, face of each dart).

    A dart is ``(edge, end)`` leaving ``end``; the face lies to its left.
    """
    m = len(T.boundary)

    def next_dart(end):
        # arriving at ``end``; continue with the face on the left
        if end[0] == "x":
            _, c, s = end
            t = (s - 1) % 4
            return (T.pd[c][t], ("x", c, t))
        i = (end[1] + 1) % m
        return (T.boundary[i], ("b", i))

    face_of = {}
    faces = []
    darts = [(e, end) for e in T.edges for end in T.ends(e)]
    for d in sorted(darts, key=lambda x: (x[0], x[1])):
        if d in face_of:
            continue
        idx = len(faces)
        cyc = []
        cur = d
        while cur not in face_of:
            face_of[cur] = idx
            cyc.append(cur)
            e, start = cur
            cur = next_dart(_other_end(T._ends, e, start))
        faces.append(tuple(cyc))
    return faces, face_of


def seifert_resolve(T: TangleDiagram, seed=None) -> SeifertData:
    """Seifert circles and arcs with checkerboard X/Y labels.

    The label of an edge is X when the region to its left is black.  For a
    closed diagram the outer region (the face with most edges, ties broken
    by the least edge) is white.  For a tangle the region between the last
    and first boundary point is white unless ``seed = (edge, label)`` fixes
    the label of one edge per connected piece.
    """
    faces, face_of = _faces(T)
    nf = len(faces)
    adj = [[] for _ in range(nf)]
    for e in T.edges:
        u, v = T.ends(e)
        f1, f2 = face_of[(e, u)], face_of[(e, v)]
        adj[f1].append(f2)
        adj[f2].append(f1)
    color = [None] * nf
    seeds = dict([seed]) if seed else {}
    m = len(T.boundary)
    # the region after the last boundary point is left of the dart leaving
    # the first boundary point... find it from the boundary walk
    boundary_face = None
    if m:
        e0 = T.boundary[0]
        boundary_face = face_of[(e0, ("b", 0))]
    comps = []
    seen = [False] * nf
    for f in range(nf):
        if seen[f]:
            continue
        comp = []
        dq = deque([f])
        seen[f] = True
        while dq:
            g = dq.popleft()
            comp.append(g)
            for h in adj[g]:
                if not seen[h]:
                    seen[h] = True
                    dq.append(h)
        comps.append(comp)
    for comp in comps:
        root, root_color = None, False
        cs = set(comp)
        for e, lab in seeds.items():
            tail, _ = T.direction(e)
            lf = face_of[(e, tail)]
            if lf in cs:
                root, root_color = lf, lab == "X"
        if root is None:
            if boundary_face is not None and boundary_face in cs:
                root = boundary_face
            else:
                root = max(comp, key=lambda g: (len(faces[g]), -min(d[0] for d in faces[g])))
        color[root] = root_color
        dq = deque([root])
        while dq:
            g = dq.popleft()
            for h in adj[g]:
                if color[h] is None:
                    color[h] = not color[g]
                    dq.append(h)
                elif color[h] == color[g]:
                    raise DiagramError("diagram is not checkerboard colorable")
    labels = {}
    for e in T.edges:
        tail, _ = T.direction(e)
        labels[e] = "X" if color[face_of[(e, tail)]] else "Y"
    # Seifert circles and arcs
    seen_e = set()
    circles, arcs, arc_pairs = [], [], []

    def follow(e):
        path = [e]
        while True:
            _, head = T.direction(path[-1])
            if head[0] == "b":
                return path, head[1]
            _, c, s = head
            for a, b in oriented_smoothing(T.signs[c]):
                if s in (a, b):
                    t = b if s == a else a
            nxt = T.pd[c][t]
            if nxt == path[0]:
                return path, None
            path.append(nxt)

    for i, e in enumerate(T.boundary):
        tail, _ = T.direction(e)
        if tail != ("b", i) or e in seen_e:
            continue
        path, j = follow(e)
        seen_e.update(path)
        arcs.append(tuple(path))
        arc_pairs.append((i, j))
    for e in T.edges:
        if e in seen_e:
            continue
        path, _ = follow(e)
        seen_e.update(path)
        circles.append(tuple(path))
    for path in circles + arcs:
        labs = {labels[e] for e in path}
        if len(labs) != 1:
            raise DiagramError("Seifert circle with mixed labels")
    circle_labels = tuple(labels[c[0]] for c in circles)
    arc_labels = tuple("e" + labels[a[0]] for a in arcs)
    resolved = CrosslessTangle.make(arc_pairs) if arc_pairs else CrosslessTangle((), ())
    black = frozenset(f for f in range(nf) if color[f])
    return SeifertData(
        resolved,
        tuple(circles),
        tuple(arcs),
        circle_labels,
        arc_labels,
        labels,
        black,
        tuple(faces),
        T.writhe,
        len(circles) + T.free_loops,
        ("X",) * T.free_loops,
        tuple(arc_pairs),
    )
