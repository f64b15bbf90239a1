"""Crossingless tangles: the objects of the cobordism category."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache


@dataclass(frozen=True)
class CrosslessTangle:
    """A perfect matching on labelled boundary points, with a q-shift.

    ``circles`` counts closed loops. Objects inside scanned or reduced
    complexes always have ``circles == 0``; loops only appear transiently
    before delooping.
    """

    points: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]
    qshift: int = 0
    circles: int = 0
    _partner: dict = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        partner = {}
        for a, b in self.pairs:
            if a == b or a in partner or b in partner:
                raise ValueError(f"not a perfect matching: {self.pairs}")
            partner[a] = b
            partner[b] = a
        if set(partner) != set(self.points):
            raise ValueError("matching does not cover the boundary points")
        object.__setattr__(self, "_partner", partner)

    @classmethod
    def make(cls, pairs, qshift: int = 0, circles: int = 0) -> "CrosslessTangle":
        norm = tuple(sorted((a, b) if a < b else (b, a) for a, b in pairs))
        pts = tuple(sorted(p for pr in norm for p in pr))
        return cls(pts, norm, qshift, circles)

    @property
    def key(self):
        """Identity of the underlying diagram, ignoring the q-shift."""
        return (self.pairs, self.circles)

    def partner(self, p: int) -> int:
        return self._partner[p]

    def shifted(self, d: int) -> "CrosslessTangle":
        return CrosslessTangle(self.points, self.pairs, self.qshift + d, self.circles)

    def with_circles(self, c: int) -> "CrosslessTangle":
        return CrosslessTangle(self.points, self.pairs, self.qshift, c)

    def relabel(self, mapping: dict) -> "CrosslessTangle":
        pairs = [(mapping.get(a, a), mapping.get(b, b)) for a, b in self.pairs]
        return CrosslessTangle.make(pairs, self.qshift, self.circles)

    def is_planar(self, cyclic_order) -> bool:
        """Stack test for non-interleaving pairs along a cyclic order."""
        pos = {p: i for i, p in enumerate(cyclic_order)}
        if set(pos) != set(self.points):
            raise ValueError("cyclic order must list every boundary point")
        stack = []
        for p in sorted(self.points, key=pos.__getitem__):
            q = self._partner[p]
            if stack and stack[-1] == q:
                stack.pop()
            else:
                stack.append(p)
        return not stack

    def __str__(self):
        arcs = " ".join(f"{a}-{b}" for a, b in self.pairs)
        circ = f" +{self.circles}o" if self.circles else ""
        return f"[{arcs}{circ}]{{{self.qshift}}}"


EMPTY = CrosslessTangle((), ())


@lru_cache(maxsize=65536)
def loop_structure(spairs, tpairs):
    """Boundary loops of a cobordism between two matchings on the same points.

    Each loop alternates source arcs and target arcs, joined by vertical
    segments over the boundary points. Returns ``(loop_of, members)`` where
    loop ids are the least point of the loop.
    """
    sp, tp = {}, {}
    for a, b in spairs:
        sp[a] = b
        sp[b] = a
    for a, b in tpairs:
        tp[a] = b
        tp[b] = a
    loop_of = {}
    members = {}
    for start in sorted(sp):
        if start in loop_of:
            continue
        pts = []
        p = start
        while True:
            pts.append(p)
            q = sp[p]
            pts.append(q)
            p = tp[q]
            if p == start:
                break
        lid = min(pts)
        for x in pts:
            loop_of[x] = lid
        members[lid] = tuple(sorted(pts))
    return loop_of, members
