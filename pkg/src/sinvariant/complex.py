"""Chain complexes over the cobordism category, and their reduction.

A :class:`Complex` keeps its summands in a dict ``id -> (degree, object)``
and its differential as sparse adjacency dicts of :class:`CobLin` entries.
Objects produced by tensoring are delooped on the spot, so reduced
complexes never contain closed loops.
"""

from __future__ import annotations

import os
from collections import Counter, deque
from dataclasses import dataclass, field

from .cob import (
    DELOOP_SRC,
    DELOOP_TGT,
    QQ,
    XEL,
    YEL,
    CobLin,
    Field,
    _madd,
    _mmul,
    compose,
    decorated_identity,
    deloop_maps,
    elementary,
    glue,
    glue_objects,
    identity,
    is_unit,
    qdeg,
)
from .objects import EMPTY, CrosslessTangle

__all__ = [
    "Complex",
    "CycleVector",
    "crossing_bracket",
    "tensor",
    "plug_complex",
    "deloop",
    "eliminate",
    "reduce",
    "scan",
    "scan_order",
    "E_X",
    "E_Y",
]

DEBUG = os.environ.get("SINVARIANT_DEBUG", "") in ("1", "true", "yes")

# reduced idempotent decorations X/H and -Y/H
E_X = (None, (1, -1))
E_Y = ((1, 0), (-1, -1))


@dataclass
class CycleVector:
    """A chain map from ``source`` (in degree 0) into a complex.

    ``comps`` maps the id of a degree-0 summand to a CobLin from ``source``.
    """

    source: CrosslessTangle
    comps: dict = field(default_factory=dict)

    def copy(self) -> "CycleVector":
        return CycleVector(self.source, {k: v.copy() for k, v in self.comps.items()})

    def qdeg(self):
        degs = {qdeg(c) for c in self.comps.values() if not c.is_zero()}
        if len(degs) > 1:
            raise ArithmeticError(f"cycle is not homogeneous: {sorted(degs)}")
        return degs.pop() if degs else None


class Complex:
    """A bounded chain complex of crossingless tangles."""

    def __init__(self, F: Field = QQ, points=()):
        self.F = F
        self.points = tuple(points)
        self.objs = {}
        self.out = {}
        self.inn = {}
        self._next = 0
        self.log = []
        self.stats = Counter()

    # --- construction ---

    def add(self, deg: int, obj: CrosslessTangle) -> int:
        i = self._next
        self._next += 1
        self.objs[i] = (deg, obj)
        self.out[i] = {}
        self.inn[i] = {}
        return i

    def add_entry(self, src: int, tgt: int, m: CobLin) -> None:
        """Accumulate ``m`` into the entry src -> tgt."""
        if self.objs[tgt][0] != self.objs[src][0] + 1:
            raise ValueError("differential must raise degree by one")
        cur = self.out[src].get(tgt)
        if cur is None:
            if m.is_zero():
                return
            cur = m.copy()
        else:
            cur.add_into(m, self.F)
        if cur.is_zero():
            self.out[src].pop(tgt, None)
            self.inn[tgt].pop(src, None)
        else:
            self.out[src][tgt] = cur
            self.inn[tgt][src] = cur

    def remove(self, i: int) -> None:
        for t in self.out.pop(i):
            del self.inn[t][i]
        for s in self.inn.pop(i):
            del self.out[s][i]
        del self.objs[i]

    def copy(self) -> "Complex":
        K = Complex(self.F, self.points)
        K._next = self._next
        K.objs = dict(self.objs)
        K.out = {i: {} for i in self.objs}
        K.inn = {i: {} for i in self.objs}
        for s, row in self.out.items():
            for t, m in row.items():
                c = m.copy()
                K.out[s][t] = c
                K.inn[t][s] = c
        K.log = list(self.log)
        K.stats = Counter(self.stats)
        return K

    # --- queries ---

    def entry(self, src: int, tgt: int):
        return self.out[src].get(tgt)

    def entries(self):
        for s in sorted(self.out):
            for t in sorted(self.out[s]):
                yield s, t, self.out[s][t]

    def degrees(self) -> dict:
        out = {}
        for i in sorted(self.objs):
            out.setdefault(self.objs[i][0], []).append(i)
        return dict(sorted(out.items()))

    def size(self) -> int:
        return len(self.objs)

    def summands(self) -> Counter:
        """Multiset of ``(degree, matching, circles, qshift)``."""
        return Counter((d, o.pairs, o.circles, o.qshift) for d, o in self.objs.values())

    def euler(self) -> dict:
        """Graded Euler characteristic ``{(matching, q): coefficient}``.

        A closed loop counts as q + q^-1.
        """
        out = Counter()
        for d, o in self.objs.values():
            sign = -1 if d % 2 else 1
            poly = {o.qshift: 1}
            for _ in range(o.circles):
                nxt = Counter()
                for q, c in poly.items():
                    nxt[q + 1] += c
                    nxt[q - 1] += c
                poly = nxt
            for q, c in poly.items():
                out[(o.pairs, q)] += sign * c
        return {k: v for k, v in out.items() if v}

    def check(self, cyc: CycleVector | None = None) -> None:
        """Raise if d o d != 0, an entry has nonzero q-degree, or d o z != 0."""
        F = self.F
        for s, t, m in self.entries():
            q = qdeg(m)
            if q != 0:
                raise ArithmeticError(f"entry {s}->{t} has q-degree {q}")
        for x in self.objs:
            acc = {}
            for y, f in self.out[x].items():
                for z, g in self.out[y].items():
                    h = compose(g, f, F)
                    if z in acc:
                        acc[z].add_into(h, F)
                    else:
                        acc[z] = h
            for z, h in acc.items():
                if not h.is_zero():
                    raise ArithmeticError(f"d o d != 0 from {x} to {z}: {h.dump()}")
        if cyc is not None:
            acc = {}
            for x, zx in cyc.comps.items():
                if self.objs[x][0] != 0:
                    raise ArithmeticError("cycle component outside degree 0")
                for y, f in self.out[x].items():
                    h = compose(f, zx, F)
                    if y in acc:
                        acc[y].add_into(h, F)
                    else:
                        acc[y] = h
            for y, h in acc.items():
                if not h.is_zero():
                    raise ArithmeticError(f"d o z != 0 at {y}: {h.dump()}")

    def dump(self) -> str:
        """Machine-readable listing of summands and entries."""
        lines = []
        for d, ids in self.degrees().items():
            for i in ids:
                lines.append(f"obj {i} deg {d} {self.objs[i][1]}")
        for s, t, m in self.entries():
            lines.append(f"d {s}->{t} {m.dump()}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "objects": [
                {"id": i, "degree": d, "pairs": [list(p) for p in o.pairs], "qshift": o.qshift}
                for i, (d, o) in sorted(self.objs.items())
            ],
            "entries": [{"src": s, "tgt": t, "value": m.dump()} for s, t, m in self.entries()],
        }


def crossing_bracket(sign: int, slots=(0, 1, 2, 3), F: Field = QQ) -> Complex:
    """The two-term complex of one crossing with edges at ``slots`` (PD order).

    The 0-smoothing joins slots (0,1) and (2,3), the 1-smoothing (0,3), (1,2).
    """
    a, b, c, d = slots
    s0 = CrosslessTangle.make([(a, b), (c, d)])
    s1 = CrosslessTangle.make([(a, d), (b, c)])
    K = Complex(F, tuple(sorted(slots)))
    if sign > 0:
        x = K.add(0, s0.shifted(1))
        y = K.add(1, s1.shifted(2))
    elif sign < 0:
        x = K.add(-1, s0.shifted(-2))
        y = K.add(0, s1.shifted(-1))
    else:
        raise ValueError("crossing sign must be +1 or -1")
    K.add_entry(x, y, elementary(K.objs[x][1], K.objs[y][1], (), F))
    return K


def tensor(K: Complex, B: Complex, pairs, cyc=None, piece=None, src_rule=None, do_deloop: bool = True, points=None):
    """Glue two complexes along ``pairs`` of boundary points.

    New closed loops are delooped when ``do_deloop``.  If ``cyc`` and
    ``piece`` are given (cycles into K and B) their glued product is
    returned too; closed loops of its source are capped by ``src_rule``.
    """
    F = K.F
    pairs = tuple(pairs)
    trule = (lambda d: DELOOP_TGT) if do_deloop else None
    srule = (lambda d: DELOOP_SRC) if do_deloop else None
    glued_pts = {p for pr in pairs for p in pr}
    if points is None:
        points = tuple(sorted((set(K.points) | set(B.points)) - glued_pts))
    N = Complex(F, points)
    N.stats = Counter(K.stats)
    N.log = list(K.log)
    ids = {}
    for o in sorted(K.objs):
        dk, ok = K.objs[o]
        for b in sorted(B.objs):
            db, ob = B.objs[b]
            for tags, obj in glue_objects([ok, ob], pairs, trule):
                ids[(o, b, tags)] = N.add(dk + db, obj)
                if tags:
                    N.stats["delooped"] += len(tags)
    idB = {b: identity(B.objs[b][1], F) for b in B.objs}
    idK = {o: identity(K.objs[o][1], F) for o in K.objs}
    for o, o2, f in K.entries():
        for b in sorted(B.objs):
            for (st, tt), m in glue([f, idB[b]], pairs, F, srule, trule).items():
                if m.terms:
                    N.add_entry(ids[(o, b, st)], ids[(o2, b, tt)], m)
    for b, b2, g in B.entries():
        for o in sorted(K.objs):
            dk = K.objs[o][0]
            for (st, tt), m in glue([idK[o], g], pairs, F, srule, trule).items():
                if m.terms:
                    if dk % 2:
                        m = m.scaled((F.norm(-1), 0), F)
                    N.add_entry(ids[(o, b, st)], ids[(o, b2, tt)], m)
    if cyc is None or piece is None:
        return N, None
    src = glue_objects([cyc.source, piece.source], pairs, src_rule)
    if len(src) != 1:
        raise ValueError("cycle source rule must give one option per loop")
    new = CycleVector(src[0][1])
    for o, z in cyc.comps.items():
        for b, w in piece.comps.items():
            for (_, tt), m in glue([z, w], pairs, F, src_rule, trule).items():
                if m.terms:
                    i = ids[(o, b, tt)]
                    if i in new.comps:
                        new.comps[i].add_into(m, F)
                    else:
                        new.comps[i] = m
    new.comps = {k: v for k, v in new.comps.items() if not v.is_zero()}
    return N, new


def plug_complex(D, parts, F: Field = QQ, do_deloop: bool = True) -> Complex:
    """Insert complexes into the holes of a planar arc diagram."""
    if len(parts) != len(D.inputs):
        raise ValueError(f"diagram has {len(D.inputs)} holes, got {len(parts)} complexes")
    inner = sorted(p for h in D.inputs for p in h)
    for K, hole in zip(parts, D.inputs):
        if tuple(sorted(hole)) != K.points:
            raise ValueError(f"boundary mismatch: {K.points} vs {tuple(sorted(hole))}")
    off = max(list(D.outputs) + inner, default=0) + 1
    fresh = {p: p + off for p in inner}
    arcs = [(fresh.get(a, a), fresh.get(b, b)) for a, b in D.arcs]
    frame = CrosslessTangle.make(arcs, 0, D.circles)
    acc = Complex(F, frame.points)
    acc.add(0, frame)
    for K, hole in zip(parts, D.inputs):
        pairs = [(fresh[p], p) for p in hole]
        acc, _ = tensor(acc, K, pairs, do_deloop=do_deloop)
    if do_deloop:
        acc = deloop_all(acc)
    return acc


def deloop(K: Complex, cyc: CycleVector | None = None, obj_id: int | None = None):
    """Deloop one closed loop of one summand (in place); return (K, cyc)."""
    F = K.F
    if obj_id is None:
        cands = [i for i in sorted(K.objs) if K.objs[i][1].circles]
        if not cands:
            return K, cyc
        obj_id = cands[0]
    deg, obj = K.objs[obj_id]
    fwd, back = deloop_maps(obj, F)
    new_ids = [K.add(deg, f.tgt) for f in fwd]
    for t, g in list(K.out[obj_id].items()):
        for i, b in zip(new_ids, back):
            K.add_entry(i, t, compose(g, b, F))
    for s, g in list(K.inn[obj_id].items()):
        for i, f in zip(new_ids, fwd):
            K.add_entry(s, i, compose(f, g, F))
    if cyc is not None and obj_id in cyc.comps:
        z = cyc.comps.pop(obj_id)
        for i, f in zip(new_ids, fwd):
            c = compose(f, z, F)
            if not c.is_zero():
                cyc.comps[i] = c
    K.remove(obj_id)
    K.stats["delooped"] += 1
    K.log.append(("deloop", obj_id, tuple(new_ids)))
    if DEBUG:
        K.check(cyc)
    return K, cyc


def deloop_all(K: Complex, cyc: CycleVector | None = None):
    while any(o.circles for _, o in K.objs.values()):
        K, cyc = deloop(K, cyc)
    return K if cyc is None else (K, cyc)


def eliminate(K: Complex, x: int, y: int, cyc: CycleVector | None = None, any_hexp: bool = False):
    """Gaussian elimination of the invertible entry x -> y (in place)."""
    F = K.F
    if x not in K.objs or y not in K.objs:
        raise KeyError(f"no entry {x} -> {y}")
    a = K.out[x].get(y)
    if a is None:
        raise KeyError(f"no entry {x} -> {y}")
    u = is_unit(a, any_hexp)
    if u is None:
        raise ValueError(f"entry {x} -> {y} is not invertible: {a.dump()}")
    ox = K.objs[x][1]
    inv = (F.norm(-F.inv(u[0])), -u[1])  # minus a^-1
    outs = [(v, c) for v, c in K.out[x].items() if v != y]
    ins = [(w, b) for w, b in K.inn[y].items() if w != x]
    for w, b in ins:
        # -a^-1 o b, viewed as a map into x
        ab = CobLin(b.src, ox, {k: m2 for k, m in b.terms.items() if (m2 := _mmul(m, inv, F)) is not None})
        for v, c in outs:
            K.add_entry(w, v, compose(c, ab, F))
    if cyc is not None:
        zy = cyc.comps.pop(y, None)
        cyc.comps.pop(x, None)
        if zy is not None:
            az = CobLin(zy.src, ox, {k: m2 for k, m in zy.terms.items() if (m2 := _mmul(m, inv, F)) is not None})
            for v, c in outs:
                h = compose(c, az, F)
                if v in cyc.comps:
                    cyc.comps[v].add_into(h, F)
                    if cyc.comps[v].is_zero():
                        del cyc.comps[v]
                elif not h.is_zero():
                    cyc.comps[v] = h
    K.remove(x)
    K.remove(y)
    K.stats["eliminated"] += 1
    K.log.append(("eliminate", x, y, u))
    if DEBUG:
        K.check(cyc)
    return K, cyc


def reduce(K: Complex, cyc: CycleVector | None = None):
    """Deloop everything, then eliminate unit entries until none remain."""
    K, cyc = _deloop_pair(K, cyc)
    queue = deque((s, t) for s, t, _ in K.entries())
    while queue:
        s, t = queue.popleft()
        if s not in K.objs or t not in K.objs:
            continue
        a = K.out[s].get(t)
        if a is None or is_unit(a) is None:
            continue
        touched = [w for w in K.inn[t] if w != s]
        targets = [v for v in K.out[s] if v != t]
        eliminate(K, s, t, cyc)
        queue.extend((w, v) for w in touched for v in targets)
    return K, cyc


def _deloop_pair(K, cyc):
    while any(o.circles for _, o in K.objs.values()):
        K, cyc = deloop(K, cyc)
    return K, cyc


# --- scanning ------------------------------------------------------------------


def scan_order(T) -> list:
    """Greedy crossing order keeping the open boundary small."""
    n = T.n_crossings
    if n == 0:
        return []
    open_edges = set(T.boundary)
    done = []
    left = set(range(n))
    while left:
        best = None
        for c in sorted(left):
            x = T.pd[c]
            shared = sum(1 for e in x if e in open_edges)
            cnt = Counter(x)
            kink = sum(v // 2 for v in cnt.values())
            grow = 4 - 2 * shared - 2 * kink
            key = (grow, -shared, c)
            if best is None or key < best[0]:
                best = (key, c)
        c = best[1]
        for e in T.pd[c]:
            if e in open_edges:
                open_edges.discard(e)
            else:
                open_edges.add(e)
        # an edge seen twice at this crossing is a kink and closes at once
        for e, v in Counter(T.pd[c]).items():
            if v == 2:
                open_edges.discard(e)
        left.discard(c)
        done.append(c)
    return done


def scan(T, F: Field = QQ, labels=None, order=None, with_cycle: bool = True, simplify: bool = True):
    """Reduced complex of a diagram, built crossing by crossing, with its Lee cycle.

    Boundary point i of the result is the i-th boundary edge.  ``labels``
    is a :class:`SeifertData` (default: the standard coloring).  With
    ``simplify=False`` circles are delooped but nothing is eliminated.
    """
    from .planar import oriented_smoothing, seifert_resolve

    if labels is None and with_cycle:
        labels = seifert_resolve(T)
    edge_label = labels.edge_labels if labels is not None else {}
    m = len(T.boundary)
    n = T.n_crossings
    base = m
    stub_base = m + 4 * n

    def slot(c, s):
        return base + 4 * c + s

    point_edge = {}
    exposed = {}
    arcs = []
    seen = {}
    for i, e in enumerate(T.boundary):
        point_edge[i] = e
        if e in seen:
            arcs.append((seen.pop(e), i))
            continue
        ends = T.ends(e)
        if all(end[0] == "b" for end in ends):
            seen[e] = i
            continue
        stub = stub_base + i
        arcs.append((i, stub))
        exposed[e] = stub
        point_edge[stub] = e
    start = CrosslessTangle.make(arcs)
    K = Complex(F, start.points)
    o = K.add(0, start)
    cyc = None
    if with_cycle:
        elements = {min(a): _edec(edge_label[point_edge[a[0]]]) for a in start.pairs}
        cyc = CycleVector(start, {o: decorated_identity(start, elements, F)})

    def src_rule(desc):
        if desc[0] != "new":
            return None
        lab = edge_label[point_edge[desc[1][0]]]
        return ((0, 0, XEL if lab == "X" else YEL),)

    for c in scan_order(T) if order is None else order:
        x = T.pd[c]
        sign = T.signs[c]
        slots = tuple(slot(c, s) for s in range(4))
        for s in range(4):
            point_edge[slots[s]] = x[s]
        B = crossing_bracket(sign, slots, F)
        pairs = []
        for s in range(4):
            e = x[s]
            other = [t for t in range(4) if t != s and x[t] == e]
            if other:
                if other[0] > s:
                    pairs.append((slots[s], slots[other[0]]))
            elif e in exposed:
                pairs.append((exposed.pop(e), slots[s]))
            else:
                exposed[e] = slots[s]
        piece = None
        if with_cycle:
            deg0 = [i for i, (d, _) in B.objs.items() if d == 0][0]
            tobj = B.objs[deg0][1]
            sobj = tobj.shifted(-tobj.qshift)
            sm = oriented_smoothing(sign)
            elements = {min(slots[a], slots[b]): _edec(edge_label[x[a]]) for a, b in sm}
            piece = CycleVector(sobj, {deg0: decorated_identity(sobj, elements, F, tobj)})
        K, cyc = tensor(K, B, pairs, cyc, piece, src_rule)
        K, cyc = reduce(K, cyc) if simplify else _deloop_pair(K, cyc)
    for _ in range(T.free_loops):
        K, cyc = _add_free_loop(K, cyc, "X")
    return K, cyc


def _edec(label):
    return E_X if label in ("X", "eX") else E_Y


def _add_free_loop(K: Complex, cyc, label):
    """Tensor with a delooped unknotted circle labelled X or Y."""
    F = K.F
    N = Complex(F, K.points)
    N.stats = Counter(K.stats)
    N.log = list(K.log)
    ids = {}
    for o in sorted(K.objs):
        d, obj = K.objs[o]
        for t in (1, -1):
            ids[(o, t)] = N.add(d, obj.shifted(t))
    for s, t, m in K.entries():
        for sh in (1, -1):
            N.add_entry(ids[(s, sh)], ids[(t, sh)], CobLin(N.objs[ids[(s, sh)]][1], N.objs[ids[(t, sh)]][1], dict(m.terms)))
    N.stats["delooped"] += 1
    if cyc is None:
        return N, None
    new = CycleVector(cyc.source)
    # components of the cup with X or Y under (eps_Y, eps)
    parts = {1: None, -1: (1, 0)} if label == "X" else {1: (F.norm(-1), 1), -1: (1, 0)}
    for o, z in cyc.comps.items():
        for sh, coef in parts.items():
            if coef is None:
                continue
            i = ids[(o, sh)]
            new.comps[i] = CobLin(z.src, N.objs[i][1], {k: v for k, m in z.terms.items() if (v := _mmul(m, coef, F))})
    return N, new
