"""Dotted cobordisms with t = 0, over Laurent monomials in H.

A morphism between two crossingless tangles is a linear combination of
dotted surfaces.  The boundary of such a surface is a union of loops, each
made of source arcs, target arcs and vertical segments over the boundary
points, plus any closed loops of the source and target.  Neck cutting turns
every surface into a disjoint union of disks, one per boundary loop, each with
zero or one dot.  A term is therefore keyed by the sorted tuple of dotted
loop ids, and this key is canonical.

Loop ids: an arc loop is named by its least boundary point; the closed loops
of the source are ``-1, -3, -5, ...`` and those of the target ``-2, -4, ...``.

All rewriting happens in A = F[H^{+-1}][X]/(X^2 - HX): a dot is X, a handle
is 2X - H, and a closed sphere carrying x evaluates to epsilon(x).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

from .objects import CrosslessTangle, loop_structure

__all__ = [
    "Field",
    "QQ",
    "CobLin",
    "qdeg",
    "normalize",
    "compose",
    "glue",
    "glue_objects",
    "decorated_identity",
    "is_unit",
    "retarget",
    "trace_arcs",
    "DELOOP_SRC",
    "DELOOP_TGT",
    "plug",
    "relabel",
    "identity",
    "elementary",
    "cup",
    "cap",
    "deloop_maps",
    "surface_value",
    "SRC",
    "TGT",
    "ONE",
    "XEL",
    "YEL",
]


def SRC(k: int) -> int:
    """Loop id of the k-th closed loop of the source object."""
    return -(2 * k + 1)


def TGT(k: int) -> int:
    """Loop id of the k-th closed loop of the target object."""
    return -(2 * k + 2)


class Field:
    """Scalars: the rationals (``p == 0``) or a prime field F_p."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p < 0 or p == 1:
            raise ValueError(f"bad characteristic {p}")
        if p and any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @classmethod
    def parse(cls, spec: str) -> "Field":
        s = spec.strip()
        if s.upper() == "Q":
            return cls(0)
        if s.upper() == "F2":
            return cls(2)
        if s[:3].upper() == "FP:":
            return cls(int(s[3:]))
        raise ValueError(f"unknown field {spec!r}")

    @property
    def name(self) -> str:
        if self.p == 0:
            return "Q"
        return "F2" if self.p == 2 else f"Fp:{self.p}"

    def norm(self, x):
        if self.p:
            return x % self.p
        if type(x) is Fraction and x.denominator == 1:
            return x.numerator
        return x

    def inv(self, x):
        if self.p:
            x %= self.p
            if not x:
                raise ZeroDivisionError("zero has no inverse")
            return pow(x, self.p - 2, self.p)
        if x == 1 or x == -1:
            return int(x)
        if not x:
            raise ZeroDivisionError("zero has no inverse")
        return self.norm(Fraction(1) / x)

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return f"Field({self.name})"


QQ = Field(0)


# --- monomials and elements of A --------------------------------------------
# A monomial is (scalar, hexp), or None for zero.  An element of A is a pair
# (a, b) meaning a + bX; homogeneity keeps a and b monomials.


def _madd(x, y, F):
    if x is None:
        return y
    if y is None:
        return x
    if x[1] != y[1]:
        raise ArithmeticError(f"inhomogeneous sum {x} + {y}")
    c = F.norm(x[0] + y[0])
    return (c, x[1]) if c else None


def _mmul(x, y, F):
    if x is None or y is None:
        return None
    c = F.norm(x[0] * y[0])
    return (c, x[1] + y[1]) if c else None


def _emul(u, v, F):
    a1, b1 = u
    a2, b2 = v
    bb = _mmul(b1, b2, F)
    b = _madd(_madd(_mmul(a1, b2, F), _mmul(b1, a2, F), F), None if bb is None else (bb[0], bb[1] + 1), F)
    return (_mmul(a1, a2, F), b)


ONE = ((1, 0), None)
XEL = (None, (1, 0))
YEL = ((-1, 1), (1, 0))  # hollow dot, X - H


def surface_element(dots: int, genus: int, F: Field):
    """X^dots (2X - H)^genus, using (2X - H)^2 = H^2."""
    if genus % 2 == 0:
        if dots == 0:
            return ((1, genus), None)
        return (None, (1, genus + dots - 1))
    if dots == 0:
        two = F.norm(2)
        return ((F.norm(-1), genus), (two, genus - 1) if two else None)
    return (None, (1, genus - 1 + dots))


def surface_value(genus: int, dots: int, F: Field = QQ):
    """Closed connected surface of given genus and dot count, as a monomial."""
    return surface_element(dots, genus, F)[1]


def _distribute(loops, el, F):
    """Neck-cut a connected genus-0 piece carrying ``el`` onto its loops.

    Uses Delta^(k)(X) = X^{(x)k} and
    Delta^(k)(1) = sum over nonempty S of (-1)^{|S|+1} H^{|S|-1} (1 on S, X off S).
    Returns a list of (dotted loops, monomial).
    """
    a, b = el
    out = []
    if b is not None:
        out.append((tuple(loops), b))
    if a is not None:
        n = len(loops)
        for size in range(1, n + 1):
            sign = 1 if size % 2 else -1
            m = (F.norm(sign * a[0]), a[1] + size - 1)
            if not m[0]:
                continue
            for undotted in combinations(range(n), size):
                u = set(undotted)
                out.append((tuple(l for i, l in enumerate(loops) if i not in u), m))
    return out


def _expand(comps, closed_coef, F):
    """Product over components of their neck-cut expansions."""
    options = []
    for loops, el in comps:
        opts = _distribute(loops, el, F)
        if not opts:
            return {}
        options.append(opts)
    out = {}
    for choice in product(*options):
        m = closed_coef
        dotted = []
        for dl, x in choice:
            m = _mmul(m, x, F)
            if m is None:
                break
            dotted.extend(dl)
        if m is None:
            continue
        key = tuple(sorted(dotted))
        r = _madd(out.get(key), m, F)
        if r is None:
            out.pop(key, None)
        else:
            out[key] = r
    return out


# --- morphisms ---------------------------------------------------------------


class CobLin:
    """A homogeneous linear combination of dotted cobordisms in normal form.

    ``terms`` maps the sorted tuple of dotted loop ids to a monomial
    ``(scalar, hexp)``.
    """

    __slots__ = ("src", "tgt", "terms")

    def __init__(self, src: CrosslessTangle, tgt: CrosslessTangle, terms=None):
        if src.points != tgt.points:
            raise ValueError("source and target have different boundaries")
        self.src = src
        self.tgt = tgt
        self.terms = terms if terms is not None else {}

    def is_zero(self) -> bool:
        return not self.terms

    def copy(self) -> "CobLin":
        return CobLin(self.src, self.tgt, dict(self.terms))

    def scaled(self, coef, F: Field) -> "CobLin":
        out = {}
        for k, m in self.terms.items():
            r = _mmul(m, coef, F)
            if r is not None:
                out[k] = r
        return CobLin(self.src, self.tgt, out)

    def add_into(self, other: "CobLin", F: Field) -> None:
        """In-place ``self += other``."""
        t = self.terms
        for k, m in other.terms.items():
            r = _madd(t.get(k), m, F)
            if r is None:
                t.pop(k, None)
            else:
                t[k] = r

    def plus(self, other: "CobLin", F: Field) -> "CobLin":
        out = self.copy()
        out.add_into(other, F)
        return out

    def same_objects(self, other: "CobLin") -> bool:
        return self.src == other.src and self.tgt == other.tgt

    def loops(self):
        return _loops(self.src, self.tgt)[2]

    def __eq__(self, other):
        return isinstance(other, CobLin) and self.same_objects(other) and self.terms == other.terms

    def __hash__(self):
        return hash((self.src, self.tgt, frozenset(self.terms.items())))

    def __repr__(self):
        return f"CobLin({self.src} -> {self.tgt}: {self.dump()})"

    def dump(self) -> str:
        """Debug text: ``c*H^k`` followed by the loops, dotted ones starred."""
        if not self.terms:
            return "0"
        ids = self.loops()
        parts = []
        for shape, (c, e) in sorted(self.terms.items()):
            d = set(shape)
            blocks = " ".join(f"{{{l}}}" + ("*" if l in d else "") for l in ids)
            parts.append(f"{c}*H^{e}" + (f" [{blocks}]" if blocks else ""))
        return " + ".join(parts)

    def scalar(self):
        """Coefficient of a morphism between empty loop-free objects."""
        if self.src.points or self.src.circles or self.tgt.circles:
            raise ValueError("not a scalar morphism")
        return self.terms.get((), None)


@lru_cache(maxsize=65536)
def _loops_cached(spairs, tpairs, sc, tc):
    loop_of, members = loop_structure(spairs, tpairs)
    ids = sorted(members)
    ids += [SRC(k) for k in range(sc)]
    ids += [TGT(k) for k in range(tc)]
    return loop_of, members, tuple(ids)


def _loops(src: CrosslessTangle, tgt: CrosslessTangle):
    return _loops_cached(src.pairs, tgt.pairs, src.circles, tgt.circles)


def term_qdeg(src: CrosslessTangle, tgt: CrosslessTangle, shape, hexp: int) -> int:
    nloops = len(_loops(src, tgt)[2])
    return nloops - len(src.points) // 2 - 2 * len(shape) - 2 * hexp + tgt.qshift - src.qshift


def qdeg(c: CobLin):
    """Common q-degree of all terms, or None for the zero morphism."""
    degs = {term_qdeg(c.src, c.tgt, s, m[1]) for s, m in c.terms.items()}
    if not degs:
        return None
    if len(degs) > 1:
        raise ArithmeticError(f"inhomogeneous morphism: degrees {sorted(degs)}")
    return degs.pop()


def normalize(src: CrosslessTangle, tgt: CrosslessTangle, components, F: Field = QQ, coef=(1, 0)) -> CobLin:
    """Reduce a raw surface to normal form.

    ``components`` lists ``(loops, genus, dots)``; ``loops`` names the
    boundary loops of that connected component (empty for a closed one).
    Every boundary loop of (src, tgt) must occur exactly once.
    """
    ids = _loops(src, tgt)[2]
    seen = [l for loops, _, _ in components for l in loops]
    if sorted(seen) != sorted(ids):
        raise ValueError("components do not partition the boundary loops")
    comps = []
    closed = coef
    for loops, genus, dots in components:
        if genus < 0 or dots < 0:
            raise ValueError("genus and dot counts must be non-negative")
        el = surface_element(dots, genus, F)
        if loops:
            comps.append((tuple(loops), el))
        else:
            closed = _mmul(closed, el[1], F)
            if closed is None:
                return CobLin(src, tgt, {})
    return CobLin(src, tgt, _expand(comps, closed, F))


def elementary(src: CrosslessTangle, tgt: CrosslessTangle, dots=(), F: Field = QQ, coef=(1, 0)) -> CobLin:
    """Each boundary loop bounds its own disk; ``dots`` lists dotted loops.

    With equal matchings this is the identity on arcs; between the two
    smoothings of a crossing it is the saddle.
    """
    shape = tuple(sorted(dots))
    c = (F.norm(coef[0]), coef[1])
    return CobLin(src, tgt, {shape: c} if c[0] else {})


def identity(obj: CrosslessTangle, F: Field = QQ) -> CobLin:
    _, members, _ = _loops(obj, obj)
    comps = [((l,), 0, 0) for l in sorted(members)]
    comps += [((SRC(k), TGT(k)), 0, 0) for k in range(obj.circles)]
    return normalize(obj, obj, comps, F)


def cup(obj: CrosslessTangle, dotted: bool = False, F: Field = QQ) -> CobLin:
    """obj -> obj with one more closed loop (the new loop is the last one)."""
    tgt = obj.with_circles(obj.circles + 1)
    _, members, _ = _loops(obj, tgt)
    comps = [((l,), 0, 0) for l in sorted(members)]
    comps += [((SRC(k), TGT(k)), 0, 0) for k in range(obj.circles)]
    comps.append(((TGT(obj.circles),), 0, int(dotted)))
    return normalize(obj, tgt, comps, F)


def cap(obj: CrosslessTangle, dotted: bool = False, F: Field = QQ) -> CobLin:
    """obj -> obj without its last closed loop."""
    if obj.circles == 0:
        raise ValueError("no closed loop to cap")
    tgt = obj.with_circles(obj.circles - 1)
    _, members, _ = _loops(obj, tgt)
    comps = [((l,), 0, 0) for l in sorted(members)]
    comps += [((SRC(k), TGT(k)), 0, 0) for k in range(tgt.circles)]
    comps.append(((SRC(tgt.circles),), 0, int(dotted)))
    return normalize(obj, tgt, comps, F)


def deloop_maps(obj: CrosslessTangle, F: Field = QQ):
    """Delooping isomorphism for the last closed loop of ``obj``.

    Returns ``(fwd, back)`` with ``fwd = [eps_Y, eps]`` into the summands
    shifted by +1 and -1, and ``back = [iota, iota_X]`` out of them.
    """
    if obj.circles == 0:
        raise ValueError("object has no closed loop")
    base = obj.with_circles(obj.circles - 1)
    plus, minus = base.shifted(1), base.shifted(-1)
    eps_y = CobLin(obj, plus, cap(obj, True, F).terms)
    eps_y.add_into(CobLin(obj, plus, cap(obj, False, F).terms).scaled((F.norm(-1), 1), F), F)
    eps = CobLin(obj, minus, cap(obj, False, F).terms)
    iota = CobLin(plus, obj, cup(base, False, F).terms)
    iota_x = CobLin(minus, obj, cup(base, True, F).terms)
    return [eps_y, eps], [iota, iota_x]


class _UF:
    __slots__ = ("parent",)

    def __init__(self):
        self.parent = {}

    def find(self, x):
        parent = self.parent
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while x != root:
            nxt = parent.get(x, x)
            parent[x] = root
            x = nxt
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def _evaluate(comp_info, dot_counts, mults, coef, F):
    """Turn per-component data into normal-form terms.

    ``comp_info`` is a list of ``(chi, final_loops, cap_indices)``;
    ``dot_counts[i]`` is the number of dots on component i and ``mults`` the
    cap multipliers (elements of A) by cap index.
    """
    comps = []
    closed = coef
    for (chi, loops, caps), d in zip(comp_info, dot_counts):
        genus2 = 2 - chi - len(caps) - len(loops)
        el = surface_element(d, genus2 // 2, F)
        for ci in caps:
            el = _emul(el, mults[ci], F)
        if loops:
            comps.append((loops, el))
        else:
            closed = _mmul(closed, el[1], F)
            if closed is None:
                return {}
    return _expand(comps, closed, F)


@lru_cache(maxsize=65536)
def _compose_structure(spairs, mpairs, tpairs, sc, mc, tc):
    """Connected components of g o f, independent of the terms."""
    f_loop, _, f_ids = _loops_cached(spairs, mpairs, sc, mc)
    g_loop, _, g_ids = _loops_cached(mpairs, tpairs, mc, tc)
    _, r_members, _ = _loops_cached(spairs, tpairs, sc, tc)
    uf = _UF()
    for a, _ in mpairs:
        uf.union(("f", f_loop[a]), ("g", g_loop[a]))
    for k in range(mc):
        uf.union(("f", TGT(k)), ("g", SRC(k)))
    roots = {}
    chi = {}
    f_comp = {}
    g_comp = {}
    for l in f_ids:
        r = uf.find(("f", l))
        f_comp[l] = roots.setdefault(r, len(roots))
        chi[f_comp[l]] = chi.get(f_comp[l], 0) + 1
    for l in g_ids:
        r = uf.find(("g", l))
        g_comp[l] = roots.setdefault(r, len(roots))
        chi[g_comp[l]] = chi.get(g_comp[l], 0) + 1
    for a, _ in mpairs:
        chi[f_comp[f_loop[a]]] -= 1
    loops = {i: [] for i in range(len(roots))}
    for lid in sorted(r_members):
        loops[f_comp[f_loop[lid]]].append(lid)
    for k in range(sc):
        loops[f_comp[SRC(k)]].append(SRC(k))
    for k in range(tc):
        loops[g_comp[TGT(k)]].append(TGT(k))
    info = tuple((chi[i], tuple(loops[i]), ()) for i in range(len(roots)))
    return info, f_comp, g_comp


def compose(g: CobLin, f: CobLin, F: Field = QQ) -> CobLin:
    """Vertical composition ``g o f``."""
    if f.tgt.key != g.src.key or f.tgt.points != g.src.points:
        raise ValueError(f"object mismatch: {f.tgt} vs {g.src}")
    if f.tgt.qshift != g.src.qshift:
        raise ValueError("q-shift mismatch in composition")
    S, M, T = f.src, f.tgt, g.tgt
    out = CobLin(S, T, {})
    if not f.terms or not g.terms:
        return out
    info, f_comp, g_comp = _compose_structure(S.pairs, M.pairs, T.pairs, S.circles, M.circles, T.circles)
    n = len(info)
    for fshape, fm in f.terms.items():
        base = [0] * n
        for l in fshape:
            base[f_comp[l]] += 1
        for gshape, gm in g.terms.items():
            coef = _mmul(fm, gm, F)
            if coef is None:
                continue
            dots = list(base)
            for l in gshape:
                dots[g_comp[l]] += 1
            for key, m in _evaluate(info, dots, (), coef, F).items():
                r = _madd(out.terms.get(key), m, F)
                if r is None:
                    out.terms.pop(key, None)
                else:
                    out.terms[key] = r
    return out




# --- horizontal gluing -------------------------------------------------------

# Cap options used for eager delooping.  A closed loop in a target object is
# replaced by the summands {+1}, {-1} through eps_Y and eps; in a source
# object through iota and iota_X.
DELOOP_TGT = ((1, 1, YEL), (-1, -1, ONE))
DELOOP_SRC = ((1, 1, ONE), (-1, -1, XEL))


def trace_arcs(pair_lists, glue_pairs):
    """Join arcs end to end through glued points.

    Returns ``(pairs, circles)``: the matching on the unglued points and the
    closed loops formed, each as the sorted tuple of its points.
    """
    ap = {}
    for pairs in pair_lists:
        for a, b in pairs:
            ap[a] = b
            ap[b] = a
    gp = {}
    for a, b in glue_pairs:
        if a in gp or b in gp or a == b:
            raise ValueError(f"point glued twice: {(a, b)}")
        if a not in ap or b not in ap:
            raise ValueError(f"glued point not on any boundary: {(a, b)}")
        gp[a] = b
        gp[b] = a
    seen = set()
    pairs = []
    for p in sorted(ap):
        if p in gp or p in seen:
            continue
        seen.add(p)
        q = ap[p]
        while q in gp:
            r = gp[q]
            seen.add(q)
            seen.add(r)
            q = ap[r]
        seen.add(q)
        pairs.append((p, q))
    circles = []
    for p in sorted(ap):
        if p in seen:
            continue
        pts = []
        q = p
        while True:
            r = ap[q]
            pts.append(q)
            pts.append(r)
            q = gp[r]
            if q == p:
                break
        seen.update(pts)
        circles.append(tuple(sorted(pts)))
    return pairs, circles


def _circle_descs(objs, new_circles):
    descs = [("old", i, k) for i, o in enumerate(objs) for k in range(o.circles)]
    descs += [("new", c) for c in new_circles]
    return descs


def glue_objects(objs, glue_pairs, cap_rule=None):
    """Glue crossingless tangles side by side.

    ``cap_rule(desc)`` returns None to keep a closed loop, or a sequence of
    options ``(tag, qshift_delta, element)`` to replace it.  Returns a list of
    ``(tags, object)``, one per combination of options.
    """
    pairs, new = trace_arcs([o.pairs for o in objs], glue_pairs)
    descs = _circle_descs(objs, new)
    qs = sum(o.qshift for o in objs)
    kept = 0
    options = []
    for d in descs:
        opts = cap_rule(d) if cap_rule else None
        if opts is None:
            kept += 1
        else:
            options.append(opts)
    out = []
    for choice in product(*options):
        tags = tuple(c[0] for c in choice)
        shift = qs + sum(c[1] for c in choice)
        out.append((tags, CrosslessTangle.make(pairs, shift, kept)))
    return out


@lru_cache(maxsize=65536)
def _glue_structure(fkeys, glue_pairs, src_keep, tgt_keep):
    """Term-independent data for gluing factors with the given objects."""
    owner = {}
    floops = []
    for i, (sp, tp, sc, tc) in enumerate(fkeys):
        loop_of, _, ids = _loops_cached(sp, tp, sc, tc)
        floops.append((loop_of, ids))
        for a, _ in sp:
            owner[a] = i
        for _, b in sp:
            owner[b] = i
    uf = _UF()
    for a, b in glue_pairs:
        uf.union((owner[a], floops[owner[a]][0][a]), (owner[b], floops[owner[b]][0][b]))
    comp_index = {}
    node_comp = {}
    for i, (_, ids) in enumerate(floops):
        for l in ids:
            r = uf.find((i, l))
            node_comp[(i, l)] = comp_index.setdefault(r, len(comp_index))
    n = len(comp_index)
    chi = [0] * n
    for c in node_comp.values():
        chi[c] += 1
    for a, _ in glue_pairs:
        chi[node_comp[(owner[a], floops[owner[a]][0][a])]] -= 1

    def point_comp(p):
        i = owner[p]
        return node_comp[(i, floops[i][0][p])]

    spairs, snew = trace_arcs([k[0] for k in fkeys], glue_pairs)
    tpairs, tnew = trace_arcs([k[1] for k in fkeys], glue_pairs)
    spairs = tuple(sorted(spairs))
    tpairs = tuple(sorted(tpairs))
    loops = [[] for _ in range(n)]
    caps = [[] for _ in range(n)]
    _, r_members, _ = _loops_cached(spairs, tpairs, 0, 0)
    for lid in r_members:
        loops[point_comp(lid)].append(lid)

    def side(closed_of, new, keep, ident, cap_base):
        descs = [(i, k) for i, key in enumerate(fkeys) for k in range(key[closed_of])]
        comps = [node_comp[(i, (SRC if closed_of == 2 else TGT)(k))] for i, k in descs]
        comps += [point_comp(c[0]) for c in new]
        kept = 0
        ncap = 0
        for c, keep_it in zip(comps, keep):
            if keep_it:
                loops[c].append(ident(kept))
                kept += 1
            else:
                caps[c].append(cap_base + ncap)
                ncap += 1
        return ncap

    ns = side(2, snew, src_keep, SRC, 0)
    side(3, tnew, tgt_keep, TGT, ns)
    info = tuple((chi[c], tuple(sorted(loops[c])), tuple(caps[c])) for c in range(n))
    return info, node_comp


def glue(factors, glue_pairs, F: Field = QQ, src_caps=None, tgt_caps=None):
    """Horizontal composition of morphisms, glued along ``glue_pairs``.

    Point ids must be distinct across factors; each glue pair identifies two
    boundary points (and the vertical segments over them).  Closed loops of
    the glued source and target are kept or capped according to the rules
    (see :func:`glue_objects`).  Returns ``{(src_tags, tgt_tags): CobLin}``;
    zero morphisms are included so that every object combination appears.
    """
    glue_pairs = tuple(tuple(p) for p in glue_pairs)
    srcs = glue_objects([f.src for f in factors], glue_pairs, src_caps)
    tgts = glue_objects([f.tgt for f in factors], glue_pairs, tgt_caps)
    _, snew = trace_arcs([f.src.pairs for f in factors], glue_pairs)
    _, tnew = trace_arcs([f.tgt.pairs for f in factors], glue_pairs)
    sdesc = _circle_descs([f.src for f in factors], snew)
    tdesc = _circle_descs([f.tgt for f in factors], tnew)
    sopts = [src_caps(d) if src_caps else None for d in sdesc]
    topts = [tgt_caps(d) if tgt_caps else None for d in tdesc]
    fkeys = tuple((f.src.pairs, f.tgt.pairs, f.src.circles, f.tgt.circles) for f in factors)
    info, node_comp = _glue_structure(
        fkeys, glue_pairs, tuple(o is None for o in sopts), tuple(o is None for o in topts)
    )
    n = len(info)
    # per-factor dot vectors
    per_factor = []
    for i, f in enumerate(factors):
        opts = []
        for shape, m in f.terms.items():
            dots = [0] * n
            for l in shape:
                dots[node_comp[(i, l)]] += 1
            opts.append((dots, m))
        per_factor.append(opts)
    combos = []
    for choice in product(*per_factor):
        coef = (1, 0)
        dots = [0] * n
        for d, m in choice:
            coef = _mmul(coef, m, F)
            for c in range(n):
                dots[c] += d[c]
        if coef is not None:
            combos.append((dots, coef))
    cap_lists = [o for o in sopts if o is not None] + [o for o in topts if o is not None]
    ns = sum(1 for o in sopts if o is not None)
    out = {}
    sobj = {t: o for t, o in srcs}
    tobj = {t: o for t, o in tgts}
    for choice in product(*cap_lists):
        mults = [c[2] for c in choice]
        st = tuple(c[0] for c in choice[:ns])
        tt = tuple(c[0] for c in choice[ns:])
        res = CobLin(sobj[st], tobj[tt], {})
        for dots, coef in combos:
            for key, m in _evaluate(info, dots, mults, coef, F).items():
                r = _madd(res.terms.get(key), m, F)
                if r is None:
                    res.terms.pop(key, None)
                else:
                    res.terms[key] = r
        out[(st, tt)] = res
    return out


def relabel(f: CobLin, mapping: dict) -> CobLin:
    """Rename boundary points; loop ids follow their least point."""
    src = f.src.relabel(mapping)
    tgt = f.tgt.relabel(mapping)
    _, members, _ = _loops(f.src, f.tgt)
    ren = {lid: min(mapping.get(p, p) for p in pts) for lid, pts in members.items()}
    terms = {tuple(sorted(ren.get(l, l) for l in shape)): m for shape, m in f.terms.items()}
    return CobLin(src, tgt, terms)


def plug(D, fs, F: Field = QQ, src_caps=None, tgt_caps=None, return_descs: bool = False):
    """Insert morphisms into the input disks of a planar arc diagram.

    ``D`` provides ``outputs`` (points), ``inputs`` (one point tuple per
    disk), ``arcs`` (pairs over all of these) and ``circles``.  ``fs[i]``
    must have boundary ``D.inputs[i]``.  With no cap rules the result is a
    single CobLin; otherwise the dict returned by :func:`glue`.  With
    ``return_descs`` the result dict comes with the descriptors of the
    target's closed loops (factor 0 is the frame) and the renaming of hole
    points used for the frame.
    """
    if len(fs) != len(D.inputs):
        raise ValueError(f"diagram has {len(D.inputs)} inputs, got {len(fs)} morphisms")
    inner = set()
    for f, pts in zip(fs, D.inputs):
        if tuple(sorted(pts)) != f.src.points:
            raise ValueError(f"boundary mismatch: {f.src.points} vs {tuple(sorted(pts))}")
        inner.update(pts)
    used = set(D.outputs) | inner
    fresh = {}
    nxt = max(used, default=0) + 1
    for p in sorted(inner):
        fresh[p] = nxt
        nxt += 1
    arcs = [(fresh.get(a, a), fresh.get(b, b)) for a, b in D.arcs]
    frame = identity(CrosslessTangle.make(arcs, 0, D.circles), F)
    pairs = [(fresh[p], p) for p in sorted(inner)]
    factors = [frame] + list(fs)
    res = glue(factors, pairs, F, src_caps, tgt_caps)
    if return_descs:
        _, tnew = trace_arcs([f.tgt.pairs for f in factors], pairs)
        return res, _circle_descs([f.tgt for f in factors], tnew), fresh
    if src_caps is None and tgt_caps is None:
        return res[((), ())]
    return res


def decorated_identity(obj: CrosslessTangle, elements: dict, F: Field = QQ, target: CrosslessTangle | None = None) -> CobLin:
    """Identity on an arcs-only object with an element of A on some arcs.

    ``elements`` maps a loop id (the least point of an arc) to ``(a, b)``.
    ``target`` may give the same matching with another q-shift.
    """
    if obj.circles:
        raise ValueError("decorations need an object without closed loops")
    tgt = obj if target is None else target
    if tgt.key != obj.key:
        raise ValueError("target must have the same matching")
    _, members, _ = _loops(obj, tgt)
    comps = [((l,), elements.get(l, ONE)) for l in sorted(members)]
    return CobLin(obj, tgt, _expand(comps, (1, 0), F))


def is_unit(c: CobLin, any_hexp: bool = False):
    """``(scalar, hexp)`` if c is a monomial times an identity, else None."""
    if len(c.terms) != 1 or c.src.key != c.tgt.key or c.src.circles:
        return None
    (shape, m), = c.terms.items()
    if shape or (m[1] != 0 and not any_hexp):
        return None
    return m


def retarget(c: CobLin, src: CrosslessTangle | None = None, tgt: CrosslessTangle | None = None) -> CobLin:
    """Same surfaces with re-shifted source or target (same matchings)."""
    s = c.src if src is None else src
    t = c.tgt if tgt is None else tgt
    if s.key != c.src.key or t.key != c.tgt.key:
        raise ValueError("retarget keeps matchings")
    return CobLin(s, t, c.terms)
