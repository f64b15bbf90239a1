import pytest
from hypothesis import given
from hypothesis import strategies as st

from sinvariant.knots import CONWAY, DETERMINANTS, determinant, knot, knot_table
from sinvariant.planar import (
    DiagramError,
    LinkError,
    PlanarArcDiagram,
    oriented_smoothing,
    parse_braid,
    parse_pd,
    pretzel_arc_diagram,
    pretzel_diagram,
    seifert_resolve,
    twist_tangle,
)

RIGHT_TREFOIL = "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]"


# --- parsing ---


def test_parse_right_trefoil():
    T = parse_pd(RIGHT_TREFOIL)
    assert T.n_crossings == 3
    assert T.writhe == 3
    assert T.is_closed and T.is_knot()
    assert parse_pd(T.pd_string()).pd == T.pd


def test_parse_empty():
    T = parse_pd("")
    assert T.n_crossings == 0 and T.writhe == 0


@pytest.mark.parametrize(
    "text,message",
    [
        ("X[1,4,2,3] X[3,6,4,7]", "dangling edge"),
        ("X[1,2", "syntax error"),
        ("X[1,1,2,2] X[3,3,4,4] Y[5]", "syntax error"),
        # three components pairwise crossing once cannot be drawn in the plane
        ("X[1,4,2,3] X[3,6,4,5] X[5,2,6,1]", "planar"),
    ],
)
def test_parse_errors(text, message):
    with pytest.raises(DiagramError, match=message):
        parse_pd(text)


def test_braid_closures():
    T = parse_braid([1, 1, 1])
    assert T.writhe == 3 and T.components() == 1
    U = parse_braid([], strands=1)
    assert U.n_crossings == 0 and U.free_loops == 1
    trace = parse_braid([1, -1])
    assert (trace.n_crossings, trace.writhe, trace.components()) == (2, 0, 2)
    plat = parse_braid([1, -1], strands=2, closure="plat")
    assert (plat.n_crossings, plat.writhe, plat.components()) == (2, 0, 1)


@pytest.mark.parametrize("word", ["1 0 1", "1 a", [0]])
def test_braid_errors(word):
    with pytest.raises(DiagramError):
        parse_braid(word)


def test_mirror_and_reverse():
    T = parse_pd(RIGHT_TREFOIL)
    assert T.mirror().writhe == -3
    R = T.reversed()
    assert R.writhe == 3 and seifert_resolve(R).r == seifert_resolve(T).r


# --- pretzels ---


def test_pretzel_examples():
    P = pretzel_diagram(2, 3, 5)
    assert P.n_crossings == 10 and P.components() == 1
    assert pretzel_diagram(0, 3, 5).n_crossings == 8
    with pytest.raises(LinkError, match="not a knot"):
        pretzel_diagram(2, 2, 3)
    assert pretzel_diagram(2, 2, 3, allow_links=True).components() == 2


@given(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4))
def test_pretzel_crossing_count(p, q, r):
    P = pretzel_diagram(p, q, r, allow_links=True)
    assert P.n_crossings == abs(p) + abs(q) + abs(r)
    assert P.is_planar()


# --- Seifert resolution ---


def test_seifert_examples():
    U = seifert_resolve(parse_braid([], strands=1))
    assert U.r == 1 and U.writhe == 0 and U.free_loop_labels == ("X",)
    S = seifert_resolve(parse_pd(RIGHT_TREFOIL))
    assert S.r == 2 and S.writhe == 3
    assert sorted(S.circle_labels) == ["X", "Y"]
    for q in (3, -3):
        S = seifert_resolve(twist_tangle(q))
        assert S.circles == () and sorted(S.arc_labels) == ["eX", "eY"]


def test_swapped_labels():
    S = seifert_resolve(parse_pd(RIGHT_TREFOIL))
    W = S.swapped()
    assert sorted(W.circle_labels) == ["X", "Y"]
    assert all(W.edge_labels[e] != S.edge_labels[e] for e in S.edge_labels)


braid_words = st.integers(2, 4).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.integers(1, n - 1).flatmap(lambda i: st.sampled_from([i, -i])), min_size=1, max_size=8),
    )
)


@given(braid_words)
def test_writhe_and_labels(nw):
    n, word = nw
    T = parse_braid(word, n)
    S = seifert_resolve(T)
    assert T.writhe == sum(1 if g > 0 else -1 for g in word)
    assert S.writhe == T.n_plus - T.n_minus
    assert S.r == n
    for x, sign in zip(T.pd, T.signs):
        (a, _), (b, _) = oriented_smoothing(sign)
        assert S.edge_labels[x[a]] != S.edge_labels[x[b]]
    assert T.is_planar()


@given(st.integers(-6, 6).filter(bool), st.booleans())
def test_twist_resolution_is_planar(q, parallel):
    T = twist_tangle(q, parallel=parallel)
    S = seifert_resolve(T)
    assert S.resolved.is_planar(range(4))
    assert T.writhe == (q if parallel else -q)


# --- planar arc diagrams ---


def canon(D):
    return D.outputs, D.inputs, sorted(tuple(sorted(a)) for a in D.arcs), D.circles


SIDE_BY_SIDE = PlanarArcDiagram(
    (0, 1, 2, 3),
    ((20, 21, 22, 23), (24, 25, 26, 27)),
    ((0, 20), (1, 21), (22, 25), (23, 24), (26, 2), (27, 3)),
)


def test_identity_rule():
    D = pretzel_arc_diagram()
    for i, hole in enumerate(D.inputs):
        fresh = tuple(p + 100 for p in hole)
        got = D.substitute(i, PlanarArcDiagram.identity(hole, fresh))
        ren = dict(zip(hole, fresh))
        want = PlanarArcDiagram(
            D.outputs,
            tuple(tuple(ren.get(p, p) for p in h) for h in D.inputs),
            tuple((ren.get(a, a), ren.get(b, b)) for a, b in D.arcs),
            D.circles,
        )
        assert canon(got) == canon(want)


def test_associativity():
    D = pretzel_arc_diagram()
    F = PlanarArcDiagram((24, 25, 26, 27), ((30, 31, 32, 33),), ((24, 30), (25, 31), (26, 32), (27, 33)), 1)
    left = D.substitute(0, SIDE_BY_SIDE).substitute(1, F)
    right = D.substitute(0, SIDE_BY_SIDE.substitute(1, F))
    assert canon(left) == canon(right)
    assert left.arity == 4 and left.circles == 1


def test_substitute_counts_new_circles():
    cap_both = PlanarArcDiagram((0, 1, 2, 3), (), ((0, 1), (2, 3)))
    D = PlanarArcDiagram((), ((0, 1, 2, 3),), ((0, 1), (2, 3)))
    assert D.substitute(0, cap_both).circles == 2


def test_arc_diagram_validation():
    with pytest.raises(DiagramError):
        PlanarArcDiagram((0, 1), (), ((0, 2),))


# --- built-in table ---


@pytest.mark.parametrize("name", sorted(CONWAY))
def test_knot_table_entries(name):
    T = knot(name)
    assert T.n_crossings == int(name.split("_")[0])
    assert T.is_knot() and T.is_planar()
    assert determinant(T) == DETERMINANTS[name]


def test_knot_table_lookup():
    assert len(knot_table()) == 14
    with pytest.raises(KeyError):
        knot("8_19")
