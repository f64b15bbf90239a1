import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sinvariant.cob import QQ, Field, qdeg
from sinvariant.complex import scan
from sinvariant.knots import knot
from sinvariant.lee import filtered_divisibility, lee_cycle, s_invariant, theorem_b_sides, twist_reduced
from sinvariant.planar import DiagramError, LinkError, parse_braid, parse_pd, pretzel_diagram, seifert_resolve, twist_tangle

F2 = Field(2)
UNKNOT = parse_braid([], strands=1)
FIGURE_EIGHT = parse_braid([1, -2, 1, -2])

# frozen from the brute-force oracle (cube complex over F_p)
ORACLE_S = {
    "3_1": 2, "4_1": 0, "5_1": 4, "5_2": -2, "6_1": 0, "6_2": 2, "6_3": 0,
    "7_1": 6, "7_2": -2, "7_3": 4, "7_4": -2, "7_5": 4, "7_6": -2, "7_7": 0,
}  # fmt: skip


# --- Lee cycles ---


def test_unknot_lee_cycle():
    S = seifert_resolve(UNKNOT)
    z = lee_cycle(S)
    (c,) = z.comps.values()
    assert qdeg(c) == -1
    assert c.tgt.circles == 1


def test_twist_tangle_lee_cycle():
    S = seifert_resolve(twist_tangle(3))
    (c,) = lee_cycle(S).comps.values()
    # e_X = X/H and e_Y = -Y/H on the two arcs
    assert all(e < 0 for _, e in c.terms.values())
    assert qdeg(c) == S.writhe


def test_lee_cycle_point_count():
    S = seifert_resolve(twist_tangle(2))
    with pytest.raises(ValueError):
        lee_cycle(S, points=[0, 1])


braids = st.integers(2, 4).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.integers(1, n - 1).flatmap(lambda i: st.sampled_from([i, -i])), min_size=1, max_size=7),
    )
)


@settings(max_examples=25)
@given(braids)
def test_lee_cycle_degree_and_closedness(nw):
    n, word = nw
    T = parse_braid(word, n)
    S = seifert_resolve(T)
    (c,) = lee_cycle(S).comps.values()
    assert qdeg(c) == S.writhe - S.r
    K, z = scan(T, labels=S, simplify=False)
    K.check(z)
    assert z.qdeg() == S.writhe - S.r


# --- divisibility and s ---


def test_unknot_divisibility():
    res = s_invariant(UNKNOT)
    assert (res.dH, res.sH) == (0, 0)


@pytest.mark.parametrize("q", [3, 5, 7])
def test_mirror_torus_knots_have_divisibility_one(q):
    assert s_invariant(parse_braid([-1] * q)).dH == 1


@pytest.mark.parametrize(
    "T,s",
    [
        (parse_braid([1, 1, 1]), 2),
        (parse_braid([1] * 5), 4),
        (parse_braid([-1, -1, -1]), -2),
        (parse_pd("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]"), 2),
        (pretzel_diagram(2, 3, 5), 6),
        (pretzel_diagram(3, -5, -7), 2),
        (pretzel_diagram(4, -3, 5), 0),
    ],
)
def test_s_examples(T, s):
    res = s_invariant(T)
    assert res.sH == s
    assert res.sH == 2 * res.dH + res.writhe - res.r + 1


def test_figure_eight():
    res = s_invariant(FIGURE_EIGHT)
    assert (res.dH, res.sH) == (1, 0)


@pytest.mark.parametrize("name", sorted(ORACLE_S))
def test_knot_table_values(name):
    T = knot(name)
    assert s_invariant(T).sH == ORACLE_S[name]
    assert s_invariant(T, F2).sH == ORACLE_S[name]
    assert s_invariant(T.mirror()).sH == -ORACLE_S[name]


@settings(max_examples=20)
@given(st.integers(1, 5), st.integers(-5, 5))
def test_positive_braids_are_undivisible(a, b):
    word = [1] * a + [2] * (abs(b) + 1)
    assert s_invariant(parse_braid(word), allow_links=True).dH == 0


@pytest.mark.parametrize("name", ["3_1", "4_1", "5_2", "6_2", "7_4"])
def test_orientation_reversal(name):
    T = knot(name)
    assert s_invariant(T.reversed()).dH == s_invariant(T).dH


@pytest.mark.parametrize("pqr", [(2, 3, 5), (3, -5, -7), (1, 1, 1), (2, -3, 5), (3, 3, -7)])
def test_field_independence(pqr):
    D = pretzel_diagram(*pqr)
    assert s_invariant(D, QQ).sH == s_invariant(D, F2).sH


def test_s_rejects_links_and_tangles():
    with pytest.raises(LinkError):
        s_invariant(parse_braid([1, 1]))
    assert s_invariant(parse_braid([1, 1]), allow_links=True).sH == 1
    with pytest.raises(DiagramError):
        s_invariant(twist_tangle(2))


def test_divisibility_needs_reduced_closed_complex():
    K, z = scan(twist_tangle(2))
    with pytest.raises(ValueError):
        filtered_divisibility(K, z, 2, 0)


def test_result_carries_statistics():
    res = s_invariant(knot("5_2"))
    assert res.stats["eliminated"] > 0 and res.stats["delooped"] > 0
    assert res.complex is not None and res.witnesses


# --- twist tangles ---


def test_twist_zero_is_trivial():
    K, z = twist_reduced(0)
    assert K.size() == 1 and len(z.comps) == 1


def test_twist_one():
    K, _ = twist_reduced(1)
    assert sorted((d, o.qshift) for d, o in K.objs.values()) == [(0, 1), (1, 2)]


def test_twist_negative_three_shape():
    K, _ = twist_reduced(-3, -1)
    got = sorted((d, o.pairs, o.qshift) for d, o in K.objs.values())
    e0, e1 = ((0, 1), (2, 3)), ((0, 3), (1, 2))
    assert got == [(-3, e1, -5 - 3), (-2, e1, -3 - 3), (-1, e1, -1 - 3), (0, e0, -3)]


@pytest.mark.parametrize("q", [2, 3, 4])
def test_negatively_oriented_twist_cycle_is_divisible(q):
    K, z = twist_reduced(q, -1)
    K.check(z)
    (c,) = z.comps.values()
    # e_X e_Y alone reaches H^-2, so H^(q-1) lifts the minimum to q - 3
    assert min(e for _, e in c.terms.values()) == q - 3


# --- tangle decomposition ---


@pytest.mark.parametrize("pqr", [(1, 1, 1), (2, 3, -3), (0, 2, -1), (-3, 0, 0)])
def test_decomposition_examples(pqr):
    composed, direct = theorem_b_sides(*pqr)
    assert composed == direct
