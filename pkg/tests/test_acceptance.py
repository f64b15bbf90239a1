"""Acceptance criteria 1-10.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary prints
one PASS/FAIL line per criterion.
"""

import itertools
import random
import sys
import time

import pytest

from sinvariant.cob import QQ, Field, compose, decorated_identity, deloop_maps, identity, is_unit, surface_value
from sinvariant.complex import E_X, E_Y, eliminate, scan
from sinvariant.knots import knot_table
from sinvariant.lee import s_invariant, theorem_b_sides, twist_reduced
from sinvariant.moves import random_move
from sinvariant.objects import CrosslessTangle
from sinvariant.oracle import brute_s
from sinvariant.planar import LinkError, parse_braid, pretzel_diagram, seifert_resolve, twist_tangle

ODD = [q for q in range(-7, 8) if q % 2]


def criterion(n, title):
    return pytest.mark.criterion(n, title)


def pretzel_s(p, q, r):
    try:
        D = pretzel_diagram(p, q, r)
    except LinkError:
        return None
    return s_invariant(D).sH


# --- 1 ---------------------------------------------------------------------------


@criterion(1, "s(T(2,q)) = q - 1 and mirror = 1 - q over Q and F2, each < 2 s")
@pytest.mark.parametrize("F", [QQ, Field(2)], ids=["Q", "F2"])
@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_torus_knots(q, F):
    for sign, expected in ((1, q - 1), (-1, 1 - q)):
        T = parse_braid([sign] * q)
        t0 = time.perf_counter()
        s = s_invariant(T, F).sH
        elapsed = time.perf_counter() - t0
        assert s == expected
        assert elapsed < 2.0


# --- 2, 3, 4 ---------------------------------------------------------------------


@criterion(2, "P(2,q,r) matches the even-case formula for odd q, r in [-7, 7], q + r != 0")
def test_pretzel_even():
    t0 = time.perf_counter()
    checked = 0
    for q, r in itertools.product(ODD, ODD):
        if q + r == 0:
            continue
        s = pretzel_s(2, q, r)
        assert s is not None, (q, r)
        expected = q + r - 2 if (2 + q > 0 and 2 + r > 0 and q + r > 0) else q + r
        assert s == expected, (2, q, r, s, expected)
        checked += 1
    assert checked == len(ODD) ** 2 - len(ODD)
    assert time.perf_counter() - t0 < 120


def odd_formula(p, q, r):
    if p + q > 0 and p + r > 0 and q + r > 0:
        return -2
    if p + q < 0 and p + r < 0:
        return 2
    return 0


@criterion(3, "P(p,q,r) with p in {1,3} matches the odd-case formula for odd q, r in [-7, 7]")
def test_pretzel_odd():
    t0 = time.perf_counter()
    checked = 0
    for p in (1, 3):
        for q, r in itertools.product(ODD, ODD):
            s = pretzel_s(p, q, r)
            if s is None:
                continue
            assert s == odd_formula(p, q, r), (p, q, r, s)
            checked += 1
    assert checked == 2 * len(ODD) ** 2
    assert time.perf_counter() - t0 < 120


@criterion(4, "ribbon pretzels P(p, q, -q) have s = 0")
@pytest.mark.parametrize("p,q", [(2, 3), (3, 5), (2, 5)])
def test_ribbon_pretzels(p, q):
    assert pretzel_s(p, q, -q) == 0


# --- 5 ---------------------------------------------------------------------------


@criterion(5, "scan s equals the brute-force oracle on all prime knots with <= 7 crossings")
def test_oracle_knot_table():
    t0 = time.perf_counter()
    table = knot_table()
    assert len(table) == 14
    for name, T in table.items():
        assert s_invariant(T, QQ).sH == brute_s(T, QQ), name
    assert time.perf_counter() - t0 < 300


# --- 6 ---------------------------------------------------------------------------


def _braid_knots(rng, count, max_crossings):
    out = []
    while len(out) < count:
        strands = rng.choice([2, 3, 4])
        length = rng.randint(strands, max_crossings)
        word = [rng.choice([1, -1]) * rng.randint(1, strands - 1) for _ in range(length)]
        if set(abs(g) for g in word) != set(range(1, strands)):
            continue
        T = parse_braid(word, strands)
        if T.components() == 1:
            out.append(T)
    return out


@criterion(6, "200 random Reidemeister moves satisfy 2 ddH + dw - dr = 0")
def test_reidemeister_moves():
    rng = random.Random(20240611)
    pool = list(knot_table().values()) + _braid_knots(rng, 12, 8)
    cache = {}

    def dH(T):
        key = (T.pd, T.signs, T.free_loops)
        if key not in cache:
            cache[key] = s_invariant(T, allow_links=True).dH
        return cache[key]

    seen = set()
    for _ in range(200):
        T = rng.choice(pool)
        move, site, res = random_move(T, rng)
        seen.add(move)
        assert 2 * (dH(res.diagram) - dH(T)) + res.dw - res.dr == 0, (T.pd_string(), move, site)
        if res.diagram.n_crossings <= 8:
            pool.append(res.diagram)
    assert seen == {"R1+", "R1-", "R1'+", "R1'-", "R2", "R2inv", "R3"}


# --- 7 ---------------------------------------------------------------------------


def _random_small_diagram(rng):
    kind = rng.randrange(3)
    if kind == 0:
        q = rng.choice([-3, -2, -1, 1, 2, 3])
        return twist_tangle(q, parallel=rng.random() < 0.5)
    strands = rng.choice([2, 3]) if kind == 1 else rng.choice([2, 4])
    length = rng.randint(1, 4 if strands < 4 else 3)
    word = [rng.choice([1, -1]) * rng.randint(1, strands - 1) for _ in range(length)]
    return parse_braid(word, strands, closure="trace" if kind == 1 else "plat")


@criterion(7, "delooping identities, elimination on 100 random complexes, closed surface table")
def test_algebra_suite():
    # delooping composites
    for pairs, circles in [((), 1), ((), 2), (((0, 1),), 1), (((0, 3), (1, 2)), 2)]:
        obj = CrosslessTangle.make(pairs, 0, circles)
        fwd, back = deloop_maps(obj)
        total = compose(back[0], fwd[0])
        total.add_into(compose(back[1], fwd[1]), QQ)
        assert total == identity(obj)
        for i, j in itertools.product(range(2), repeat=2):
            c = compose(fwd[i], back[j])
            if i == j:
                assert c == identity(fwd[i].tgt)
            else:
                assert c.is_zero()

    # Gaussian elimination on random unreduced complexes
    rng = random.Random(7)
    for _ in range(100):
        T = _random_small_diagram(rng)
        K, z = scan(T, simplify=False)
        chi = K.euler()
        K.check(z)
        while True:
            units = [(s, t) for s, t, m in K.entries() if is_unit(m) is not None]
            if not units:
                break
            s, t = rng.choice(units)
            eliminate(K, s, t, z)
            K.check(z)
            assert K.euler() == chi

    # closed surfaces: (genus, dots) -> value, None meaning zero
    table = {
        (0, 0): None, (0, 1): (1, 0), (0, 2): (1, 1), (0, 3): (1, 2),
        (1, 0): (2, 0), (1, 1): (1, 1), (1, 2): (1, 2), (1, 3): (1, 3),
        (2, 0): None, (2, 1): (1, 2), (2, 2): (1, 3), (2, 3): (1, 4),
    }  # fmt: skip
    for (g, k), v in table.items():
        assert surface_value(g, k, QQ) == v, (g, k)


# --- 8 ---------------------------------------------------------------------------


@criterion(8, "composed tangle Lee cycles equal direct Lee cycles for |p|,|q|,|r| <= 3")
def test_lee_cycle_decomposition():
    rng = range(-3, 4)
    for p, q, r in itertools.product(rng, rng, rng):
        composed, direct = theorem_b_sides(p, q, r)
        assert composed == direct, (p, q, r)


# --- 9 ---------------------------------------------------------------------------


def _untwisted_cycle(q, orientation):
    """Decorated identity on the degree-0 object, before any H-power."""
    K, z = twist_reduced(q, orientation)
    (zero, c), = z.comps.items()
    S = seifert_resolve(twist_tangle(q, parallel=(orientation > 0) == (q > 0)))
    labels = {min(i, j): (E_X if lab == "eX" else E_Y) for (i, j), lab in zip(S.arc_ends, S.arc_labels)}
    return decorated_identity(c.src, labels, QQ, c.tgt)


@criterion(9, "twist_reduced matches the scanned twist tangle for |q| <= 6")
@pytest.mark.parametrize("orientation", [1, -1])
@pytest.mark.parametrize("q", [q for q in range(-6, 7) if q])
def test_twist_tangles(q, orientation):
    K, z = twist_reduced(q, orientation)
    K.check(z)
    T = twist_tangle(q, parallel=(orientation > 0) == (q > 0))
    K2, z2 = scan(T)
    assert K.summands() == K2.summands()
    (c,), (c2,) = z.comps.values(), z2.comps.values()
    assert c == c2
    base = _untwisted_cycle(q, orientation)
    if q > 0 and orientation < 0:
        assert c2 in (base.scaled((1, q - 1), QQ), base.scaled((-1, q - 1), QQ))
    else:
        assert c2 == base


# --- 10 --------------------------------------------------------------------------


@criterion(10, "50 random positive braid closures have dH = 0 and s = n - r + 1")
def test_positive_braids():
    rng = random.Random(10)
    done = 0
    while done < 50:
        strands = rng.choice([2, 3, 4])
        word = [rng.randint(1, strands - 1) for _ in range(rng.randint(strands - 1, 10))]
        if set(word) != set(range(1, strands)):
            continue
        T = parse_braid(word, strands)
        res = s_invariant(T, allow_links=True)
        assert res.dH == 0, word
        assert res.r == strands
        assert res.sH == len(word) - res.r + 1
        done += 1


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
