import itertools
import os
import random

import pytest

from linsusp.graphs import (
    CoreGraph, apply_endo, conjugate_subgroups, elevations, fold, from_words,
    intersect, is_finite_index, rose, tail_word, trivial, unbased,
)
from linsusp.words import (
    EMPTY, conj, inv, mul, parse_word, reduce_word, substitute, wpow,
)

SEED = int(os.environ.get("ULG_SEED", "20240817"))


def subgroup_elements(gens, max_factors, max_len=None):
    """All products of at most max_factors generators (and inverses)."""
    alphabet = [g for g in gens if g] + [inv(g) for g in gens if g]
    seen = {EMPTY}
    frontier = {EMPTY}
    for _ in range(max_factors):
        nxt = set()
        for w in frontier:
            for g in alphabet:
                u = mul(w, g)
                if max_len is not None and len(u) > max_len:
                    continue
                if u not in seen:
                    seen.add(u)
                    nxt.add(u)
        frontier = nxt
    return seen


def random_word(rng, rank, n):
    return reduce_word([rng.choice([s * g for g in range(1, rank + 1)
                                    for s in (1, -1)]) for _ in range(n)])


# -- folding ------------------------------------------------------------------

def test_fold_two_a_loops():
    g = fold(1, 1, [(0, 1, 0), (0, 1, 0)], 0)
    assert g.nv == 1 and g.edges == ((0, 1, 0),)


def test_fold_wedge_ab_ac():
    g = from_words(3, [parse_word("ab"), parse_word("ac")])
    assert len(g.edges) == 3
    # the generators are Nielsen reduced, so depth-6 enumeration with a
    # generous length cap is exhaustive for ambient length <= 6
    elems = subgroup_elements([parse_word("ab"), parse_word("ac")], 6,
                              max_len=18)
    for w in subgroup_elements([(1,), (2,), (3,)], 6, max_len=6):
        if len(w) <= 6:
            assert g.member(w) == (w in elems)


def test_fold_full_rose():
    g = from_words(2, [parse_word("a"), parse_word("Ab")])
    # <a, a^-1 b> = F2, so the graph is the full rose (index-1 cover)
    assert g.nv == 1 and len(g.edges) == 2


def test_fold_order_independent():
    rng = random.Random(SEED)
    for _ in range(60):
        nv = rng.randint(2, 6)
        edges = [(rng.randrange(nv), rng.randint(1, 3), rng.randrange(nv))
                 for _ in range(rng.randint(1, 10))]
        g1 = fold(3, nv, edges, 0)
        shuffled = edges[:]
        rng.shuffle(shuffled)
        g2 = fold(3, nv, shuffled, 0)
        assert g1.canonical() == g2.canonical()


# -- membership ---------------------------------------------------------------

def test_member_examples():
    h = from_words(2, [parse_word("a"), parse_word("bab".swapcase().swapcase())])
    h = from_words(2, [parse_word("a"), parse_word("baB")])
    assert h.member(parse_word("a"))
    assert not h.member(parse_word("b"))
    assert h.member(EMPTY)


def test_member_vs_enumeration():
    rng = random.Random(SEED + 1)
    for _ in range(40):
        gens = [random_word(rng, 2, rng.randint(1, 4)) for _ in range(2)]
        h = from_words(2, gens)
        elems = subgroup_elements(gens, 4)
        for w in list(elems)[:200]:
            assert h.member(w)


# -- intersection -------------------------------------------------------------

def test_intersect_powers():
    h = from_words(1, [wpow((1,), 2)])
    k = from_words(1, [wpow((1,), 3)])
    m = intersect(h, k)
    for n in range(1, 13):
        assert m.member(wpow((1,), n)) == (n % 6 == 0)


def test_intersect_idempotent_and_disjoint():
    h = from_words(2, [parse_word("ab")])
    assert intersect(h, h).canonical() == h.canonical()
    a = from_words(2, [parse_word("a")])
    b = from_words(2, [parse_word("b")])
    t = intersect(a, b)
    assert t.nv == 1 and not t.edges


def test_intersect_symmetric_and_correct():
    rng = random.Random(SEED + 2)
    for _ in range(20):
        gh = [random_word(rng, 2, rng.randint(1, 4)) for _ in range(2)]
        gk = [random_word(rng, 2, rng.randint(1, 4)) for _ in range(2)]
        h, k = from_words(2, gh), from_words(2, gk)
        m1, m2 = intersect(h, k), intersect(k, h)
        assert unbased(m1).canonical() == unbased(m2).canonical()
        for w in subgroup_elements([(1,), (2,)], 8, max_len=8):
            if len(w) <= 8:
                assert m1.member(w) == (h.member(w) and k.member(w))


# -- conjugacy of subgroups ---------------------------------------------------

def test_conjugate_subgroups_examples():
    a = from_words(2, [parse_word("a")])
    bab = from_words(2, [parse_word("baB")])
    g = conjugate_subgroups(a, bab)
    assert g is not None
    # verify g^-1 <a> g = <baB>
    assert bab.member(conj(parse_word("a"), g))
    assert conjugate_subgroups(a, a) == EMPTY
    a2 = from_words(2, [parse_word("aa")])
    assert conjugate_subgroups(a, a2) is None


def test_conjugate_subgroups_vs_bruteforce():
    rng = random.Random(SEED + 3)
    ball = sorted(subgroup_elements([(1,), (2,), (3,)], 6, max_len=6))
    for _ in range(15):
        gens_h = [random_word(rng, 3, rng.randint(1, 3)) for _ in range(2)]
        gens_k = [random_word(rng, 3, rng.randint(1, 3)) for _ in range(2)]
        h, k = from_words(3, gens_h), from_words(3, gens_k)
        g = conjugate_subgroups(h, k)
        if g is not None:
            for x in gens_h:
                assert k.member(conj(x, g))
            for y in gens_k:
                assert h.member(conj(y, inv(g)))
        else:
            found = False
            for c in ball:
                if (all(k.member(conj(x, c)) for x in gens_h)
                        and all(h.member(conj(y, inv(c))) for y in gens_k)):
                    found = True
                    break
            assert not found


# -- endomorphism images ------------------------------------------------------

def test_apply_endo_identity():
    h = from_words(2, [parse_word("ab"), parse_word("ba")])
    img = apply_endo(h, [parse_word("a"), parse_word("b")])
    assert img.canonical() == unbased(h).canonical()


def test_apply_endo_definition():
    # a -> a, b -> ba applied to <b> is <ba>
    h = from_words(2, [parse_word("b")])
    img = apply_endo(h, [parse_word("a"), parse_word("ba")])
    assert img.canonical() == from_words(2, [parse_word("ba")], based=False).canonical()


def test_apply_endo_based_equals_generator_image():
    rng = random.Random(SEED + 4)
    images = [parse_word("a"), parse_word("ba"), parse_word("cbaBAA")]
    for _ in range(20):
        gens = [random_word(rng, 3, rng.randint(1, 4)) for _ in range(2)]
        h = from_words(3, gens)
        img = apply_endo(h, images, based=True)
        expect = from_words(3, [substitute(w, images) for w in gens])
        assert img.canonical() == expect.canonical()


def test_apply_endo_linear_growth_of_cores():
    # iterating the unipotent-linear map keeps core growth linear
    images = [parse_word("a"), parse_word("ba"), parse_word("cbaBAA")]
    h = from_words(3, [parse_word("c")], based=False)
    sizes = []
    cur = h
    for _ in range(6):
        cur = apply_endo(cur, images)
        sizes.append(cur.nv)
    diffs = [sizes[i + 1] - sizes[i] for i in range(len(sizes) - 1)]
    assert max(diffs) <= 8  # linear, with a small slope


def test_apply_endo_collapse():
    h = from_words(2, [parse_word("ab")])
    img = apply_endo(h, [EMPTY, parse_word("b")])
    assert img.canonical() == from_words(2, [parse_word("b")], based=False).canonical()


# -- elevations ---------------------------------------------------------------

def index2_subgroup():
    # K = <a^2, b, aba^-1>, index 2 in F2
    return from_words(2, [parse_word("aa"), parse_word("b"), parse_word("abA")])


def test_elevations_full_group():
    f = rose(2)
    es = elevations(f, parse_word("a"))
    assert len(es) == 1 and es[0].length == 1


def test_elevations_index2():
    k = index2_subgroup()
    assert is_finite_index(k) and k.nv == 2
    es = elevations(k, parse_word("a"))
    assert len(es) == 1 and es[0].length == 2
    es_b = elevations(k, parse_word("b"))
    assert sorted(e.length for e in es_b) == [1, 1]
    # lemma: lengths sum to the index
    assert sum(e.length for e in es_b) == 2


def test_elevation_generators_lie_in_subgroup():
    k = index2_subgroup()
    for c in [parse_word("a"), parse_word("b"), parse_word("ab")]:
        for e in elevations(k, c):
            assert k.member(e.generator)


def test_elevations_random_sum_rule():
    rng = random.Random(SEED + 5)
    # random finite-index subgroups via kernels of maps to Z/n on letters
    for _ in range(10):
        n = rng.randint(2, 4)
        va, vb = rng.randrange(n), rng.randrange(n)
        if va == 0 and vb == 0:
            va = 1
        # kernel of F2 -> Z/n, a -> va, b -> vb: Schreier graph on Z/n
        edges = []
        for r in range(n):
            edges.append((r, 1, (r + va) % n))
            edges.append((r, 2, (r + vb) % n))
        k = CoreGraph(2, n, edges, 0)
        for c in [parse_word("a"), parse_word("b"), parse_word("ab"),
                  parse_word("aBa")]:
            es = elevations(k, c)
            assert sum(e.length for e in es) == n
            for e in es:
                assert k.member(e.generator)


def test_tail_word():
    h = from_words(2, [parse_word("baB")])
    w, v = tail_word(h)
    assert w == parse_word("b")
