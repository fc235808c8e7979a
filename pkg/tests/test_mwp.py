import os
import random

import pytest

from linsusp.bass import from_gamma, normal_form, to_gamma
from linsusp.conjugacy import centered_tuples
from linsusp.mwp import (
    align_cosets, chi_columns, delta1_coset_reps, linkage_config, oracle_mwp,
    polarized_apply, same_double_coset, solve_mwp, CenteredTuple,
)
from linsusp.words import EMPTY, inv, mul, parse_word, reduce_word

SEED = int(os.environ.get("ULG_SEED", "20240817"))


# -- coset representatives -------------------------------------------------------


def test_reps_contain_identity(ex1_susp, ex1_reps):
    s = ex1_susp
    found = False
    for r in ex1_reps:
        if all(k == v for k, v in r.graph_v.items()) and \
                all(m == [[1, 0], [0, 1]] for m in r.black_maps.values()) and \
                all(r.vertex_maps[v][l] == (l + 1,)
                    for v in s.splitting.white_ranks
                    for l in range(s.splitting.white_ranks[v])):
            found = True
    assert found


def test_reps_all_valid(ex1_susp, ex1_reps):
    from linsusp.mwp import _is_fo
    for r in ex1_reps:
        assert r.verify()
        assert _is_fo(r)


def test_reps_asymmetric_ranks_trivial_graph_part():
    from linsusp.gog import DehnTwist, Splitting
    from linsusp.suspension import suspend
    from linsusp.mwp import delta1_coset_reps
    sp = Splitting({0: 3, 1: 2}, [2], [(2, 0, (1,)), (2, 1, (1,))], base=0)
    s = suspend(sp, DehnTwist(sp, {1: 1}))
    reps = delta1_coset_reps(s)
    assert reps
    for r in reps:
        assert all(k == v for k, v in r.graph_v.items())


# -- linkages and double cosets ---------------------------------------------------


def test_linkage_config_elliptic_empty(ex1_susp):
    s = ex1_susp
    w = from_gamma(s, (parse_word("ab"), 0))
    cfg = linkage_config(s, w, 0)
    assert cfg.by_vertex_edge == {}


def test_linkage_config_duality(ex1_susp):
    s = ex1_susp
    g = (parse_word("bc"), 0)
    w = from_gamma(s, g)
    winv = from_gamma(s, s.g_inv(g))
    c1 = linkage_config(s, w, 0)
    c2 = linkage_config(s, winv, 0)
    for key, (links, duals) in c1.by_vertex_edge.items():
        links2, duals2 = c2.by_vertex_edge.get(key, ([], []))
        assert sorted(l.graph.canonical() for l in links) == \
            sorted(d.graph.canonical() for d in duals2)
        assert sorted(d.graph.canonical() for d in duals) == \
            sorted(l.graph.canonical() for l in links2)


def test_same_double_coset(ex1_susp):
    s = ex1_susp
    # f2 = c_in f1 c_out stays in the double coset
    f1 = parse_word("b")
    f2 = mul(parse_word("a"), f1, parse_word("a"))
    assert same_double_coset(s, 0, f1, f2, 0)
    assert not same_double_coset(s, 0, EMPTY, parse_word("b"), 0)


def test_same_double_coset_vs_enumeration(ex1_susp):
    s = ex1_susp
    rng = random.Random(SEED)
    letters = [1, -1, 2, -2]
    a = parse_word("a")
    for _ in range(40):
        f1 = reduce_word([rng.choice(letters) for _ in range(rng.randint(0, 3))])
        f2 = reduce_word([rng.choice(letters) for _ in range(rng.randint(0, 3))])
        got = same_double_coset(s, 0, f1, f2, 0)
        want = False
        for i in range(-4, 5):
            for j in range(-4, 5):
                from linsusp.words import wpow
                if mul(wpow(a, i), f1, wpow(a, j)) == f2:
                    want = True
        assert got == want


def test_dangerous_turn_agreement():
    """A turn whose entrance is conjugate to a commutator with the exit
    still decides double cosets by the linkage pair."""
    from linsusp.gog import DehnTwist, Splitting
    from linsusp.suspension import suspend
    # white 0 with letters a, b; black 10 anchored at a; black 11 hangs on
    # the commutator [b, a]
    sp = Splitting({0: 2, 1: 1, 2: 1}, [10, 11],
                   [(10, 0, (1,)), (11, 0, (-2, -1, 2, 1)),
                    (10, 1, (1,)), (11, 2, (1,))], base=0)
    s = suspend(sp, DehnTwist(sp, {2: 1, 3: 2}))
    rng = random.Random(SEED + 1)
    letters = [1, -1, 2, -2]
    cin = sp.edge(0).cword
    cout = sp.edge(1).cword
    from linsusp.words import wpow
    for _ in range(25):
        f1 = reduce_word([rng.choice(letters) for _ in range(rng.randint(0, 3))])
        f2 = reduce_word([rng.choice(letters) for _ in range(rng.randint(0, 3))])
        got = same_double_coset(s, 0, f1, f2, 1)
        want = False
        for i in range(-4, 5):
            for j in range(-4, 5):
                if mul(wpow(cin, i), f1, wpow(cout, j)) == f2:
                    want = True
        assert got == want


# -- alignment ---------------------------------------------------------------------


def test_align_identity(ex1_susp):
    s = ex1_susp
    ct = centered_tuples(s, [(parse_word("c"), 0)])
    al = align_cosets(s, [ct[0]], [ct[0]])
    assert al is not None
    assert al.stabilizer


def test_align_sign_correction(ex1_susp):
    s = ex1_susp
    ct_s = centered_tuples(s, [(parse_word("c"), 0)])[0]
    ct_t = centered_tuples(s, [(parse_word("C"), 0)])[0]
    al = align_cosets(s, [ct_s], [ct_t])
    assert al is not None
    # the vertex map inverts q and fixes p
    assert al.phi1.vertex_maps[1][0] == (1,)
    assert al.phi1.vertex_maps[1][1] == (-2,)


def test_align_absent_edge_vs_nonedge(ex1_susp):
    s = ex1_susp
    ct_s = centered_tuples(s, [(parse_word("a"), 0)])
    ct_t = centered_tuples(s, [(parse_word("b"), 0)])
    matched = [(a, b) for a in ct_s for b in ct_t
               if a.vertex == b.vertex and a.pol == b.pol]
    assert all(align_cosets(s, [a], [b]) is None for a, b in matched)


def test_chi_additive(ex1_susp):
    s = ex1_susp
    ct = centered_tuples(s, [(parse_word("bc"), 0)])[0]
    al = align_cosets(s, [ct], [ct])
    cols, labels = chi_columns(s, [ct], al.stabilizer)
    # additivity: the column of g.after(g) is twice the column of g
    gens = al.stabilizer
    for gi, g in enumerate(gens[:6]):
        sq = g.compose_pure(g)
        vec = []
        for w in ct.entries:
            nf0 = normal_form(w, ct.pol)
            nf1 = normal_form(polarized_apply(sq, w, ct.pol), ct.pol)
            vec.extend(x - y for x, y in zip(nf1.pow, nf0.pow))
        assert vec == [2 * x for x in cols[gi]]


def test_polarized_action_is_group_action(ex1_susp):
    s = ex1_susp
    from linsusp.bass import twist_gog
    t1 = twist_gog(s, {0: 1})
    t2 = twist_gog(s, {1: 1})
    w = from_gamma(s, (parse_word("bc"), 0))
    comp = t1.compose_pure(t2)
    lhs = polarized_apply(comp, w, 0)
    rhs = polarized_apply(t1, polarized_apply(t2, w, 0), 0)
    assert to_gamma(lhs) == to_gamma(rhs)


def test_prefix_short_preserved(ex1_susp):
    s = ex1_susp
    from linsusp.conjugacy import short_positions
    from linsusp.bass import twist_gog
    w = from_gamma(s, (parse_word("bc"), 0))
    pos = short_positions(w)[0]
    tg = twist_gog(s, {0: 1, 1: -2})
    img = polarized_apply(tg, pos.word, pos.pol)
    nf = normal_form(img, pos.pol)
    assert nf.pow[0] == 0 and not nf.dcr[0]


# -- the solver --------------------------------------------------------------------


def test_solver_identity(ex1_susp, ex1_reps):
    s = ex1_susp
    sol = solve_mwp(s, [[(parse_word("c"), 0)]], [[(parse_word("c"), 0)]],
                    reps=ex1_reps)
    assert sol is not None


def test_solver_conjugate_pair(ex1_susp, ex1_reps):
    s = ex1_susp
    target = s.g_conj((parse_word("c"), 0), (parse_word("a"), 0))
    sol = solve_mwp(s, [[(parse_word("c"), 0)]], [[target]], reps=ex1_reps)
    assert sol is not None
    assert sol.conjugators[0][1] == 0


def test_solver_absent(ex1_susp, ex1_reps):
    s = ex1_susp
    sol = solve_mwp(s, [[(parse_word("a"), 0)]], [[(parse_word("b"), 0)]],
                    reps=ex1_reps)
    assert sol is None
    assert not oracle_mwp(s, [[(parse_word("a"), 0)]],
                          [[(parse_word("b"), 0)]], reps=ex1_reps,
                          twist_bound=1, conj_len=3, conj_t=2)


def test_solver_twist_image(ex1_susp, ex1_reps):
    s = ex1_susp
    g = (parse_word("bc"), 0)
    sol = solve_mwp(s, [[g]], [[(parse_word("bAca"), 0)]], reps=ex1_reps)
    assert sol is not None


def test_solver_vertex_insertion(ex1_susp, ex1_reps):
    # q -> p^-2 q p is a vertex automorphism fixing the edge element
    s = ex1_susp
    sol = solve_mwp(s, [[(parse_word("a"), 0), (parse_word("c"), 0)]],
                    [[(parse_word("a"), 0), (parse_word("AAca"), 0)]],
                    reps=ex1_reps)
    assert sol is not None


def test_solver_matches_oracle_small(ex1_susp, ex1_reps):
    s = ex1_susp
    rng = random.Random(SEED + 2)
    cases = [
        ([[(parse_word("c"), 0)]], [[(parse_word("Ca"), 0)]]),
        ([[(parse_word("a"), 0)]], [[(parse_word("aa"), 0)]]),
        ([[(parse_word("ab"), 0)]], [[(parse_word("ba"), 0)]]),
    ]
    for (S, T) in cases:
        got = solve_mwp(s, S, T, reps=ex1_reps) is not None
        want = oracle_mwp(s, S, T, reps=ex1_reps,
                          twist_bound=1, conj_len=3, conj_t=2)
        if want:
            assert got
