"""Fiber-and-orientation-preserving isomorphism of suspensions over the
same underlying graph, and the conjugacy decision for the twists that
produce them.

Three tests: vertex group isomorphy (ranks and central flags), Whitehead
matching of peripheral fiber tuples (up to signs), and an integer 2x2
matching of the black vertex data pulled back through the edge maps.
"""

from __future__ import annotations

import itertools
from typing import Dict, List, Optional, Tuple

from . import zlinalg
from .bass import GOGAutomorphism
from .gog import DehnTwist, Splitting
from .suspension import Suspension, suspend
from .whitehead import orbit_words
from .words import Word, conj_witness, wpow


class GraphMismatch(Exception):
    """The underlying graphs differ; the comparison is out of scope unless
    a graph invariant already separates them."""


def same_underlying_graph(a: Splitting, b: Splitting) -> bool:
    return (set(a.white_ranks) == set(b.white_ranks)
            and set(a.blacks) == set(b.blacks)
            and len(a.edges) == len(b.edges)
            and all(ea.black == eb.black and ea.white == eb.white
                    for ea, eb in zip(a.edges, b.edges)))


def graph_invariants(a: Splitting):
    return (sorted(a.white_ranks.values()),
            sorted(len(a.edges_at_black(b)) for b in a.blacks),
            sorted((a.white_ranks[v], len(a.edges_at_white(v)))
                   for v in a.white_ranks))


def _graph_bijections(a: Splitting, b: Splitting):
    """Color, rank and incidence preserving bijections a -> b."""
    whites_a = sorted(a.white_ranks)
    whites_b = sorted(b.white_ranks)
    blacks_a = sorted(a.blacks)
    blacks_b = sorted(b.blacks)
    if len(whites_a) != len(whites_b) or len(blacks_a) != len(blacks_b):
        return
    for wperm in itertools.permutations(whites_b):
        if any(a.white_ranks[u] != b.white_ranks[v]
               for u, v in zip(whites_a, wperm)):
            continue
        for bperm in itertools.permutations(blacks_b):
            vmap = dict(zip(whites_a, wperm)) | dict(zip(blacks_a, bperm))
            slots: Dict[Tuple[int, int], List[int]] = {}
            for e in b.edges:
                slots.setdefault((e.black, e.white), []).append(e.eid)
            keys = []
            ok = True
            for e in a.edges:
                tgt = (vmap[e.black], vmap[e.white])
                if tgt not in slots:
                    ok = False
                    break
            if not ok:
                continue
            groups: Dict[Tuple[int, int], List[int]] = {}
            for e in a.edges:
                groups.setdefault((vmap[e.black], vmap[e.white]),
                                  []).append(e.eid)
            if any(len(groups.get(k, [])) != len(v)
                   for k, v in slots.items()):
                continue
            gkeys = list(groups)
            choice_sets = [list(itertools.permutations(slots[k]))
                           for k in gkeys]
            for combo in itertools.product(*choice_sets):
                emap = {}
                for k, perm in zip(gkeys, combo):
                    for ea, eb in zip(groups[k], perm):
                        emap[ea] = eb
                yield vmap, emap


def iso_suspensions(s1: Suspension, s2: Suspension
                    ) -> Optional[GOGAutomorphism]:
    """A fiber-and-orientation-preserving isomorphism of structural
    splittings over the same underlying graph, or None."""
    a, b = s1.splitting, s2.splitting
    if not same_underlying_graph(a, b):
        raise GraphMismatch("underlying graphs differ")
    # Test 1: vertex group isomorphy
    for v in a.white_ranks:
        if a.white_ranks[v] != b.white_ranks[v]:
            return None
    for vmap, emap in _graph_bijections(a, b):
        for signvec in itertools.product((1, -1), repeat=len(a.blacks)):
            signs = dict(zip(sorted(a.blacks), signvec))
            cand = _extend_iso(s1, s2, vmap, emap, signs)
            if cand is not None:
                return cand
    return None


def _extend_iso(s1: Suspension, s2: Suspension, vmap: Dict[int, int],
                emap: Dict[int, int], signs: Dict[int, int]
                ) -> Optional[GOGAutomorphism]:
    a, b = s1.splitting, s2.splitting
    # Test 3 first (cheap): match the black data by a GL(2, Z) element
    black_maps = {}
    for blk in a.blacks:
        eps = signs[blk]
        pairs = []
        for e in a.edges_at_black(blk):
            e2 = emap[e.eid]
            pairs.append(((1, 0), (eps, 0)))
            pairs.append(((-s1.m_exp[e.eid], 1), (-s2.m_exp[e2], 1)))
        m = zlinalg.gl2_match(pairs)
        if m is None:
            return None
        if m[1][0] != 0 or m[1][1] != 1:
            return None
        black_maps[blk] = m
    # Test 2: Whitehead matching of the peripheral fiber tuples
    vertex_maps = {}
    gammas = {}
    for w in sorted(a.white_ranks):
        w2 = vmap[w]
        rank = a.white_ranks[w]
        inc = a.edges_at_white(w)
        src = [e.cword for e in inc]
        dst = [wpow(b.edge(emap[e.eid]).cword, signs[e.black]) for e in inc]
        alpha = orbit_words(src, dst, rank)
        if alpha is None:
            return None
        vertex_maps[w] = list(alpha.images)
        for e in inc:
            img = alpha.apply(e.cword)
            target = wpow(b.edge(emap[e.eid]).cword, signs[e.black])
            g = conj_witness(target, img)
            if g is None:
                return None
            gammas[(e.eid, 1)] = (g, 0)
    cand = GOGAutomorphism(s1, vmap, emap, vertex_maps, black_maps, gammas,
                           target=s2)
    if not cand.verify():
        return None
    if not _iso_is_fo(cand):
        return None
    return cand


def _iso_is_fo(a: GOGAutomorphism) -> bool:
    try:
        fibs, t_img = a.gamma_map()
    except Exception:
        return False
    if any(k != 0 for (_, k) in fibs):
        return False
    return t_img[1] == 1


def reversed_suspension(splitting: Splitting, twist: DehnTwist) -> Suspension:
    """The suspension of the inverse twist: the same group with the
    opposite orientation."""
    return suspend(splitting, twist.inverse())


class ULConjugacy:
    """Outcome of the twist conjugacy test: equivalent or not, with the
    orientations in which the suspensions match."""

    def __init__(self, conjugate: bool, orientations: Tuple[int, ...],
                 witnesses: Dict[int, GOGAutomorphism]):
        self.conjugate = conjugate
        self.orientations = orientations
        self.witnesses = witnesses

    @property
    def orientation(self) -> Optional[int]:
        return self.orientations[0] if self.orientations else None


def ul_conjugate(split1: Splitting, twist1: DehnTwist,
                 split2: Splitting, twist2: DehnTwist) -> ULConjugacy:
    """Are the outer classes of the two full twists conjugate up to
    inversion?  Decided through the suspension isomorphism test, in both
    orientations."""
    if not same_underlying_graph(split1, split2):
        if graph_invariants(split1) != graph_invariants(split2):
            return ULConjugacy(False, (), {})
        raise GraphMismatch(
            "same-shape graphs with different identifications are out of scope")
    s1 = suspend(split1, twist1)
    orientations = []
    witnesses = {}
    for sign, s2 in ((1, suspend(split2, twist2)),
                     (-1, reversed_suspension(split2, twist2))):
        w = iso_suspensions(s1, s2)
        if w is not None:
            orientations.append(sign)
            witnesses[sign] = w
    return ULConjugacy(bool(orientations), tuple(orientations), witnesses)
