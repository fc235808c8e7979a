"""Suspensions of full Dehn twists: the mapping torus F x| <t> together
with its structural bipartite splitting (white groups F_w + <t_w>, black
groups Z^2), plus the vertex-level algebra in F x Z used for coset and
intersection decisions.

Group elements are pairs (f, k) standing for f * t^k with f in the fiber;
conjugation follows f^t = t^-1 f t = alpha(f).
"""

from __future__ import annotations

import math
from typing import Dict, List, Optional, Sequence, Tuple

from . import graphs as gr
from .gog import DehnTwist, Splitting, validate_splitting
from .words import (
    Word, EMPTY, conj, inv, mul, reduce_word, substitute, word_root, wpow,
)

GammaElt = Tuple[Word, int]


class Suspension:
    """Structural splitting data of F x|_alpha <t> for a full twist."""

    def __init__(self, splitting: Splitting, twist: DehnTwist):
        self.splitting = splitting
        self.twist = twist
        self.rank = splitting.global_rank
        self.alpha = twist.alpha_images()
        self.alpha_inv = twist.inverse().alpha_images()
        # central elements t_v = (f_v, 1) per white vertex
        self.f_elt: Dict[int, Word] = {}
        for v in splitting.white_ranks:
            w_v = twist.path_coefficient(v)
            self.f_elt[v] = substitute(w_v, self.alpha_inv)
        # black vertex data: fiber generator and twist offsets per edge
        self.black_ref: Dict[int, int] = {}
        self.m_exp: Dict[int, int] = {}
        for b in splitting.blacks:
            inc = sorted(splitting.edges_at_black(b), key=lambda e: e.eid)
            ref = inc[0]
            self.black_ref[b] = ref.eid
            for e in inc:
                self.m_exp[e.eid] = self._solve_m(e, ref)

    # -- construction internals --------------------------------------------

    def _solve_m(self, e, ref) -> int:
        s = self.splitting
        f_ref = self._transport_fiber(ref)
        f_here = self._transport_fiber(e)
        target = mul(f_ref, inv(f_here))
        c = s.to_global(e.white, e.cword)
        return solve_power(c, target)

    def _transport_fiber(self, e) -> Word:
        """Fiber part of the pullback of t_{white(e)} into the black
        vertex group, written at the black vertex's anchor."""
        s = self.splitting
        f_w = self.f_elt[e.white]
        if e.eid in s.tree_edges:
            return f_w
        letter = (s.stable[e.eid],)
        # conjugate (f_w, 1) by the stable letter
        return mul(inv(letter), f_w, substitute(letter, self.alpha_inv))

    # -- group arithmetic ----------------------------------------------------

    def alpha_pow(self, w: Word, k: int) -> Word:
        images = self.alpha if k > 0 else self.alpha_inv
        for _ in range(abs(k)):
            w = substitute(w, images)
        return w

    def g_mul(self, *xs: GammaElt) -> GammaElt:
        f: Word = EMPTY
        k = 0
        for (g, m) in xs:
            f = mul(f, self.alpha_pow(g, -k))
            k += m
        return (f, k)

    def g_inv(self, x: GammaElt) -> GammaElt:
        (f, k) = x
        return (self.alpha_pow(inv(f), k), -k)

    def g_conj(self, x: GammaElt, c: GammaElt) -> GammaElt:
        return self.g_mul(self.g_inv(c), x, c)

    def t_element(self, v: int) -> GammaElt:
        return (self.f_elt[v], 1)

    def fiber_gens(self, v: int) -> List[Word]:
        s = self.splitting
        return [s.iota[v][l] for l in range(s.white_ranks[v])]

    def black_val(self, b: int) -> Word:
        s = self.splitting
        ref = s.edge(self.black_ref[b])
        return s.to_global(ref.white, ref.cword)

    def c_global(self, eid: int) -> Word:
        e = self.splitting.edge(eid)
        return self.splitting.to_global(e.white, e.cword)

    def deg(self, x: GammaElt) -> int:
        return x[1]

    def verify(self) -> None:
        """Check the defining property: t_v centralizes Stab_F(v)."""
        for v in self.splitting.white_ranks:
            tv = self.t_element(v)
            for g in self.fiber_gens(v):
                if self.g_conj((g, 0), tv) != (g, 0):
                    raise RuntimeError(f"t element at {v} fails to centralize")
        for b in self.splitting.blacks:
            inc = self.splitting.edges_at_black(b)
            for i in range(len(inc)):
                for j in range(i + 1, len(inc)):
                    if self.m_exp[inc[i].eid] == self.m_exp[inc[j].eid]:
                        raise RuntimeError(
                            "black vertex fiber degenerates (acylindricity)")


def solve_power(c: Word, target: Word) -> int:
    """The integer m with c^m = target; raises if none exists."""
    if not target:
        return 0
    if not c:
        raise ValueError("cannot solve a power of the trivial word")
    rc, kc = word_root(c)
    rt, kt = word_root(target)
    if rt == rc:
        m = kt
    elif rt == inv(rc):
        m = -kt
    else:
        raise ValueError("target is not a power of the base word")
    if kt % kc:
        raise ValueError("target is not a power of the base word")
    m = m // kc if m % kc == 0 else m
    if wpow(c, m) != target:
        raise ValueError("target is not a power of the base word")
    return m


def suspend(splitting: Splitting, twist: DehnTwist) -> Suspension:
    """Build the structural suspension of a full substitution twist."""
    diags = validate_splitting(splitting)
    if diags:
        raise ValueError("invalid splitting: " + "; ".join(diags))
    has_turn = any(len(splitting.edges_at_black(b)) >= 2
                   for b in splitting.blacks) or any(
                       eid not in splitting.tree_edges
                       for eid in range(len(splitting.edges)))
    if has_turn and not twist.is_full():
        raise ValueError("substitution is not full")
    s = Suspension(splitting, twist)
    s.verify()
    return s


def black_fiber(s: Suspension, b: int, e1: int, e2: int) -> Word:
    """Canonical fiber generator of the black vertex group from a pair of
    distinct incident edges: the fiber part of t_{e1} t_{e2}^-1."""
    if e1 == e2:
        raise ValueError("edges must be distinct")
    edges = {e.eid for e in s.splitting.edges_at_black(b)}
    if e1 not in edges or e2 not in edges:
        raise ValueError("edges not incident to the black vertex")
    d = s.m_exp[e2] - s.m_exp[e1]
    if d == 0:
        raise RuntimeError("trivial black fiber: acylindricity violated")
    return wpow(s.black_val(b), d)


# -- fibrations and fiber alignment ---------------------------------------------


class Fibration:
    """Surjection Gamma -> Z given by integer values on the global fiber
    basis, with t -> 1."""

    def __init__(self, s: Suspension, letter_values: Sequence[int]):
        if len(letter_values) != s.rank:
            raise ValueError("need one value per global fiber letter")
        self.s = s
        self.values = list(letter_values)

    def deg_word(self, w: Word) -> int:
        return sum(self.values[abs(x) - 1] * (1 if x > 0 else -1) for x in w)

    def deg(self, x: GammaElt) -> int:
        return self.deg_word(x[0]) + x[1]

    def validate(self) -> List[str]:
        out = []
        s = self.s
        for i in range(s.rank):
            if self.deg_word(s.alpha[i]) != self.values[i]:
                out.append(f"not a homomorphism: letter {i + 1}")
        for b in s.splitting.blacks:
            if self.deg_word(s.black_val(b)) != 0:
                out.append(f"black fiber of {b} not in the kernel")
        for v in s.splitting.white_ranks:
            if self.deg(s.t_element(v)) != 1:
                out.append(f"central element at {v} is not degree 1")
        return out


class FiberAlignment:
    """Automorphism data aligning an alternative fibration's kernel onto
    the reference fiber: per-vertex matching maps plus twist exponents on
    the non-tree edges."""

    def __init__(self, s: Suspension, vertex_shifts: Dict[int, List[int]],
                 edge_twists: Dict[int, int]):
        self.s = s
        self.vertex_shifts = vertex_shifts  # white v -> t_v-exponent per local letter
        self.edge_twists = edge_twists      # non-tree eid -> exponent of t_e

    def gamma_images(self) -> Tuple[List[GammaElt], GammaElt]:
        """Images of the global fiber letters and of t."""
        s = self.s
        sp = s.splitting
        images: List[Optional[GammaElt]] = [None] * s.rank
        for letter, v in sp.fresh_owner.items():
            # local index of this fresh letter at v
            loc = next(l for l in range(sp.white_ranks[v])
                       if sp.iota[v][l] == (letter,))
            d = self.vertex_shifts[v][loc]
            images[letter - 1] = s.g_mul(((letter,), 0),
                                         _g_pow(s, s.t_element(v), d))
        for eid, letter in sp.stable.items():
            n = self.edge_twists.get(eid, 0)
            e = sp.edge(eid)
            # t_e at the white end: iota(c_e)^m_e * t_white; the twist
            # restores the fibration degree of the stable letter
            te = s.g_mul((wpow(s.c_global(eid), s.m_exp[eid]), 0),
                         s.t_element(e.white))
            img = s.g_mul(((letter,), 0), _g_pow(s, te, n))
            images[letter - 1] = img
        assert all(im is not None for im in images)
        return [im for im in images if im is not None], (EMPTY, 1)

    def apply(self, x: GammaElt) -> GammaElt:
        s = self.s
        fiber_images, t_image = self.gamma_images()
        (f, k) = x
        out: GammaElt = (EMPTY, 0)
        for letter in f:
            im = fiber_images[abs(letter) - 1]
            out = s.g_mul(out, im if letter > 0 else s.g_inv(im))
        return s.g_mul(out, _g_pow(s, t_image, k))


def _g_pow(s: Suspension, x: GammaElt, n: int) -> GammaElt:
    out: GammaElt = (EMPTY, 0)
    step = x if n >= 0 else s.g_inv(x)
    for _ in range(abs(n)):
        out = s.g_mul(out, step)
    return out


def align_fibers(s: Suspension, fib: Fibration) -> FiberAlignment:
    """Automorphism carrying ker(fib) onto the reference fiber F: vertex
    matching maps composed with a twist by central elements on the
    non-tree edges, exponents read off the fibration."""
    problems = fib.validate()
    if problems:
        raise ValueError("invalid fibration: " + "; ".join(problems))
    sp = s.splitting
    shifts: Dict[int, List[int]] = {}
    for v in sp.white_ranks:
        row = []
        for l in range(sp.white_ranks[v]):
            row.append(fib.deg_word(sp.iota[v][l]))
        shifts[v] = row
    twists: Dict[int, int] = {}
    for eid, letter in sp.stable.items():
        twists[eid] = fib.deg_word((letter,))
    out = FiberAlignment(s, shifts, twists)
    # postcondition: kernel generators land in the reference fiber
    for i in range(s.rank):
        gen: GammaElt = ((i + 1,), -fib.values[i])
        img = out.apply(gen)
        if s.deg(img) != 0:
            raise RuntimeError("alignment fails to land in the fiber")
    return out


# -- vertex-level algebra in F x Z  ----------------------------------------------


class DecoratedSubgroup:
    """Folded graph with integer edge decorations presenting a finitely
    generated subgroup of F_rank x Z: the fiber projection plus the
    z-defect (the kernel of the projection is z^defect)."""

    def __init__(self, rank: int, gens: Sequence[Tuple[Word, int]]):
        self.rank = rank
        raw: List[Tuple[int, int, int, int]] = []  # (u, lab, v, decor)
        nv = 1
        pure = []
        for (w, m) in gens:
            w = reduce_word(w)
            if not w:
                if m:
                    pure.append(m)
                continue
            prev = 0
            for i, x in enumerate(w):
                nxt = 0 if i == len(w) - 1 else nv
                if i < len(w) - 1:
                    nv += 1
                d = m if i == len(w) - 1 else 0
                if x > 0:
                    raw.append((prev, x, nxt, d))
                else:
                    raw.append((nxt, -x, prev, -d))
                prev = nxt
        graph, decor, defect = _fold_decorated(rank, nv, raw)
        for m in pure:
            defect = math.gcd(defect, m)
        self.graph = graph
        self.decor = decor
        self.defect = defect

    def mu(self, w: Word) -> Optional[int]:
        """Decoration sum of the trace of w (defined mod defect); None if
        the word is not in the fiber projection."""
        v = self.graph.base
        total = 0
        for x in w:
            if x > 0:
                nxt = self.graph.step(v, x)
                if nxt is None:
                    return None
                total += self.decor.get((v, x, nxt), 0)
                v = nxt
            else:
                nxt = self.graph.step(v, x)
                if nxt is None:
                    return None
                total -= self.decor.get((nxt, -x, v), 0)
                v = nxt
        if v != self.graph.base:
            return None
        return total

    def contains(self, x: Tuple[Word, int]) -> bool:
        (w, m) = x
        w = reduce_word(w)
        got = self.mu(w)
        if got is None:
            return False
        if self.defect:
            return (m - got) % self.defect == 0
        return m == got


def _fold_decorated(rank: int, nv: int, raw) -> Tuple[gr.CoreGraph, Dict, int]:
    parent = list(range(nv))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    adj: List[Dict[int, Tuple[int, int]]] = [dict() for _ in range(nv)]
    pending = list(raw)
    merges: List[Tuple[int, int]] = []
    defect = 0
    while pending or merges:
        while merges:
            a, b = merges.pop()
            a, b = find(a), find(b)
            if a == b:
                continue
            if b < a:
                a, b = b, a
            parent[b] = a
            for lab, (v, d) in adj[b].items():
                if lab > 0:
                    pending.append((b, lab, v, d))
                else:
                    pending.append((v, -lab, b, -d))
            adj[b] = {}
        if not pending:
            break
        (u, lab, v, d) = pending.pop()
        u, v = find(u), find(v)
        tu = adj[u].get(lab)
        if tu is not None and find(tu[0]) != v:
            merges.append((find(tu[0]), v))
            pending.append((u, lab, v, d))
            continue
        tv = adj[v].get(-lab)
        if tv is not None and find(tv[0]) != u:
            merges.append((find(tv[0]), u))
            pending.append((u, lab, v, d))
            continue
        # matching records may differ only in decoration: the gap is a
        # pure central element of the subgroup
        if tu is not None:
            defect = math.gcd(defect, d - tu[1])
            d = tu[1]
        elif tv is not None:
            defect = math.gcd(defect, d + tv[1])
            d = -tv[1]
        adj[u][lab] = (v, d)
        adj[v][-lab] = (u, -d)

    roots = sorted({find(v) for v in range(nv)}) if nv else [0]
    order = {v: i for i, v in enumerate(roots)}
    edges = []
    decor = {}
    for u in roots:
        for lab, (v, d) in adj[u].items():
            if lab > 0:
                e = (order[u], lab, order[find(v)])
                edges.append(e)
                decor[e] = d
    graph = gr.CoreGraph(rank, len(order), edges, order[find(0)] if nv else 0)
    return graph, decor, abs(defect)


def vertex_intersect_edge(rank: int, gens: Sequence[Tuple[Word, int]],
                          c: Word) -> Tuple[Optional[Tuple[Word, int, int]], int]:
    """Generators of <gens> cap <(c,0), (1,z)> inside F_rank x Z.

    Returns ((c, l, m), e) for the pair (c^l z^m, z^e); the first part is
    None when the fiber intersection is trivial,-and e = 0 when the
    z-part is trivial.
    """
    c = reduce_word(c)
    if not c:
        raise ValueError("c must be a nontrivial fiber word")
    ds = DecoratedSubgroup(rank, gens)
    h = ds.graph
    # minimal l >= 1 with c^l in the fiber projection
    state = h.base
    seen = {h.base: 0}
    l = None
    step = 0
    while True:
        step += 1
        state = h.trace(state, c)
        if state is None:
            break
        if state == h.base:
            l = step
            break
        if state in seen:
            break
        seen[state] = step
    if l is None:
        return None, ds.defect
    m = ds.mu(wpow(c, l))
    assert m is not None
    return (c, l, m), ds.defect


def coset_meets(rank: int, gens: Sequence[Tuple[Word, int]],
                a: Tuple[Word, int], c: Word) -> Optional[Tuple[Word, int]]:
    """An element of <gens> cap a*<(c,0),(1,z)>, or None.

    Decided on the fiber projection: membership in the coset only
    constrains the fiber part, since z lies in the edge group.
    """
    c = reduce_word(c)
    ds = DecoratedSubgroup(rank, gens)
    aw = reduce_word(a[0])
    if not c:
        items = [(EMPTY, _with_base(ds.graph)), (aw, gr.trivial(rank))]
    else:
        items = [(EMPTY, _with_base(ds.graph)),
                 (aw, gr.from_words(rank, [c]))]
    w = gr.coset_intersection(items)
    if w is None:
        return None
    m = ds.mu(w)
    assert m is not None
    return (w, m)


def _with_base(g: gr.CoreGraph) -> gr.CoreGraph:
    return g if g.base is not None else gr.CoreGraph(g.rank, g.nv, g.edges, 0)
