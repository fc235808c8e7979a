"""Bipartite cyclic splittings of free groups and their generalized Dehn
twists.

A splitting has white vertices carrying free groups and black vertices
carrying Z; each edge joins a black vertex to a white one and maps the
black generator to a cyclic word in the white group.  The fundamental
group is computed on a fixed free basis, so twists become concrete
automorphisms of a free group.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from . import zlinalg
from .words import (
    Word, EMPTY, canonical_cyclic, conj, cyclic_len, inv, is_proper_power,
    mul, reduce_word, substitute, word_root, wpow,
)


class EdgeRec:
    """Edge of a bipartite splitting: black -> white with the black
    generator mapping to cword (a word in the white vertex's local
    letters)."""

    __slots__ = ("eid", "black", "white", "cword")

    def __init__(self, eid: int, black: int, white: int, cword: Word):
        self.eid = eid
        self.black = black
        self.white = white
        self.cword = tuple(cword)

    def __repr__(self):
        return f"Edge({self.eid}: {self.black}->{self.white})"


class Splitting:
    """Bipartite cyclic splitting of a free group, with a concrete global
    free basis.

    Every non-base white vertex must be entered, along the spanning tree,
    through an edge whose white image is a single letter; the same holds
    for the white side of every non-tree edge (the letter being defined by
    that edge).  This pins a Tietze elimination making pi_1 free on the
    constructed basis.
    """

    def __init__(self, white_ranks: Dict[int, int], blacks: Sequence[int],
                 edges: Sequence[Tuple[int, int, Word]], base: int):
        self.white_ranks = dict(white_ranks)
        self.blacks = list(blacks)
        if set(self.white_ranks) & set(self.blacks):
            raise ValueError("white and black vertex ids overlap")
        self.edges = [EdgeRec(i, b, w, c) for i, (b, w, c) in enumerate(edges)]
        if base not in self.white_ranks:
            raise ValueError("base must be a white vertex")
        self.base = base
        for e in self.edges:
            if e.black not in self.blacks or e.white not in self.white_ranks:
                raise ValueError(f"edge {e.eid} does not join black to white")
            if not e.cword:
                raise ValueError(f"edge {e.eid} has a trivial image")
            for x in e.cword:
                if not (1 <= abs(x) <= self.white_ranks[e.white]):
                    raise ValueError(f"edge {e.eid} image out of rank")
        self._build_tree()
        self._build_basis()

    # -- structure ---------------------------------------------------------

    def _build_tree(self):
        incident: Dict[int, List[EdgeRec]] = {}
        for e in self.edges:
            incident.setdefault(e.black, []).append(e)
            incident.setdefault(e.white, []).append(e)
        self.tree: Dict[int, Tuple[EdgeRec, int]] = {}  # vertex -> (edge, parent)
        self.tree_edges = set()
        seen = {self.base}
        queue = [self.base]
        qi = 0
        while qi < len(queue):
            v = queue[qi]
            qi += 1
            for e in sorted(incident.get(v, []), key=lambda e: e.eid):
                other = e.white if v == e.black else e.black
                if other not in seen:
                    seen.add(other)
                    self.tree[other] = (e, v)
                    self.tree_edges.add(e.eid)
                    queue.append(other)
        allv = set(self.white_ranks) | set(self.blacks)
        if seen != allv:
            raise ValueError("underlying graph is not connected")
        for b in self.blacks:
            if not incident.get(b):
                raise ValueError(f"black vertex {b} has no incident edge")

    def tree_path(self, v: int) -> List[Tuple[EdgeRec, int]]:
        """Directions (edge, +1 black->white / -1 white->black) from the
        base to v along the spanning tree."""
        out = []
        while v != self.base:
            e, parent = self.tree[v]
            out.append((e, 1 if v == e.white else -1))
            v = parent
        out.reverse()
        return out

    def _build_basis(self):
        # which white letters are defined by which edge
        definer: Dict[Tuple[int, int], EdgeRec] = {}
        for v, (e, parent) in self.tree.items():
            if v == e.white:
                if len(e.cword) != 1:
                    raise ValueError(
                        f"tree edge {e.eid} entering white vertex {v} must "
                        f"carry a single-letter image")
                key = (v, abs(e.cword[0]))
                if key in definer:
                    raise ValueError(f"letter {key} defined twice")
                definer[key] = e
        self.stable: Dict[int, int] = {}
        nxt = 1
        self.iota: Dict[int, List[Optional[Word]]] = {
            v: [None] * r for v, r in self.white_ranks.items()}
        for e in self.edges:
            if e.eid in self.tree_edges:
                continue
            if len(e.cword) != 1:
                raise ValueError(
                    f"non-tree edge {e.eid} must carry a single-letter "
                    f"white image")
            key = (e.white, abs(e.cword[0]))
            if key in definer:
                raise ValueError(f"letter {key} defined twice")
            definer[key] = e
        # fresh letters for everything not defined by an edge
        self.fresh_owner: Dict[int, int] = {}
        for v in sorted(self.white_ranks):
            for l in range(1, self.white_ranks[v] + 1):
                if (v, l) not in definer:
                    self.iota[v][l - 1] = (nxt,)
                    self.fresh_owner[nxt] = v
                    nxt += 1
        for e in self.edges:
            if e.eid not in self.tree_edges:
                self.stable[e.eid] = nxt
                nxt += 1
        self.global_rank = nxt - 1
        # resolve tree definitions downward from the base
        self.val: Dict[int, Word] = {}
        order = [self.base]
        qi = 0
        # BFS order again (children after parents)
        children: Dict[int, List[int]] = {}
        for v, (e, parent) in self.tree.items():
            children.setdefault(parent, []).append(v)
        while qi < len(order):
            v = order[qi]
            qi += 1
            for c in sorted(children.get(v, [])):
                order.append(c)
        for v in order:
            if v == self.base:
                continue
            e, parent = self.tree[v]
            if v == e.black:
                self.val[v] = self.to_global(e.white, e.cword)
            else:
                letter = e.cword[0]
                value = self.val[e.black]
                self.iota[v][abs(letter) - 1] = value if letter > 0 else inv(value)
        # non-tree definitions
        for e in self.edges:
            if e.eid in self.tree_edges:
                continue
            s = (self.stable[e.eid],)
            letter = e.cword[0]
            value = mul(inv(s), self.val[e.black], s)
            self.iota[e.white][abs(letter) - 1] = (
                value if letter > 0 else inv(value))
        for v, words in self.iota.items():
            if any(w is None for w in words):
                raise RuntimeError("basis resolution left a letter undefined")

    # -- embeddings ---------------------------------------------------------

    def to_global(self, white: int, local: Word) -> Word:
        return substitute(reduce_word(local), self.iota[white])

    def edge(self, eid: int) -> EdgeRec:
        return self.edges[eid]

    def edges_at_white(self, v: int) -> List[EdgeRec]:
        return [e for e in self.edges if e.white == v]

    def edges_at_black(self, b: int) -> List[EdgeRec]:
        return [e for e in self.edges if e.black == b]

    def is_white(self, v: int) -> bool:
        return v in self.white_ranks

    def stable_letters(self) -> List[int]:
        return sorted(self.stable.values())


# -- validation ----------------------------------------------------------------


def validate_splitting(s: Splitting) -> List[str]:
    """Diagnostics for the structural requirements on a fiber splitting."""
    out = []
    for e in s.edges:
        if is_proper_power(e.cword):
            out.append(f"edge {e.eid}: image is a proper power")
    for v in s.white_ranks:
        inc = s.edges_at_white(v)
        for i in range(len(inc)):
            for j in range(i + 1, len(inc)):
                ci = canonical_cyclic(inc[i].cword)
                cj = canonical_cyclic(inc[j].cword)
                cjinv = canonical_cyclic(inv(inc[j].cword))
                if ci == cj or ci == cjinv:
                    out.append(
                        f"edges {inc[i].eid},{inc[j].eid}: conjugate images "
                        f"into white vertex {v}")
    return out


def validate_gog_dict(doc: dict) -> List[str]:
    """Diagnostics on a raw graph-of-groups document (see serialize)."""
    out = []
    colors = {}
    for v in doc.get("vertices", []):
        colors[v["id"]] = v.get("color")
        if v.get("color") not in ("white", "black"):
            out.append(f"vertex {v['id']}: unknown color")
    for e in doc.get("edges", []):
        cf, ct = colors.get(e["from"]), colors.get(e["to"])
        if cf == ct:
            out.append(f"edge {e['id']}: graph is not bipartite")
        bwd = e.get("bwd_image", "a")
        if bwd not in ("a", "A"):
            out.append(f"edge {e['id']}: image not surjective onto the black "
                       f"vertex group")
    return out


# -- generalized Dehn twists ----------------------------------------------------


class DehnTwist:
    """One-sided edge substitution: the positive direction of edge e picks
    up the coefficient c_e^exps[e]."""

    def __init__(self, splitting: Splitting, exps: Dict[int, int]):
        self.splitting = splitting
        self.exps = {e.eid: int(exps.get(e.eid, 0)) for e in splitting.edges}

    def gamma_global(self, eid: int) -> Word:
        s = self.splitting
        e = s.edge(eid)
        return wpow(s.to_global(e.white, e.cword), self.exps[eid])

    def is_full(self) -> bool:
        """No length-2 turn through a black vertex has cancelling
        coefficients: the exponents at each black star are pairwise
        distinct."""
        s = self.splitting
        for b in s.blacks:
            exps = [self.exps[e.eid] for e in s.edges_at_black(b)]
            if len(set(exps)) != len(exps):
                return False
        return True

    def coefficient_length(self) -> int:
        return max((len(self.gamma_global(e.eid)) for e in self.splitting.edges),
                   default=0)

    def path_coefficient(self, v: int) -> Word:
        """Global word W with the induced map acting on Stab(v) as
        g -> W g W^-1."""
        s = self.splitting
        out = EMPTY
        for (e, direction) in s.tree_path(v):
            c = s.to_global(e.white, e.cword)
            n = self.exps[e.eid]
            if direction == -1:
                # leaving a white vertex against the edge orientation
                out = mul(out, wpow(c, n))
            else:
                out = mul(out, wpow(c, -n))
        return out

    def alpha_images(self) -> List[Word]:
        """Images of the global basis under the induced automorphism."""
        s = self.splitting
        images: List[Optional[Word]] = [None] * s.global_rank
        coeffs = {v: self.path_coefficient(v) for v in s.white_ranks}
        for letter, v in s.fresh_owner.items():
            w_v = coeffs[v]
            images[letter - 1] = mul(w_v, (letter,), inv(w_v))
        for e in s.edges:
            if e.eid in s.tree_edges:
                continue
            letter = s.stable[e.eid]
            w_b = self.path_coefficient(e.black)
            w_w = self.path_coefficient(e.white)
            c = s.to_global(e.white, e.cword)
            img = mul(w_b, (letter,), wpow(c, -self.exps[e.eid]), inv(w_w))
            images[letter - 1] = img
        if any(im is None for im in images):
            raise RuntimeError("twist images left a letter unassigned")
        return [im for im in images if im is not None]

    def inverse(self) -> "DehnTwist":
        return DehnTwist(self.splitting, {k: -v for k, v in self.exps.items()})

    def power(self, n: int) -> "DehnTwist":
        return DehnTwist(self.splitting, {k: n * v for k, v in self.exps.items()})


def abelianization_matrix(images: Sequence[Word], rank: int) -> zlinalg.Matrix:
    """Matrix of the induced map on the abelianization, images in columns."""
    cols = []
    for im in images:
        col = [0] * rank
        for x in im:
            col[abs(x) - 1] += 1 if x > 0 else -1
        cols.append(col)
    return [[cols[j][i] for j in range(len(cols))] for i in range(rank)]


def is_unipotent_images(images: Sequence[Word], rank: int) -> bool:
    return zlinalg.is_unipotent(abelianization_matrix(images, rank))


def growth_profile(images: Sequence[Word], g: Word, n_max: int) -> List[int]:
    """Cyclic lengths of the iterated images of g, n = 0..n_max."""
    out = [cyclic_len(g)]
    cur = reduce_word(g)
    for _ in range(n_max):
        cur = substitute(cur, images)
        out.append(cyclic_len(cur))
    return out


def twist_growth_profile(tw: DehnTwist, g: Word, n_max: int) -> List[int]:
    """Growth profile of a twist, with the linear bound asserted:
    |twist^n(g)|_cyc <= (2*a*n + 1) * |g| for a = max coefficient length."""
    lens = growth_profile(tw.alpha_images(), g, n_max)
    a = tw.coefficient_length()
    glen = max(len(reduce_word(g)), 1)
    for n, ln in enumerate(lens):
        if ln > (2 * a * n + 1) * glen:
            raise AssertionError(
                f"growth bound violated at n={n}: {ln} > {(2*a*n+1)*glen}")
    return lens
