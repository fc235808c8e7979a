"""Whitehead automorphisms and orbit problems in free groups.

Covers the classical peak-reduction decision for tuples of conjugacy
classes of words, Gersten's analogue for tuples of conjugacy classes of
subgroups (as unbased core graphs), stabilizer generating sets, and the
extension to conjugacy classes of *tuples* of subgroups via star
encodings over an enlarged basis.
"""

from __future__ import annotations

import itertools
from typing import Dict, List, Optional, Sequence, Tuple

from . import graphs as gr
from .words import (
    Word, EMPTY, canonical_cyclic, check_rank, compose_images, conj,
    identity_images, inv, mul, reduce_word, substitute, tuple_conj_witness,
    wpow,
)

NODE_CAP = 100_000
RELABEL_CAP = 50_000


class Undecided(Exception):
    """A search cap was hit; the answer is honestly unknown."""


class Automorphism:
    """Free group automorphism with a certified inverse."""

    __slots__ = ("rank", "images", "inverse")

    def __init__(self, rank: int, images: Sequence[Word],
                 inverse: Sequence[Word]):
        self.rank = rank
        self.images = tuple(reduce_word(w) for w in images)
        self.inverse = tuple(reduce_word(w) for w in inverse)

    @staticmethod
    def identity(rank: int) -> "Automorphism":
        ims = identity_images(rank)
        return Automorphism(rank, ims, ims)

    @staticmethod
    def from_images(rank: int, images: Sequence[Word],
                    inverse: Sequence[Word]) -> "Automorphism":
        a = Automorphism(rank, images, inverse)
        if not a.verify():
            raise ValueError("images and inverse_images do not compose to the identity")
        return a

    def apply(self, w: Word) -> Word:
        return substitute(w, self.images)

    def apply_inv(self, w: Word) -> Word:
        return substitute(w, self.inverse)

    def after(self, other: "Automorphism") -> "Automorphism":
        """self composed after other."""
        return Automorphism(self.rank,
                            compose_images(other.images, self.images),
                            compose_images(self.inverse, other.inverse))

    def inverted(self) -> "Automorphism":
        return Automorphism(self.rank, self.inverse, self.images)

    def verify(self) -> bool:
        idt = identity_images(self.rank)
        return (compose_images(self.images, self.inverse) == idt
                and compose_images(self.inverse, self.images) == idt)

    def is_inner(self) -> Optional[Word]:
        """A word w with self = ad_w (x -> w^-1 x w), or None."""
        gens = [(i + 1,) for i in range(self.rank)]
        return tuple_conj_witness(gens, [self.apply(g) for g in gens])

    def key(self):
        return self.images

    def __repr__(self):
        from .words import format_word
        ims = ",".join(format_word(w) for w in self.images)
        return f"Aut({ims})"


def perm_automorphism(rank: int, mapping: Dict[int, int]) -> Automorphism:
    """Automorphism from a signed-letter permutation {i -> +-j}."""
    images = [EMPTY] * rank
    inverse = [EMPTY] * rank
    for i in range(1, rank + 1):
        j = mapping[i]
        images[i - 1] = (j,)
        if j > 0:
            inverse[j - 1] = (i,)
        else:
            inverse[-j - 1] = (-i,)
    return Automorphism(rank, images, inverse)


def type1_autos(rank: int) -> List[Automorphism]:
    """All signed permutations of the basis (2^rank * rank! of them)."""
    out = []
    for perm in itertools.permutations(range(1, rank + 1)):
        for signs in itertools.product((1, -1), repeat=rank):
            mapping = {i + 1: signs[i] * perm[i] for i in range(rank)}
            out.append(perm_automorphism(rank, mapping))
    return out


def type2_auto(rank: int, a: int, cut: frozenset) -> Automorphism:
    """Whitehead move with multiplier a and cut set Y (a in Y, -a not)."""
    images = []
    for x in range(1, rank + 1):
        if x == abs(a):
            images.append((x,))
            continue
        w: List[int] = []
        if -x in cut:
            w.append(-a)
        w.append(x)
        if x in cut:
            w.append(a)
        images.append(reduce_word(w))
    inv_cut = frozenset({-a} | (cut - {a}))
    inverse = []
    for x in range(1, rank + 1):
        if x == abs(a):
            inverse.append((x,))
            continue
        w = []
        if -x in inv_cut:
            w.append(a)
        w.append(x)
        if x in inv_cut:
            w.append(-a)
        inverse.append(reduce_word(w))
    return Automorphism(rank, images, inverse)


_TYPE2_CACHE: Dict[int, List[Automorphism]] = {}


def type2_autos(rank: int) -> List[Automorphism]:
    """All type-II Whitehead automorphisms, identity excluded."""
    if rank in _TYPE2_CACHE:
        return _TYPE2_CACHE[rank]
    letters = [s * g for g in range(1, rank + 1) for s in (1, -1)]
    out = []
    seen = set()
    for a in letters:
        others = [x for x in letters if x != a and x != -a]
        for bits in range(1 << len(others)):
            cut = frozenset({a} | {others[i] for i in range(len(others))
                                   if bits >> i & 1})
            m = type2_auto(rank, a, cut)
            if m.key() not in seen:
                seen.add(m.key())
                out.append(m)
    idt = identity_images(rank)
    out = [m for m in out if m.images != idt]
    _TYPE2_CACHE[rank] = out
    return out


def whitehead_autos(rank: int) -> List[Automorphism]:
    """The full Whitehead generating set, deduplicated."""
    if rank < 1:
        raise ValueError("rank must be at least 1")
    out = []
    seen = set()
    for m in type1_autos(rank) + type2_autos(rank):
        if m.key() not in seen:
            seen.add(m.key())
            out.append(m)
    return out


# -- orbit problem for tuples of conjugacy classes of words -------------------


def _word_node(ws: Sequence[Word]) -> Tuple[Word, ...]:
    return tuple(canonical_cyclic(w) for w in ws)


def _word_size(node: Sequence[Word]) -> int:
    return sum(len(w) for w in node)


def minimize_words(ws: Sequence[Word], rank: int
                   ) -> Tuple[Tuple[Word, ...], Automorphism]:
    """Whitehead descent to minimal total cyclic length."""
    cur = _word_node(ws)
    aut = Automorphism.identity(rank)
    moves = type2_autos(rank)
    improved = True
    while improved:
        improved = False
        size = _word_size(cur)
        for m in moves:
            nxt = _word_node([m.apply(w) for w in cur])
            if _word_size(nxt) < size:
                cur = nxt
                aut = m.after(aut)
                improved = True
                break
    return cur, aut


def orbit_words(src: Sequence[Word], dst: Sequence[Word], rank: int,
                node_cap: int = NODE_CAP) -> Optional[Automorphism]:
    """An automorphism taking the tuple of conjugacy classes [src_i] to
    [dst_i], or None.  Decision by peak reduction."""
    if len(src) != len(dst):
        return None
    for w in list(src) + list(dst):
        check_rank(w, rank)
    s_min, a_s = minimize_words(src, rank)
    t_min, a_t = minimize_words(dst, rank)
    if _word_size(s_min) != _word_size(t_min):
        return None
    size = _word_size(s_min)
    moves = whitehead_autos(rank)
    visited: Dict[Tuple[Word, ...], Automorphism] = {s_min: Automorphism.identity(rank)}
    queue = [s_min]
    qi = 0
    found = visited.get(t_min)
    while qi < len(queue) and found is None:
        node = queue[qi]
        qi += 1
        au = visited[node]
        for m in moves:
            nxt = _word_node([m.apply(w) for w in node])
            if _word_size(nxt) != size or nxt in visited:
                continue
            visited[nxt] = m.after(au)
            if nxt == t_min:
                found = visited[nxt]
                break
            queue.append(nxt)
            if len(visited) > node_cap:
                raise Undecided("word orbit component exceeded the node cap")
    if found is None:
        return None
    alpha = a_t.inverted().after(found.after(a_s))
    assert verify_word_witness(alpha, src, dst)
    return alpha


def verify_word_witness(alpha: Automorphism, src: Sequence[Word],
                        dst: Sequence[Word]) -> bool:
    if not alpha.verify():
        return False
    return all(canonical_cyclic(alpha.apply(s)) == canonical_cyclic(t)
               for s, t in zip(src, dst))


def oracle_orbit_words(src: Sequence[Word], dst: Sequence[Word], rank: int,
                       depth: int) -> bool:
    """Exhaustive search over Whitehead-generator words of length <= depth
    (meet in the middle); independent of the peak-reduction route."""
    moves = whitehead_autos(rank)
    half_a = depth // 2
    half_b = depth - half_a

    def ball(start: Tuple[Word, ...], d: int) -> set:
        seen = {start}
        frontier = [start]
        for _ in range(d):
            nxt = []
            for node in frontier:
                for m in moves:
                    new = _word_node([m.apply(w) for w in node])
                    if new not in seen:
                        seen.add(new)
                        nxt.append(new)
            frontier = nxt
        return seen

    bs = ball(_word_node(src), half_a)
    bt = ball(_word_node(dst), half_b)
    return bool(bs & bt)


# -- relabeling machinery for graph tuples -------------------------------------


def relabel_graph(g: gr.CoreGraph, mapping: Dict[int, int]) -> gr.CoreGraph:
    """Apply a signed relabeling {lab -> signed lab} to a core graph."""
    edges = []
    for (u, lab, v) in g.edges:
        s = mapping[lab]
        edges.append((u, s, v) if s > 0 else (v, -s, u))
    return gr.CoreGraph(g.rank, g.nv, edges, g.base)


def _label_signatures(graphs: Sequence[gr.CoreGraph], rank: int,
                      rounds: int = 2):
    """Relabel-invariant signature per positive label.

    Refined a fixed number of rounds so signatures from separate calls
    stay structurally comparable.
    """
    sig = {l: tuple(sum(1 for e in g.edges if e[1] == l) for g in graphs)
           for l in range(1, rank + 1)}
    for _ in range(rounds):
        new_sig = {}
        for l in range(1, rank + 1):
            per_graph = []
            for g in graphs:
                local = []
                for (u, lab, v) in g.edges:
                    if lab != l:
                        continue
                    ends = tuple(sorted(
                        tuple(sorted(sig[abs(d)] for d in g.directions(vert)))
                        for vert in (u, v)))
                    local.append(ends)
                per_graph.append(tuple(sorted(local)))
            new_sig[l] = (sig[l], tuple(per_graph))
        sig = new_sig
    return sig


def candidate_relabelings(src: Sequence[gr.CoreGraph],
                          dst: Sequence[gr.CoreGraph], rank: int,
                          cap: int = RELABEL_CAP) -> List[Dict[int, int]]:
    """Signed label bijections compatible with the edge-count signatures
    (the only maps that could carry src to dst entrywise)."""
    ssig = _label_signatures(src, rank)
    dsig = _label_signatures(dst, rank)
    buckets: Dict[object, List[int]] = {}
    for l in range(1, rank + 1):
        buckets.setdefault(dsig[l], []).append(l)
    choices: List[List[int]] = []
    for l in range(1, rank + 1):
        cand = buckets.get(ssig[l], [])
        if not cand:
            return []
        choices.append(cand)
    total = 1
    for c in choices:
        total *= len(c) * 2
        if total > cap:
            raise Undecided("relabeling candidate space exceeded the cap")
    out = []
    for perm in itertools.product(*choices):
        if len(set(perm)) != rank:
            continue
        for signs in itertools.product((1, -1), repeat=rank):
            mapping = {}
            for i in range(rank):
                t = signs[i] * perm[i]
                mapping[i + 1] = t
                mapping[-(i + 1)] = -t
            out.append(mapping)
    return out


def _canonical_relabelings(graphs: Sequence[gr.CoreGraph], rank: int,
                           cap: int = RELABEL_CAP) -> List[Dict[int, int]]:
    """Relabelings that send signature classes to canonical name blocks;
    the canonical form is the minimum encoding over these."""
    sig = _label_signatures(graphs, rank)
    classes: Dict[object, List[int]] = {}
    for l in range(1, rank + 1):
        classes.setdefault(sig[l], []).append(l)
    ordered = sorted(classes.items(), key=lambda kv: repr(kv[0]))
    total = 1
    for _, labs in ordered:
        f = 1
        for i in range(2, len(labs) + 1):
            f *= i
        total *= f * (2 ** len(labs))
        if total > cap:
            raise Undecided("relabeling candidate space exceeded the cap")
    maps: List[Dict[int, int]] = [dict()]
    name = 1
    for _, labs in ordered:
        names = list(range(name, name + len(labs)))
        name += len(labs)
        new_maps = []
        for m in maps:
            for perm in itertools.permutations(labs):
                for signs in itertools.product((1, -1), repeat=len(labs)):
                    m2 = dict(m)
                    for lab, nm, s in zip(perm, names, signs):
                        m2[lab] = s * nm
                        m2[-lab] = -s * nm
                    new_maps.append(m2)
        maps = new_maps
    return maps


def canonical_mod_relabel(graphs: Sequence[gr.CoreGraph], rank: int
                          ) -> Tuple[object, Dict[int, int]]:
    """Canonical key of a graph tuple up to signed relabeling of the basis,
    with a relabeling realizing it."""
    best = None
    best_map = None
    for mapping in _canonical_relabelings(graphs, rank):
        key = tuple(relabel_graph(g, mapping).canonical() for g in graphs)
        if best is None or key < best:
            best = key
            best_map = mapping
    return best, best_map


def _perm_aut_from_mapping(rank: int, mapping: Dict[int, int]) -> Automorphism:
    return perm_automorphism(rank, {i: mapping[i] for i in range(1, rank + 1)})


def _compose_mappings(rank: int, first: Dict[int, int],
                      then: Dict[int, int]) -> Dict[int, int]:
    out = {}
    for i in range(1, rank + 1):
        t = first[i]
        s = then[abs(t)]
        out[i] = s if t > 0 else -s
        out[-i] = -out[i]
    return out


def _invert_mapping(rank: int, m: Dict[int, int]) -> Dict[int, int]:
    out = {}
    for i in range(1, rank + 1):
        t = m[i]
        out[abs(t)] = i if t > 0 else -i
        out[-abs(t)] = -out[abs(t)]
    return out


# -- Gersten: orbit problem for tuples of conjugacy classes of subgroups -------


def _graph_node(graphs: Sequence[gr.CoreGraph]) -> Tuple[gr.CoreGraph, ...]:
    return tuple(g if g.base is None else gr.unbased(g) for g in graphs)


def _graph_size(graphs: Sequence[gr.CoreGraph]) -> int:
    return sum(g.nv for g in graphs)


def move_graphs(graphs: Sequence[gr.CoreGraph], m: Automorphism
                ) -> Tuple[gr.CoreGraph, ...]:
    return tuple(gr.apply_endo(g, m.images) for g in graphs)


def minimize_graphs(graphs: Sequence[gr.CoreGraph], rank: int
                    ) -> Tuple[Tuple[gr.CoreGraph, ...], Automorphism]:
    cur = _graph_node(graphs)
    aut = Automorphism.identity(rank)
    moves = type2_autos(rank)
    improved = True
    while improved:
        improved = False
        size = _graph_size(cur)
        for m in moves:
            nxt = move_graphs(cur, m)
            if _graph_size(nxt) < size:
                cur = nxt
                aut = m.after(aut)
                improved = True
                break
    return cur, aut


class _LevelComponent:
    """BFS of the minimal level modulo signed relabelings.

    Nodes are canonical keys; each holds a concrete representative tuple,
    the automorphism from the root representative, and the relabeling that
    canonicalizes the representative.
    """

    def __init__(self, root: Tuple[gr.CoreGraph, ...], rank: int,
                 node_cap: int = NODE_CAP):
        self.rank = rank
        self.size = _graph_size(root)
        self.node_cap = node_cap
        key, mapping = canonical_mod_relabel(root, rank)
        self.root_key = key
        self.nodes: Dict[object, Tuple[Tuple[gr.CoreGraph, ...], Automorphism,
                                       Dict[int, int]]] = {
            key: (root, Automorphism.identity(rank), mapping)}
        self.queue = [key]
        self.qi = 0
        self.loop_gens: List[Automorphism] = []

    def expand_all(self, stop_key=None) -> Optional[object]:
        if stop_key is not None and stop_key in self.nodes:
            return stop_key
        moves = type2_autos(self.rank)
        while self.qi < len(self.queue):
            key = self.queue[self.qi]
            self.qi += 1
            rep, au, pmap = self.nodes[key]
            for m in moves:
                nxt = move_graphs(rep, m)
                if _graph_size(nxt) != self.size:
                    continue
                nkey, nmap = canonical_mod_relabel(nxt, self.rank)
                if nkey in self.nodes:
                    # loop edge: relabeling correction into the stored rep
                    _, av, vmap = self.nodes[nkey]
                    corr = _compose_mappings(self.rank, nmap,
                                             _invert_mapping(self.rank, vmap))
                    gen = av.inverted().after(
                        _perm_aut_from_mapping(self.rank, corr).after(
                            m.after(au)))
                    self.loop_gens.append(gen)
                else:
                    self.nodes[nkey] = (nxt, m.after(au), nmap)
                    self.queue.append(nkey)
                    if len(self.nodes) > self.node_cap:
                        raise Undecided("graph orbit component exceeded the node cap")
                    if stop_key is not None and nkey == stop_key:
                        return nkey
        return stop_key if stop_key in self.nodes else None

    def point_stabilizer_perms(self) -> List[Automorphism]:
        """Per-node signed relabelings fixing every entry's class,
        conjugated back to the root."""
        out = []
        for key, (rep, au, _) in list(self.nodes.items()):
            canons = [g.canonical() for g in rep]
            for mapping in candidate_relabelings(rep, rep, self.rank):
                ok = all(relabel_graph(g, mapping).canonical() == c
                         for g, c in zip(rep, canons))
                if ok:
                    tau = _perm_aut_from_mapping(self.rank, mapping)
                    out.append(au.inverted().after(tau.after(au)))
        return out


def orbit_subgroups(src: Sequence[gr.CoreGraph], dst: Sequence[gr.CoreGraph],
                    rank: int, node_cap: int = NODE_CAP
                    ) -> Optional[Automorphism]:
    """An automorphism with [alpha(src_i)] = [dst_i] for all i (conjugacy
    classes of subgroups), or None.  Gersten's peak reduction, minimizing
    total vertex count."""
    if len(src) != len(dst):
        return None
    s = _graph_node(src)
    t = _graph_node(dst)
    if any(g.free_rank() != h.free_rank() for g, h in zip(s, t)):
        return None
    s_min, a_s = minimize_graphs(s, rank)
    t_min, a_t = minimize_graphs(t, rank)
    if _graph_size(s_min) != _graph_size(t_min):
        return None
    t_key, t_map = canonical_mod_relabel(t_min, rank)
    comp = _LevelComponent(s_min, rank, node_cap)
    hit = comp.expand_all(stop_key=t_key)
    if hit is None:
        return None
    rep, au, pmap = comp.nodes[t_key]
    corr = _compose_mappings(rank, pmap, _invert_mapping(rank, t_map))
    sigma = _perm_aut_from_mapping(rank, corr)
    alpha = a_t.inverted().after(sigma.after(au.after(a_s)))
    assert verify_subgroup_witness(alpha, s, t)
    return alpha


def verify_subgroup_witness(alpha: Automorphism, src: Sequence[gr.CoreGraph],
                            dst: Sequence[gr.CoreGraph]) -> bool:
    if not alpha.verify():
        return False
    for g, h in zip(src, dst):
        img = gr.apply_endo(g if g.base is None else gr.unbased(g), alpha.images)
        target = h if h.base is None else gr.unbased(h)
        if img.canonical() != target.canonical():
            return False
    return True


def stabilizer_subgroups(dst: Sequence[gr.CoreGraph], rank: int,
                         node_cap: int = NODE_CAP) -> List[Automorphism]:
    """Generators of the stabilizer of the tuple of conjugacy classes in
    Aut(F): loop generators of the minimal level graph plus point
    stabilizers, conjugated back to dst."""
    t = _graph_node(dst)
    t_min, a_t = minimize_graphs(t, rank)
    comp = _LevelComponent(t_min, rank, node_cap)
    comp.expand_all()
    gens = comp.loop_gens + comp.point_stabilizer_perms()
    out = []
    seen = set()
    for g in gens:
        conj_back = a_t.inverted().after(g.after(a_t))
        if conj_back.key() in seen:
            continue
        seen.add(conj_back.key())
        if not verify_subgroup_witness(conj_back, t, t):
            raise RuntimeError("stabilizer generator fails to fix the tuple")
        out.append(conj_back)
    return out


def oracle_orbit_subgroups(src: Sequence[gr.CoreGraph],
                           dst: Sequence[gr.CoreGraph], rank: int,
                           depth: int, cap: int = 200_000) -> bool:
    """Brute force over Whitehead-generator words of length <= depth."""
    moves = whitehead_autos(rank)

    def node(graphs):
        return tuple(g.canonical() for g in _graph_node(graphs))

    half_a = depth // 2
    half_b = depth - half_a

    def ball(start, d):
        start_key = node(start)
        seen = {start_key}
        frontier = [tuple(_graph_node(start))]
        for _ in range(d):
            nxt = []
            for gs in frontier:
                for m in moves:
                    new = move_graphs(gs, m)
                    k = node(new)
                    if k not in seen:
                        seen.add(k)
                        nxt.append(new)
                        if len(seen) > cap:
                            raise Undecided("oracle ball exceeded the cap")
            frontier = nxt
        return seen

    return bool(ball(src, half_a) & ball(dst, half_b))


# -- tuples of conjugacy classes of tuples of subgroups ------------------------


class StarEncoding:
    """Star encoding of tuples of tuples of subgroups over an enlarged
    basis: one fresh symbol per tuple slot, components hanging off a root."""

    __slots__ = ("base_rank", "rank", "k_labels", "shapes")

    def __init__(self, base_rank: int, shapes: Sequence[int]):
        self.base_rank = base_rank
        self.shapes = tuple(shapes)
        self.k_labels = []
        nxt = base_rank + 1
        for n in shapes:
            self.k_labels.append(tuple(range(nxt, nxt + n)))
            nxt += n
        self.rank = nxt - 1


def star_graph(components: Sequence[gr.CoreGraph], labels: Sequence[int],
               rank: int) -> gr.CoreGraph:
    """Tuple graph: a root with one labeled edge into each component's
    basepoint."""
    if len(components) != len(labels):
        raise ValueError("label count mismatch")
    edges: List[gr.Edge] = []
    nv = 1
    bases = []
    for c in components:
        if c.base is None:
            raise ValueError("components must be based")
        offset = nv
        nv += c.nv
        for (u, lab, v) in c.edges:
            edges.append((u + offset, lab, v + offset))
        bases.append(c.base + offset)
    for lab, b in zip(labels, bases):
        edges.append((0, lab, b))
    return gr.CoreGraph(rank, nv, edges, None)


def split_star(g: gr.CoreGraph, labels: Sequence[int], base_rank: int
               ) -> Optional[List[gr.CoreGraph]]:
    """Recover the component subgroups from a tuple graph, or None if the
    graph is not a tuple graph for these labels."""
    roots = [v for v in range(g.nv)
             if all(g.step(v, lab) is not None for lab in labels)]
    roots = [v for v in roots
             if sum(1 for d in g.directions(v) if abs(d) in set(labels)) == len(labels)]
    if len(roots) != 1:
        return None
    root = roots[0]
    # no other K-labeled edges allowed anywhere
    k_set = set(labels)
    for (u, lab, v) in g.edges:
        if lab in k_set and u != root:
            return None
        if lab > base_rank and lab not in k_set:
            return None
    out = []
    for lab in labels:
        b = g.step(root, lab)
        # component = connected part through b avoiding the root's star edges
        seen = {b}
        queue = [b]
        qi = 0
        while qi < len(queue):
            v = queue[qi]
            qi += 1
            for d in g.directions(v):
                if abs(d) in k_set:
                    continue
                w = g.step(v, d)
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        order = {v: i for i, v in enumerate(sorted(seen))}
        edges = [(order[u], l, order[v]) for (u, l, v) in g.edges
                 if u in order and v in order and l not in k_set]
        out.append(gr.CoreGraph(base_rank, len(order), edges, order[b]))
    return out


def encode_tuple_tuples(tuples: Sequence[Sequence[gr.CoreGraph]],
                        base_rank: int
                        ) -> Tuple[StarEncoding, List[gr.CoreGraph]]:
    """Encode tuples of based core graphs as the auxiliary tuple of unbased
    graphs over the enlarged basis: the tuple graphs, the full base-rank
    rose, the fresh-symbol roses, and a rigid cyclic anchor per tuple."""
    prepared: List[List[gr.CoreGraph]] = []
    for t in tuples:
        if len(t) == 0:
            raise ValueError("empty tuple")
        entries = list(t)
        if len(entries) == 1:
            entries = entries + entries  # singleton convention
        for c in entries:
            if c.base is None:
                raise ValueError("tuple entries must be based subgroup graphs")
            if not c.edges:
                raise ValueError("trivial subgroups cannot be star-encoded")
        prepared.append(entries)
    enc = StarEncoding(base_rank, [len(t) for t in prepared])
    rank = enc.rank
    out: List[gr.CoreGraph] = []
    for t, labels in zip(prepared, enc.k_labels):
        comps = [gr.CoreGraph(rank, c.nv, c.edges, c.base) for c in t]
        out.append(star_graph(comps, labels, rank))
    out.append(gr.rose(rank, labels=list(range(1, base_rank + 1)), based=False))
    for labels in enc.k_labels:
        out.append(gr.rose(rank, labels=list(labels), based=False))
    for labels in enc.k_labels:
        c = rigid_word(len(labels), labels)
        out.append(gr.from_words(rank, [c], based=False))
    return enc, out


def decode_tuple_tuples(enc: StarEncoding, encoded: Sequence[gr.CoreGraph]
                        ) -> List[List[gr.CoreGraph]]:
    out = []
    for i, labels in enumerate(enc.k_labels):
        comps = split_star(encoded[i], labels, enc.base_rank)
        if comps is None:
            raise ValueError("not a tuple graph")
        out.append(comps)
    return out


# -- rigid cyclic anchors -------------------------------------------------------


_RIGID_CACHE: Dict[int, Tuple[int, ...]] = {}

def _rigid_candidates(k: int) -> List[Tuple[int, ...]]:
    """Candidate anchor words in local letters 1..k.

    The product of squares comes first (the natural default) but is
    screened out at runtime: swapping-and-inverting the basis carries it
    to its inverse, so its cyclic subgroup has a non-inner stabilizer.
    The asymmetric patterns after it break that symmetry.
    """
    squares = tuple(x for i in range(1, k + 1) for x in (i, i))
    asym = (1, 1, 2, 1, 2, 2, 2)
    for i in range(3, k + 1):
        asym = asym + (i, i - 1, i, i, i)
    asym2 = tuple(x for i in range(1, k + 1) for x in ((i,) * (i + 1)))
    return [squares, asym, asym2]


def rigid_word(k: int, labels: Sequence[int]) -> Word:
    """A word in the given labels generating a cyclic subgroup whose
    class-stabilizer in Aut(F_k) is inner; rigidity is verified at
    runtime, not assumed."""
    if k < 2:
        raise ValueError("rigid anchors need rank at least 2")
    if k not in _RIGID_CACHE:
        chosen = None
        for pattern in _rigid_candidates(k):
            if _is_rigid(tuple(pattern), k):
                chosen = tuple(pattern)
                break
        if chosen is None:
            raise RuntimeError(f"no verified rigid anchor found at rank {k}")
        _RIGID_CACHE[k] = chosen
    pattern = _RIGID_CACHE[k]
    return tuple(labels[x - 1] for x in pattern)


def _is_rigid(w: Word, rank: int) -> bool:
    """Check that every stabilizer generator of [<w>] is inner."""
    g = gr.from_words(rank, [w], based=False)
    try:
        gens = stabilizer_subgroups([g], rank)
    except Undecided:
        return False
    return all(a.is_inner() is not None for a in gens)


# -- the mixed Whitehead problem for subgroups ---------------------------------


def _tuple_patterns_match(a: Sequence[gr.CoreGraph],
                          b: Sequence[gr.CoreGraph]) -> bool:
    """Equality patterns of entries inside each tuple must agree."""
    ka = [g.canonical() for g in a]
    kb = [g.canonical() for g in b]
    for i in range(len(ka)):
        for j in range(i + 1, len(ka)):
            if (ka[i] == ka[j]) != (kb[i] == kb[j]):
                return False
    return True


def _dedupe_tuple(entries: Sequence[gr.CoreGraph]) -> List[gr.CoreGraph]:
    seen = set()
    out = []
    for g in entries:
        k = g.canonical()
        if k not in seen:
            seen.add(k)
            out.append(g)
    return out


_MWP_CACHE: Dict[object, Tuple[Optional[Automorphism], List[Automorphism]]] = {}


def mwp_subgroups(src: Sequence[Sequence[gr.CoreGraph]],
                  dst: Sequence[Sequence[gr.CoreGraph]], rank: int,
                  node_cap: int = NODE_CAP, with_stabilizer: bool = True
                  ) -> Tuple[Optional[Automorphism], List[Automorphism]]:
    """Orbit problem for tuples of conjugacy classes of *tuples* of
    subgroups: is there alpha with a single conjugator per tuple taking
    src_i to dst_i entrywise?  Also returns stabilizer generators of dst.

    Entries are based core graphs; each inner tuple is taken up to a
    common conjugation.  Results are memoized on the graph data.
    """
    if len(src) != len(dst):
        raise ValueError("tuple counts differ")
    cache_key = (rank, node_cap, with_stabilizer,
                 tuple(tuple(g.canonical() for g in t) for t in src),
                 tuple(tuple(g.canonical() for g in t) for t in dst),
                 tuple(tuple(g.edges for g in t) for t in src),
                 tuple(tuple(g.edges for g in t) for t in dst),
                 tuple(tuple(g.base for g in t) for t in src),
                 tuple(tuple(g.base for g in t) for t in dst))
    if cache_key in _MWP_CACHE:
        return _MWP_CACHE[cache_key]
    out = _mwp_subgroups_impl(src, dst, rank, node_cap, with_stabilizer)
    if len(_MWP_CACHE) < 4096:
        _MWP_CACHE[cache_key] = out
    return out


def _mwp_subgroups_impl(src, dst, rank, node_cap, with_stabilizer
                        ) -> Tuple[Optional[Automorphism], List[Automorphism]]:
    s_tuples: List[List[gr.CoreGraph]] = []
    t_tuples: List[List[gr.CoreGraph]] = []
    for a, b in zip(src, dst):
        if len(a) != len(b):
            return None, _stab_only(dst, rank, node_cap) if with_stabilizer else []
        # positions with trivial entries impose nothing, but must match up
        triv_a = [not g.edges for g in a]
        triv_b = [not g.edges for g in b]
        if triv_a != triv_b:
            return None, _stab_only(dst, rank, node_cap) if with_stabilizer else []
        a2 = [g for g, t in zip(a, triv_a) if not t]
        b2 = [g for g, t in zip(b, triv_b) if not t]
        if not a2:
            continue
        if not _tuple_patterns_match(a2, b2):
            return None, _stab_only(dst, rank, node_cap) if with_stabilizer else []
        # deduplicate entries consistently on both sides
        keep = []
        seen = set()
        for i, g in enumerate(a2):
            k = g.canonical()
            if k not in seen:
                seen.add(k)
                keep.append(i)
        s_tuples.append([a2[i] for i in keep])
        t_tuples.append([b2[i] for i in keep])
    if not s_tuples:
        ident = Automorphism.identity(rank)
        stab = _stab_only(dst, rank, node_cap) if with_stabilizer else []
        return ident, stab
    enc, s_hat = _encode_mixed(s_tuples, rank)
    enc2, t_hat = _encode_mixed(t_tuples, rank)
    assert enc.shapes == enc2.shapes
    beta = orbit_subgroups(s_hat, t_hat, enc.rank, node_cap)
    alpha: Optional[Automorphism] = None
    if beta is not None:
        alpha = _restrict_to_base(beta, enc)
        if alpha is None or not _verify_mwp_witness(alpha, s_tuples, t_tuples):
            raise RuntimeError("restriction of the star witness failed to verify")
    stab: List[Automorphism] = []
    if with_stabilizer:
        stab = _mwp_stabilizer(t_tuples, dst, rank, node_cap)
    return alpha, stab


def _encode_mixed(tuples: Sequence[Sequence[gr.CoreGraph]], rank: int
                  ) -> Tuple[StarEncoding, List[gr.CoreGraph]]:
    """Star-encode only the genuinely multi-entry tuples; a singleton's
    common-conjugator condition is vacuous, so it enters as a plain
    conjugacy class (a large constant-factor saving in the extended
    rank)."""
    multi = [t for t in tuples if len(t) >= 2]
    single = [t[0] for t in tuples if len(t) == 1]
    if multi:
        enc, hat = encode_tuple_tuples(multi, rank)
        stars = hat[:len(multi)]
        rest = hat[len(multi):]
    else:
        enc = StarEncoding(rank, [])
        stars = []
        rest = [gr.rose(rank, based=False)]
    plains = [gr.unbased(gr.CoreGraph(enc.rank, g.nv, g.edges, g.base))
              for g in single]
    return enc, stars + plains + rest


def _stab_only(dst, rank, node_cap):
    t_tuples = []
    for b in dst:
        b2 = [g for g in b if g.edges]
        if b2:
            t_tuples.append(_dedupe_tuple(b2))
    return _mwp_stabilizer(t_tuples, dst, rank, node_cap)


def _restrict_to_base(beta: Automorphism, enc: StarEncoding
                      ) -> Optional[Automorphism]:
    """Turn an Aut(F(N)) witness preserving the base rose class into an
    Aut(F(n)) witness by an inner correction.

    With beta' = ad_g . beta preserving F(n) setwise, the restriction's
    inverse is x -> beta^-1(g x g^-1), exactly.
    """
    n = enc.base_rank
    base_gens = [(i + 1,) for i in range(n)]
    img = gr.from_words(enc.rank, [beta.apply(x) for x in base_gens])
    g = gr.conjugate_subgroups(img, gr.rose(enc.rank,
                                            labels=list(range(1, n + 1))))
    if g is None:
        return None
    images = [conj(beta.apply(x), g) for x in base_gens]
    inv_images = [beta.apply_inv(mul(g, x, inv(g))) for x in base_gens]
    if any(abs(l) > n for w in list(images) + list(inv_images) for l in w):
        return None
    alpha = Automorphism(n, images, inv_images)
    return alpha if alpha.verify() else None


def _verify_mwp_witness(alpha: Automorphism,
                        s_tuples: Sequence[Sequence[gr.CoreGraph]],
                        t_tuples: Sequence[Sequence[gr.CoreGraph]]) -> bool:
    if not alpha.verify():
        return False
    for a, b in zip(s_tuples, t_tuples):
        imgs = [gr.apply_endo(g, alpha.images, based=True) for g in a]
        if gr.tuple_conjugate_subgroups(imgs, list(b)) is None:
            return False
    return True


def mwp_conjugators(alpha: Automorphism,
                    s_tuples: Sequence[Sequence[gr.CoreGraph]],
                    t_tuples: Sequence[Sequence[gr.CoreGraph]]
                    ) -> Optional[List[Word]]:
    """Per-tuple conjugators h_i with h_i^-1 alpha(S_ij) h_i = T_ij."""
    out = []
    for a, b in zip(s_tuples, t_tuples):
        imgs = [gr.apply_endo(g, alpha.images, based=True) for g in a]
        h = gr.tuple_conjugate_subgroups(imgs, list(b))
        if h is None:
            return None
        out.append(h)
    return out


def _mwp_stabilizer(t_tuples: Sequence[Sequence[gr.CoreGraph]],
                    dst_orig, rank: int, node_cap: int) -> List[Automorphism]:
    """Stabilizer generators over the base group: star-encode, compute the
    Gersten stabilizer, correct each generator to preserve the base
    factor, restrict, and add the inner generators."""
    if not t_tuples:
        return [Automorphism.identity(rank)]
    enc, t_hat = _encode_mixed(t_tuples, rank)
    raw = stabilizer_subgroups(t_hat, enc.rank, node_cap)
    out: List[Automorphism] = []
    seen = set()
    for beta in raw:
        alpha = _restrict_to_base(beta, enc)
        if alpha is None:
            raise RuntimeError("stabilizer generator does not preserve the base factor")
        if alpha.key() in seen:
            continue
        seen.add(alpha.key())
        if _verify_mwp_witness(alpha, t_tuples, t_tuples):
            out.append(alpha)
        else:
            raise RuntimeError("restricted stabilizer generator fails to fix the tuples")
    # inner generators ad_x
    for i in range(rank):
        x = (i + 1,)
        images = [conj((j + 1,), x) for j in range(rank)]
        inverse = [mul(x, (j + 1,), inv(x)) for j in range(rank)]
        ad = Automorphism(rank, images, inverse)
        if ad.key() not in seen:
            seen.add(ad.key())
            out.append(ad)
    return out
