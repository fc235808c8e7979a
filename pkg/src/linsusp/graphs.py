"""Stallings core graphs for finitely generated subgroups of free groups.

A core graph is a folded directed graph with edges labeled by generators
1..rank.  Based graphs (with a basepoint) stand for subgroups, unbased
ones for conjugacy classes of subgroups.  The trivial subgroup is a
single vertex with no edges.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .words import Word, EMPTY, inv, mul, reduce_word, wpow

Edge = Tuple[int, int, int]  # (source, label, target), label >= 1


class CoreGraph:
    """Folded, cored, connected labeled graph.  Treated as immutable."""

    __slots__ = ("rank", "nv", "edges", "base", "_adj", "_canon")

    def __init__(self, rank: int, nv: int, edges: Sequence[Edge],
                 base: Optional[int]):
        self.rank = rank
        self.nv = nv
        self.edges = tuple(sorted(edges))
        self.base = base
        adj: List[Dict[int, int]] = [dict() for _ in range(nv)]
        for (u, lab, v) in self.edges:
            if lab in adj[u] or -lab in adj[v]:
                raise ValueError("graph is not folded")
            adj[u][lab] = v
            adj[v][-lab] = u
        self._adj = adj
        self._canon = None

    # -- basic structure --------------------------------------------------

    def step(self, v: int, letter: int) -> Optional[int]:
        return self._adj[v].get(letter)

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def directions(self, v: int) -> Tuple[int, ...]:
        return tuple(sorted(self._adj[v], key=lambda x: (abs(x), x < 0)))

    @property
    def is_based(self) -> bool:
        return self.base is not None

    def free_rank(self) -> int:
        return len(self.edges) - self.nv + 1

    def __eq__(self, other):
        if not isinstance(other, CoreGraph):
            return NotImplemented
        return (self.rank == other.rank and self.base == other.base
                and self.nv == other.nv and self.edges == other.edges)

    def __hash__(self):
        return hash((self.rank, self.nv, self.edges, self.base))

    def __repr__(self):
        b = f", base={self.base}" if self.base is not None else ""
        return f"CoreGraph(rank={self.rank}, nv={self.nv}, ne={len(self.edges)}{b})"

    # -- tracing ----------------------------------------------------------

    def trace(self, start: int, w: Word) -> Optional[int]:
        v = start
        for x in w:
            v = self._adj[v].get(x)
            if v is None:
                return None
        return v

    def member(self, w: Word) -> bool:
        """Is the word w in the subgroup (based graphs only)?"""
        if self.base is None:
            raise ValueError("membership needs a based graph")
        w = reduce_word(w)
        for x in w:
            if not (1 <= abs(x) <= self.rank):
                raise ValueError("rank mismatch")
        return self.trace(self.base, w) == self.base

    # -- canonical form ---------------------------------------------------

    def canonical(self):
        """Canonical encoding; two graphs are label-isomorphic (preserving
        the basepoint when based) iff their encodings are equal."""
        if self._canon is None:
            starts = [self.base] if self.base is not None else range(self.nv)
            best = None
            for s in starts:
                enc = self._bfs_encoding(s)
                if best is None or enc < best:
                    best = enc
            self._canon = (self.rank, self.nv, self.base is not None, best)
        return self._canon

    def _bfs_encoding(self, start: int):
        order = {start: 0}
        queue = [start]
        out = []
        qi = 0
        while qi < len(queue):
            v = queue[qi]
            qi += 1
            row = []
            for lab in sorted(self._adj[v], key=lambda x: (abs(x), x < 0)):
                w = self._adj[v][lab]
                if w not in order:
                    order[w] = len(order)
                    queue.append(w)
                row.append((lab, order[w]))
            out.append(tuple(row))
        return tuple(out)

    def iso_map(self, other: "CoreGraph") -> Optional[Dict[int, int]]:
        """A label-isomorphism self -> other as a vertex map, or None."""
        if (self.rank != other.rank or self.nv != other.nv
                or len(self.edges) != len(other.edges)):
            return None
        if (self.base is None) != (other.base is None):
            return None
        starts = [self.base] if self.base is not None else list(range(self.nv))
        ostarts = [other.base] if other.base is not None else list(range(other.nv))
        target = other._bfs_encoding(ostarts[0])
        for s in starts:
            if self._bfs_encoding(s) != target:
                continue
            t = ostarts[0]
            m = {s: t}
            queue = [s]
            ok = True
            while queue and ok:
                v = queue.pop()
                for lab, w in self._adj[v].items():
                    w2 = other.step(m[v], lab)
                    if w2 is None:
                        ok = False
                        break
                    if w in m:
                        if m[w] != w2:
                            ok = False
                            break
                    else:
                        m[w] = w2
                        queue.append(w)
            if ok and len(m) == self.nv:
                return m
        return None

    # -- paths ------------------------------------------------------------

    def path_word(self, src: int, dst: int) -> Word:
        """Word read along some reduced path src -> dst."""
        if src == dst:
            return EMPTY
        prev: Dict[int, Tuple[int, int]] = {src: (-1, 0)}
        queue = [src]
        qi = 0
        while qi < len(queue):
            v = queue[qi]
            qi += 1
            for lab in sorted(self._adj[v], key=lambda x: (abs(x), x < 0)):
                w = self._adj[v][lab]
                if w not in prev:
                    prev[w] = (v, lab)
                    queue.append(w)
            if dst in prev:
                break
        if dst not in prev:
            raise ValueError("vertices not connected")
        out = []
        v = dst
        while v != src:
            u, lab = prev[v]
            out.append(lab)
            v = u
        return reduce_word(reversed(out))

    def spanning_tree_words(self) -> Tuple[Word, ...]:
        """A free basis of the subgroup (based graphs)."""
        if self.base is None:
            raise ValueError("needs a based graph")
        prev: Dict[int, Word] = {self.base: EMPTY}
        queue = [self.base]
        qi = 0
        tree_edges = set()
        while qi < len(queue):
            v = queue[qi]
            qi += 1
            for lab in sorted(self._adj[v], key=lambda x: (abs(x), x < 0)):
                w = self._adj[v][lab]
                if w not in prev:
                    prev[w] = mul(prev[v], (lab,))
                    e = (v, lab, w) if lab > 0 else (w, -lab, v)
                    tree_edges.add(e)
                    queue.append(w)
        basis = []
        for (u, lab, v) in self.edges:
            if (u, lab, v) in tree_edges:
                continue
            basis.append(mul(prev[u], (lab,), inv(prev[v])))
        return tuple(basis)


# -- folding -----------------------------------------------------------------


def fold(rank: int, nv: int, raw_edges: Iterable[Edge],
         base: Optional[int]) -> CoreGraph:
    """Fold a raw labeled graph and trim it to a core graph.

    The basepoint survives coring; an unbased graph that collapses
    entirely keeps a single vertex.
    """
    parent = list(range(nv))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    adj: List[Dict[int, int]] = [dict() for _ in range(nv)]
    pending: List[Edge] = list(raw_edges)
    merges: List[Tuple[int, int]] = []
    while pending or merges:
        while merges:
            a, b = merges.pop()
            a, b = find(a), find(b)
            if a == b:
                continue
            if b < a:
                a, b = b, a
            parent[b] = a
            for lab, v in adj[b].items():
                if lab > 0:
                    pending.append((b, lab, v))
                else:
                    pending.append((v, -lab, b))
            adj[b] = {}
        if not pending:
            break
        (u, lab, v) = pending.pop()
        u, v = find(u), find(v)
        tu = adj[u].get(lab)
        if tu is not None and find(tu) != v:
            merges.append((find(tu), v))
            pending.append((u, lab, v))
            continue
        tv = adj[v].get(-lab)
        if tv is not None and find(tv) != u:
            merges.append((find(tv), u))
            pending.append((u, lab, v))
            continue
        adj[u][lab] = v
        adj[v][-lab] = u

    verts = sorted({find(v) for v in range(nv)}) if nv else [0]
    edge_set: Set[Edge] = set()
    for u in verts:
        for lab, v in adj[u].items():
            if lab > 0:
                edge_set.add((u, lab, find(v)))
    new_base = find(base) if base is not None else None
    return _assemble(rank, verts, edge_set, new_base)


def _trim(verts: Iterable[int], edge_set: Set[Edge],
          protect: Optional[int]) -> Tuple[Set[int], Set[Edge]]:
    """Iteratively remove valence-1 vertices (except `protect`) and
    isolated vertices beyond the first."""
    edge_set = set(edge_set)
    incident: Dict[int, List[Edge]] = {v: [] for v in verts}
    for e in edge_set:
        (u, _, v) = e
        incident[u].append(e)
        incident[v].append(e)
    live = set(verts)
    changed = True
    while changed:
        changed = False
        for v in sorted(live):
            if v == protect:
                continue
            es = [e for e in incident[v] if e in edge_set]
            n_ends = sum(1 + (e[0] == e[2]) for e in es)
            if n_ends == 0:
                if len(live) > 1:
                    live.discard(v)
                    changed = True
            elif n_ends == 1:
                edge_set.discard(es[0])
                live.discard(v)
                changed = True
    if protect is not None:
        live.add(protect)
    if not live:
        live = {next(iter(verts), 0)}
    return live, edge_set


def _assemble(rank: int, verts: Iterable[int], edge_set: Set[Edge],
              base: Optional[int]) -> CoreGraph:
    live, kept = _trim(verts, edge_set, base)
    order = {v: i for i, v in enumerate(sorted(live))}
    edges = [(order[u], lab, order[v]) for (u, lab, v) in kept]
    nb = order[base] if base is not None else None
    return CoreGraph(rank, len(order), edges, nb)


# -- constructors -------------------------------------------------------------


def from_words(rank: int, ws: Sequence[Word], based: bool = True) -> CoreGraph:
    """Core graph of the subgroup generated by the given words."""
    raw: List[Edge] = []
    nv = 1
    for w in ws:
        w = reduce_word(w)
        prev = 0
        for i, x in enumerate(w):
            nxt = 0 if i == len(w) - 1 else nv
            if i < len(w) - 1:
                nv += 1
            if x > 0:
                raw.append((prev, x, nxt))
            else:
                raw.append((nxt, -x, prev))
            prev = nxt
    g = fold(rank, nv, raw, 0)
    return g if based else unbased(g)


def trivial(rank: int, based: bool = True) -> CoreGraph:
    return CoreGraph(rank, 1, [], 0 if based else None)


def rose(rank: int, labels: Optional[Sequence[int]] = None,
         based: bool = True) -> CoreGraph:
    labels = list(range(1, rank + 1)) if labels is None else labels
    return CoreGraph(rank, 1, [(0, lab, 0) for lab in labels],
                     0 if based else None)


def unbased(g: CoreGraph) -> CoreGraph:
    """Forget the basepoint and trim the hanging tail."""
    return _assemble(g.rank, range(g.nv), set(g.edges), None)


def core_vertex_map(g: CoreGraph) -> Dict[int, int]:
    """Vertex map from g's surviving core part onto unbased(g)'s ids."""
    live, _ = _trim(range(g.nv), set(g.edges), None)
    return {v: i for i, v in enumerate(sorted(live))}


def tail_word(g: CoreGraph) -> Tuple[Word, int]:
    """Word along the tail from the basepoint to the core of a based
    graph, plus the attachment vertex."""
    if g.base is None:
        raise ValueError("needs a based graph")
    adj = {u: dict(g._adj[u]) for u in range(g.nv)}
    w: List[int] = []
    v = g.base
    while len(adj[v]) == 1:
        lab, u = next(iter(adj[v].items()))
        if u == v:
            break
        del adj[u][-lab]
        del adj[v][lab]
        w.append(lab)
        v = u
    return reduce_word(w), v


# -- operations ---------------------------------------------------------------


def intersect(h: CoreGraph, k: CoreGraph) -> CoreGraph:
    """Based core graph of the intersection (pullback at the base pair)."""
    if h.rank != k.rank:
        raise ValueError("rank mismatch")
    if h.base is None or k.base is None:
        raise ValueError("intersect needs based graphs")
    start = (h.base, k.base)
    index = {start: 0}
    queue = [start]
    raw: List[Edge] = []
    qi = 0
    labels = [s * l for l in range(1, h.rank + 1) for s in (1, -1)]
    while qi < len(queue):
        (a, b) = queue[qi]
        qi += 1
        for lab in labels:
            a2, b2 = h.step(a, lab), k.step(b, lab)
            if a2 is None or b2 is None:
                continue
            nxt = (a2, b2)
            if nxt not in index:
                index[nxt] = len(index)
                queue.append(nxt)
            if lab > 0:
                raw.append((index[(a, b)], lab, index[nxt]))
    return fold(h.rank, len(index), raw, 0)


def conjugate_subgroups(h: CoreGraph, k: CoreGraph) -> Optional[Word]:
    """g with g^-1 H g = K, present iff the unbased cores agree."""
    uh = unbased(h)
    uk = unbased(k)
    m = uh.iso_map(uk)
    if m is None:
        return None
    if h.base is None or k.base is None:
        return EMPTY
    u, ah = tail_word(h)
    v, ak = tail_word(k)
    p = m[core_vertex_map(h)[ah]]
    w = uk.path_word(p, core_vertex_map(k)[ak])
    return mul(u, w, inv(v))


def apply_endo(g: CoreGraph, images: Sequence[Word],
               based: bool = False) -> CoreGraph:
    """Core graph of the image subgroup under gen i+1 -> images[i].

    Unbased by default (image of a conjugacy class); based=True keeps
    the basepoint.  Empty image words collapse edges.
    """
    nv = g.nv
    raw: List[Edge] = []
    collapse: List[Tuple[int, int]] = []
    for (u, lab, v) in g.edges:
        im = images[lab - 1]
        if not im:
            collapse.append((u, v))
            continue
        prev = u
        for i, x in enumerate(im):
            nxt = v if i == len(im) - 1 else nv
            if i < len(im) - 1:
                nv += 1
            if x > 0:
                raw.append((prev, x, nxt))
            else:
                raw.append((nxt, -x, prev))
            prev = nxt
    base = g.base
    if collapse:
        parent = list(range(nv))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for (u, v) in collapse:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
        raw = [(find(u), lab, find(v)) for (u, lab, v) in raw]
        if base is not None:
            base = find(base)
    out = fold(g.rank, nv, raw, base)
    if based:
        if g.base is None:
            raise ValueError("based image of an unbased graph")
        return out
    return unbased(out)


def is_finite_index(g: CoreGraph) -> bool:
    return all(g.degree(v) == 2 * g.rank for v in range(g.nv))


# -- cosets and common conjugators --------------------------------------------


class CosetGraph:
    """Folded graph recognizing a coset prefix*Y: reduced words tracing
    start -> accept are exactly the coset elements."""

    __slots__ = ("graph", "start", "accept")

    def __init__(self, prefix: Word, y: CoreGraph):
        if y.base is None:
            raise ValueError("needs a based graph")
        prefix = reduce_word(prefix)
        raw = list(y.edges)
        nv = y.nv
        start = y.base
        if prefix:
            # spell the prefix along a fresh tail into the basepoint
            inter = [nv + i for i in range(len(prefix) - 1)]
            nv += len(prefix) - 1
            start = nv
            nv += 1
            chain = [start] + inter + [y.base]
            for i, x in enumerate(prefix):
                a, b = chain[i], chain[i + 1]
                raw.append((a, x, b) if x > 0 else (b, -x, a))
        g, marks = fold_marked(y.rank, nv, raw, [start, y.base])
        self.graph = g
        self.start = marks[0]
        self.accept = marks[1]


def fold_marked(rank: int, nv: int, raw_edges: Iterable[Edge],
                marks: Sequence[int]) -> Tuple[CoreGraph, List[int]]:
    """Fold without coring, tracking the final position of marked vertices."""
    parent = list(range(nv))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    adj: List[Dict[int, int]] = [dict() for _ in range(nv)]
    pending: List[Edge] = list(raw_edges)
    merges: List[Tuple[int, int]] = []
    while pending or merges:
        while merges:
            a, b = merges.pop()
            a, b = find(a), find(b)
            if a == b:
                continue
            if b < a:
                a, b = b, a
            parent[b] = a
            for lab, v in adj[b].items():
                if lab > 0:
                    pending.append((b, lab, v))
                else:
                    pending.append((v, -lab, b))
            adj[b] = {}
        if not pending:
            break
        (u, lab, v) = pending.pop()
        u, v = find(u), find(v)
        tu = adj[u].get(lab)
        if tu is not None and find(tu) != v:
            merges.append((find(tu), v))
            pending.append((u, lab, v))
            continue
        tv = adj[v].get(-lab)
        if tv is not None and find(tv) != u:
            merges.append((find(tv), u))
            pending.append((u, lab, v))
            continue
        adj[u][lab] = v
        adj[v][-lab] = u

    roots = sorted({find(v) for v in range(nv)}) if nv else [0]
    order = {v: i for i, v in enumerate(roots)}
    edges = []
    for u in roots:
        for lab, v in adj[u].items():
            if lab > 0:
                edges.append((order[u], lab, order[find(v)]))
    g = CoreGraph(rank, len(order), edges, None)
    return g, [order[find(m)] for m in marks]


def coset_intersection(items: Sequence[Tuple[Word, CoreGraph]]) -> Optional[Word]:
    """A word in the intersection of the cosets prefix_j * Y_j, or None."""
    if not items:
        return EMPTY
    cgs = [CosetGraph(p, y) for (p, y) in items]
    rank = cgs[0].graph.rank
    start = tuple(c.start for c in cgs)
    accept = tuple(c.accept for c in cgs)
    prev: Dict[Tuple[int, ...], Tuple[Tuple[int, ...], int]] = {start: (start, 0)}
    queue = [start]
    qi = 0
    labels = [s * l for l in range(1, rank + 1) for s in (1, -1)]
    while qi < len(queue):
        st = queue[qi]
        qi += 1
        if st == accept:
            break
        for lab in labels:
            nxt = []
            ok = True
            for c, v in zip(cgs, st):
                w = c.graph.step(v, lab)
                if w is None:
                    ok = False
                    break
                nxt.append(w)
            if not ok:
                continue
            nt = tuple(nxt)
            if nt not in prev:
                prev[nt] = (st, lab)
                queue.append(nt)
    if accept not in prev:
        return None
    out = []
    st = accept
    while st != start:
        st, lab = prev[st]
        out.append(lab)
    return reduce_word(reversed(out))


def iso_maps(g: CoreGraph, h: CoreGraph) -> List[Dict[int, int]]:
    """All label-isomorphisms g -> h (unbased graphs)."""
    out = []
    if (g.rank != h.rank or g.nv != h.nv or len(g.edges) != len(h.edges)):
        return out
    s0 = 0
    for t in range(h.nv):
        m = {s0: t}
        queue = [s0]
        ok = True
        while queue and ok:
            v = queue.pop()
            for lab, w in g._adj[v].items():
                w2 = h.step(m[v], lab)
                if w2 is None:
                    ok = False
                    break
                if w in m:
                    if m[w] != w2:
                        ok = False
                        break
                else:
                    m[w] = w2
                    queue.append(w)
        if ok and len(m) == g.nv and len(set(m.values())) == g.nv:
            if all(h.step(m[u], lab) == m[v2]
                   for (u, lab, v2) in g.edges):
                out.append(m)
    return out


def conjugator_cosets(x: CoreGraph, y: CoreGraph) -> List[Word]:
    """Words g_pi such that {g : g^-1 X g = Y} = union of g_pi * Y."""
    ux, uy = unbased(x), unbased(y)
    out = []
    if x.base is None or y.base is None:
        raise ValueError("needs based graphs")
    u, ax = tail_word(x)
    v, ay = tail_word(y)
    mx = core_vertex_map(x)
    my = core_vertex_map(y)
    for m in iso_maps(ux, uy):
        w = uy.path_word(m[mx[ax]], my[ay])
        out.append(mul(u, w, inv(v)))
    return out


def subgroup_conj_graph(x: CoreGraph, h: Word) -> CoreGraph:
    """Based graph of h^-1 X h."""
    gens = x.spanning_tree_words()
    return from_words(x.rank, [mul(inv(h), w, h) for w in gens])


def tuple_conjugate_subgroups(xs: Sequence[CoreGraph], ys: Sequence[CoreGraph],
                              cap: int = 4096) -> Optional[Word]:
    """A single h with h^-1 X_j h = Y_j for all j, or None."""
    if len(xs) != len(ys):
        return None
    cosets: List[List[Word]] = []
    for (x, y) in zip(xs, ys):
        reps = conjugator_cosets(x, y)
        if not reps:
            return None
        cosets.append(reps)
    total = 1
    for reps in cosets:
        total *= len(reps)
    if total > cap:
        raise RuntimeError("too many conjugator cosets to enumerate")
    idx = [0] * len(cosets)
    while True:
        items = [(cosets[j][idx[j]], ys[j]) for j in range(len(cosets))]
        h = coset_intersection(items)
        if h is not None:
            if all(subgroup_conj_graph(x, h).canonical() == y.canonical()
                   for (x, y) in zip(xs, ys)):
                return h
        j = 0
        while j < len(idx):
            idx[j] += 1
            if idx[j] < len(cosets[j]):
                break
            idx[j] = 0
            j += 1
        if j == len(idx):
            return None


class Elevation:
    """A conjugacy class of nontrivial K cap <c>^f; the generator is
    conjugate to c^length."""

    __slots__ = ("generator", "length")

    def __init__(self, generator: Word, length: int):
        self.generator = generator
        self.length = length

    def __repr__(self):
        return f"Elevation(len={self.length})"


def elevations(k: CoreGraph, c: Word) -> List[Elevation]:
    """Elevations of <c> to the finite-index subgroup K; their lengths
    sum to the index."""
    if k.base is None:
        raise ValueError("needs a based graph")
    if not is_finite_index(k):
        raise ValueError("subgroup is not of finite index")
    c = reduce_word(c)
    if not c:
        raise ValueError("c must be nontrivial")
    seen: Set[int] = set()
    out = []
    for v in range(k.nv):
        if v in seen:
            continue
        orbit = [v]
        cur = k.trace(v, c)
        while cur != v:
            orbit.append(cur)
            cur = k.trace(cur, c)
        ell = len(orbit)
        seen.update(orbit)
        p = k.path_word(k.base, v)
        out.append(Elevation(mul(p, wpow(c, ell), inv(p)), ell))
    return out
