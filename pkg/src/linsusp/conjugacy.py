"""Conjugacy machinery in a suspension: cyclic reduction and recentering
of Bass words, short positions of hyperbolic elements, the conjugacy
decision, and enriched/centered tuples feeding the mixed Whitehead
solver.
"""

from __future__ import annotations

import math
from typing import Dict, List, Optional, Sequence, Tuple

from .bass import (
    BassWord, bass_inv, bass_mul, black_item, check_types, e_item,
    from_gamma, normal_form, reduce_bass, to_gamma, v_item,
    _invert_items, _merge_runs, _into_black, _pow_gamma,
)
from .suspension import GammaElt, Suspension
from .words import (
    Word, EMPTY, conj_witness, inv, mul, reduce_word, word_root, wpow,
)


def segment_gamma(s: Suspension, start: int, items: Sequence, end: int
                  ) -> GammaElt:
    """Value of a Bass segment from start to end, closed up through the
    spanning tree."""
    sp = s.splitting
    pre = [e_item(e.eid, d) for (e, d) in sp.tree_path(start)]
    post = [e_item(e.eid, d) for (e, d) in sp.tree_path(end)]
    seq = pre + list(items) + _invert_items(s, post)
    return to_gamma(reduce_bass(BassWord(s, sp.base,
                                         _merge_runs(s, sp.base, seq))))


def anchored_gamma(w: BassWord) -> GammaElt:
    """Value of a loop anchored at its base vertex via the spanning tree."""
    return segment_gamma(w.s, w.base, list(w.items), w.base)


def _rotate_once(w: BassWord) -> Tuple[BassWord, GammaElt]:
    """Move the base past the first edge; returns (rotated, step) with
    anchored(w) = step * anchored(rotated) * step^-1."""
    s = w.s
    items = list(w.items)
    first_e = next((i for i, it in enumerate(items) if it[0] == 'e'), None)
    if first_e is None:
        return w, (EMPTY, 0)
    prefix = items[:first_e + 1]
    rest = items[first_e + 1:]
    e = s.splitting.edge(prefix[-1][1])
    nb = e.white if prefix[-1][2] == 1 else e.black
    step = segment_gamma(s, w.base, prefix, nb)
    rotated = reduce_bass(BassWord(s, nb, _merge_runs(s, nb, rest + prefix)))
    return rotated, step


def _has_wrap_pinch(w: BassWord) -> bool:
    s = w.s
    items = list(w.items)
    edges = [it for it in items if it[0] == 'e']
    if len(edges) < 2:
        return len(edges) > 0  # a single-edge loop always rotates away
    a, b = edges[-1], edges[0]
    if a[1] != b[1] or a[2] != -b[2]:
        return False
    last_e = max(i for i, it in enumerate(items) if it[0] == 'e')
    first_e = min(i for i, it in enumerate(items) if it[0] == 'e')
    wrap = items[last_e + 1:] + items[:first_e]
    merged = None
    for it in wrap:
        if merged is None:
            merged = it
        elif it[0] == 'v':
            merged = ('v', it[1], mul(merged[2], it[2]), merged[3] + it[3])
        else:
            merged = ('b', it[1], merged[2] + it[2], merged[3] + it[3])
    if merged is None:
        return True
    if merged[0] == 'b':
        return True
    return _into_black(s, a[1], merged[2], merged[3]) is not None


def cyclic_reduce_bass(w: BassWord) -> Tuple[BassWord, GammaElt]:
    """Cyclically reduced conjugate anchored at a white vertex, with a
    conjugator c such that anchored(w) = c * anchored(core) * c^-1."""
    s = w.s
    cur = reduce_bass(w)
    check_types(cur)
    conj: GammaElt = (EMPTY, 0)
    guard = 0
    while cur.syllable_length() > 0 and _has_wrap_pinch(cur):
        nxt, step = _rotate_once(cur)
        conj = s.g_mul(conj, step)
        cur = nxt
        guard += 1
        if guard > 10000:
            raise RuntimeError("cyclic reduction did not terminate")
    if cur.syllable_length() > 0 and not s.splitting.is_white(cur.base):
        nxt, step = _rotate_once(cur)
        conj = s.g_mul(conj, step)
        cur = nxt
    return cur, conj


def translation_length(w: BassWord) -> int:
    core, _ = cyclic_reduce_bass(w)
    return core.syllable_length()


def is_elliptic(w: BassWord) -> bool:
    return translation_length(w) == 0


# -- short positions -------------------------------------------------------------


class ShortPosition:
    """A centered short conjugate: anchored at a white vertex, leading
    coset data trivial, minimal d-exponent in the fixed well-order."""

    __slots__ = ("word", "anchor", "pol", "nf", "conj")

    def __init__(self, word: BassWord, anchor: int, pol: int, nf,
                 conj: GammaElt):
        self.word = word
        self.anchor = anchor
        self.pol = pol
        self.nf = nf
        self.conj = conj

    def key(self):
        return (self.anchor, self.pol, self.nf.key())


def _z_order_key(d: int) -> Tuple[int, int]:
    # the fixed well-order on Z: 0 < 1 < -1 < 2 < -2 < ...
    return (abs(d), 0 if d >= 0 else 1)


def _conj_by_vertex(w: BassWord, fiber: Word, texp: int
                    ) -> Tuple[BassWord, GammaElt]:
    """Conjugate a loop by a vertex element u of its base group:
    returns (u^-1 w u, step) with anchored(w) = step*anchored(out)*step^-1."""
    s = w.s
    v = w.base
    kind = 'v' if s.splitting.is_white(v) else 'b'
    assert kind == 'v'
    u = ('v', v, reduce_word(fiber), texp)
    uin = ('v', v, inv(reduce_word(fiber)), -texp)
    out = reduce_bass(BassWord(s, v, _merge_runs(
        s, v, [uin] + list(w.items) + [u])))
    step = segment_gamma(s, v, [u], v)
    return out, step


def short_positions(w: BassWord) -> List["ShortPosition"]:
    """All centered short positions of a hyperbolic element; at most
    translation_length / 2 of them."""
    s = w.s
    core, c0 = cyclic_reduce_bass(w)
    n = core.syllable_length()
    if n == 0:
        raise ValueError("element is elliptic")
    out: Dict[object, ShortPosition] = {}
    cur, conj = core, c0
    for _ in range(n // 2):
        pos = _center_at_anchor(cur, conj)
        if pos is not None and pos.key() not in out:
            out[pos.key()] = pos
        nxt, step1 = _rotate_once(cur)
        nxt2, step2 = _rotate_once(nxt)
        conj = s.g_mul(conj, step1, step2)
        cur = nxt2
    return list(out.values())


def _center_at_anchor(core: BassWord, conj: GammaElt
                      ) -> Optional[ShortPosition]:
    s = core.s
    sp = s.splitting
    v = core.base
    first = next(it for it in core.items if it[0] == 'e')
    if first[2] != -1:
        return None
    pol = first[1]
    nf = normal_form(core, pol)
    cin = sp.edge(pol).cword
    # kill the leading coset data
    w1, st1 = _conj_by_vertex(core, mul(wpow(cin, nf.pow[0]), nf.dcr[0]), 0)
    conj = s.g_mul(conj, st1)
    # residual conjugations come from the edge image, generated by (c, 0)
    # and (c^m, 1); their action on exponent vectors is linear, so clear
    # pow[0] and pow[1] and take the z-order lexicographic minimum after
    m_pol = s.m_exp[pol]
    gens = [(cin, 0), (wpow(cin, m_pol), 1)]
    nf1 = normal_form(w1, pol)
    base = list(nf1.pow)
    shifts = []
    for (fw, te) in gens:
        probe, _ = _conj_by_vertex(w1, fw, te)
        nfx = normal_form(probe, pol)
        if nfx.dcr != nf1.dcr or nfx.path != nf1.path:
            return None
        shifts.append([x - y for x, y in zip(nfx.pow, nf1.pow)])
    combo = _pow_normalize(base, shifts)
    if combo is None:
        return None
    w2 = w1
    for cnt, (fw, te) in zip(combo, gens):
        if cnt:
            w2, st = _conj_by_vertex(w2, wpow(fw, cnt), te * cnt)
            conj = s.g_mul(conj, st)
    nf2 = normal_form(w2, pol)
    if nf2.pow[0] != 0 or nf2.dcr[0] or nf2.pow[1] != 0:
        return None
    return ShortPosition(w2, v, pol, nf2, conj)


def _pow_normalize(base: List[int], shifts: List[List[int]]
                   ) -> Optional[List[int]]:
    """Exponents (one per shift vector) making base + combination have
    zero first two coordinates and the z-order lexicographic minimum on
    the rest; None when the first two cannot be cleared."""
    n = len(shifts)
    origin = [0] * n
    lattice = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def coord(combo: List[int], j: int) -> int:
        return base[j] + sum(combo[i] * shifts[i][j] for i in range(n))

    def move(direction: List[int], j: int) -> int:
        return sum(direction[i] * shifts[i][j] for i in range(n))

    for j in range(len(base)):
        dirs = [move(vec, j) for vec in lattice]
        g = 0
        for d in dirs:
            g = math.gcd(g, abs(d))
        cur = coord(origin, j)
        if j in (0, 1):
            if g == 0:
                if cur != 0:
                    return None
                continue
            if cur % g:
                return None
            target = 0
        else:
            if g == 0:
                continue
            target = min((cur % g, cur % g - g), key=_z_order_key)
        coeffs = _express_in_gcd(dirs, target - cur)
        assert coeffs is not None
        for k, c in enumerate(coeffs):
            if c:
                origin = [origin[i] + c * lattice[k][i] for i in range(n)]
        lattice = _kernel_sublattice(lattice, dirs)
        if not lattice:
            break
    return origin


def _express_in_gcd(vals: List[int], need: int) -> Optional[List[int]]:
    """Coefficients with sum(c_i * vals_i) = need, via iterated Bezout."""
    out = [0] * len(vals)
    g, combo = 0, [0] * len(vals)
    for i, v in enumerate(vals):
        if v == 0:
            continue
        if g == 0:
            g = abs(v)
            combo = [0] * len(vals)
            combo[i] = 1 if v > 0 else -1
        else:
            x, y = _bezout(g, v)
            combo = [x * c for c in combo]
            combo[i] += y
            g = x * g + y * v
            if g < 0:
                g = -g
                combo = [-c for c in combo]
    if g == 0:
        return out if need == 0 else None
    if need % g:
        return None
    return [c * (need // g) for c in combo]


def _kernel_sublattice(lattice: List[List[int]], dirs: List[int]
                       ) -> List[List[int]]:
    """Basis of the sublattice of combinations of the given lattice rows
    whose dirs-weighted sum vanishes."""
    out = []
    pivot = None
    for d, vec in zip(dirs, lattice):
        if d == 0:
            out.append(vec[:])
            continue
        if pivot is None:
            pivot = (d, vec)
            continue
        pd, pv = pivot
        g = math.gcd(abs(pd), abs(d))
        out.append([(d // g) * a - (pd // g) * b for a, b in zip(pv, vec)])
    return [v for v in out if any(v)]


def _bezout(a: int, b: int) -> Tuple[int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    g, r = a, b
    while r:
        q = g // r
        g, r = r, g - q * r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return (x0, y0)


# -- elliptic positions ------------------------------------------------------------


def elliptic_vertex_form(w: BassWord) -> Tuple[int, Tuple, GammaElt]:
    """(vertex, slot item, conjugator) for an elliptic element."""
    core, c = cyclic_reduce_bass(w)
    if core.syllable_length() != 0:
        raise ValueError("element is hyperbolic")
    return core.base, core.items[0], c


def _conj_into_cyclic(f: Word, c: Word) -> Optional[Tuple[int, Word]]:
    """(p, u) with u^-1 f u = c^p, or None."""
    if not f:
        return (0, EMPTY)
    r, k = word_root(f)
    rc, kc = word_root(c)
    w = conj_witness(r, rc)
    if w is not None:
        return (k // kc, w) if k % kc == 0 else None
    w = conj_witness(r, inv(rc))
    if w is not None:
        return (-(k // kc), w) if k % kc == 0 else None
    return None


def _stable_gamma(s: Suspension, eid: int) -> Optional[GammaElt]:
    sp = s.splitting
    if eid in sp.tree_edges:
        return None
    return ((sp.stable[eid],), 0)


def _edge_positions(s: Suspension, v: int, item
                    ) -> List[Tuple[int, int, int, GammaElt]]:
    """Black-side positions (black, x-exp, z-exp, conjugator c) of a
    vertex element: c^-1 (anchored element) c = anchored black value."""
    sp = s.splitting
    if item[0] == 'b':
        return [(item[1], item[2], item[3], (EMPTY, 0))]
    (_, _, f, k) = item
    glob = sp.to_global(v, f)
    out = []
    for e in sp.edges_at_white(v):
        got = _conj_into_cyclic(glob, s.c_global(e.eid))
        if got is None:
            continue
        p, u = got
        c: GammaElt = (u, 0)
        letter = _stable_gamma(s, e.eid)
        if letter is not None:
            # crossing white -> black along a non-tree edge re-anchors
            c = s.g_mul(c, s.g_inv(letter))
        out.append((e.black, p - s.m_exp[e.eid] * k, k, c))
    return out


def _transport_positions(s: Suspension, start: List, max_hops: int = 4
                         ) -> List[Tuple[int, int, int, GammaElt]]:
    """Black positions reachable by edge transports of length <= max_hops.
    Only centralizer elements cross white vertices (distinct edge images
    are non-conjugate there)."""
    sp = s.splitting
    seen: Dict[Tuple[int, int, int], GammaElt] = {}
    frontier: List[Tuple[Tuple[int, int, int], GammaElt, int]] = []
    for (b, xe, ze, c) in start:
        key = (b, xe, ze)
        if key not in seen:
            seen[key] = c
            frontier.append((key, c, 0))
    qi = 0
    while qi < len(frontier):
        (b, xe, ze), c, hops = frontier[qi]
        qi += 1
        if hops + 2 > max_hops:
            continue
        for e in sp.edges_at_black(b):
            if xe + s.m_exp[e.eid] * ze != 0:
                continue  # fiber part survives: cannot cross the white vertex
            c1 = c
            letter = _stable_gamma(s, e.eid)
            if letter is not None:
                c1 = s.g_mul(c1, letter)  # black -> white across a non-tree edge
            w = e.white
            for f in sp.edges_at_white(w):
                if f.eid == e.eid:
                    continue
                c2 = c1
                letter2 = _stable_gamma(s, f.eid)
                if letter2 is not None:
                    c2 = s.g_mul(c2, s.g_inv(letter2))
                key2 = (f.black, -s.m_exp[f.eid] * ze, ze)
                if key2 in seen:
                    continue
                seen[key2] = c2
                frontier.append((key2, c2, hops + 2))
    return [(b, xe, ze, c) for (b, xe, ze), c in seen.items()]


def _black_anchored_value(s: Suspension, b: int, xe: int, ze: int) -> GammaElt:
    return anchored_gamma(BassWord(s, b, [black_item(b, xe, ze)]))


def conjugate_elements(s: Suspension, g: GammaElt, h: GammaElt
                       ) -> Optional[GammaElt]:
    """A conjugator x with x^-1 g x = h in the suspension, or None."""
    if g[1] != h[1]:
        return None
    wg = from_gamma(s, g)
    wh = from_gamma(s, h)
    tg, th = translation_length(wg), translation_length(wh)
    if tg != th:
        return None
    if tg > 0:
        sh = {p.key(): p for p in short_positions(wh)}
        for pg in short_positions(wg):
            ph = sh.get(pg.key())
            if ph is None:
                continue
            x = s.g_mul(pg.conj, s.g_inv(ph.conj))
            if s.g_mul(s.g_inv(x), g, x) == h:
                return x
        return None
    vg, ig, cg = elliptic_vertex_form(wg)
    vh, ih, ch = elliptic_vertex_form(wh)
    if vg == vh:
        x0 = _same_vertex_conj(s, vg, ig, ih)
        if x0 is not None:
            x = s.g_mul(cg, x0, s.g_inv(ch))
            if s.g_mul(s.g_inv(x), g, x) == h:
                return x
    pos_g = _transport_positions(s, _edge_positions(s, vg, ig))
    pos_h = {(b, xe, ze): c
             for (b, xe, ze, c) in
             _transport_positions(s, _edge_positions(s, vh, ih))}
    for (b, xe, ze, c) in pos_g:
        c2 = pos_h.get((b, xe, ze))
        if c2 is None:
            continue
        x = s.g_mul(cg, c, s.g_inv(c2), s.g_inv(ch))
        if s.g_mul(s.g_inv(x), g, x) == h:
            return x
    return None


def _same_vertex_conj(s: Suspension, v: int, ig, ih) -> Optional[GammaElt]:
    if ig[0] != ih[0]:
        return None
    if ig[0] == 'b':
        return (EMPTY, 0) if (ig[2], ig[3]) == (ih[2], ih[3]) else None
    if ig[3] != ih[3]:
        return None
    sp = s.splitting
    loc = conj_witness(reduce_word(ig[2]), reduce_word(ih[2]))
    if loc is None:
        return None
    return (sp.to_global(v, loc), 0)


_BALL_CACHE: Dict[Tuple[int, int], List[Word]] = {}


def _word_ball(rank: int, max_len: int) -> List[Word]:
    key = (rank, max_len)
    if key not in _BALL_CACHE:
        letters = [x for l in range(1, rank + 1) for x in (l, -l)]
        ball = [EMPTY]
        frontier = [EMPTY]
        for _ in range(max_len):
            nxt = []
            for w in frontier:
                for x in letters:
                    if w and w[-1] == -x:
                        continue
                    nxt.append(w + (x,))
            ball.extend(nxt)
            frontier = nxt
        _BALL_CACHE[key] = ball
    return _BALL_CACHE[key]


def _abelianize(w: Word, rank: int) -> List[int]:
    out = [0] * rank
    for x in w:
        out[abs(x) - 1] += 1 if x > 0 else -1
    return out


def oracle_conjugate(s: Suspension, g: GammaElt, h: GammaElt,
                     max_len: int = 6, max_t: int = 6) -> Optional[GammaElt]:
    """Brute-force conjugator search over (f, k) with |f| <= max_len and
    |k| <= max_t: the independent oracle for the conjugacy decision.

    Whole k-slices are rejected by exact necessary conditions (fiber
    conjugacy for abscissa zero, abelianized solvability otherwise)
    before the ball is scanned.
    """
    from . import zlinalg
    from .gog import abelianization_matrix
    from .words import canonical_cyclic
    if g[1] != h[1]:
        return None
    rank = s.rank
    ball = _word_ball(rank, max_len)
    m = g[1]
    if m != 0:
        a_fwd = abelianization_matrix(s.alpha, rank)
        a_bwd = abelianization_matrix(s.alpha_inv, rank)
        a_minus_m = zlinalg.mat_pow(a_bwd if m > 0 else a_fwd, abs(m))
        shift = [[a_minus_m[i][j] - (1 if i == j else 0) for j in range(rank)]
                 for i in range(rank)]
        u_ab = _abelianize(g[0], rank)
    for k in range(-max_t, max_t + 1):
        target = s.alpha_pow(h[0], -k)
        if m == 0:
            # plain fiber conjugacy after untwisting by alpha^k
            if canonical_cyclic(g[0]) != canonical_cyclic(target):
                continue
        else:
            diff = [a - b for a, b in zip(_abelianize(target, rank), u_ab)]
            if zlinalg.lattice_member(diff, shift) is None:
                continue
        for f in ball:
            x = (f, k)
            if s.g_mul(s.g_inv(x), g, x) == h:
                return x
    return None


# -- enriched and centered tuples ----------------------------------------------------


class CenteredTuple:
    """Enriched tuple carried to its central vertex."""

    __slots__ = ("kind", "entries", "vertex", "pol", "conj")

    def __init__(self, kind: str, entries: Sequence[BassWord], vertex: int,
                 pol: Optional[int], conj: GammaElt):
        self.kind = kind
        self.entries = tuple(entries)
        self.vertex = vertex
        self.pol = pol
        self.conj = conj


def classify_tuple(s: Suspension, elems: Sequence[GammaElt]
                   ) -> Tuple[str, List[GammaElt]]:
    """Kind ('elliptic' | 'lineal' | 'hyperbolic') and the enriched tuple
    (g0, g1, g2, ..., gr)."""
    if not elems:
        raise ValueError("empty tuple")
    ell = [translation_length(from_gamma(s, x)) == 0 for x in elems]
    g0: Optional[GammaElt] = None
    if all(ell):
        for i in range(len(elems)):
            for j in range(i + 1, len(elems)):
                prod = s.g_mul(elems[i], elems[j])
                if translation_length(from_gamma(s, prod)) > 0:
                    g0 = prod
                    break
            if g0 is not None:
                break
        if g0 is None:
            return "elliptic", [elems[0], elems[0]] + list(elems)
    else:
        g0 = elems[next(i for i, e in enumerate(ell) if not e)]
    noncomm = None
    for i, x in enumerate(elems):
        if s.g_mul(x, g0) != s.g_mul(g0, x):
            noncomm = i
            break
    if noncomm is None:
        return "lineal", [g0, g0] + list(elems)
    g1 = s.g_conj(g0, elems[noncomm])
    return "hyperbolic", [g0, g1] + list(elems)


def centered_tuples(s: Suspension, elems: Sequence[GammaElt]
                    ) -> List[CenteredTuple]:
    """All centered forms of the enriched tuple (one per short position of
    the leading entry; ellipitic tuples give the centering and its
    bounded-loop variations)."""
    kind, enriched = classify_tuple(s, elems)
    if kind == "elliptic":
        return _centered_elliptic(s, enriched)
    out = []
    w0 = from_gamma(s, enriched[0])
    for pos in short_positions(w0):
        c = pos.conj
        entries = [s.g_mul(s.g_inv(c), x, c) for x in enriched]
        if kind == "hyperbolic":
            entries, extra = _normalize_second(s, entries)
            c = s.g_mul(c, extra)
        bass_entries = [_rebase(s, pos.anchor, y) for y in entries]
        out.append(CenteredTuple(kind, bass_entries, pos.anchor, pos.pol, c))
    return out


def _normalize_second(s: Suspension, entries: List[GammaElt]
                      ) -> Tuple[List[GammaElt], GammaElt]:
    """Conjugate the whole tuple by the power of the leading entry that
    minimizes the second entry's syllable length (the leading entry is
    fixed by this)."""
    g0, g1 = entries[0], entries[1]

    def syl(k: int) -> int:
        return from_gamma(s, s.g_conj(g1, _pow_gamma(s, g0, k))
                          ).syllable_length()

    best_k, best = 0, syl(0)
    improved = True
    while improved:
        improved = False
        for step in (1, -1):
            kk = best_k + step
            v = syl(kk)
            if v < best:
                best, best_k = v, kk
                improved = True
    conj = _pow_gamma(s, g0, best_k)
    return [s.g_conj(x, conj) for x in entries], conj


def _rebase(s: Suspension, anchor: int, x: GammaElt) -> BassWord:
    """Express x as a Bass loop at the anchor vertex."""
    sp = s.splitting
    w = from_gamma(s, x)
    path_items = [e_item(e.eid, d) for (e, d) in sp.tree_path(anchor)]
    items = _invert_items(s, path_items) + list(w.items) + path_items
    return reduce_bass(BassWord(s, anchor, _merge_runs(s, anchor, items)))


def _centered_elliptic(s: Suspension, enriched: List[GammaElt]
                       ) -> List[CenteredTuple]:
    sp = s.splitting
    lead = enriched[2] if len(enriched) > 2 else enriched[0]
    w0 = from_gamma(s, lead)
    v0, it0, c0 = elliptic_vertex_form(w0)
    candidates: List[Tuple[int, GammaElt]] = [(v0, c0)]
    for (b, xe, ze, cc) in _transport_positions(
            s, _edge_positions(s, v0, it0)):
        candidates.append((b, s.g_mul(c0, cc)))
        for e in sp.edges_at_black(b):
            c1 = s.g_mul(c0, cc)
            letter = _stable_gamma(s, e.eid)
            if letter is not None:
                c1 = s.g_mul(c1, letter)
            candidates.append((e.white, c1))
    out = []
    seen = set()
    for (v, c) in candidates:
        entries = []
        ok = True
        for x in enriched:
            y = s.g_mul(s.g_inv(c), x, c)
            bw = _vertex_member(s, v, y)
            if bw is None:
                ok = False
                break
            entries.append(bw)
        if not ok:
            continue
        key = (v, tuple(b.items for b in entries))
        if key in seen:
            continue
        seen.add(key)
        out.append(CenteredTuple("elliptic", entries, v, None, c))
    return out


def _vertex_member(s: Suspension, v: int, x: GammaElt) -> Optional[BassWord]:
    """x as a vertex element of the tree-anchored copy of X_v, or None."""
    red = _rebase(s, v, x)
    if red.syllable_length() != 0:
        return None
    return red
