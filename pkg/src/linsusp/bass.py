"""Words in the Bass group of a structural suspension splitting: reduction,
polarized normal forms, and the action of graph-of-groups automorphisms.

A Bass word alternates vertex elements and directed edge symbols.  White
vertex elements are ('v', vertex, local fiber word, t-exponent); black
ones are ('b', vertex, x-exponent, z-exponent) in the rank-2 black group.
Edge directions: +1 traverses black -> white, -1 the reverse.
"""

from __future__ import annotations

import math
from typing import Dict, List, Optional, Sequence, Tuple

from .suspension import GammaElt, Suspension, solve_power
from .words import (
    Word, EMPTY, inv, mul, reduce_word, shortlex_key, substitute, word_root,
    wpow,
)


def v_item(v: int, fiber: Word = EMPTY, texp: int = 0):
    return ('v', v, reduce_word(fiber), texp)


def black_item(v: int, xexp: int = 0, zexp: int = 0):
    return ('b', v, xexp, zexp)


def e_item(eid: int, direction: int):
    return ('e', eid, direction)


class BassWord:
    """Alternating word g0 e1 g1 ... en gn in the Bass group."""

    __slots__ = ("s", "base", "items")

    def __init__(self, s: Suspension, base: int, items: Sequence):
        self.s = s
        self.base = base
        self.items = tuple(items)

    def path(self) -> Tuple[Tuple[int, int], ...]:
        return tuple((it[1], it[2]) for it in self.items if it[0] == 'e')

    def syllable_length(self) -> int:
        return sum(1 for it in self.items if it[0] == 'e')

    def __eq__(self, other):
        return (isinstance(other, BassWord) and self.base == other.base
                and self.items == other.items)

    def __hash__(self):
        return hash((self.base, self.items))

    def __repr__(self):
        return f"BassWord(base={self.base}, {list(self.items)})"


def _edge_end(s: Suspension, eid: int, direction: int) -> int:
    e = s.splitting.edge(eid)
    return e.white if direction == 1 else e.black


def _edge_start(s: Suspension, eid: int, direction: int) -> int:
    e = s.splitting.edge(eid)
    return e.black if direction == 1 else e.white


def _trivial_slot(s: Suspension, v: int):
    return v_item(v) if s.splitting.is_white(v) else black_item(v)


def check_types(w: BassWord) -> None:
    cur = w.base
    expect_vertex = True
    for it in w.items:
        if it[0] in 'vb':
            if not expect_vertex:
                raise ValueError("two vertex elements in a row")
            if it[1] != cur:
                raise ValueError("vertex element at the wrong vertex")
            if (it[0] == 'v') != w.s.splitting.is_white(it[1]):
                raise ValueError("vertex element kind does not match color")
            expect_vertex = False
        else:
            (_, eid, d) = it
            if _edge_start(w.s, eid, d) != cur:
                raise ValueError("edge does not start at the current vertex")
            cur = _edge_end(w.s, eid, d)
            expect_vertex = True
    if cur != w.base:
        raise ValueError("word is not a loop at its base")


def _merge_runs(s: Suspension, base: int, items: Sequence) -> List:
    """Normalize to strict alternation: merge adjacent vertex elements and
    insert trivial slots around edge symbols."""
    out: List = []
    cur = base
    for it in items:
        if it[0] in 'vb':
            if it[1] != cur:
                raise ValueError("vertex element at the wrong vertex")
            if out and out[-1][0] in 'vb':
                prev = out[-1]
                if prev[0] == 'v' and it[0] == 'v':
                    out[-1] = ('v', cur, mul(prev[2], it[2]), prev[3] + it[3])
                elif prev[0] == 'b' and it[0] == 'b':
                    out[-1] = ('b', cur, prev[2] + it[2], prev[3] + it[3])
                else:
                    raise ValueError("slot kind does not match vertex color")
            else:
                out.append(it)
        else:
            if not out or out[-1][0] == 'e':
                out.append(_trivial_slot(s, cur))
            out.append(it)
            cur = _edge_end(s, it[1], it[2])
    if not out or out[-1][0] == 'e':
        out.append(_trivial_slot(s, cur))
    return out


def _into_black(s: Suspension, eid: int, fiber: Word, texp: int
                ) -> Optional[Tuple[int, int]]:
    """Express a white element through edge eid at the black end, if it
    lies in the edge image <c_e, c_e^m t_w>: (x-exp, z-exp) or None."""
    e = s.splitting.edge(eid)
    glob = s.splitting.to_global(e.white, fiber)
    c = s.c_global(eid)
    try:
        p = solve_power(c, glob)
    except ValueError:
        return None
    return (p - s.m_exp[eid] * texp, texp)


def _out_of_black(s: Suspension, eid: int, xexp: int, zexp: int
                  ) -> Tuple[Word, int]:
    """Local white image of a black element (x-exp, z-exp) through eid."""
    e = s.splitting.edge(eid)
    m = s.m_exp[eid]
    return (wpow(e.cword, xexp + m * zexp), zexp)


def reduce_bass(w: BassWord) -> BassWord:
    """Remove pinches and migrate black slot content rightward so that
    every abelian slot is trivial."""
    s = w.s
    items = _merge_runs(s, w.base, list(w.items))
    changed = True
    while changed:
        changed = False
        for i in range(len(items)):
            if items[i][0] != 'e':
                continue
            if i + 2 >= len(items):
                break
            a, g, b = items[i], items[i + 1], items[i + 2]
            if b[0] != 'e' or a[1] != b[1] or a[2] != -b[2]:
                continue
            eid, d = a[1], a[2]
            if d == 1:
                res = _into_black(s, eid, g[2], g[3])
                if res is None:
                    continue
                mid = black_item(_edge_start(s, eid, 1), *res)
            else:
                f, k = _out_of_black(s, eid, g[2], g[3])
                mid = ('v', _edge_start(s, eid, -1), f, k)
            items = _merge_runs(s, w.base, items[:i] + [mid] + items[i + 3:])
            changed = True
            break
        if changed:
            continue
        for i in range(len(items)):
            it = items[i]
            if it[0] == 'b' and (it[2] or it[3]) and i + 1 < len(items):
                nxt = items[i + 1]
                if nxt[0] != 'e' or nxt[2] != 1:
                    raise AssertionError("black slot not followed by an out-edge")
                f, k = _out_of_black(s, nxt[1], it[2], it[3])
                e = s.splitting.edge(nxt[1])
                rest = items[i + 2]
                merged = ('v', e.white, mul(f, rest[2]), k + rest[3])
                items = items[:i] + [black_item(it[1]), nxt, merged] \
                    + items[i + 3:]
                changed = True
                break
    return BassWord(s, w.base, items)


def to_gamma(w: BassWord) -> GammaElt:
    """Collapse along the spanning tree to an element of the suspension."""
    s = w.s
    sp = s.splitting
    out: GammaElt = (EMPTY, 0)
    for it in w.items:
        if it[0] == 'v':
            (_, v, f, k) = it
            out = s.g_mul(out, (sp.to_global(v, f), 0))
            if k:
                out = s.g_mul(out, _pow_gamma(s, s.t_element(v), k))
        elif it[0] == 'b':
            (_, b, xe, ze) = it
            if xe:
                out = s.g_mul(out, (wpow(s.black_val(b), xe), 0))
            if ze:
                e = sp.edge(s.black_ref[b])
                out = s.g_mul(out, _pow_gamma(s, s.t_element(e.white), ze))
        else:
            (_, eid, d) = it
            if eid in sp.tree_edges:
                continue
            letter: GammaElt = ((sp.stable[eid],), 0)
            out = s.g_mul(out, letter if d == 1 else s.g_inv(letter))
    return out


def _pow_gamma(s: Suspension, x: GammaElt, n: int) -> GammaElt:
    out: GammaElt = (EMPTY, 0)
    step = x if n >= 0 else s.g_inv(x)
    for _ in range(abs(n)):
        out = s.g_mul(out, step)
    return out


def letter_loops(s: Suspension) -> Dict[int, List]:
    """Bass loop items at the base for each global letter."""
    sp = s.splitting
    out: Dict[int, List] = {}
    for letter, v in sp.fresh_owner.items():
        loc = next(l + 1 for l in range(sp.white_ranks[v])
                   if sp.iota[v][l] == (letter,))
        path = sp.tree_path(v)
        seq: List = [e_item(e.eid, d) for (e, d) in path]
        seq.append(v_item(v, (loc,)))
        seq.extend(e_item(e.eid, -d) for (e, d) in reversed(path))
        out[letter] = seq
    for eid, letter in sp.stable.items():
        e = sp.edge(eid)
        seq = [e_item(te.eid, d) for (te, d) in sp.tree_path(e.black)]
        seq.append(e_item(eid, 1))
        seq.extend(e_item(te.eid, -d)
                   for (te, d) in reversed(sp.tree_path(e.white)))
        out[letter] = seq
    return out


def from_gamma(s: Suspension, x: GammaElt) -> BassWord:
    """A Bass loop at the splitting base evaluating to x."""
    sp = s.splitting
    b = sp.base
    loops = letter_loops(s)
    items: List = []
    (f, k) = x
    for letter in f:
        seq = loops[abs(letter)]
        items.extend(seq if letter > 0 else _invert_items(s, seq))
    if k:
        items.append(('v', b, EMPTY, k))
    return reduce_bass(BassWord(s, b, _merge_runs(s, b, items)))


def _invert_items(s: Suspension, seq: Sequence) -> List:
    out = []
    for it in reversed(seq):
        if it[0] == 'v':
            out.append(('v', it[1], inv(it[2]), -it[3]))
        elif it[0] == 'b':
            out.append(('b', it[1], -it[2], -it[3]))
        else:
            out.append(('e', it[1], -it[2]))
    return out


def bass_inv(w: BassWord) -> BassWord:
    return reduce_bass(BassWord(w.s, w.base, _invert_items(w.s, w.items)))


def bass_mul(a: BassWord, b: BassWord) -> BassWord:
    assert a.base == b.base
    return reduce_bass(BassWord(a.s, a.base, list(a.items) + list(b.items)))


# -- polarized normal forms -------------------------------------------------------


class PolarizedNF:
    """Canonical data of a loop polarized by an edge at its base: X-path,
    double coset representatives at the white slots, exponent vector,
    abscissa."""

    __slots__ = ("base", "pol", "path", "dcr", "pow", "abscissa")

    def __init__(self, base, pol, path, dcr, powvec, abscissa):
        self.base = base
        self.pol = pol
        self.path = tuple(path)
        self.dcr = tuple(dcr)
        self.pow = tuple(powvec)
        self.abscissa = abscissa

    def key(self):
        return (self.base, self.pol, self.path, self.dcr, self.pow)

    def __eq__(self, other):
        return isinstance(other, PolarizedNF) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return (f"PolarizedNF(pol={self.pol}, path={self.path}, "
                f"dcr={self.dcr}, pow={self.pow}, abscissa={self.abscissa})")


def dc_minimal(f: Word, cin: Word, cout: Word) -> Tuple[Word, int, int]:
    """Split f = cin^dl * rep * cout^dr with rep shortlex-minimal in the
    double coset and (dl, dr) canonical (degenerate cosets normalized)."""
    if not cin or not cout:
        raise ValueError("edge elements must be nontrivial")
    best = None
    bound_i = (2 * len(f)) // len(cin) + 4
    bound_j = (2 * len(f)) // len(cout) + 4
    for i in range(-bound_i, bound_i + 1):
        left = wpow(cin, -i)
        for j in range(-bound_j, bound_j + 1):
            cand = mul(left, f, wpow(cout, -j))
            k = (shortlex_key(cand), abs(i), i < 0, abs(j), j < 0)
            if best is None or k < best[0]:
                best = (k, cand, i, j)
    _, rep, dl, dr = best
    # canonicalize when the coset is degenerate:
    # rep^-1 cin^m0 rep = cout^shift
    x = mul(inv(rep), cin, rep)
    rx, kx = word_root(x)
    ry, ky = word_root(cout)
    m0 = None
    if ry and (rx == ry or rx == inv(ry)):
        m0 = ky // math.gcd(kx, ky)
        if (kx * m0) % ky:
            m0 = None
    if m0:
        sign = 1 if rx == ry else -1
        shift = (kx * m0 // ky) * sign
        dl2 = dl % m0
        steps = (dl - dl2) // m0
        dl, dr = dl2, dr + steps * shift
    return rep, dl, dr


def normal_form(w: BassWord, pol: int) -> PolarizedNF:
    """Polarized normal form of a loop at a white base; pol is an edge
    whose white end is the base."""
    s = w.s
    sp = s.splitting
    b = w.base
    if not sp.is_white(b):
        raise ValueError("base must be white")
    if sp.edge(pol).white != b:
        raise ValueError("polarizing edge must touch the base")
    w = reduce_bass(w)
    check_types(w)
    path = [(it[1], it[2]) for it in w.items if it[0] == 'e']
    slots = [[it[1], it[2], it[3]] for it in w.items if it[0] == 'v']
    for it in w.items:
        if it[0] == 'b' and (it[2] or it[3]):
            raise AssertionError("reduction left a nontrivial black slot")
    n = len(path)
    if n % 2:
        raise ValueError("odd path length in a bipartite loop")
    nslots = len(slots)
    assert nslots == n // 2 + 1
    info = []
    for idx in range(nslots):
        e_in = pol if idx == 0 else path[2 * idx - 1][0]
        e_out = pol if idx == nslots - 1 else path[2 * idx][0]
        info.append([slots[idx][0], slots[idx][1], slots[idx][2], e_in, e_out])
    # migrate t-exponents rightward; the last slot's exponent is the abscissa
    abscissa = 0
    for idx, slot in enumerate(info):
        v, f, k, e_in, e_out = slot
        if idx == nslots - 1:
            abscissa = k
            slot[2] = 0
            continue
        if k == 0:
            continue
        slot[1] = mul(f, wpow(sp.edge(e_out).cword, -s.m_exp[e_out] * k))
        slot[2] = 0
        nxt = info[idx + 1]
        nxt[1] = mul(wpow(sp.edge(nxt[3]).cword, s.m_exp[nxt[3]] * k), nxt[1])
        nxt[2] += k
    # double coset reduction, pushing right-coset exponents rightward
    dcr: List[Word] = []
    powvec: List[int] = []
    carry = 0
    for idx, slot in enumerate(info):
        v, f, k, e_in, e_out = slot
        cin = sp.edge(e_in).cword
        cout = sp.edge(e_out).cword
        f = mul(wpow(cin, carry), f)
        rep, dl, dr = dc_minimal(f, cin, cout)
        dcr.append(rep)
        powvec.append(dl)
        if idx == nslots - 1:
            powvec.append(dr)
        else:
            carry = dr
    powvec.append(abscissa)
    return PolarizedNF(b, pol, path, dcr, powvec, abscissa)


def nf_reassemble(s: Suspension, nf: PolarizedNF) -> BassWord:
    """Rebuild the loop from its polarized normal form."""
    sp = s.splitting
    items: List = []
    n = len(nf.path)
    nslots = n // 2 + 1
    for idx in range(nslots):
        e_in = nf.pol if idx == 0 else nf.path[2 * idx - 1][0]
        e_out = nf.pol if idx == nslots - 1 else nf.path[2 * idx][0]
        v = sp.edge(e_in).white
        f = mul(wpow(sp.edge(e_in).cword, nf.pow[idx]), nf.dcr[idx])
        k = 0
        if idx == nslots - 1:
            f = mul(f, wpow(sp.edge(e_out).cword, nf.pow[nslots]))
            k = nf.abscissa
        items.append(('v', v, f, k))
        if idx < nslots - 1:
            items.append(e_item(*nf.path[2 * idx]))
            items.append(e_item(*nf.path[2 * idx + 1]))
    return reduce_bass(BassWord(s, nf.base, items))


# -- graph-of-groups automorphisms ---------------------------------------------


class GOGAutomorphism:
    """Fiber-and-orientation-preserving automorphism data of a structural
    splitting (optionally into a second splitting over the same graph).

    vertex_maps: local fiber images per white vertex (t_v -> t_v').
    black_maps: 2x2 integer matrices acting on (x, z), last row (0, 1)
    and corner +-1 for orientation preservation.
    gammas: per edge direction (eid, dir): the twisting element in the
    target-end vertex group: (fiber word, t-exp) at whites, (x-exp, z-exp)
    at blacks.  Edge symbols map by e_d -> gamma_opp(d) * e'_d * gamma_d^-1.
    """

    def __init__(self, s: Suspension,
                 graph_v: Optional[Dict[int, int]] = None,
                 graph_e: Optional[Dict[int, int]] = None,
                 vertex_maps: Optional[Dict[int, Sequence[Word]]] = None,
                 black_maps: Optional[Dict[int, Sequence[Sequence[int]]]] = None,
                 gammas: Optional[Dict[Tuple[int, int], Tuple]] = None,
                 target: Optional[Suspension] = None,
                 inv_vertex_maps: Optional[Dict[int, Sequence[Word]]] = None):
        sp = s.splitting
        self.s = s
        self.target = target if target is not None else s
        self.inv_vertex_maps = None
        if inv_vertex_maps is not None:
            self.inv_vertex_maps = {v: [reduce_word(w) for w in ws]
                                    for v, ws in inv_vertex_maps.items()}
        self.graph_v = dict(graph_v) if graph_v else \
            {v: v for v in list(sp.white_ranks) + list(sp.blacks)}
        self.graph_e = dict(graph_e) if graph_e else \
            {e.eid: e.eid for e in sp.edges}
        self.vertex_maps: Dict[int, List[Word]] = {}
        for v in sp.white_ranks:
            if vertex_maps and v in vertex_maps:
                self.vertex_maps[v] = [reduce_word(w) for w in vertex_maps[v]]
            else:
                self.vertex_maps[v] = [(l + 1,) for l in range(sp.white_ranks[v])]
        self.black_maps = {}
        for b in sp.blacks:
            if black_maps and b in black_maps:
                self.black_maps[b] = [list(r) for r in black_maps[b]]
            else:
                self.black_maps[b] = [[1, 0], [0, 1]]
        self.gammas: Dict[Tuple[int, int], Tuple] = {}
        for e in sp.edges:
            for d in (1, -1):
                g = (gammas or {}).get((e.eid, d))
                if g is None:
                    g = (EMPTY, 0) if d == 1 else (0, 0)
                self.gammas[(e.eid, d)] = g
        if self.inv_vertex_maps is None:
            idt = True
            for v in sp.white_ranks:
                if any(self.vertex_maps[v][l] != (l + 1,)
                       for l in range(sp.white_ranks[v])):
                    idt = False
                    break
            if idt:
                self.inv_vertex_maps = {
                    v: [(l + 1,) for l in range(sp.white_ranks[v])]
                    for v in sp.white_ranks}

    def inverted(self) -> "GOGAutomorphism":
        """Inverse of a graph-trivial automorphism (needs certified inverse
        vertex maps)."""
        assert self.is_graph_trivial()
        if self.inv_vertex_maps is None:
            raise ValueError("no inverse vertex maps recorded")
        sp = self.s.splitting
        inv_black = {}
        for b, m in self.black_maps.items():
            a, c = m[0][0], m[0][1]
            inv_black[b] = [[a, -a * c], [0, 1]]
        inv_gammas = {}
        for e in sp.edges:
            g = self.gammas[(e.eid, 1)]
            inv_gammas[(e.eid, 1)] = (
                substitute(inv(reduce_word(g[0])),
                           self.inv_vertex_maps[e.white]), -g[1])
            gb = self.gammas[(e.eid, -1)]
            mb = inv_black[e.black]
            inv_gammas[(e.eid, -1)] = (
                -(mb[0][0] * gb[0] + mb[0][1] * gb[1]),
                -(mb[1][0] * gb[0] + mb[1][1] * gb[1]))
        return GOGAutomorphism(self.s, None, None, self.inv_vertex_maps,
                               inv_black, inv_gammas,
                               inv_vertex_maps=self.vertex_maps)

    def is_graph_trivial(self) -> bool:
        return (all(k == v for k, v in self.graph_v.items())
                and all(k == v for k, v in self.graph_e.items())
                and self.target is self.s)

    def gamma_item(self, eid: int, d: int):
        g = self.gammas[(eid, d)]
        e = self.target.splitting.edge(self.graph_e[eid])
        if d == 1:
            return ('v', e.white, reduce_word(g[0]), g[1])
        return ('b', e.black, g[0], g[1])

    def apply_white(self, v: int, f: Word, k: int) -> Tuple[int, Word, int]:
        return (self.graph_v[v], substitute(f, self.vertex_maps[v]), k)

    def apply_black(self, b: int, xe: int, ze: int) -> Tuple[int, int, int]:
        m = self.black_maps[b]
        return (self.graph_v[b], m[0][0] * xe + m[0][1] * ze,
                m[1][0] * xe + m[1][1] * ze)

    def apply(self, w: BassWord) -> BassWord:
        out: List = []
        for it in w.items:
            if it[0] == 'v':
                tv, nf, nk = self.apply_white(it[1], it[2], it[3])
                out.append(('v', tv, nf, nk))
            elif it[0] == 'b':
                tb, nx, nz = self.apply_black(it[1], it[2], it[3])
                out.append(('b', tb, nx, nz))
            else:
                (_, eid, d) = it
                pre = self.gamma_item(eid, -d)
                post = self.gamma_item(eid, d)
                out.append(pre)
                out.append(('e', self.graph_e[eid], d))
                out.append(_invert_items(self.target, [post])[0])
        nb = self.graph_v[w.base]
        return reduce_bass(BassWord(self.target, nb,
                                    _merge_runs(self.target, nb, out)))

    def gamma_map(self) -> Tuple[List[GammaElt], GammaElt]:
        """Induced images of the global fiber letters and of t (for
        graph-trivial automorphisms of a single suspension)."""
        s = self.s
        t = self.target
        loops = letter_loops(s)
        fibs = []
        for letter in range(1, s.rank + 1):
            bw = BassWord(s, s.splitting.base,
                          _merge_runs(s, s.splitting.base, loops[letter]))
            fibs.append(to_gamma(self.apply(bw)))
        b = s.splitting.base
        t_img = to_gamma(self.apply(BassWord(
            s, b, [('v', b, EMPTY, 1)])))
        return fibs, t_img

    def apply_gamma(self, x: GammaElt) -> GammaElt:
        fibs, t_img = self.gamma_map()
        t = self.target
        out: GammaElt = (EMPTY, 0)
        for letter in x[0]:
            im = fibs[abs(letter) - 1]
            out = t.g_mul(out, im if letter > 0 else t.g_inv(im))
        return t.g_mul(out, _pow_gamma(t, t_img, x[1]))

    def verify(self) -> bool:
        """Bass diagrams on the edge group basis, orientation included."""
        s, t = self.s, self.target
        sp, tp = s.splitting, t.splitting
        for b in self.black_maps:
            m = self.black_maps[b]
            if m[1][0] != 0 or m[1][1] != 1 or m[0][0] not in (1, -1):
                return False
        for e in sp.edges:
            te = tp.edge(self.graph_e[e.eid])
            if self.graph_v[e.black] != te.black or \
                    self.graph_v[e.white] != te.white:
                return False
            for (xe, ze) in ((1, 0), (0, 1)):
                f, k = _out_of_black(s, e.eid, xe, ze)
                tv, nf, nk = self.apply_white(e.white, f, k)
                lhs = t.g_mul((tp.to_global(tv, nf), 0),
                              _pow_gamma(t, t.t_element(tv), nk))
                _, nx, nz = self.apply_black(e.black, xe, ze)
                f2, k2 = _out_of_black(t, te.eid, nx, nz)
                base = t.g_mul((tp.to_global(te.white, f2), 0),
                               _pow_gamma(t, t.t_element(te.white), k2))
                g = self.gammas[(e.eid, 1)]
                gam = t.g_mul((tp.to_global(te.white, g[0]), 0),
                              _pow_gamma(t, t.t_element(te.white), g[1]))
                rhs = t.g_mul(t.g_inv(gam), base, gam)
                if lhs != rhs:
                    return False
        return True

    def compose_pure(self, other: "GOGAutomorphism") -> "GOGAutomorphism":
        """self after other; both must be graph-trivial on one suspension."""
        assert self.is_graph_trivial() and other.is_graph_trivial()
        s = self.s
        sp = s.splitting
        from . import zlinalg
        vmaps = {v: [substitute(w, self.vertex_maps[v])
                     for w in other.vertex_maps[v]]
                 for v in sp.white_ranks}
        bmaps = {b: zlinalg.matmul(self.black_maps[b], other.black_maps[b])
                 for b in sp.blacks}
        gammas = {}
        for e in sp.edges:
            for d in (1, -1):
                g1 = other.gammas[(e.eid, d)]
                g0 = self.gammas[(e.eid, d)]
                if d == 1:
                    img = substitute(reduce_word(g1[0]),
                                     self.vertex_maps[e.white])
                    gammas[(e.eid, d)] = (mul(img, g0[0]), g1[1] + g0[1])
                else:
                    m = self.black_maps[e.black]
                    nx = m[0][0] * g1[0] + m[0][1] * g1[1]
                    nz = m[1][0] * g1[0] + m[1][1] * g1[1]
                    gammas[(e.eid, d)] = (nx + g0[0], nz + g0[1])
        inv_vm = None
        if self.inv_vertex_maps is not None and \
                other.inv_vertex_maps is not None:
            inv_vm = {v: [substitute(w, other.inv_vertex_maps[v])
                          for w in self.inv_vertex_maps[v]]
                      for v in sp.white_ranks}
        return GOGAutomorphism(s, None, None, vmaps, bmaps, gammas,
                               inv_vertex_maps=inv_vm)


def identity_gog(s: Suspension) -> GOGAutomorphism:
    return GOGAutomorphism(s)


def twist_gog(s: Suspension, exps: Dict[int, int]) -> GOGAutomorphism:
    """The generalized Dehn twist gamma_e = c_e^exps[e] as a graph-of-groups
    automorphism of the suspension."""
    gammas = {}
    for e in s.splitting.edges:
        n = exps.get(e.eid, 0)
        gammas[(e.eid, 1)] = (wpow(e.cword, n), 0)
    return GOGAutomorphism(s, gammas=gammas)
