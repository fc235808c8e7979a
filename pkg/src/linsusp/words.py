"""Reduced words in a finitely generated free group.

A word is a tuple of nonzero ints: +k is the k-th generator (1-based),
-k its inverse.  Serialized form uses lowercase letters for generators
and the matching uppercase letter for the inverse ('a' = 1, 'A' = -1).
All functions return freely reduced words.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence, Tuple

Word = Tuple[int, ...]

EMPTY: Word = ()


def reduce_word(letters: Iterable[int]) -> Word:
    """Freely reduce a letter sequence."""
    stack: list[int] = []
    for x in letters:
        if x == 0:
            raise ValueError("letter 0 is not a generator")
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def check_rank(w: Word, rank: int) -> None:
    for x in w:
        if not (1 <= abs(x) <= rank):
            raise ValueError(f"letter {x} out of range for rank {rank}")


def inv(w: Word) -> Word:
    return tuple(-x for x in reversed(w))


def mul(*ws: Iterable[int]) -> Word:
    out: list[int] = []
    for w in ws:
        out.extend(w)
    return reduce_word(out)


def wpow(w: Word, n: int) -> Word:
    if n == 0:
        return EMPTY
    if n < 0:
        return wpow(inv(w), -n)
    out = w
    for _ in range(n - 1):
        out = mul(out, w)
    return out


def conj(w: Word, g: Word) -> Word:
    """g^-1 w g, matching the convention f^t = t^-1 f t."""
    return mul(inv(g), w, g)


def cyclic_reduce(w: Word) -> Tuple[Word, Word]:
    """Return (core, u) with w = u * core * u^-1 and core cyclically reduced."""
    w = reduce_word(w)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j], w[:i]


def cyclic_len(w: Word) -> int:
    return len(cyclic_reduce(w)[0])


def letter_key(x: int) -> Tuple[int, int]:
    # generator index first, positive letter before its inverse
    return (abs(x), 0 if x > 0 else 1)


def shortlex_key(w: Word):
    return (len(w), tuple(letter_key(x) for x in w))


def rotations(w: Word):
    for i in range(len(w) or 1):
        yield w[i:] + w[:i]


def canonical_cyclic(w: Word) -> Word:
    """Canonical representative of the conjugacy class of w."""
    core, _ = cyclic_reduce(w)
    if not core:
        return EMPTY
    return min(rotations(core), key=shortlex_key)


def word_root(w: Word) -> Tuple[Word, int]:
    """Largest k with w = r^k (w cyclically reduced or not: uses the core)."""
    core, u = cyclic_reduce(w)
    n = len(core)
    if n == 0:
        return EMPTY, 0
    for d in range(1, n + 1):
        if n % d:
            continue
        r = core[:d]
        if r * (n // d) == core:
            return mul(u, r, inv(u)), n // d
    return w, 1


def is_proper_power(w: Word) -> bool:
    return len(w) > 0 and word_root(w)[1] > 1


def conj_witness(x: Word, y: Word) -> Optional[Word]:
    """Some g with g^-1 x g = y, or None."""
    cx, u = cyclic_reduce(x)
    cy, v = cyclic_reduce(y)
    if len(cx) != len(cy):
        return None
    if not cx:
        return EMPTY
    for i in range(len(cx)):
        if cx[i:] + cx[:i] == cy:
            return mul(u, cx[:i], inv(v))
    return None


class ConjSolutions:
    """Solution set of g^-1 x g = y in a free group.

    Either empty, all of F, or a coset {z^k g0 : k in Z} of the
    centralizer of x (z = root of x).
    """

    __slots__ = ("kind", "z", "g0")

    def __init__(self, kind: str, z: Word = EMPTY, g0: Word = EMPTY):
        self.kind = kind  # "empty" | "all" | "coset" | "single"
        self.z = z
        self.g0 = g0

    @staticmethod
    def solve(x: Word, y: Word) -> "ConjSolutions":
        x = reduce_word(x)
        y = reduce_word(y)
        if not x:
            return ConjSolutions("all") if not y else ConjSolutions("empty")
        g0 = conj_witness(x, y)
        if g0 is None:
            return ConjSolutions("empty")
        z, _ = word_root(x)
        return ConjSolutions("coset", z, g0)

    def pick(self) -> Optional[Word]:
        if self.kind == "empty":
            return None
        return self.g0

    def refine(self, x: Word, y: Word) -> "ConjSolutions":
        """Intersect with the solutions of g^-1 x g = y."""
        x = reduce_word(x)
        y = reduce_word(y)
        if self.kind == "empty":
            return self
        if self.kind == "all":
            return ConjSolutions.solve(x, y)
        if self.kind == "single":
            return self if conj(x, self.g0) == y else ConjSolutions("empty")
        # coset {z^k g0}
        if not x:
            return self if not y else ConjSolutions("empty")
        # need z^-k x z^k = g0 y g0^-1
        yp = mul(self.g0, y, inv(self.g0))
        z = self.z
        bound = (len(x) + len(yp)) // len(z) + 4
        sols = [k for k in range(-bound, bound + 1)
                if conj(x, wpow(z, k)) == yp]
        if not sols:
            return ConjSolutions("empty")
        if len(sols) > 1:
            # x commutes with a z-power, hence x in <z>; all k work
            return self
        return ConjSolutions("single", g0=mul(wpow(z, sols[0]), self.g0))


def tuple_conj_witness(xs: Sequence[Word], ys: Sequence[Word]) -> Optional[Word]:
    """Common g with g^-1 x_i g = y_i for all i, or None."""
    if len(xs) != len(ys):
        return None
    sol = ConjSolutions("all")
    for x, y in zip(xs, ys):
        sol = sol.refine(x, y)
        if sol.kind == "empty":
            return None
    return sol.pick()


def parse_word(s: str, rank: Optional[int] = None) -> Word:
    out = []
    for ch in s:
        if ch in " \t":
            continue
        if ch.islower():
            out.append(ord(ch) - ord("a") + 1)
        elif ch.isupper():
            out.append(-(ord(ch) - ord("A") + 1))
        else:
            raise ValueError(f"bad word character {ch!r}")
    w = reduce_word(out)
    if rank is not None:
        check_rank(w, rank)
    return w


def format_word(w: Word) -> str:
    parts = []
    for x in w:
        i = abs(x) - 1
        if i >= 26:
            raise ValueError("words with more than 26 generators have no letter form")
        parts.append(chr(ord("a") + i) if x > 0 else chr(ord("A") + i))
    return "".join(parts)


def substitute(w: Word, images: Sequence[Word]) -> Word:
    """Apply the endomorphism sending generator i+1 to images[i]."""
    out: list[int] = []
    for x in w:
        im = images[abs(x) - 1]
        out.extend(im if x > 0 else inv(im))
    return reduce_word(out)


def compose_images(first: Sequence[Word], then: Sequence[Word]) -> Tuple[Word, ...]:
    """Images of the composition 'then after first'."""
    return tuple(substitute(w, then) for w in first)


def identity_images(rank: int) -> Tuple[Word, ...]:
    return tuple((i + 1,) for i in range(rank))
