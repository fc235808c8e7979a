"""Polarized normal forms, short positions, and the conjugacy decision.

Elements of the suspension are loops in the structural splitting; a
polarizing edge pins down a canonical word: double-coset representatives
at the white slots, an exponent vector, and the abscissa (the t-power).
Hyperbolic elements have finitely many short positions; conjugacy is
decided by comparing them (elliptic elements transport through edges).
"""

from linsusp.bass import from_gamma, normal_form
from linsusp.conjugacy import (conjugate_elements, short_positions,
                               translation_length)
from linsusp.gog import DehnTwist, Splitting
from linsusp.suspension import suspend
from linsusp.words import EMPTY, format_word, parse_word

ex1 = Splitting({0: 2, 1: 2}, [2], [(2, 0, (1,)), (2, 1, (1,))], base=0)
s = suspend(ex1, DehnTwist(ex1, {1: 1}))

print("== normal forms ==")
for elt in [(EMPTY, 1), (parse_word("c"), 0), (parse_word("bc"), 2)]:
    nf = normal_form(from_gamma(s, elt), 0)
    print(f"({format_word(elt[0]) or '1'}, t^{elt[1]}): path {nf.path}, "
          f"dcr {[format_word(x) for x in nf.dcr]}, pow {nf.pow}")

print("\n== translation lengths ==")
for elt in [(EMPTY, 1), (parse_word("c"), 0), (parse_word("bc"), 0)]:
    print(f"  tl({format_word(elt[0]) or 't'}) =",
          translation_length(from_gamma(s, elt)))

print("\n== short positions of bq ==")
for p in short_positions(from_gamma(s, (parse_word("bc"), 0))):
    print(f"  anchor {p.anchor}, polarizing edge {p.pol}, pow {p.nf.pow}")

print("\n== conjugacy ==")
g = (parse_word("a"), 0)
h = s.g_conj(g, (parse_word("c"), 0))
x = conjugate_elements(s, g, h)
print("a ~ q^-1 a q by", (format_word(x[0]), x[1]))
print("a ~ b:", conjugate_elements(s, (parse_word("a"), 0),
                                   (parse_word("b"), 0)))
