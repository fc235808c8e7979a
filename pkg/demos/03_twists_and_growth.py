"""Bipartite splittings, generalized Dehn twists, and linear growth.

The running example: F(a, b, q) split over a path with white vertices
<a, b> and <p, q> glued along p = a.  Twisting the q-side edge by p
induces a -> a, b -> b, q -> a^-1 q a.
"""

from linsusp.gog import (DehnTwist, Splitting, abelianization_matrix,
                         growth_profile, is_unipotent_images,
                         twist_growth_profile, validate_splitting)
from linsusp.words import format_word, parse_word

ex1 = Splitting({0: 2, 1: 2}, [2], [(2, 0, (1,)), (2, 1, (1,))], base=0)
print("global fiber rank:", ex1.global_rank)
print("diagnostics:", validate_splitting(ex1) or "none")

delta = DehnTwist(ex1, {1: 1})
print("\nthe twist is full:", delta.is_full())
print("induced automorphism:",
      {format_word((i + 1,)): format_word(w)
       for i, w in enumerate(delta.alpha_images())})

print("\nabelianization:", abelianization_matrix(delta.alpha_images(), 3))
print("unipotent:", is_unipotent_images(delta.alpha_images(), 3))

print("\ngrowth of q under the twist:",
      twist_growth_profile(delta, parse_word("c"), 8))

print("\nthe cancellation-heavy three-letter map "
      "a -> a, b -> ba, c -> cbab^-1a^-2:")
mac = [parse_word("a"), parse_word("ba"), parse_word("cbaBAA")]
print("cyclic lengths of the iterates of c:",
      growth_profile(mac, parse_word("c"), 12))
print("(linear growth despite the quadratic-looking shape)")
