"""The structural splitting of a mapping torus.

Suspending a full twist gives a bipartite splitting with white groups
F_w x <t_w> and rank-2 abelian black groups.  Each white vertex carries
a central element t_w in the t-coset; black groups have canonical fiber
generators; alternative fibrations align back onto the reference fiber.
"""

from linsusp.gog import DehnTwist, Splitting
from linsusp.suspension import (Fibration, align_fibers, black_fiber,
                                coset_meets, suspend, vertex_intersect_edge)
from linsusp.words import EMPTY, format_word, parse_word

ex1 = Splitting({0: 2, 1: 2}, [2], [(2, 0, (1,)), (2, 1, (1,))], base=0)
s = suspend(ex1, DehnTwist(ex1, {1: 1}))

print("central elements per white vertex (fiber part of f*t):")
for v, f in sorted(s.f_elt.items()):
    print(f"  vertex {v}: ({format_word(f) or '1'}) * t")

print("\nblack vertex data: edge offsets", s.m_exp)
print("canonical black fiber from the edge pair (0, 1):",
      format_word(black_fiber(s, 2, 0, 1)))

print("\naligning an alternative fibration (a,b,q,t) -> (0,1,0,1):")
al = align_fibers(s, Fibration(s, [0, 1, 0]))
ims, t_img = al.gamma_images()
for i, x in enumerate(ims):
    print(f"  {format_word((i + 1,))} -> ({format_word(x[0]) or '1'}, t^{x[1]})")

print("\nvertex-level algebra in F x Z:")
res, defect = vertex_intersect_edge(
    2, [(parse_word("a"), 1), (EMPTY, 3)], parse_word("a"))
c, l, m = res
print(f"  <(a, z), (1, z^3)> cap <a, z> = <(a^{l}, z^{m}), z^{defect}>")
w = coset_meets(2, [(parse_word("b"), 1)], (parse_word("b"), 0),
                parse_word("a"))
print("  <bz> meets b<a, z>:", w is not None)
