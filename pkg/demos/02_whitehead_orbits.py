"""Whitehead and Gersten orbit problems.

Peak reduction decides when an automorphism of a free group carries one
tuple of conjugacy classes to another: for words, for subgroups, and for
tuples of subgroups sharing a conjugator (via star encodings over an
enlarged basis).
"""

from linsusp import graphs as gr
from linsusp.whitehead import (mwp_conjugators, mwp_subgroups, orbit_words,
                               orbit_subgroups, stabilizer_subgroups,
                               whitehead_autos)
from linsusp.words import format_word, parse_word

print("== the generating set ==")
print("rank 2 has", len(whitehead_autos(2)), "Whitehead automorphisms")

print("\n== word orbits ==")
w = orbit_words([parse_word("a")], [parse_word("b")], 2)
print("[a] -> [b]:", w)
print("[ab] -> [aabb]:", orbit_words([parse_word("ab")],
                                     [parse_word("aabb")], 2))

print("\n== subgroup orbits ==")
A = [gr.from_words(2, [parse_word("a")], based=False)]
B = [gr.from_words(2, [parse_word("ab")], based=False)]
print("[<a>] -> [<ab>]:", orbit_subgroups(A, B, 2))

print("\n== stabilizers ==")
pair = [gr.from_words(2, [parse_word("a")], based=False),
        gr.from_words(2, [parse_word("b")], based=False)]
gens = stabilizer_subgroups(pair, 2)
print(f"Stab([<a>], [<b>]) has {len(gens)} generators, e.g.",
      ", ".join(str(g) for g in gens[:4]))

print("\n== tuples of subgroups with a shared conjugator ==")
S = [[gr.from_words(2, [parse_word("a")]), gr.from_words(2, [parse_word("b")])]]
T = [[gr.from_words(2, [parse_word("b")]), gr.from_words(2, [parse_word("a")])]]
alpha, stab = mwp_subgroups(S, T, 2)
print("(<a>, <b>) -> (<b>, <a>):", alpha,
      "conjugators:", [format_word(h) for h in mwp_conjugators(alpha, S, T)])
S2 = [[gr.from_words(2, [parse_word("a")]), gr.from_words(2, [parse_word("a")])]]
T2 = [[gr.from_words(2, [parse_word("a")]), gr.from_words(2, [parse_word("b")])]]
print("(<a>, <a>) -> (<a>, <b>):",
      mwp_subgroups(S2, T2, 2, with_stabilizer=False)[0])
