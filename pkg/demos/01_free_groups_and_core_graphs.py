"""Free-group words and Stallings core graphs.

Subgroups of free groups fold into labeled graphs; membership,
intersection, conjugacy of subgroups, images under endomorphisms, and
finite-index elevations all become graph computations.
"""

from linsusp import graphs as gr
from linsusp.words import format_word, parse_word

print("== words ==")
w = parse_word("abBA" "ab")
print("abBAab reduces to", format_word(w))

print("\n== folding ==")
h = gr.from_words(2, [parse_word("a"), parse_word("baB")])
print("H = <a, bab^-1> folds to", h)
for probe in ["a", "b", "baB", "abaB"]:
    print(f"  {probe} in H?", h.member(parse_word(probe)))

print("\n== intersections ==")
h2 = gr.from_words(1, [parse_word("aa")])
h3 = gr.from_words(1, [parse_word("aaa")])
m = gr.intersect(h2, h3)
print("<a^2> cap <a^3> membership of a^6:", m.member(parse_word("aaaaaa")))

print("\n== conjugacy of subgroups ==")
k = gr.from_words(2, [parse_word("baB")])
g = gr.conjugate_subgroups(gr.from_words(2, [parse_word("a")]), k)
print("<a> and <bab^-1> are conjugate by", format_word(g))

print("\n== endomorphism images ==")
img = gr.apply_endo(gr.from_words(2, [parse_word("b")]),
                    [parse_word("a"), parse_word("ba")])
print("image of <b> under a->a, b->ba has",
      img.nv, "vertices and", len(img.edges), "edges")

print("\n== elevations ==")
idx2 = gr.from_words(2, [parse_word("aa"), parse_word("b"), parse_word("abA")])
for c in ["a", "b"]:
    es = gr.elevations(idx2, parse_word(c))
    print(f"elevations of <{c}> to the index-2 subgroup:",
          [(format_word(e.generator), e.length) for e in es],
          "(lengths sum to the index)")
