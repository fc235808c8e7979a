"""The fiber-and-orientation-preserving mixed Whitehead solver.

Given tuples of tuples of suspension elements, decide whether an
automorphism preserving the fiber and the t-direction, together with one
conjugator per tuple, carries the first family to the second.
"""

from linsusp.gog import DehnTwist, Splitting
from linsusp.mwp import delta1_coset_reps, solve_mwp
from linsusp.suspension import suspend
from linsusp.words import format_word, parse_word

ex1 = Splitting({0: 2, 1: 2}, [2], [(2, 0, (1,)), (2, 1, (1,))], base=0)
s = suspend(ex1, DehnTwist(ex1, {1: 1}))
reps = delta1_coset_reps(s)
print("coset representatives of the edge-fixing subgroup:", len(reps))

q = (parse_word("c"), 0)


def show(name, S, T):
    sol = solve_mwp(s, S, T, reps=reps)
    if sol is None:
        print(f"{name}: no")
        return
    conj = [(format_word(c[0]) or "1", c[1]) for c in sol.conjugators]
    print(f"{name}: yes, conjugators {conj}")


show("(((q))) vs (((q)))", [[q]], [[q]])
show("(((q))) vs (((a^-1 q a)))", [[q]], [[s.g_conj(q, (parse_word("a"), 0))]])
show("(((a))) vs (((b)))", [[(parse_word("a"), 0)]], [[(parse_word("b"), 0)]])
show("(((q))) vs (((q^-1)))", [[q]], [[(parse_word("C"), 0)]])
show("(((bq))) vs (((b a^-1 q a)))",
     [[(parse_word("bc"), 0)]], [[(parse_word("bAca"), 0)]])
