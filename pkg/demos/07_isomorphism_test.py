"""Twist conjugacy through the suspension isomorphism test.

Two full twists have conjugate outer classes (up to inversion) exactly
when their suspensions admit a fiber-and-orientation-preserving
isomorphism; the test runs in both orientations and reports which match.
"""

from linsusp.gog import DehnTwist, Splitting
from linsusp.iso import ul_conjugate

ex1 = Splitting({0: 2, 1: 2}, [2], [(2, 0, (1,)), (2, 1, (1,))], base=0)
d = DehnTwist(ex1, {1: 1})

for name, other in [("delta", d), ("delta^-1", d.inverse()),
                    ("delta^2", d.power(2)), ("delta^-3", d.power(-3))]:
    r = ul_conjugate(ex1, d, ex1, other)
    print(f"delta vs {name}: conjugate={r.conjugate} "
          f"orientations={list(r.orientations)}")
