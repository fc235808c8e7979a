"""Suspensions of unipotent linearly growing free-group automorphisms:
core graphs and Whitehead/Gersten orbit algorithms, structural
splittings of the mapping torus, polarized normal forms, the conjugacy
decision, the fiber-and-orientation-preserving mixed Whitehead solver,
and the suspension isomorphism test.
"""

from . import bass, conjugacy, gog, graphs, iso, mwp, serialize, suspension
from . import whitehead, words, zlinalg
from .gog import DehnTwist, Splitting
from .suspension import Suspension, suspend
from .whitehead import Undecided

__all__ = [
    "bass", "conjugacy", "gog", "graphs", "iso", "mwp", "serialize",
    "suspension", "whitehead", "words", "zlinalg",
    "DehnTwist", "Splitting", "Suspension", "suspend", "Undecided",
]
