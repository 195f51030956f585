"""Exact shift-equivalence toolkit for non-negative integer matrices.

Thin python surface over the C++ core: labeled exact-integer matrices,
verifiers and bounded searchers for the four equivalence relations,
bipartite inflations, and the dilation invariant reports.
"""

from ._sekit import *  # noqa: F401,F403
from ._sekit import __all__, __version__  # noqa: F401
