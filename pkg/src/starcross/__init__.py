"""Numerical workbench for crossed products, coactions, and Morita equivalence
over finite groups, at desk scale.

Everything is a concrete complex matrix: groups come with dense multiplication
tables, C*-algebras are *-closed matrix subspaces with distinguished bases,
and every structural claim (homomorphism, coaction identity, bimodule axiom,
theorem-level isomorphism) is certified by residual checks against explicit
tolerances rather than assumed.
"""

__version__ = "0.1.0"

from . import coact, dynamics, fingroup, hilbmod, imprim, staralg  # noqa: F401
