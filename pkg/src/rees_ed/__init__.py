"""Equational domains among finite completely simple semigroups.

Rees matrix semigroups over finite groups, a term language with constants,
brute-force and targeted equation solving, the explicit systems certifying
the e.d. property, a term-clone oracle and symbolic free objects.
"""

__version__ = "0.1.0"

from .errors import ReesEdError  # noqa: E402,F401
from .groups import FiniteGroup, Verdict, make_group, make_group_from_permutations  # noqa: E402,F401
from .rees import ReesSemigroup, RElement, decide_ed, decide_ed_rel, normalize_matrix, rees_new  # noqa: E402,F401
