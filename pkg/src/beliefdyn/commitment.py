"""The commitment partial order on belief states.

State 1 is *at least as committed* as state 2 when ``pl1(A) <= pl2(A)`` for
every subset ``A``: it allocates no more potential support anywhere.  The
least committed state of all is the vacuous one.  An equivalent formulation
compares ``b(A) = bel(A) + m(empty)`` with the inequality reversed; both are
implemented and must agree on every input.
"""

from __future__ import annotations

import enum

import numpy as np

from . import lattice
from .belief import MassFunction, pl_from_mass
from .lattice import DEFAULT_TOL, require_same_frame


class Ordering(enum.Enum):
    EQUAL = "equal"
    FIRST_MORE_COMMITTED = "first-more-committed"
    SECOND_MORE_COMMITTED = "second-more-committed"
    INCOMPARABLE = "incomparable"


def _classify(first_excess: np.ndarray, tol: float) -> Ordering:
    """Ordering from the pointwise excess of the first state's pl over the second's."""
    first_above = bool((first_excess > tol).any())
    second_above = bool((first_excess < -tol).any())
    if first_above and second_above:
        return Ordering.INCOMPARABLE
    if first_above:
        return Ordering.SECOND_MORE_COMMITTED
    if second_above:
        return Ordering.FIRST_MORE_COMMITTED
    return Ordering.EQUAL


def compare(m1: MassFunction, m2: MassFunction, tol: float = DEFAULT_TOL) -> Ordering:
    """Compare two belief states through their plausibility functions.

    An inequality counts as strict only when the gap exceeds ``tol``, so
    floating-point ties never turn EQUAL into a strict ordering.
    """
    require_same_frame(m1, m2)
    pl1 = pl_from_mass(m1).values
    pl2 = pl_from_mass(m2).values
    return _classify(pl1 - pl2, tol)


def compare_bel_form(m1: MassFunction, m2: MassFunction, tol: float = DEFAULT_TOL) -> Ordering:
    """Same ordering computed from ``b = bel + m(empty)``, larger-is-more-committed."""
    require_same_frame(m1, m2)
    b1 = lattice.zeta_subsets(m1.values)
    b2 = lattice.zeta_subsets(m2.values)
    # b1 >= b2 everywhere  <=>  pl1 <= pl2 everywhere (total mass is one)
    return _classify(b2 - b1, tol)


def is_at_least_as_committed(m1: MassFunction, m2: MassFunction, tol: float = DEFAULT_TOL) -> bool:
    return compare(m1, m2, tol) in (Ordering.EQUAL, Ordering.FIRST_MORE_COMMITTED)
