"""Specialization and generalization matrices on the subset lattice.

A specialization matrix ``S`` is row-stochastic with ``s(A, B) = 0`` unless
``B`` is a subset of ``A``: applying it to a mass function (as a row vector,
``m' = m . S``) moves each mass only downward in the lattice, so the result
is always at least as committed as the input.  Two constructions matter:

* the conditioning matrix of ``C`` sends every ``A`` to ``A & C``;
* the Dempsterian matrix of ``m`` has as row ``A`` the conditioning of
  ``m`` on ``A``; applying it realizes conjunctive combination with ``m``.

Generalization matrices are the upward duals (mass flows to supersets);
de-specialization matrices are the linear inverses and realize retraction.

All dense-matrix operations require ``frame.n <= CAP_MATRIX``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import lattice
from .belief import MassFunction
from .errors import (
    EvidenceNotContainedError,
    FrameTooLargeError,
    InvalidSpecializationError,
    NotDempsterianError,
    SingularSpecializationError,
)
from .lattice import CAP_MATRIX, DEFAULT_TOL, Frame, require_same_frame


def _check_matrix_frame(frame: Frame) -> Frame:
    if frame.n > CAP_MATRIX:
        raise FrameTooLargeError(
            f"dense matrices limited to frames of {CAP_MATRIX} elements, got {frame.n}"
        )
    return frame


def _frozen_matrix(frame: Frame, values) -> np.ndarray:
    _check_matrix_frame(frame)
    out = np.array(values, dtype=np.float64)
    if out.shape != (frame.size, frame.size):
        raise InvalidSpecializationError(
            f"expected a {frame.size}x{frame.size} matrix, got shape {out.shape}"
        )
    out.flags.writeable = False
    return out


@dataclass(frozen=True, eq=False)
class SpecializationMatrix:
    """Row-stochastic operator with support on ``B subset of A`` (row A, column B).

    Construction only checks the shape; use :func:`is_valid_specialization`
    to test the invariants, which :func:`apply` enforces.
    """

    frame: Frame
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen_matrix(self.frame, self.values))


@dataclass(frozen=True, eq=False)
class GeneralizationMatrix:
    """Row-stochastic operator with support on ``B superset of A``."""

    frame: Frame
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen_matrix(self.frame, self.values))


@dataclass(frozen=True, eq=False)
class DespecializationMatrix:
    """Inverse of a Dempsterian specialization; entries may be negative.

    Applicable only to mass functions that actually contain the evidence
    being removed; :func:`apply_despecialization` rejects anything else.
    """

    frame: Frame
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen_matrix(self.frame, self.values))


def _subset_support(size: int) -> np.ndarray:
    """Boolean matrix, True at (A, B) iff B is a subset of A."""
    idx = np.arange(size)
    return (idx[None, :] & ~idx[:, None]) == 0


def _condition_values(values: np.ndarray, c: int) -> np.ndarray:
    """Transfer each mass from X to X & c (unnormalized conditioning)."""
    out = np.zeros_like(values)
    np.add.at(out, np.arange(values.size) & c, values)
    return out


def conditioning_matrix(frame: Frame, condition_set: int) -> SpecializationMatrix:
    """0/1 matrix with the single 1 of row ``A`` at column ``A & condition_set``."""
    _check_matrix_frame(frame)
    frame.check_subset(condition_set)
    s = np.zeros((frame.size, frame.size))
    rows = np.arange(frame.size)
    s[rows, rows & condition_set] = 1.0
    return SpecializationMatrix(frame, s)


def dempsterian_matrix(m: MassFunction) -> SpecializationMatrix:
    """Matrix whose row ``A`` is ``m`` conditioned on ``A``; row full is ``m`` itself."""
    frame = _check_matrix_frame(m.frame)
    s = np.empty((frame.size, frame.size))
    for a in range(frame.size):
        s[a] = _condition_values(m.values, a)
    return SpecializationMatrix(frame, s)


def is_valid_specialization(s: SpecializationMatrix, tol: float = DEFAULT_TOL) -> bool:
    """Check row sums of one, entries in [0, 1], support only on subsets."""
    v = s.values
    if (v < -tol).any() or (v > 1.0 + tol).any():
        return False
    if np.abs(v.sum(axis=1) - 1.0).max() > tol:
        return False
    return bool(np.abs(v[~_subset_support(s.frame.size)]).max(initial=0.0) <= tol)


def is_valid_generalization(g: GeneralizationMatrix, tol: float = DEFAULT_TOL) -> bool:
    v = g.values
    if (v < -tol).any() or np.abs(v.sum(axis=1) - 1.0).max() > tol:
        return False
    # support transposed relative to specialization: A must be a subset of B
    return bool(np.abs(v[~_subset_support(g.frame.size).T]).max(initial=0.0) <= tol)


def is_dempsterian(s: SpecializationMatrix, tol: float = DEFAULT_TOL) -> bool:
    """True iff every row equals the top row conditioned on the row's subset.

    This is the closed form characterizing matrices generated by a mass
    function; it is checked deterministically rather than by searching for
    commutation witnesses.
    """
    if not is_valid_specialization(s, tol):
        return False
    top = s.values[-1]
    for a in range(s.frame.size):
        if np.abs(s.values[a] - _condition_values(top, a)).max() > tol:
            return False
    return True


def apply(m: MassFunction, s: SpecializationMatrix, tol: float = DEFAULT_TOL) -> MassFunction:
    """Specialize ``m`` by ``s`` (row-vector product ``m . s``)."""
    require_same_frame(m, s)
    if not is_valid_specialization(s, tol):
        raise InvalidSpecializationError("matrix violates the specialization invariants")
    return MassFunction(m.frame, m.values @ s.values)


def apply_generalization(
    m: MassFunction, g: GeneralizationMatrix, tol: float = DEFAULT_TOL
) -> MassFunction:
    require_same_frame(m, g)
    if not is_valid_generalization(g, tol):
        raise InvalidSpecializationError("matrix violates the generalization invariants")
    return MassFunction(m.frame, m.values @ g.values)


def apply_despecialization(
    m: MassFunction, d: DespecializationMatrix, tol: float = DEFAULT_TOL
) -> MassFunction:
    """Undo a specialization; defined only where the result is a valid bba.

    Masses in ``[-tol, 0)`` are clamped to zero; anything more negative
    means the evidence being removed was never combined in, and raises
    :class:`EvidenceNotContainedError`.
    """
    require_same_frame(m, d)
    out = m.values @ d.values
    if out.min() < -tol:
        raise EvidenceNotContainedError(
            f"de-specialization yields mass {out.min():.3e}; "
            "the belief state does not contain this evidence"
        )
    np.clip(out, 0.0, None, out=out)
    return MassFunction(m.frame, out)


def commute_check(
    s1: SpecializationMatrix, s2: SpecializationMatrix, tol: float = DEFAULT_TOL
) -> tuple[bool, float]:
    """Max-norm deviation of ``s1.s2 - s2.s1`` and whether it is below ``tol``."""
    require_same_frame(s1, s2)
    deviation = float(np.abs(s1.values @ s2.values - s2.values @ s1.values).max())
    return deviation <= tol, deviation


def idempotence_check(s: SpecializationMatrix, tol: float = DEFAULT_TOL) -> bool:
    return float(np.abs(s.values @ s.values - s.values).max()) <= tol


def incidence_matrix(frame: Frame) -> np.ndarray:
    """0/1 matrix with 1 at (A, B) iff B is a subset of A; ``m . T`` is ``q``."""
    _check_matrix_frame(frame)
    return _subset_support(frame.size).astype(np.float64)


def incidence_inverse(frame: Frame) -> np.ndarray:
    """Exact inverse of :func:`incidence_matrix`: ``(-1)**|A - B|`` for B subset of A.

    Built from integer Moebius coefficients, never by numeric inversion.
    """
    _check_matrix_frame(frame)
    sizes = lattice.popcounts(frame.size)
    signs = np.where((sizes[:, None] - sizes[None, :]) % 2 == 0, 1.0, -1.0)
    return np.where(_subset_support(frame.size), signs, 0.0)


@dataclass(frozen=True, eq=False)
class EigenStructure:
    """Eigendecomposition ``S = T diag(eigenvalues) T_inverse`` of a Dempsterian matrix.

    The eigenvalues are the commonality values of the generating mass
    function (also the diagonal of ``S``); the rows of ``t_inverse`` are
    left eigenvectors.
    """

    frame: Frame
    transform: np.ndarray
    eigenvalues: np.ndarray
    t_inverse: np.ndarray
    reconstruction_error: float


def eigen_structure(s: SpecializationMatrix, tol: float = DEFAULT_TOL) -> EigenStructure:
    if not is_dempsterian(s, tol):
        raise NotDempsterianError("eigenstructure is defined for Dempsterian matrices only")
    t = incidence_matrix(s.frame)
    t_inv = incidence_inverse(s.frame)
    eigenvalues = np.diag(s.values).copy()
    reconstruction = (t * eigenvalues[None, :]) @ t_inv
    err = float(np.abs(s.values - reconstruction).max())
    return EigenStructure(s.frame, t, eigenvalues, t_inv, err)


def despecialize_matrix(s: SpecializationMatrix, tol: float = DEFAULT_TOL) -> DespecializationMatrix:
    """Inverse ``T diag(1/q) T_inverse`` of a Dempsterian matrix.

    Requires every eigenvalue (commonality value) to be nonzero; a zero
    eigenvalue means the generating mass function put no mass on the full
    frame's side of some subset and cannot be retracted.
    """
    structure = eigen_structure(s, tol)
    q = structure.eigenvalues
    if np.abs(q).min() <= tol:
        worst = int(np.abs(q).argmin())
        raise SingularSpecializationError(
            f"singular: commonality of subset {worst} is {q[worst]:.3e}"
        )
    d = (structure.transform / q[None, :]) @ structure.t_inverse
    return DespecializationMatrix(s.frame, d)


def enlargement_matrix(frame: Frame, indiscernible: int) -> GeneralizationMatrix:
    """Generalization sending each ``X`` to ``X | indiscernible``.

    The minimal row-stochastic generalization making the elements of the
    given set indiscernible: after applying it, conditioning on ``X | Y``
    yields the same mass pattern for every ``Y`` inside the set.
    """
    _check_matrix_frame(frame)
    frame.check_subset(indiscernible)
    g = np.zeros((frame.size, frame.size))
    rows = np.arange(frame.size)
    g[rows, rows | indiscernible] = 1.0
    return GeneralizationMatrix(frame, g)


def disjunctive_matrix(m: MassFunction) -> GeneralizationMatrix:
    """Generalization whose application realizes disjunctive combination with ``m``."""
    frame = _check_matrix_frame(m.frame)
    g = np.zeros((frame.size, frame.size))
    idx = np.arange(frame.size)
    for a in range(frame.size):
        np.add.at(g[a], a | idx, m.values)
    return GeneralizationMatrix(frame, g)
