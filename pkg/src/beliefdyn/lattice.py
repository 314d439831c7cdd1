"""Frames of discernment and fast transforms on the subset lattice.

Subsets of a frame with elements ``e_0 .. e_{n-1}`` are encoded as integer
bitmasks: bit ``i`` set means ``e_i`` is present, so ``0`` is the empty set
and ``2**n - 1`` is the full frame.  Vectors indexed by subsets are plain
``numpy`` arrays of length ``2**n`` in bitmask order.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .errors import FrameMismatchError, FrameTooLargeError

# Default comparison tolerance (absolute) for float values on the lattice.
DEFAULT_TOL = 1e-9

# Vector algebra is allowed up to 2**CAP_TRANSFORM entries; dense
# 2**n x 2**n matrices only up to CAP_MATRIX (about a million entries).
CAP_TRANSFORM = 20
CAP_MATRIX = 10


@dataclass(frozen=True)
class Frame:
    """A finite frame of discernment: an ordered tuple of distinct labels."""

    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise ValueError("frame needs at least one element")
        if len(labels) > CAP_TRANSFORM:
            raise FrameTooLargeError(
                f"frame has {len(labels)} elements, cap is {CAP_TRANSFORM}"
            )
        if any(not isinstance(lab, str) or not lab for lab in labels):
            raise ValueError("frame labels must be non-empty strings")
        if len(set(labels)) != len(labels):
            raise ValueError("frame labels must be distinct")

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def size(self) -> int:
        """Number of subsets, ``2**n``."""
        return 1 << self.n

    @property
    def full(self) -> int:
        """Bitmask of the whole frame."""
        return self.size - 1

    def subset(self, members: Iterable[str]) -> int:
        """Bitmask of the subset containing the given labels."""
        index = {lab: i for i, lab in enumerate(self.labels)}
        bits = 0
        for lab in members:
            try:
                bits |= 1 << index[lab]
            except KeyError:
                raise FrameMismatchError(f"label {lab!r} not in frame {self.labels}")
        return bits

    def members(self, subset: int) -> tuple[str, ...]:
        """Labels of the elements in ``subset``, in frame order."""
        self.check_subset(subset)
        return tuple(lab for i, lab in enumerate(self.labels) if subset >> i & 1)

    def check_subset(self, subset: int) -> int:
        if not 0 <= subset < self.size:
            raise FrameMismatchError(
                f"subset {subset:#x} out of range for a frame of {self.n} elements"
            )
        return subset

    def complement(self, subset: int) -> int:
        return self.full ^ self.check_subset(subset)

    def union(self, a: int, b: int) -> int:
        return self.check_subset(a) | self.check_subset(b)

    def intersection(self, a: int, b: int) -> int:
        return self.check_subset(a) & self.check_subset(b)

    def is_subset(self, a: int, b: int) -> bool:
        """True iff ``a`` is contained in ``b``."""
        return self.check_subset(a) & ~self.check_subset(b) == 0


def default_frame(n: int) -> Frame:
    """Frame with single-letter labels ``a, b, c, ...``."""
    if not 1 <= n <= CAP_TRANSFORM:
        raise FrameTooLargeError(f"frame size {n} outside [1, {CAP_TRANSFORM}]")
    return Frame(tuple(string.ascii_lowercase[:n]))


def require_same_frame(a, b) -> Frame:
    if a.frame != b.frame:
        raise FrameMismatchError(
            f"operands on different frames: {a.frame.labels} vs {b.frame.labels}"
        )
    return a.frame


def subsets_of(mask: int) -> Iterator[int]:
    """All subsets of ``mask`` in increasing bitmask order."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def popcounts(size: int) -> np.ndarray:
    """Array of subset cardinalities for bitmasks ``0 .. size-1``."""
    return np.array([m.bit_count() for m in range(size)], dtype=np.int64)


def _checked(values) -> np.ndarray:
    out = np.array(values, dtype=np.float64)
    if out.ndim != 1 or out.size == 0 or out.size & (out.size - 1):
        raise ValueError("lattice vector length must be a power of two")
    return out


def order_of(size: int) -> int:
    """n such that ``size == 2**n``."""
    n = size.bit_length() - 1
    if size <= 0 or 1 << n != size:
        raise ValueError(f"{size} is not a power of two")
    return n


def zeta_subsets(values) -> np.ndarray:
    """Subset-sum transform: ``g(A) = sum of f(B) over B contained in A``."""
    out = _checked(values)
    n = order_of(out.size)
    for i in range(n):
        v = out.reshape(-1, 2, 1 << i)
        v[:, 1, :] += v[:, 0, :]
    return out


def mobius_subsets(values) -> np.ndarray:
    """Inverse of :func:`zeta_subsets`."""
    out = _checked(values)
    n = order_of(out.size)
    for i in range(n):
        v = out.reshape(-1, 2, 1 << i)
        v[:, 1, :] -= v[:, 0, :]
    return out


def zeta_supersets(values) -> np.ndarray:
    """Superset-sum transform: ``g(A) = sum of f(B) over B containing A``."""
    out = _checked(values)
    n = order_of(out.size)
    for i in range(n):
        v = out.reshape(-1, 2, 1 << i)
        v[:, 0, :] += v[:, 1, :]
    return out


def mobius_supersets(values) -> np.ndarray:
    """Inverse of :func:`zeta_supersets`."""
    out = _checked(values)
    n = order_of(out.size)
    for i in range(n):
        v = out.reshape(-1, 2, 1 << i)
        v[:, 0, :] -= v[:, 1, :]
    return out
