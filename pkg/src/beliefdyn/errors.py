"""Exception types raised by the belief calculus.

The split into input errors and precondition errors mirrors the CLI exit
codes: malformed or inconsistent user data is an input error, while a
mathematically undefined operation on valid data is a precondition error.
"""


class BeliefError(Exception):
    """Base class for all errors raised by this package."""


class InputError(BeliefError):
    """Malformed or inconsistent user-supplied data (files, keys, flags)."""


class FrameMismatchError(InputError):
    """Operands belong to different frames of discernment."""


class FrameTooLargeError(InputError):
    """Frame exceeds the size cap of the requested operation."""


class NotABeliefFunctionError(InputError):
    """Values do not form a valid mass function or set-function representation."""


class InvalidSpecializationError(InputError):
    """Matrix violates the specialization invariants (row sums, support)."""


class InfeasibleConstraintsError(InputError):
    """Belief constraints overlap or exceed the unit mass budget."""


class PreconditionError(BeliefError):
    """Operation undefined for this input (singularity, conflict, ...)."""


class TotalConflictError(PreconditionError):
    """Normalization is undefined: the entire mass sits on the empty set."""


class SingularSpecializationError(PreconditionError):
    """Specialization matrix has a zero eigenvalue and cannot be inverted."""


class NonInvertibleEvidenceError(PreconditionError):
    """Evidence has a zero commonality value and cannot be retracted."""


class EvidenceNotContainedError(PreconditionError):
    """Retraction target does not contain the evidence being removed."""


class NotDempsterianError(PreconditionError):
    """Matrix is a valid specialization but not generated by a mass function."""
