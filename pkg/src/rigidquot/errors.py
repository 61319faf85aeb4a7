"""Exception hierarchy.

``ContradictionError`` marks a violated structural statement (a result that
the theory says cannot happen); the CLI maps it to exit code 2.
"""


class RigidQuotError(Exception):
    pass


class NonInvariantSubgroupError(RigidQuotError, ValueError):
    """The generated subgroup of Z_n^2 is not stable under the twist."""


class CapacityError(RigidQuotError):
    """A brute-force routine was asked to exceed its configured bound."""


class InvalidGenusError(RigidQuotError, ValueError):
    """Hurwitz's formula does not produce a non-negative integer genus."""


class ExceptionalGroupError(RigidQuotError, ValueError):
    """Operation undefined for the four exceptional groups."""


class ContradictionError(RigidQuotError):
    pass


class ConventionError(ContradictionError):
    """Elliptic character conditions are inconsistent."""


class ShapeError(ContradictionError):
    """A generating triple has none of the admissible shapes."""
