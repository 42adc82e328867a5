"""Exception hierarchy shared by the library and the CLI.

Each class carries the process exit code the CLI maps it to.
"""


class SkeletonError(Exception):
    exit_code = 1
    kind = "error"


class SpecError(SkeletonError):
    """Malformed group specification or invalid parameters."""

    exit_code = 2
    kind = "invalid-spec"


class InvolutionMismatchError(SpecError):
    kind = "involution-mismatch"


class GroupMismatchError(SkeletonError):
    """Two elements from different group handles were combined."""

    kind = "group-mismatch"


class ResourceCapError(SkeletonError):
    exit_code = 3
    kind = "resource-cap"


class MathInputError(SkeletonError):
    """Mathematically invalid input (failed height validation, torsion, ...)."""

    exit_code = 4
    kind = "invalid-math-input"


class HeightValidationError(MathInputError):
    kind = "height-validation"


class TorsionError(MathInputError):
    kind = "torsion"


class NotABridgeError(MathInputError):
    kind = "not-a-bridge"


class NoSolutionError(MathInputError):
    kind = "no-solution"


class NotPlainError(MathInputError):
    kind = "not-plain"
