"""Exception types shared across the library.

Every error raised by library code derives from :class:`ManirepError`, so
callers (and the CLI) can convert any domain failure into a structured
report without catching bare exceptions.
"""


class ManirepError(Exception):
    """Base class for all library errors."""


class SizeMismatch(ManirepError):
    """Matrix dimensions are incompatible with the operation."""


class NotSymmetric(ManirepError):
    """Input was required to be (complex) symmetric but is not."""


class NotSkew(ManirepError):
    """Input was required to be skew-symmetric but is not."""


class ConvergenceFailure(ManirepError):
    """An iterative refinement failed to reach the requested accuracy."""


class RankAmbiguous(ManirepError):
    """A singular value sits inside the rank-cutoff band.

    Block sizes derived from numerical rank are discrete quantities; rather
    than guessing, operations raise this error and let the caller tighten
    tolerances or perturb the input.
    """


class InvalidDescriptor(ManirepError):
    """A group or module descriptor violates its invariants."""


class NotInGroup(ManirepError):
    """A matrix fails the defining relations of the group acting on it."""


class ModuleNotPreserved(ManirepError):
    """A group action moved a matrix out of its module."""


class InvalidSpectrum(ManirepError):
    """Diagonal spectrum parameters violate the constraints of the family."""


class UnsupportedGroup(ManirepError):
    """The group family is outside the supported classification range."""


class WitnessNotInModule(ManirepError):
    """A stabilizer witness does not belong to its declared module."""


class IllConditioned(ManirepError):
    """Numeric similarity structure is ambiguous within tolerance."""


class NoConstantFactor(ManirepError):
    """No constant right factor relates the two embeddings being compared."""


class NotMinimalFamily(ManirepError):
    """A smaller admissible target reproduced the stabilizer of the family."""


class OutOfLemmaRange(ManirepError):
    """Parameters fall below the range where the classification is proved."""
