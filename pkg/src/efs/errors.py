"""Exception types raised by the selection engine and its file formats."""


class EfsError(Exception):
    """Base class for all errors raised by this package."""


class ZeroNormEmbedding(EfsError):
    """An embedding row has (near-)zero L2 norm and cannot be normalized."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"embedding row {index} has norm < 1e-12")


class DimensionMismatch(EfsError):
    """Array shapes are inconsistent with the declared frame count / dim."""


class NonFiniteValue(EfsError):
    """A NaN or infinity was found where finite values are required."""

    def __init__(self, field: str, index: int):
        self.field = field
        self.index = index
        super().__init__(f"non-finite value in {field} at index {index}")


class WindowTooSmall(EfsError):
    """The similarity window must be at least 1."""


class BoundaryOutOfRange(EfsError):
    """An event boundary index falls outside the valid interior range."""


class ZeroMeanSegment(EfsError):
    """A segment's raw mean embedding has (near-)zero norm."""

    def __init__(self, start: int, end: int):
        self.start = start
        self.end = end
        super().__init__(f"segment [{start}, {end}) has a zero mean embedding")


class EmptyAnchorSet(EfsError):
    """Refinement requires at least one anchor frame."""


class BudgetZero(EfsError):
    """The keyframe budget k must be at least 1."""


class BadMagic(EfsError):
    """The file does not start with the expected magic bytes."""


class UnsupportedVersion(EfsError):
    """The file declares a format version this reader does not support."""


class TruncatedPayload(EfsError):
    """The file is shorter (or longer) than its header declares."""


class MalformedMetadata(EfsError):
    """The metadata block is not a valid UTF-8 JSON object."""


class InvalidSpec(EfsError):
    """A synthetic-corpus specification is internally inconsistent."""
