class HadamaqError(ValueError):
    """Base class for every error raised by this package."""


class NonSquare(HadamaqError):
    pass


class NotHadamard(HadamaqError):
    pass


class UnknownName(HadamaqError):
    pass


class DimensionMismatch(HadamaqError):
    pass


class ShapeMismatch(HadamaqError):
    pass


class NotPartitionOfUnity(HadamaqError):
    pass


class NotRankOne(HadamaqError):
    pass


class NotMagic(HadamaqError):
    pass


class NotCommutativeStructure(HadamaqError):
    pass


class CapExceeded(HadamaqError):
    pass


class NotAbelian(HadamaqError):
    pass


class NotClosed(HadamaqError):
    """A quotient of two row classes is not itself a row class."""

    def __init__(self, i: int, j: int):
        super().__init__(f"row {j} / row {i} is not proportional to any row")
        self.pair = (i, j)


class NotCommutative(HadamaqError):
    def __init__(self, message: str, pair: tuple[int, int] | None = None):
        super().__init__(message)
        self.pair = pair


class SnapFailure(HadamaqError):
    pass


class InfiniteCase(HadamaqError):
    pass


class IndexOutOfRange(HadamaqError):
    pass
