"""Exception types raised across the toolkit."""

from __future__ import annotations


class TightSpanError(Exception):
    pass


class MetricError(TightSpanError, ValueError):
    pass


class MissingEntry(MetricError):
    def __init__(self, i: int, j: int):
        self.pair = (i, j)
        super().__init__(f"missing distance for pair {i}-{j}")


class NonPositiveDistance(MetricError):
    def __init__(self, i: int, j: int, value):
        self.pair = (i, j)
        self.value = value
        super().__init__(f"distance {i}-{j} = {value} is not positive")


class TriangleViolation(MetricError):
    """``d(i,k) > d(i,j) + d(j,k)``; labels are 1-based."""

    def __init__(self, i: int, j: int, k: int):
        self.triple = (i, j, k)
        super().__init__(f"triangle inequality fails on ({i},{j},{k})")


class InfeasibleWeights(TightSpanError, ValueError):
    pass


class OddN(TightSpanError, ValueError):
    pass


class ScaleLimit(TightSpanError):
    pass


class DimOutOfRange(TightSpanError, ValueError):
    pass


class ConstructionFailed(TightSpanError):
    pass


class NonGenericDetected(TightSpanError):
    """Raised with a concrete certificate that the subdivision is not a triangulation."""

    def __init__(self, certificate):
        self.certificate = certificate
        super().__init__(str(certificate))
