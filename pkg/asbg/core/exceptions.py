"""
Custom exceptions
"""

from typing import (
    List,
    Optional
)


class AsbgException(Exception):
    """
    Base class for all toolkit errors
    """


class GraphFormatException(AsbgException):
    """
    Raised when a graph document is malformed or describes a
    non-simple graph
    """


class OddCycleException(AsbgException):
    """
    Raised when a bipartition is requested for a graph with an odd cycle
    """

    def __init__(self, witness: List[str]):
        super().__init__(
            'Graph is not bipartite, odd cycle: {}'.format(
                ' '.join(witness))
        )
        self.witness = witness


class AcyclicGraphException(AsbgException):
    """
    Raised when a skeleton based analysis is requested for a forest
    """


class DisconnectedGraphException(AsbgException):
    """
    Raised when an operation needs a connected graph
    """


class VertexNotInSkeletonException(AsbgException):
    """
    Raised when a local tree is requested for a vertex off the skeleton
    """


class AllLeafTypeException(AsbgException):
    """
    Raised when limbs are requested for a skeleton made only of
    leaf-type vertices
    """


class MatrixFormatException(AsbgException):
    """
    Raised when matrix text or entries cannot be parsed
    """


class NotAnAsmException(AsbgException):
    """
    Raised when an alternating sign matrix was expected
    """


class OrderMismatchException(AsbgException):
    """
    Raised when vertex orders do not enumerate the bipartition parts
    """


class DemandException(AsbgException):
    """
    Raised when a degree demand is out of range for its graph
    """


class PreconditionException(AsbgException):
    """
    Raised when an operation is called outside its precondition
    """


class NotCactusException(AsbgException):
    """
    Raised when a cactus graph was expected
    """


class InvalidColouringException(AsbgException):
    """
    Raised when a colouring is not a difference-1 colouring, or does not
    cover the edges of its graph
    """


class NotAlternatingException(AsbgException):
    """
    Raised when a cycle is not alternating under a colouring
    """


class NotColourableException(AsbgException):
    """
    Raised when an operation needs a colourable graph
    """


class BudgetExceededException(AsbgException):
    """
    Raised when an exhaustive search would exceed its budget
    """

    def __init__(self, message: str, limit: Optional[str] = None):
        super().__init__(message)
        self.limit = limit
