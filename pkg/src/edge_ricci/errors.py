"""Exception types raised by the library.

Every error carries a human-readable message naming the offending line,
vertex, edge, or parameter, so CLI users can act on it directly.
"""

from __future__ import annotations


class EdgeRicciError(Exception):
    """Base class for all library errors."""


# ---------------------------------------------------------------- graphs

class GraphError(EdgeRicciError):
    pass


class EmptyInputError(GraphError):
    """Input text or document contains no edges."""


class FormatError(GraphError):
    """A line or document does not follow the expected format."""


class SelfLoopError(GraphError):
    """An edge joins a vertex to itself."""


class DuplicateEdgeError(GraphError):
    """The same unordered vertex pair appears twice."""


class DisconnectedError(GraphError):
    """The graph is not connected."""


class NonpositiveWeightError(GraphError):
    """A vertex or edge weight is zero, negative, or not finite."""


class InvalidParameterError(GraphError):
    """A family parameter is out of range."""


class UnknownVertexError(GraphError):
    """A vertex label does not belong to the graph."""


class UnknownEdgeError(GraphError):
    """An edge (or edge ordinal) does not belong to the graph."""


# ---------------------------------------------------------- edge geometry

class IsolatedEdgeError(EdgeRicciError):
    """The edge has no neighboring edges, so its measure is undefined."""


# ---------------------------------------------------------------- transport

class TransportError(EdgeRicciError):
    pass


class MassImbalanceError(TransportError):
    """Total supply and total demand differ."""


class MissingPotentialError(TransportError):
    """A dual potential lacks a value on some support atom."""


# ---------------------------------------------------------------- curvature

class SamePairError(EdgeRicciError):
    """Curvature needs two distinct edges."""


class NotAdjacentError(EdgeRicciError):
    """The bound requires the two edges to share a vertex."""


class NonconstantVertexWeightsError(EdgeRicciError):
    """The weighted overlap bound is stated for constant vertex weights."""


class NotATreeError(EdgeRicciError):
    """The closed-form tree expression requires an acyclic graph."""


# ---------------------------------------------------------------- laplacian

class BadOrientationError(EdgeRicciError):
    """An explicit orientation does not match the edge set."""


class SingularWeightError(EdgeRicciError):
    """A weight matrix entry is zero, negative, or not finite."""


# ------------------------------------------------------------------ spectra

class NotSymmetricError(EdgeRicciError):
    """The eigensolver input is not symmetric within tolerance."""


class NoConvergenceError(EdgeRicciError):
    """Jacobi sweeps did not reach the convergence threshold."""


class NoNonzeroEigenvalueError(EdgeRicciError):
    """The spectrum has no eigenvalue above the zero threshold."""
