"""Exception types shared across the package."""


class HolocollapseError(Exception):
    """Base class for all library errors."""


# graphs and matchgates
class GraphError(HolocollapseError, ValueError):
    pass


class SelfLoop(GraphError):
    pass


class OverlappingExternalNodes(GraphError):
    pass


class ExternalOrderingViolation(GraphError):
    pass


class EmbeddingInconsistent(GraphError):
    pass


class DanglingExternalNode(GraphError):
    pass


class DoubleWiredNode(GraphError):
    pass


# perfect matchings
class InstanceTooLarge(HolocollapseError):
    pass


class NotSkewSymmetric(HolocollapseError, ValueError):
    pass


# signatures
class ArityMismatch(HolocollapseError, ValueError):
    pass


class BadBlockIndex(HolocollapseError, IndexError):
    pass


class IndexOutOfRange(HolocollapseError, IndexError):
    pass


class ZeroCorner(HolocollapseError, ValueError):
    pass


class InconsistentEdgeEntries(HolocollapseError):
    pass


class DimensionMismatch(HolocollapseError, ValueError):
    pass


class RelationNotNull(HolocollapseError):
    pass


class PreconditionUnmet(HolocollapseError):
    pass


# clusters and rank
class NotApplicable(HolocollapseError):
    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class NoClusterFound(HolocollapseError):
    pass


# inverse construction
class SingularBlock(HolocollapseError):
    pass


class NotFullRank(HolocollapseError):
    pass


class PseudoSignatureViolated(HolocollapseError):
    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class ZeroScale(HolocollapseError, ValueError):
    pass


class BadIndices(HolocollapseError, ValueError):
    pass


class DegenerateDrawing(HolocollapseError, ValueError):
    pass


# bases and collapse
class ShapeMismatch(HolocollapseError, ValueError):
    pass


class UnverifiedBasis(ShapeMismatch):
    """Generator domain signatures cannot be recovered from a non-square basis."""


class RankDeficient(HolocollapseError):
    pass


class InconsistentSystem(HolocollapseError):
    pass


class InformationLoss(HolocollapseError):
    pass


class NoFullRankGenerator(HolocollapseError):
    pass


class ClusterNotFound(HolocollapseError):
    pass


class SingularMZ(HolocollapseError):
    pass


# cli
class BoundsError(HolocollapseError, ValueError):
    pass


class UnknownSuite(HolocollapseError, KeyError):
    pass
