"""Exception types shared across the package."""


class LLCurveError(Exception):
    """Base class for all domain errors raised by llcurves."""


# -- graph construction / enumeration ---------------------------------------

class NonTrivalentVertex(LLCurveError):
    """Some vertex of the input does not have degree exactly 3."""


class Disconnected(LLCurveError):
    """The input graph is not connected."""


class GenusTooSmall(LLCurveError):
    """Genus below the supported floor (2)."""


# -- genus reduction ---------------------------------------------------------

class DegenerateReduction(LLCurveError):
    """Removing the edge would create a vertex-free circle, a dangling
    vertex, or a graph of genus below 2."""


class DisconnectedReduction(LLCurveError):
    """The removed edge was a bridge, so the result is disconnected."""


# -- curve-side systems ------------------------------------------------------

class NotTrivalent(LLCurveError):
    """Biresidue systems are only defined for purely trivalent curves."""


class HasBasePoints(LLCurveError):
    """Node separation is only defined once the canonical system is
    base-point free."""


# -- gluing data, gauge, words -----------------------------------------------

class DimensionMismatch(LLCurveError):
    """Gauge data does not match the gluing (wrong rank or wrong graph)."""


class GraphMismatch(LLCurveError):
    """The two operands live over different graphs (or different genera)."""


# Word-level operations use this name for the same condition.
MismatchedGraph = GraphMismatch


class UnknownGenerator(LLCurveError):
    """A word refers to a generator the representation does not have."""


class RelationViolated(LLCurveError):
    """The representation does not satisfy the surface relation."""


class GluingObstruction(LLCurveError):
    """Conjugacy classes fail to match across an edge.

    Carries the offending edge id in ``edge``.
    """

    def __init__(self, edge, message=None):
        self.edge = edge
        super().__init__(message or f"conjugacy classes do not match across edge {edge}")


# -- command-line / batch ------------------------------------------------------

class SuiteFailure(LLCurveError):
    """A property sweep failed; ``check`` and ``witness`` identify the first
    failing property."""

    def __init__(self, check, witness):
        self.check = check
        self.witness = witness
        super().__init__(f"property {check!r} failed: {witness}")


class IoFailure(LLCurveError):
    """A file could not be read, written, or parsed."""
