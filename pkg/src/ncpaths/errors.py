"""Exception taxonomy for the whole library.

Grouped by the stage that raises them; everything derives from
:class:`NcpathsError` so callers can catch library failures in one arm.
"""


class NcpathsError(Exception):
    """Base class for all ncpaths errors."""


# ---------------------------------------------------------------------------
# Embedding construction / instance files
# ---------------------------------------------------------------------------

class MalformedRotation(NcpathsError):
    """Rotation lists are inconsistent (bad ids, self-loops, parallel edges,
    or an edge present in only one endpoint's list)."""


class NotPlanar(NcpathsError):
    """Euler check n - m + f = 2 failed for the given rotation system."""


class Disconnected(NcpathsError):
    """Input graph is not connected."""


class OuterNotAFace(NcpathsError):
    """The outer hint does not match any face orbit of the embedding."""


class OuterNotSimple(NcpathsError):
    """The outer boundary repeats a vertex; only simple external cycles are
    supported."""


class NotAClosedWalk(NcpathsError):
    """Dart sequence passed as a cycle does not chain head-to-tail."""


class EnclosesOuterFace(NcpathsError):
    """The walk does not bound a finite region of the embedding."""


class ParseError(NcpathsError):
    """Instance/pairs file could not be parsed; carries file and line."""

    def __init__(self, path, line, msg):
        self.path = path
        self.line = line
        super().__init__(f"{path}:{line}: {msg}")


# ---------------------------------------------------------------------------
# Terminal pairs
# ---------------------------------------------------------------------------

class TerminalNotOnBoundary(NcpathsError):
    """A terminal vertex does not lie on the external face."""


class NotWellFormed(NcpathsError):
    """Terminal pairs interleave; carries the witness pair of indices."""

    def __init__(self, witness, msg=None):
        self.witness = witness
        super().__init__(msg or f"pairs {witness[0]} and {witness[1]} interleave")


class ImbalancedScan(NcpathsError):
    """Defensive: parenthesis scan went out of balance after validation."""


# ---------------------------------------------------------------------------
# Shortest-path tree sequence
# ---------------------------------------------------------------------------

class RootNotOnOuterFace(NcpathsError):
    """Requested tree root is not on the external face."""


class RootsNotClockwise(NcpathsError):
    """Root list is not a clockwise subsequence of the boundary cycle."""


class ModeUnavailable(NcpathsError):
    """Requested engine mode is not built in this version."""


# ---------------------------------------------------------------------------
# Supergraph / union walks
# ---------------------------------------------------------------------------

class WalkEscaped(NcpathsError):
    """A leftmost/rightmost walk failed to reach its terminal.  Signals a
    violated structural assumption and must be surfaced, never repaired."""


class SpliceEndpointNotOnParent(NcpathsError):
    """Path splice junction does not lie on the parent path (violated
    ancestor-containment assumption)."""


# ---------------------------------------------------------------------------
# Verification oracles
# ---------------------------------------------------------------------------

class NotAPath(NcpathsError):
    """Vertex sequence handed to a path checker is not a simple path."""


# ---------------------------------------------------------------------------
# Generators / weight preprocessing
# ---------------------------------------------------------------------------

class ParamOutOfRange(NcpathsError):
    """Generator parameter outside its documented range."""


class NonPositiveWeight(NcpathsError):
    """Edge weight must be a positive integer."""


class WeightCapExceeded(NcpathsError):
    """Total subdivided weight exceeds the configured cap."""
