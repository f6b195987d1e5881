"""Exception hierarchy.

Structural problems with the input (bad table shapes, out-of-range entries)
are kept apart from axiom failures, which are reported through
:class:`ybe.report.CheckReport` rather than raised.
"""


class YBEError(Exception):
    pass


class MalformedTableError(YBEError, ValueError):
    """A table has the wrong shape or holds an out-of-range entry."""


class InvariantError(YBEError):
    """An internal-consistency assertion failed.

    Raised where the mathematics guarantees a property (well-defined
    retraction, single-valued vec -> perm map, lift independence, ...);
    seeing one means a bug or an input that is not what it claims to be.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAMultipermutationError(YBEError):
    """The retraction chain stabilised above a single point."""

    def __init__(self, message, chain):
        super().__init__(message)
        self.chain = chain


class NotABraceError(YBEError):
    """An operation needing a valid left brace got something else."""


class PreconditionError(YBEError):
    """An identity was invoked on an object outside its hypotheses."""


class AxiomError(YBEError):
    """A braided-group axiom failed during a conversion."""

    def __init__(self, axiom, witness):
        super().__init__(f"axiom {axiom} fails at {witness}")
        self.axiom = axiom
        self.witness = witness


class RefusedError(YBEError):
    """The requested computation exceeds a configured bound."""

    def __init__(self, message, bound):
        super().__init__(message)
        self.bound = bound


class RadiusExhaustedError(YBEError):
    """A structure-group element lies outside the current ball."""

    def __init__(self, message, radius):
        super().__init__(message)
        self.radius = radius
