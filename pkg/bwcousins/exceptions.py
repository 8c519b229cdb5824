"""Exceptions raised by bwcousins."""


class BWCError(Exception):
    """Base class for bwcousins errors."""


class SizeError(BWCError):
    """Parameter outside the supported range or too large to materialize."""


class CodeError(BWCError):
    """Binary code error, e.g. a word outside the expected code."""


class LatticeError(BWCError):
    """Lattice operation error."""


class IsometryError(BWCError):
    """Isometry does not have the required shape or does not preserve a lattice."""


class ConsistencyError(BWCError):
    """An identity that must hold by construction failed."""


class BudgetExceeded(BWCError):
    """A search visited more nodes than allowed."""

    def __init__(self, nodes, budget):
        """Set up the error with the node count."""
        super().__init__(f"Search exceeded budget of {budget} nodes ({nodes} visited)")
        self.nodes = nodes
        self.budget = budget


class DocumentError(BWCError):
    """Document file could not be written or read."""
