"""Exception types shared across the package."""

from __future__ import annotations


class HopnetError(Exception):
    """Base class for package-specific failures."""


class SchemaError(HopnetError):
    """A JSON document does not match the expected shape.

    ``path`` names the offending field, e.g. "nodes[3].id" or "h_max".
    """

    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path


class InfeasibleInstanceError(HopnetError):
    """No placement can serve every source within the hop bound.

    ``witness`` is the smallest-id source that no potential sink reaches.
    """

    def __init__(self, witness, message=None):
        super().__init__(message or f"source {witness} cannot reach any potential sink within the hop bound")
        self.witness = witness


class SizeLimitError(HopnetError):
    """The candidate set is too large for exhaustive search."""


class LpSolveError(HopnetError):
    """The LP solver failed; ``round_index`` locates the failing resolve."""

    def __init__(self, round_index, message):
        super().__init__(f"LP solve failed in round {round_index}: {message}")
        self.round_index = round_index
