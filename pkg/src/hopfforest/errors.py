"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed input data: unknown generator ids, rank mismatches,
    unparseable documents, structurally invalid specs."""


class ConstructionError(Exception):
    """A derived object failed its mandatory consistency checks (for example
    a dualized coproduct table that is not coassociative)."""
