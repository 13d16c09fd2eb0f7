"""Exception types shared across the package."""


class CapacityError(RuntimeError):
    """Requested computation exceeds the configured simulation/enumeration budget."""


class ValidationError(ValueError):
    """Invalid parameter or malformed input data."""


class WiringError(ValueError):
    """Gate or circuit references wires inconsistently (overlap, out of range)."""


class LayoutError(ValueError):
    """Register geometry cannot support the requested operation."""
