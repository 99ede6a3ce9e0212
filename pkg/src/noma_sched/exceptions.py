"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Scenario configuration failed validation; message carries the field path."""


class InvalidAllocationError(ValueError):
    """Power/selection vectors violate an allocation invariant."""


class InvalidOrderError(ValueError):
    """Two-user split called with the last-SIC user not having the smaller NCR."""


class GridTooLargeError(ValueError):
    """Exhaustive grid search refused: instance exceeds the combinatorial guard."""
