"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid model or run configuration (bad rates, malformed JSON, ...)."""


class NumericalFailure(RuntimeError):
    """An integration broke a trace/positivity invariant beyond tolerance."""
