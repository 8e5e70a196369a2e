"""Exception types shared across the package."""


class DomainViolationError(ValueError):
    """A point, coordinate or code lies outside the declared grid domain."""


class UnsupportedDimensionError(ValueError):
    """The requested dimension is not supported by this curve or generator."""


class ParseError(ValueError):
    """A workload file is malformed; the message carries path and line number."""


class ConfigurationError(ValueError):
    """A benchmark or query configuration is unusable as given."""


class UnsupportedFeatureError(RuntimeError):
    """A deliberately unimplemented feature (e.g. deletions) was requested."""
