"""Exception hierarchy shared by every module."""


class NtnVecError(Exception):
    """Base class for all errors raised by the package."""


class ConfigError(NtnVecError):
    """Configuration could not be turned into valid model objects."""


class ParseError(ConfigError):
    """The config file is not well-formed YAML or has the wrong shape."""


class ValidationError(ConfigError):
    """A configured value breaks an invariant.

    ``field`` holds the dotted path of the offending key, e.g.
    ``scenario.n_dl``.
    """

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.message = message


class AmbiguityError(ValidationError):
    """A radio quantity is given both directly and through its constituents."""


class DomainError(NtnVecError, ValueError):
    """A numerical routine was called outside its domain."""


class InstabilityError(NtnVecError):
    """Offered traffic reached or exceeded the server count (G >= c)."""

    def __init__(self, offered, servers, platform=None):
        where = f" at {platform}" if platform else ""
        super().__init__(
            f"unstable queue{where}: offered traffic G={offered:.6g} >= c={servers}"
        )
        self.offered = offered
        self.servers = servers
        self.platform = platform


class SolverError(NtnVecError):
    """The optimizer failed to converge within its iteration cap."""
