"""Exception types shared across the package."""


class ConfigError(ValueError):
    """A configuration value violates one of its documented bounds."""


class DomainError(ValueError):
    """An argument lies outside an operation's domain."""
