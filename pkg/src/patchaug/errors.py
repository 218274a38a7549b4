"""Error types shared across the package."""


class ContractError(ValueError):
    """A caller violated an operation's precondition or a config invariant."""


class MalformedDataError(ValueError):
    """An input file or byte stream does not match its declared format."""
