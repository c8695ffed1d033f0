"""Exception types shared across the package."""


class RegexSyntaxError(SyntaxError):
    """Raised when a pattern does not parse.

    ``offset`` is the UTF-8 byte offset at which parsing failed.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.message = message
        self.offset = offset


class ContractError(ValueError):
    """An operation was called with arguments violating its preconditions."""


class RangeError(IndexError):
    """Invalid query interval."""
