"""
Exception hierarchy shared by all services.
The CLI maps these onto exit codes.
"""

from typing import Optional


class FreeGroupError(ValueError):
    """Root of every error raised by the toolkit"""


class MalformedWordError(FreeGroupError):
    """A letter index lies outside the alphabet"""


class AlphabetMismatchError(FreeGroupError):
    """Two operands live over different alphabets"""


class IdentityWordError(FreeGroupError):
    """The operation is undefined on the empty word"""


class WordSyntaxError(FreeGroupError):
    """The word grammar rejected the input"""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.detail = message
        self.offset = offset


class RelatorViolationError(FreeGroupError):
    """A homomorphism of the double does not respect w_A = w_B"""


class SearchExhaustedError(FreeGroupError):
    """An orbit search hit its node cap before finishing"""

    def __init__(self, consumed: int, message: Optional[str] = None):
        super().__init__(message or f"orbit search exhausted after {consumed} nodes")
        self.consumed = consumed
