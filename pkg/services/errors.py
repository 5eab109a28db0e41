"""Exception hierarchy shared by the services and surfaced by the CLI and API."""
from typing import Optional


class BchError(ValueError):
    """Base class for every error raised by the encoder toolkit."""


class PolynomialError(BchError):
    """Invalid polynomial operation or polynomial text."""


class NotCoprimeError(PolynomialError):
    """Two polynomials expected to be coprime share a factor."""

    def __init__(self, message: str, common_factor):
        super().__init__(message)
        self.common_factor = common_factor


class FieldError(BchError):
    """GF(2^t) construction failure."""

    def __init__(self, message: str, order: Optional[int] = None):
        super().__init__(message)
        self.order = order


class CodeParameterError(BchError):
    """Code parameters that do not describe a usable cyclic code."""


class LengthMismatchError(BchError):
    """A message, codeword or payload has the wrong length."""


class CrtInvariantError(BchError):
    """A CRT constant or CRT sum failed re-verification."""
