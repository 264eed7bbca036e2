"""
Rainbow-VC Errors
=================
Exception hierarchy shared by every package. Input-shaped problems keep
``ValueError`` in their bases so callers that only know the builtin still
catch them.
"""


class RainbowError(Exception):
    """Base class for all rainbow-vc errors."""
    pass


class DigraphError(RainbowError, ValueError):
    """Malformed digraph: loops, out-of-range ids, wrong host structure."""
    pass


class NotStronglyConnectedError(RainbowError):
    """Operation requires a strongly connected digraph."""
    pass


class UnreachableError(RainbowError):
    """Target vertex is not reachable from the source."""

    def __init__(self, u: int, v: int):
        super().__init__(f"vertex {v} is not reachable from {u}")
        self.u = u
        self.v = v


class ColouringError(RainbowError, ValueError):
    """Colouring does not fit its host digraph or palette."""
    pass


class FamilyParameterError(RainbowError, ValueError):
    """Family generator called outside its parameter range."""
    pass


class OracleGuardError(RainbowError):
    """Instance too large for the brute-force oracle."""
    pass


class PredictionDomainError(RainbowError, ValueError):
    """No theorem covers the requested parameters."""
    pass


class SearchExhaustedError(RainbowError):
    """A randomised search ran out of attempts."""
    pass


class ParseError(RainbowError, ValueError):
    """Text file could not be parsed."""

    def __init__(self, message: str, line: int = 0):
        prefix = f"line {line}: " if line else ""
        super().__init__(prefix + message)
        self.line = line
