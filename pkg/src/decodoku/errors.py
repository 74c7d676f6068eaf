"""Exception types shared across the package."""


class DecodokuError(Exception):
    """Base class for all package errors."""


class InvalidCoordinateError(DecodokuError):
    """A qudit, plaquette, or cut index is out of range for the lattice."""


class ConfigurationError(DecodokuError):
    """A game or experiment configuration is invalid."""


class IllegalMoveError(DecodokuError):
    """A player move violates the rules (empty source, bad target, game over)."""


class GameOverError(IllegalMoveError):
    """The game has already ended."""


class SaveParseError(DecodokuError):
    """A save file is malformed. Carries the 1-based offending line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class ReplayError(DecodokuError):
    """A save file parsed cleanly but cannot be replayed."""
