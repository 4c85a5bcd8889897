"""Exception types shared across the toolkit."""


class WeakIndexError(Exception):
    """Base class for all toolkit errors."""


class FormatError(WeakIndexError):
    """Malformed textual input; carries a 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(WeakIndexError):
    """Structurally invalid automaton, tree, or game."""


class EmptyLanguage(WeakIndexError):
    """Raised by trim when the initial state recognizes the empty language."""


class IndexTooHigh(WeakIndexError):
    """Input automaton uses ranks outside the band a construction requires."""


class PreconditionViolated(WeakIndexError):
    """A construction's pattern precondition fails; carries the witness."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class UnsupportedGapConstruction(WeakIndexError):
    """The weak (0,3) construction is out of scope; names the attainable index."""

    def __init__(self, attainable_index):
        super().__init__(
            "language is weakly recognizable with index "
            f"({attainable_index[0]},{attainable_index[1]}), but that "
            "construction is not implemented"
        )
        self.attainable_index = attainable_index


class NonWeaklyRecognizable(WeakIndexError):
    """Non-Borel language; carries the split witness."""

    def __init__(self, witness=None):
        super().__init__("language is non-Borel and therefore not weakly recognizable")
        self.witness = witness


class GameTooLarge(WeakIndexError):
    """Brute-force solver size guard exceeded."""
