class MsortError(Exception):
    """Base class for errors raised by msort."""


class CodeError(MsortError, ValueError):
    """A malformed category code, symbol class or remap rule."""


class ParseError(MsortError):
    """A resource file could not be parsed; carries file name and line."""

    def __init__(self, source: str, line: int, message: str):
        self.source = source
        self.line = line
        self.message = message
        super().__init__(f"{source}:{line}: {message}")


class UnknownWordError(MsortError, KeyError):
    def __init__(self, word: str):
        self.word = word
        super().__init__(word)

    def __str__(self):
        return f"unknown word {self.word!r}"


class MissingColumnError(MsortError, KeyError):
    def __init__(self, column: str, available=()):
        self.column = column
        self.available = tuple(available)
        super().__init__(column)

    def __str__(self):
        avail = ", ".join(self.available)
        return f"no column named {self.column!r} (have: {avail})"
