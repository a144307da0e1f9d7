"""Exception hierarchy shared by every subpackage."""


class TorfError(Exception):
    """Base class for all library errors."""


class ParseError(TorfError):
    """A literal (polynomial, module, sheaf) could not be parsed.

    ``line`` and ``column`` are 1-based and refer to the offending text when
    known.
    """

    def __init__(self, message, text=None, column=None, line=None):
        self.message = message
        self.text = text
        self.column = column
        self.line = line
        where = ""
        if line is not None:
            where += f"line {line}, "
        if column is not None:
            where += f"column {column}: "
        super().__init__(where + message)


class ConfigError(TorfError):
    """Invalid run configuration (unknown keys, bad values)."""


class WindowTooSmall(TorfError):
    """The enumeration window cannot certify the requested statement."""


class UnsupportedBackend(TorfError):
    """The operation is not available for this ring class."""


class DimensionTooLarge(TorfError):
    """Depth-based predicates are only implemented in Krull dimension <= 1."""


class ZeroModule(TorfError):
    """The operation needs a nonzero module."""
