"""Shared exception types."""


class TermToolsError(Exception):
    """Base class for all toolkit errors."""


class DataError(TermToolsError):
    """Malformed or unreadable input data; carries file/line context."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        prefix = ""
        if path is not None:
            prefix = str(path)
            if line is not None:
                prefix += f":{line}"
            prefix += ": "
        super().__init__(prefix + message)


class ConfigError(TermToolsError):
    """Invalid configuration or parameter combination."""


class NotFoundError(TermToolsError):
    """Referenced item does not exist."""


class ConflictError(TermToolsError):
    """Operation conflicts with current state, e.g. deciding an item twice."""


class BusyError(TermToolsError):
    """An exclusive operation is already in progress."""
