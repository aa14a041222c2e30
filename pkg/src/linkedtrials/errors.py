"""Exception hierarchy shared by all modules."""


class LinkedTrialsError(Exception):
    """Base class for every error raised by this package."""


class InvalidArgumentError(LinkedTrialsError, ValueError):
    pass


class DataError(LinkedTrialsError):
    """Input data is unusable: bad rows, missing keys, duplicate ids."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}"
            if line is not None:
                where += f":{line}"
            where += ": "
        elif line is not None:
            where = f"line {line}: "
        super().__init__(where + message)


class XmlParseError(DataError):
    """Malformed XML; carries the 1-based line and 0-based column."""

    def __init__(self, message, path=None, line=None, column=None):
        self.column = column
        if line is not None and column is not None:
            message = f"{message} (line {line}, column {column})"
            super().__init__(message, path=path)
            self.line = line
        else:
            super().__init__(message, path=path, line=line)


class SchemaError(DataError):
    """Well-formed XML that lacks a required element."""


class DuplicateKeyError(DataError):
    pass


class ConfigError(LinkedTrialsError):
    """A link specification or run configuration is inconsistent."""
