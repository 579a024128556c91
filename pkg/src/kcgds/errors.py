"""Exception hierarchy shared by the library and the command line."""


class KcgdsError(Exception):
    """Base class for every error raised by this package."""


class InputError(KcgdsError, ValueError):
    """Bad user input: unparsable files, invalid ids, bad parameters."""


class GraphFormatError(InputError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class EmptyGraphError(InputError):
    pass


class InvalidVertexSetError(InputError):
    pass


class ParameterError(InputError):
    pass


class EmptyDocumentError(InputError):
    pass


class PreconditionError(KcgdsError):
    """The input is well formed but the algorithm cannot run on it."""


class UndefinedMetricError(PreconditionError, ValueError):
    pass


class NoTrianglesError(PreconditionError):
    pass


class NoCliquesError(PreconditionError):
    pass


class NoKeywordsError(PreconditionError):
    pass


class ResourceLimitError(KcgdsError):
    def __init__(self, message, limit=None):
        self.limit = limit
        super().__init__(message)
