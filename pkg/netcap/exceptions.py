"""Handle custom netcap exceptions."""


class NetcapError(Exception):
    """Base class for all non-trivial errors raised by netcap."""


class NetcapWarning(Warning):
    """Base class for all non-trivial warnings raised by netcap."""


class LimitWarning(NetcapWarning):
    """Raised when an enumeration is allowed but expected to be slow."""


class NetworkParseError(NetcapError):
    """Raised when a network, function or code file cannot be read."""

    def __init__(self, message, source=None, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super(NetworkParseError, self).__init__(message)
        self.source = source
        self.line = line
        self.column = column


class ValidationError(NetcapError):
    """Raised for a violated structural rule of a network."""

    def __init__(self, message, rule, subject):
        super(ValidationError, self).__init__(message)
        self.rule = rule
        self.subject = subject


class MultipleValidationError(NetcapError):
    """Used for grouping and raising multiple ValidationErrors of one network."""

    def __init__(self, validation_errors):
        self.validation_errors = validation_errors

    def __str__(self):
        """Represent multiple netcap ValidationErrors."""
        message = ["\n"]
        for err in self.validation_errors:
            message.append("\t" + str(err))
        return "\n".join(message)


class CycleError(NetcapError):
    """Raised when an ordering is requested on a cyclic graph."""


class UnknownIdentifierError(NetcapError, KeyError):
    """Raised for a node id, edge id or source index the network does not have."""

    def __str__(self):
        return str(self.args[0])


class LimitExceededError(NetcapError):
    """Raised when a computation would exceed one of the configured limits."""

    def __init__(self, limit, requested, allowed):
        super(LimitExceededError, self).__init__(
            f"limit {limit} exceeded: {requested} requested, {allowed} allowed"
        )
        self.limit = limit
        self.requested = requested
        self.allowed = allowed


class NonPrimeFieldError(NetcapError):
    """Raised when finite-field arithmetic is requested over a non-prime q."""


class InvalidLinearSpecError(NetcapError):
    """Raised for a coefficient matrix that does not define a linear target."""


class InvalidContextError(NetcapError):
    """Raised for malformed source sets, assignments or partition contexts."""


class ConsistencyError(NetcapError):
    """Raised when an internal consistency check fails. Always a bug."""


class ProblemMismatchError(NetcapError):
    """Raised when a target function does not fit the network it is paired with."""


class ShapeMismatchError(NetcapError):
    """Raised when a network code does not fit its network or target function."""


class NotGlobalCutError(NetcapError):
    """Raised when an operation needs a cut separating every source."""


class DecoderConflictError(NetcapError):
    """Raised when the messages on a cut do not determine the target value."""

    def __init__(self, message, witness=None):
        super(DecoderConflictError, self).__init__(message)
        self.witness = witness


class NonSurjectiveEdgeError(NetcapError):
    """Raised when an edge of a cut does not carry every possible message."""


def raise_collected(errors):
    """Return errors for all collected exceptions."""
    if len(errors) > 1:
        raise MultipleValidationError(errors)
    elif len(errors) == 1:
        raise errors[0]
