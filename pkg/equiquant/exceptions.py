import typing


class EquiquantError(Exception):
    """
    Base class of every error raised by equiquant
    """

    exit_code = 1


class InvalidArgumentError(EquiquantError, ValueError):
    exit_code = 2


class ArgumentTypeError(InvalidArgumentError, TypeError):
    pass


class WeightMismatchError(InvalidArgumentError):
    pass


class TruncationError(EquiquantError):
    """
    A result left the declared truncation (max xi-degree, max x-degree)
    """

    exit_code = 2


class CriticalShiftError(EquiquantError):
    """
    Quantization was requested at a critical shift value
    Carries the witness pairs which make the shift critical
    """

    exit_code = 3

    def __init__(self, message, delta=None, witnesses=()):
        super().__init__(message)
        self.delta = delta
        self.witnesses = tuple(witnesses)


class InvariantViolation(EquiquantError):
    exit_code = 4


class SingularGramError(InvariantViolation):
    pass


class SpectrumError(InvariantViolation):
    pass


class ZeroDivisorError(InvariantViolation):
    """
    The triangular system hit a vanishing eigenvalue difference with a nonzero right side
    """

    def __init__(self, message, upper=None, lower=None):
        super().__init__(message)
        self.upper = upper
        self.lower = lower


class QuantizationError(EquiquantError):
    exit_code = 3


def parse_errors(
    errors: typing.List[typing.Tuple[str, str]],
    hints: typing.Dict[str, type],
    function_name: str = "",
) -> str:
    """
    Generates an exception message based on which arguments failed
    """
    error_message = "       Argument '{0}' was not of type {1}. Actual type was {2}."
    output = "\n  The following argument errors were encountered"
    if function_name:
        output += " in '{}'".format(function_name)
    output += ":"

    for argument_name, argument_type in errors:
        hint = hints.get(argument_name, type(None))
        output += "\n{}".format(error_message.format(argument_name, hint, argument_type))
    return output


def raise_errors(exception, message):
    raise exception(message)


def process_errors(parser, exception, errors, hints, function_name=""):
    message = parser(errors, hints, function_name)
    raise_errors(exception, message)
