import logging
import math
import re
import typing
from concurrent.futures import ThreadPoolExecutor
from copy import deepcopy
from fractions import Fraction

from sympy.polys.domains import QQ

from .exceptions import InvalidArgumentError

logger = logging.getLogger(__name__)

_RATIONAL_PATTERN = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def merge_dictionaries(original_data, update, merge_lists=False):
    """
    Recursively merges values of two dictionaries
    """
    merged_data = deepcopy(original_data)

    for key, value in update.items():
        if isinstance(value, dict):
            merged_data[key] = merge_dictionaries(merged_data.get(key, {}), value)
        elif (
            merge_lists
            and isinstance(merged_data.get(key), list)
            and isinstance(value, list)
        ):
            merged_data[key] = merged_data[key] + value
        else:
            merged_data[key] = value

    return merged_data


def to_rational(value) -> "QQ.dtype":
    """
    Converts an int, a Fraction, a 'p/q' string or a field element into an exact rational
    Floats are rejected
    """
    if isinstance(value, QQ.dtype):
        return value

    if isinstance(value, bool) or isinstance(value, float):
        raise InvalidArgumentError("Not an exact rational: {!r}".format(value))

    if isinstance(value, int):
        return QQ(value)

    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)

    if isinstance(value, str):
        match = _RATIONAL_PATTERN.match(value)
        if match is None:
            raise InvalidArgumentError("Cannot parse rational '{}'".format(value))
        numerator, denominator = match.groups()
        denominator = int(denominator) if denominator is not None else 1
        if denominator == 0:
            raise InvalidArgumentError("Zero denominator in '{}'".format(value))
        return QQ(int(numerator), denominator)

    try:
        return QQ.convert(value)
    except Exception:
        raise InvalidArgumentError("Not an exact rational: {!r}".format(value))


def format_rational(value) -> str:
    """
    Canonical 'p/q' text of a rational, or 'p' when the denominator is one
    """
    value = to_rational(value)
    numerator, denominator = int(value.numerator), int(value.denominator)
    if denominator == 1:
        return str(numerator)
    return "{}/{}".format(numerator, denominator)


def to_fraction(value) -> Fraction:
    value = to_rational(value)
    return Fraction(int(value.numerator), int(value.denominator))


def binomial(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def exponent_tuples(count: int, degree: int) -> typing.List[typing.Tuple[int, ...]]:
    """
    All exponent vectors of the given length and total degree, in descending lex order
    """
    if count == 0:
        return [()] if degree == 0 else []

    result = []
    for first in range(degree, -1, -1):
        for rest in exponent_tuples(count - 1, degree - first):
            result.append((first,) + rest)
    return result


def parallel_map(func, items, workers=None):
    """
    Maps 'func' over 'items' keeping the input order
    A thread pool is used when more than one worker is configured
    """
    items = list(items)

    if workers is None:
        from .settings import Settings

        workers = Settings().workers

    if workers <= 1 or len(items) < 2:
        return [func(item) for item in items]

    logger.debug("Mapping %d items over %d workers", len(items), workers)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items))
