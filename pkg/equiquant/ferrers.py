"""
Ferrers diagrams labelling irreducible h_0-modules, the decomposition of the
symmetric powers of g_-1, the Littlewood-Richardson rule and the tilde-tree
"""
import collections
import functools
import logging
import typing

from . import domain_types as dt
from .decorators import validated
from .exceptions import InvalidArgumentError, InvariantViolation
from .settings import Settings

logger = logging.getLogger(__name__)


class FerrersDiagram(tuple):
    """
    Non-increasing tuple of positive row lengths; trailing zeros are trimmed
    """

    def __new__(cls, rows=()):
        rows = [int(row) for row in rows]
        if any(row < 0 for row in rows):
            raise InvalidArgumentError("Diagram rows must be non-negative: {}".format(rows))
        if any(upper < lower for upper, lower in zip(rows, rows[1:])):
            raise InvalidArgumentError("Diagram rows must be non-increasing: {}".format(rows))
        while rows and rows[-1] == 0:
            rows.pop()
        return super().__new__(cls, rows)

    @property
    def boxes(self):
        return sum(self)

    def row(self, i):
        """
        0-based row length, zero past the last row
        """
        return self[i] if i < len(self) else 0

    def padded(self, length):
        return tuple(self) + (0,) * (length - len(self))

    def __str__(self):
        return format_diagram(self)

    def __repr__(self):
        return "FerrersDiagram({})".format(tuple(self))


EMPTY = FerrersDiagram()


def as_diagram(value) -> FerrersDiagram:
    if isinstance(value, FerrersDiagram):
        return value
    if isinstance(value, str):
        return parse_diagram(value)
    return FerrersDiagram(value)


def parse_diagram(text: str) -> FerrersDiagram:
    """
    Parses "6,4,2,2"; the empty string and "0" are the empty diagram
    """
    text = text.strip()
    if text in ("", "0", "()"):
        return EMPTY
    try:
        rows = [int(part) for part in text.strip("()").split(",") if part.strip()]
    except ValueError:
        raise InvalidArgumentError("Cannot parse diagram '{}'".format(text))
    return FerrersDiagram(rows)


def format_diagram(diagram) -> str:
    return ",".join(str(row) for row in diagram)


def format_graded(graded: dt.GradedDiagram) -> str:
    """
    "k1,k2@degree", e.g. "2@1" and "@0" for the empty diagram at degree 0
    """
    return "{}@{}".format(format_diagram(graded.diagram), graded.degree)


def _check_length(diagram, n):
    if len(diagram) > n:
        raise InvalidArgumentError(
            "Diagram {} has more than n={} rows".format(format_diagram(diagram), n)
        )


def g_minus_one_diagram(spec: dt.AlgebraSpec) -> FerrersDiagram:
    if spec.family is dt.Family.orthogonal:
        return FerrersDiagram((1, 1))
    return FerrersDiagram((2,))


def _partitions(total, max_parts, max_part=None):
    if max_part is None:
        max_part = total
    if total == 0:
        yield ()
        return
    if max_parts == 0:
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - first, max_parts - 1, first):
            yield (first,) + rest


def is_admissible(diagram, spec: dt.AlgebraSpec, k: int) -> bool:
    """
    Whether the diagram labels a summand of the k-th symmetric power of g_-1
    """
    n = spec.n
    if len(diagram) > n or sum(diagram) != 2 * k:
        return False
    rows = FerrersDiagram(diagram).padded(n)
    if spec.family is dt.Family.orthogonal:
        if any(rows[2 * i] != rows[2 * i + 1] for i in range(n // 2)):
            return False
        return n % 2 == 0 or rows[n - 1] == 0
    return all(row % 2 == 0 for row in rows[: n - 1])


@functools.lru_cache(maxsize=None)
def _admissible(spec, k):
    return tuple(
        FerrersDiagram(rows)
        for rows in _partitions(2 * k, spec.n)
        if is_admissible(rows, spec, k)
    )


@validated
def admissible_diagrams(spec: dt.AlgebraSpec, k: int) -> typing.List[FerrersDiagram]:
    """
    Diagrams of the irreducible summands of the k-th symmetric power of g_-1,
    in descending lexicographic order
    """
    if k < 0:
        raise InvalidArgumentError("Degree must be non-negative")
    return list(_admissible(spec, k))


@validated
def dim_irrep(diagram: tuple, n: int) -> int:
    """
    Hook-content formula for the gl(n) module of highest weight 'diagram'
    """
    diagram = as_diagram(diagram)
    _check_length(diagram, n)
    columns = [sum(1 for row in diagram if row > c) for c in range(diagram.row(0))]
    numerator, denominator = 1, 1
    for r, row in enumerate(diagram):
        for c in range(row):
            numerator *= n + c - r
            denominator *= (row - c - 1) + (columns[c] - r - 1) + 1
    if numerator % denominator:
        raise InvariantViolation("Hook-content quotient is not an integer")
    return numerator // denominator


@validated
def normalize(diagram: tuple, n: int) -> FerrersDiagram:
    """
    Strips full columns of height n
    """
    diagram = as_diagram(diagram)
    _check_length(diagram, n)
    if len(diagram) < n:
        return diagram
    shift = diagram[n - 1]
    return FerrersDiagram(row - shift for row in diagram)


@validated
def dominance_lt(lower: tuple, upper: tuple) -> bool:
    """
    Componentwise lower <= upper with at least one strict inequality
    """
    length = max(len(lower), len(upper))
    lower = as_diagram(lower).padded(length)
    upper = as_diagram(upper).padded(length)
    return lower != upper and all(l <= u for l, u in zip(lower, upper))


def _horizontal_strips(shape, size, n):
    """
    Shapes obtained by adding a horizontal strip of 'size' boxes, at most n rows
    """
    shape = list(shape) + [0] * (n - len(shape))

    def extend(row, remaining, current):
        if row == n:
            if remaining == 0:
                yield tuple(current)
            return
        limit = remaining if row == 0 else min(remaining, shape[row - 1] - shape[row])
        for added in range(limit, -1, -1):
            yield from extend(row + 1, remaining - added, current + [shape[row] + added])

    yield from extend(0, size, [])


def _is_lattice(word):
    counts = collections.Counter()
    for label in word:
        counts[label] += 1
        if label > 0 and counts[label] > counts[label - 1]:
            return False
    return True


def _lr_fillings(a, b, n):
    # States are (shape, labels per row), labels appended left to right in each row
    states = [(tuple(a.padded(n)), tuple(() for _ in range(n)))]
    for label, size in enumerate(b):
        next_states = []
        for shape, rows in states:
            for new_shape in _horizontal_strips(shape, size, n):
                new_rows = tuple(
                    rows[r] + (label,) * (new_shape[r] - shape[r]) for r in range(n)
                )
                word = [x for row in new_rows for x in reversed(row)]
                if _is_lattice(word):
                    next_states.append((new_shape, new_rows))
        states = next_states
    return [FerrersDiagram(shape) for shape, _ in states]


@validated
def lr_tensor(a: tuple, b: tuple, n: int, normalized: bool = True) -> collections.Counter:
    """
    Decomposition of a (x) b by lattice-word Littlewood-Richardson tableaux,
    results taller than n discarded; multiplicities as a Counter
    """
    a, b = as_diagram(a), as_diagram(b)
    _check_length(a, n)
    _check_length(b, n)
    result = collections.Counter()
    for shape in _lr_fillings(a, b, n):
        result[normalize(shape, n) if normalized else shape] += 1
    return result


@validated
def dual_diagram(diagram: tuple, n: int) -> FerrersDiagram:
    """
    Contragredient module: complement in the n x k_1 rectangle, read reversed
    """
    diagram = as_diagram(diagram)
    _check_length(diagram, n)
    width = diagram.row(0)
    rows = [width - diagram.row(n - 1 - i) for i in range(n)]
    return normalize(FerrersDiagram(rows), n)


@functools.lru_cache(maxsize=None)
def _tilde_tree(root, k, spec):
    n = spec.n
    dual = dual_diagram(g_minus_one_diagram(spec), n)
    levels = [(root,)]
    links = [()]
    for level in range(k):
        degree = k - level - 1
        products = {parent: set(lr_tensor(parent, dual, n)) for parent in levels[-1]}
        children, level_links = [], []
        for candidate in _admissible(spec, degree):
            key = normalize(candidate, n)
            parents = tuple(p for p in levels[-1] if key in products[p])
            if parents:
                children.append(candidate)
                level_links.append((candidate, parents))
        levels.append(tuple(children))
        links.append(tuple(level_links))
    tree = dt.TildeTree(root, k, tuple(levels), tuple(links))
    if Settings().invariants:
        check_tree_dominance(tree)
    logger.debug(
        "Tilde-tree of %s@%d: %s", format_diagram(root), k, [len(l) for l in levels]
    )
    return tree


def check_tree_dominance(tree: dt.TildeTree):
    for level_links in tree.links:
        for child, parents in level_links:
            if not any(dominance_lt(child, parent) for parent in parents):
                raise InvariantViolation(
                    "Tree child {} is not dominated by any of its parents {}".format(
                        format_diagram(child), [format_diagram(p) for p in parents]
                    )
                )


@validated
def tilde_tree(root: tuple, k: int, spec: dt.AlgebraSpec) -> dt.TildeTree:
    """
    Level l+1 holds the summands of the (k-l-1)-th symmetric power of g_-1 which
    occur in (dual of g_-1) (x) (a level-l diagram)
    """
    root = as_diagram(root)
    if not is_admissible(root, spec, k):
        raise InvalidArgumentError(
            "Diagram {} is not a summand of degree {} for {} n={}".format(
                format_diagram(root) or "()", k, spec.family.name, spec.n
            )
        )
    return _tilde_tree(root, k, spec)
