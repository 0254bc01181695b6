"""
Critical shift values: coincidences of Casimir eigenvalues between a summand
and the descendants of its tilde-tree
"""
import functools
import logging
import typing

from sympy.polys.domains import QQ

from . import domain_types as dt
from .casimir import eigenvalue
from .decorators import validated
from .exceptions import InvalidArgumentError, InvariantViolation
from .ferrers import (
    admissible_diagrams,
    as_diagram,
    dominance_lt,
    format_graded,
    tilde_tree,
)
from .settings import Settings
from .utils import parallel_map, to_rational

logger = logging.getLogger(__name__)


class CriticalValue(
    typing.NamedTuple(
        "CriticalValue",
        [
            ("delta", typing.Any),
            ("witnesses", typing.Tuple[dt.Witness, ...]),
            ("family", dt.Family),
            ("n", int),
        ],
    )
):
    __slots__ = ()

    @property
    def upper(self):
        return self.witnesses[0].upper

    @property
    def lower(self):
        return self.witnesses[0].lower


def _graded(value) -> dt.GradedDiagram:
    diagram, degree = value
    return dt.GradedDiagram(as_diagram(diagram), int(degree))


def _family_constants(spec):
    n = spec.n
    if spec.family is dt.Family.orthogonal:
        return QQ(n, n - 1), 4 * (n - 1)
    return QQ.one, 4 * (n + 1)


@validated
def critical_delta(upper: tuple, lower: tuple, spec: dt.AlgebraSpec):
    """
    The shift at which the eigenvalues of the two graded diagrams coincide
    """
    upper, lower = _graded(upper), _graded(lower)
    if lower.degree >= upper.degree:
        raise InvalidArgumentError("The lower diagram must have the smaller degree")
    for graded in (upper, lower):
        if len(graded.diagram) > spec.n or graded.diagram.boxes != 2 * graded.degree:
            raise InvalidArgumentError(
                "{} does not fit the degree or rank".format(format_graded(graded))
            )

    k, l = upper.diagram.padded(spec.n), lower.diagram.padded(spec.n)
    offset, denominator = _family_constants(spec)
    steps = upper.degree - lower.degree
    total = sum(
        (k_i - l_i) * (k_i + l_i - 2 * i) for i, (k_i, l_i) in enumerate(zip(k, l), start=1)
    )
    value = offset + QQ(total, denominator * steps)

    if Settings().invariants:
        difference = eigenvalue(upper.diagram, spec) - eigenvalue(lower.diagram, spec)
        if difference.c2 or difference.c1 != -steps or difference.root() != value:
            raise InvariantViolation(
                "Closed-form shift {} disagrees with the eigenvalue difference {!r}".format(
                    value, difference
                )
            )
    return value


@validated
def positivity_bound(upper: tuple, lower: tuple, spec: dt.AlgebraSpec):
    """
    Lower bound of the critical shift, positive as soon as some row of the upper diagram is longer
    """
    upper, lower = _graded(upper), _graded(lower)
    k, l = upper.diagram.padded(spec.n), lower.diagram.padded(spec.n)
    _, denominator = _family_constants(spec)
    steps = upper.degree - lower.degree
    squares = sum(k_i * k_i - l_i * l_i for k_i, l_i in zip(k, l))
    bound = QQ(squares, denominator * steps)
    if spec.family is dt.Family.symplectic:
        bound += QQ(1, spec.n + 1)
    return bound


def _root_values(spec, k):
    values = []
    for root in admissible_diagrams(spec, k):
        tree = tilde_tree(root, k, spec)
        upper = dt.GradedDiagram(root, k)
        for level, diagrams in enumerate(tree.levels[1:], start=1):
            for diagram in diagrams:
                lower = dt.GradedDiagram(diagram, k - level)
                value = critical_delta(upper, lower, spec)
                if Settings().invariants:
                    bound = positivity_bound(upper, lower, spec)
                    if not (bound > 0 and value >= bound):
                        raise InvariantViolation(
                            "Critical shift {} of {} / {} is not above the positive bound {}".format(
                                value, format_graded(upper), format_graded(lower), bound
                            )
                        )
                values.append((value, dt.Witness(upper, lower)))
    return values


@functools.lru_cache(maxsize=None)
def _critical_set(spec, kmax):
    grouped = {}
    for values in parallel_map(lambda k: _root_values(spec, k), range(1, kmax + 1)):
        for value, witness in values:
            grouped.setdefault(value, []).append(witness)
    result = tuple(
        CriticalValue(value, tuple(grouped[value]), spec.family, spec.n)
        for value in sorted(grouped)
    )
    logger.debug(
        "%d critical shifts for %s n=%d up to degree %d",
        len(result), spec.family.name, spec.n, kmax,
    )
    return result


@validated
def critical_set(spec: dt.AlgebraSpec, kmax: int) -> typing.List[CriticalValue]:
    """
    Critical shifts up to the horizon kmax, ascending, each with all of its witness pairs
    """
    if kmax < 1:
        raise InvalidArgumentError("The horizon kmax must be at least 1")
    return list(_critical_set(spec, kmax))


@validated
def is_critical(lam, mu, spec: dt.AlgebraSpec, kmax: int) -> dt.CriticalReport:
    """
    Criticality only depends on the shift mu - lam
    """
    delta = to_rational(mu) - to_rational(lam)
    for value in critical_set(spec, kmax):
        if value.delta == delta:
            return dt.CriticalReport(delta, True, value.witnesses)
    return dt.CriticalReport(delta, False, ())


@validated
def dominated_pairs(spec: dt.AlgebraSpec, kmax: int) -> typing.List[dt.Witness]:
    """
    All pairs of summands with the lower one of smaller degree and strictly dominated
    """
    pairs = []
    for k in range(1, kmax + 1):
        for upper in admissible_diagrams(spec, k):
            for l in range(k):
                for lower in admissible_diagrams(spec, l):
                    if dominance_lt(lower, upper):
                        pairs.append(
                            dt.Witness(dt.GradedDiagram(upper, k), dt.GradedDiagram(lower, l))
                        )
    return pairs
