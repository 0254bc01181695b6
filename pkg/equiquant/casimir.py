"""
Casimir eigenvalues in closed form and explicit Casimir matrices on truncated symbol spaces
"""
import enum
import functools
import logging
import typing

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from . import domain_types as dt
from .algebra import basis_fields, dual_bases, realize_vector_field
from .decorators import validated
from .exceptions import InvalidArgumentError, InvariantViolation, TruncationError
from .ferrers import admissible_diagrams, as_diagram, dim_irrep, g_minus_one_diagram
from .polynomials import monomial_basis, operator_matrix, split_degree
from .settings import Settings
from .symbols import gamma_poly, lie_diffop_poly, lie_tensor_poly
from .utils import binomial, parallel_map, to_rational

logger = logging.getLogger(__name__)


class Representation(enum.Enum):
    tensor_fields = "tensor"
    diff_ops = "diffop"


class EigenvaluePoly(
    typing.NamedTuple(
        "EigenvaluePoly", [("c2", typing.Any), ("c1", typing.Any), ("c0", typing.Any)]
    )
):
    """
    c2 delta^2 + c1 delta + c0
    """

    __slots__ = ()

    def __call__(self, delta):
        delta = to_rational(delta)
        return (self.c2 * delta + self.c1) * delta + self.c0

    def __sub__(self, other):
        return EigenvaluePoly(self.c2 - other.c2, self.c1 - other.c1, self.c0 - other.c0)

    def root(self):
        """
        The root of a linear polynomial
        """
        if self.c2 or not self.c1:
            raise InvalidArgumentError("Not a linear polynomial: {!r}".format(self))
        return -self.c0 / self.c1


OperatorMatrix = typing.NamedTuple(
    "OperatorMatrix",
    [
        ("matrix", DomainMatrix),
        ("spec", dt.AlgebraSpec),
        ("lam", typing.Any),
        ("mu", typing.Any),
        ("truncation", dt.Truncation),
        ("representation", typing.Optional[Representation]),
    ],
)


def _weight(vector, n):
    vector = tuple(int(k) for k in vector)
    if len(vector) > n:
        raise InvalidArgumentError("Weight has more than n={} coordinates".format(n))
    return vector + (0,) * (n - len(vector))


@validated
def weight_inner(mu1: tuple, mu2: tuple, n: int):
    """
    (delta_i, delta_j) = (n delta_ij - 1) / (2 n^2)
    """
    k, l = _weight(mu1, n), _weight(mu2, n)
    total = sum(
        k[i] * l[j] * (n * (i == j) - 1) for i in range(n) for j in range(n)
    )
    return QQ(total, 2 * n * n)


@validated
def mu_mu_plus_S(diagram: tuple, n: int):
    """
    (mu, mu + S) with S = 2 sum_j (n - j) delta_j, from the closed double sum
    """
    k = _weight(as_diagram(diagram), n)
    total = 0
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            factor = n * (i == j) - 1
            total += k[i - 1] * k[j - 1] * factor + 2 * k[i - 1] * (n - j) * factor
    value = QQ(total, 2 * n * n)

    if Settings().invariants:
        # (delta_i, S) = (n - 2i + 1) / (2n)
        expected = weight_inner(k, k, n) + sum(
            QQ(k[i - 1] * (n - 2 * i + 1), 2 * n) for i in range(1, n + 1)
        )
        if value != expected:
            raise InvariantViolation(
                "(mu, mu+S) double sum {} disagrees with {}".format(value, expected)
            )
    return value


def half_boxes(diagram):
    if diagram.boxes % 2:
        raise InvalidArgumentError(
            "Diagram {} has an odd number of boxes".format(tuple(diagram))
        )
    return diagram.boxes // 2


@validated
def eigenvalue_general(diagram: tuple, spec: dt.AlgebraSpec, k: typing.Optional[int] = None) -> EigenvaluePoly:
    """
    (1/2d)(d delta - k)(d(delta - 1) - k) + dim h0 / (2 (mu_g, mu_g + S) d + dim h0) (mu, mu + S)
    """
    diagram = as_diagram(diagram)
    if k is None:
        k = half_boxes(diagram)
    d, n = spec.d, spec.n
    generator = mu_mu_plus_S(g_minus_one_diagram(spec), n)
    coefficient = QQ(spec.dim_h0) / (2 * generator * d + spec.dim_h0)
    return EigenvaluePoly(
        QQ(d, 2),
        -QQ(d + 2 * k, 2),
        QQ(k * (d + k), 2 * d) + coefficient * mu_mu_plus_S(diagram, n),
    )


def _row_sum(diagram):
    return sum(k * (k - 2 * i) for i, k in enumerate(diagram, start=1))


@validated
def eigenvalue_orthogonal(diagram: tuple, n: int) -> EigenvaluePoly:
    diagram = as_diagram(diagram)
    k = half_boxes(diagram)
    quarter = QQ(n * (n - 1), 4)
    return EigenvaluePoly(
        quarter,
        -(k + quarter),
        QQ(n * k, n - 1) + QQ(_row_sum(diagram), 4 * (n - 1)),
    )


@validated
def eigenvalue_symplectic(diagram: tuple, n: int) -> EigenvaluePoly:
    diagram = as_diagram(diagram)
    k = half_boxes(diagram)
    quarter = QQ(n * (n + 1), 4)
    return EigenvaluePoly(
        quarter,
        -(k + quarter),
        QQ(k) + QQ(_row_sum(diagram), 4 * (n + 1)),
    )


def eigenvalue(diagram, spec: dt.AlgebraSpec) -> EigenvaluePoly:
    """
    The family-specific closed form
    """
    if spec.family is dt.Family.orthogonal:
        return eigenvalue_orthogonal(diagram, spec.n)
    return eigenvalue_symplectic(diagram, spec.n)


def x_monomial_count(d: int, M: int) -> int:
    """
    Number of x-monomials of degree at most M
    """
    return binomial(d + M, M)


SpectrumEntry = typing.NamedTuple(
    "SpectrumEntry",
    [
        ("degree", int),
        ("value", typing.Any),
        ("diagrams", typing.Tuple[tuple, ...]),
        ("multiplicity", int),
    ],
)


@validated
def predicted_spectrum(spec: dt.AlgebraSpec, delta, K: int, M: int = 0) -> typing.List[SpectrumEntry]:
    """
    Closed-form eigenvalues per xi-degree, diagrams with equal values grouped
    """
    delta = to_rational(delta)
    entries = []
    for k in range(K + 1):
        groups = {}
        for diagram in admissible_diagrams(spec, k):
            groups.setdefault(eigenvalue(diagram, spec)(delta), []).append(diagram)
        for value in sorted(groups):
            diagrams = tuple(groups[value])
            if len(diagrams) > 1:
                logger.warning(
                    "Diagrams %s share the eigenvalue %s at degree %d",
                    [tuple(x) for x in diagrams], value, k,
                )
            fiber = sum(dim_irrep(diagram, spec.n) for diagram in diagrams)
            entries.append(
                SpectrumEntry(k, value, diagrams, fiber * x_monomial_count(spec.d, M))
            )
    return entries


def _check_truncation(K, M):
    if K < 0 or M < 0:
        raise InvalidArgumentError("Truncation degrees must be non-negative")


def _field_map(representation, X, lam, mu):
    if representation is Representation.tensor_fields:
        delta = mu - lam
        return lambda poly: lie_tensor_poly(X, poly, delta)
    if representation is Representation.diff_ops:
        return lambda poly: lie_diffop_poly(X, poly, lam, mu)
    return lambda poly: gamma_poly(X, poly, lam, mu)


@functools.lru_cache(maxsize=None)
def _field_representation(representation, spec, lam, mu, K, source_M, target_M, index):
    source = monomial_basis(spec.d, K, source_M)
    target = monomial_basis(spec.d, K, target_M)
    field = basis_fields(spec)[index]
    return operator_matrix(_field_map(representation, field, lam, mu), source, target)


def basis_representation(representation, spec, lam, mu, K, source_M, target_M) -> typing.Tuple:
    """
    Matrices S(K, source_M) -> S(K, target_M) of every basis element of g
    """
    lam, mu = to_rational(lam), to_rational(mu)
    matrices = tuple(
        parallel_map(
            lambda index: _field_representation(
                representation, spec, lam, mu, K, source_M, target_M, index
            ),
            range(len(basis_fields(spec))),
        )
    )
    logger.debug(
        "Built %d %s matrices %dx%d",
        len(matrices), representation.value, *matrices[0].shape,
    )
    return matrices


def representation_matrix(representation, x, spec, lam, mu, K, source_M, target_M) -> DomainMatrix:
    """
    Matrix of the Lie derivative along x from S(K, source_M) to S(K, target_M)

    Only the basis fields with a nonzero coordinate in x are built.
    """
    lam, mu = to_rational(lam), to_rational(mu)
    shape = (len(monomial_basis(spec.d, K, target_M)), len(monomial_basis(spec.d, K, source_M)))
    result = DomainMatrix.zeros(shape, QQ)
    for index, coefficient in enumerate(x.coordinates(spec)):
        if coefficient:
            matrix = _field_representation(
                representation, spec, lam, mu, K, source_M, target_M, index
            )
            result = result.add(matrix.scalarmul(coefficient))
    return result


def _casimir_pairs(spec):
    package = dual_bases(spec)
    pairs = list(zip(package.e, package.eps))
    pairs += list(zip(package.eps, package.e))
    pairs += list(zip(package.h, package.h_star))
    pairs.append((package.euler, package.euler_star))
    return pairs


def _restrict(matrix, rows, columns, what):
    """
    Keeps the leading rows and columns, the dropped rows must vanish
    """
    for (row, column), value in matrix.to_dok().items():
        if row >= rows and column < columns and value:
            raise TruncationError("{} leaves the truncation".format(what))
    return matrix.extract(list(range(rows)), list(range(columns)))


@validated
def assemble_casimir(
    representation: Representation,
    spec: dt.AlgebraSpec,
    lam,
    mu,
    truncation: tuple,
) -> OperatorMatrix:
    """
    sum of rho(u) rho(u*) over the dual-basis pairs, on S(K, M)

    Each factor along g_1 raises the x-degree by at most one, so the products are
    assembled on the working spaces S(K, M+1) and S(K, M+2)
    """
    K, M = truncation
    _check_truncation(K, M)
    lam, mu = to_rational(lam), to_rational(mu)
    d = spec.d
    small = len(monomial_basis(d, K, M))
    working = len(monomial_basis(d, K, M + 2))

    total = DomainMatrix.zeros((working, small), QQ)
    for left, right in _casimir_pairs(spec):
        first = representation_matrix(representation, right, spec, lam, mu, K, M, M + 1)
        second = representation_matrix(representation, left, spec, lam, mu, K, M + 1, M + 2)
        total = total.add(second.matmul(first))

    matrix = _restrict(total, small, small, "Casimir operator")
    return OperatorMatrix(matrix, spec, lam, mu, dt.Truncation(K, M), representation)


@validated
def casimir_matrix(
    representation: Representation,
    spec: dt.AlgebraSpec,
    lam,
    mu,
    truncation: tuple,
) -> OperatorMatrix:
    """
    Casimir operator of the representation on S(K, M)

    C(L^t) depends on delta only and acts through its fiber on every x-monomial,
    so it is assembled once on S(K, 0) and spread out. C(L) is assembled explicitly.
    """
    K, M = truncation
    _check_truncation(K, M)
    lam, mu = to_rational(lam), to_rational(mu)
    if representation is not Representation.tensor_fields:
        return assemble_casimir(representation, spec, lam, mu, truncation)
    matrix = expand_fiberwise(_fiber_casimir(spec, mu - lam, K), spec.d, K, M)
    return OperatorMatrix(matrix, spec, lam, mu, dt.Truncation(K, M), representation)


@functools.lru_cache(maxsize=None)
def _fiber_casimir(spec, delta, K):
    return assemble_casimir(
        Representation.tensor_fields, spec, QQ.zero, delta, (K, 0)
    ).matrix

@validated
def fiber_casimir_matrix(spec: dt.AlgebraSpec, delta, K: int) -> DomainMatrix:
    """
    C(L^t) on constant-coefficient symbols of xi-degree at most K
    """
    _check_truncation(K, 0)
    return _fiber_casimir(spec, to_rational(delta), K)


def expand_fiberwise(fiber: DomainMatrix, d: int, K: int, M: int) -> DomainMatrix:
    """
    Extends an operator on S(K, 0) to S(K, M), acting on the xi part of every x-monomial
    """
    fiber_basis = monomial_basis(d, K, 0)
    full = monomial_basis(d, K, M)
    entries = {}
    items = list(fiber.to_dok().items())
    for monomial in full.monomials:
        if split_degree(monomial)[1]:
            continue
        x_part = monomial[:d]
        for (row, column), value in items:
            target = x_part + fiber_basis.monomials[row][d:]
            source = x_part + fiber_basis.monomials[column][d:]
            entries[(full.index[target], full.index[source])] = value
    return DomainMatrix.from_dok(entries, (len(full), len(full)), QQ).to_sparse()


@validated
def h0_casimir_matrix(spec: dt.AlgebraSpec, k: int) -> DomainMatrix:
    """
    Casimir of h_0 (with the Killing form of g restricted) on the fiber of xi-degree k
    """
    package = dual_bases(spec)
    fiber = monomial_basis(spec.d, k, 0)
    indices = fiber.indices_of_xi_degree(k)
    total = DomainMatrix.zeros((len(fiber), len(fiber)), QQ)
    for h, h_star in zip(package.h, package.h_star):
        left = representation_matrix(Representation.tensor_fields, h, spec, 0, 0, k, 0, 0)
        right = representation_matrix(Representation.tensor_fields, h_star, spec, 0, 0, k, 0, 0)
        total = total.add(left.matmul(right))
    return total.extract(indices, indices)


@functools.lru_cache(maxsize=None)
def _n_c(spec, lam, mu, K, M):
    basis = monomial_basis(spec.d, K, M)
    package = dual_bases(spec)
    total = DomainMatrix.zeros((len(basis), len(basis)), QQ)
    for e, eps in zip(package.e, package.eps):
        translation = realize_vector_field(e, spec)
        cocycle = realize_vector_field(eps, spec)
        derivative = operator_matrix(
            lambda poly: lie_tensor_poly(translation, poly, mu - lam), basis, basis
        )
        correction = operator_matrix(
            lambda poly: gamma_poly(cocycle, poly, lam, mu), basis, basis
        )
        total = total.add(correction.matmul(derivative))
    total = total.scalarmul(QQ(2))

    if Settings().invariants:
        for (row, column), value in total.to_dok().items():
            x_row, xi_row = basis.degrees[row]
            x_column, xi_column = basis.degrees[column]
            if value and (x_row != x_column - 1 or xi_row != xi_column - 1):
                raise InvariantViolation("N_C does not lower both degrees by one")
    return total


@validated
def n_c_matrix(spec: dt.AlgebraSpec, lam, mu, truncation: tuple) -> OperatorMatrix:
    """
    2 sum gamma(eps_i) o L^t(e_i), the difference of the two Casimir operators
    """
    K, M = truncation
    _check_truncation(K, M)
    lam, mu = to_rational(lam), to_rational(mu)
    return OperatorMatrix(_n_c(spec, lam, mu, K, M), spec, lam, mu, dt.Truncation(K, M), None)
