"""
Equivariant quantization on truncated symbol spaces

The Casimir operator of the symbol module is diagonalized with projectors
interpolated on the closed-form spectrum; the quantization of an eigensymbol
is then obtained level by level, dividing the N_C image of the previous level
by the eigenvalue gaps.
"""
import logging
import typing

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from . import domain_types as dt
from .algebra import dual_bases, h0_basis, realize_vector_field
from .casimir import (
    Representation,
    basis_representation,
    casimir_matrix,
    expand_fiberwise,
    fiber_casimir_matrix,
    n_c_matrix,
    predicted_spectrum,
    representation_matrix,
    x_monomial_count,
)
from .critical import is_critical
from .decorators import validated
from .exceptions import (
    CriticalShiftError,
    InvalidArgumentError,
    InvariantViolation,
    QuantizationError,
    SpectrumError,
    TruncationError,
    ZeroDivisorError,
)
from .ferrers import as_diagram, format_diagram, format_graded, is_admissible, tilde_tree
from .polynomials import format_monomial, monomial_basis, operator_matrix
from .settings import Settings
from .symbols import Symbol, gamma_poly
from .utils import parallel_map, to_rational

logger = logging.getLogger(__name__)


EigenComponent = typing.NamedTuple(
    "EigenComponent",
    [
        ("degree", int),
        ("value", typing.Any),
        ("diagrams", typing.Tuple[tuple, ...]),
        ("projector", DomainMatrix),
        ("fiber_projector", DomainMatrix),
        ("rank", int),
    ],
)


class EigenDecomposition(
    typing.NamedTuple(
        "EigenDecomposition",
        [
            ("spec", dt.AlgebraSpec),
            ("delta", typing.Any),
            ("truncation", dt.Truncation),
            ("components", typing.Tuple[EigenComponent, ...]),
        ],
    )
):
    __slots__ = ()

    def of_degree(self, k):
        return [component for component in self.components if component.degree == k]

    def containing(self, diagram, k):
        diagram = as_diagram(diagram)
        for component in self.of_degree(k):
            if diagram in component.diagrams:
                return component
        raise InvalidArgumentError(
            "No eigenspace of degree {} holds {}".format(k, format_diagram(diagram) or "()")
        )

    def by_value(self):
        """
        Projectors of C(L^t) grouped by eigenvalue only, merging degrees
        """
        merged = {}
        for component in self.components:
            if component.value in merged:
                merged[component.value] = merged[component.value].add(component.projector)
            else:
                merged[component.value] = component.projector
        return sorted(merged.items(), key=lambda item: item[0])


class QuantizationMap(
    typing.NamedTuple(
        "QuantizationMap",
        [
            ("matrix", DomainMatrix),
            ("spec", dt.AlgebraSpec),
            ("lam", typing.Any),
            ("mu", typing.Any),
            ("truncation", dt.Truncation),
            ("verified", bool),
        ],
    )
):
    __slots__ = ()

    @property
    def delta(self):
        return self.mu - self.lam

    @property
    def basis(self):
        return monomial_basis(self.spec.d, *self.truncation)


def _trace(matrix):
    return sum(matrix.to_dense().diagonal(), QQ.zero)


def _identity(size):
    return DomainMatrix.eye(size, QQ).to_dense()


def _lagrange_projectors(block, values, k):
    """
    Projectors prod_{w != v} (F - w) / (v - w); F must be annihilated by prod (F - v)
    """
    size = block.shape[0]
    identity = _identity(size)
    shifted = [block.sub(identity.scalarmul(value).to_dense()) for value in values]

    product = identity
    for factor in shifted:
        product = product.matmul(factor)
    if not product.is_zero_matrix:
        raise SpectrumError(
            "The Casimir block of degree {} does not split over the predicted values {}".format(
                k, [str(value) for value in values]
            )
        )

    projectors = []
    for j, value in enumerate(values):
        projector = identity
        for i, other in enumerate(values):
            if i != j:
                projector = projector.matmul(shifted[i]).scalarmul(QQ.one / (value - other))
        projectors.append(projector.to_dense())
    return projectors


def _expand(fiber_projector, indices, d, K, M):
    size = len(monomial_basis(d, K, 0))
    entries = {
        (indices[row], indices[column]): value
        for (row, column), value in fiber_projector.to_dok().items()
        if value
    }
    embedded = DomainMatrix.from_dok(entries, (size, size), QQ).to_sparse()
    return expand_fiberwise(embedded, d, K, M)


def _check_block_diagonal(fiber, fiber_basis):
    for (row, column), value in fiber.to_dok().items():
        if value and fiber_basis.degrees[row] != fiber_basis.degrees[column]:
            raise SpectrumError("C(L^t) mixes bidegrees on the fiber")


@validated
def eigen_decompose(spec: dt.AlgebraSpec, delta, truncation: tuple) -> EigenDecomposition:
    """
    Eigenprojectors of C(L^t) on S(K, M), one per xi-degree and eigenvalue
    """
    K, M = truncation
    delta = to_rational(delta)
    d = spec.d
    fiber = fiber_casimir_matrix(spec, delta, K)
    fiber_basis = monomial_basis(d, K, 0)
    _check_block_diagonal(fiber, fiber_basis)

    spectrum = predicted_spectrum(spec, delta, K, M)
    components = []
    for k in range(K + 1):
        indices = fiber_basis.indices_of_xi_degree(k)
        entries = [entry for entry in spectrum if entry.degree == k]
        block = fiber.extract(indices, indices).to_dense()
        projectors = _lagrange_projectors(block, [entry.value for entry in entries], k)

        for entry, projector in zip(entries, projectors):
            rank = _trace(projector)
            expected = entry.multiplicity // x_monomial_count(d, M)
            if rank != expected:
                raise SpectrumError(
                    "Eigenvalue {} at degree {} has multiplicity {} instead of {}".format(
                        entry.value, k, rank, expected
                    )
                )
            components.append(
                EigenComponent(
                    k,
                    entry.value,
                    entry.diagrams,
                    _expand(projector, indices, d, K, M),
                    projector,
                    entry.multiplicity,
                )
            )

    if Settings().invariants:
        _check_projectors(components)
        size = len(monomial_basis(d, K, M))
        total = DomainMatrix.zeros((size, size), QQ)
        for component in components:
            total = total.add(component.projector)
        if not total.sub(DomainMatrix.eye(size, QQ)).is_zero_matrix:
            raise SpectrumError("Eigenprojectors do not sum to the identity")

    logger.debug("Decomposed S%s at delta=%s into %d eigenspaces", (K, M), delta, len(components))
    return EigenDecomposition(spec, delta, dt.Truncation(K, M), tuple(components))


def _check_projectors(components):
    by_degree = {}
    for component in components:
        by_degree.setdefault(component.degree, []).append(component.fiber_projector)
    for k, projectors in by_degree.items():
        for i, left in enumerate(projectors):
            if not left.matmul(left).sub(left).is_zero_matrix:
                raise SpectrumError("Projector of degree {} is not idempotent".format(k))
            for right in projectors[i + 1 :]:
                if not left.matmul(right).is_zero_matrix:
                    raise SpectrumError("Projectors of degree {} do not annihilate".format(k))


def _tree_pairs(upper_diagrams, k, lower_diagrams, l, spec):
    pairs = []
    for upper in upper_diagrams:
        level = tilde_tree(upper, k, spec).levels[k - l]
        for lower in lower_diagrams:
            if lower in level:
                pairs.append(dt.Witness(dt.GradedDiagram(upper, k), dt.GradedDiagram(lower, l)))
    return pairs


def _describe(pairs):
    return ", ".join(
        "{} / {}".format(format_graded(pair.upper), format_graded(pair.lower)) for pair in pairs
    )


def _tree_solution(start, k, value, diagrams, decomposition, nc):
    """
    Sum of the levels of the eigen-solution whose top level is 'start'
    """
    spec = decomposition.spec
    current, total = start, start
    for l in range(k - 1, -1, -1):
        rhs = nc.matmul(current)
        level = DomainMatrix.zeros(start.shape, QQ)
        for component in decomposition.of_degree(l):
            block = component.projector.matmul(rhs)
            gap = value - component.value
            if gap:
                if not block.is_zero_matrix:
                    level = level.add(block.scalarmul(QQ.one / gap))
                continue

            pairs = _tree_pairs(diagrams, k, component.diagrams, l, spec)
            if not block.is_zero_matrix:
                raise ZeroDivisorError(
                    "Vanishing eigenvalue gap with a nonzero right side between {} at "
                    "degree {} and {} at degree {}; witnesses: {}".format(
                        [format_diagram(x) for x in diagrams], k,
                        [format_diagram(x) for x in component.diagrams], l,
                        _describe(pairs) or "none",
                    ),
                    upper=diagrams,
                    lower=component.diagrams,
                )
            if pairs:
                raise QuantizationError(
                    "Undetermined 0/0 block at a critical pair: {}".format(_describe(pairs))
                )
        current = level
        total = total.add(current)
    return total


def _precheck(spec, lam, mu, K):
    if K < 1:
        return
    report = is_critical(lam, mu, spec, K)
    if report.critical:
        raise CriticalShiftError(
            "Shift {} is critical for {} n={} up to degree {}: {}".format(
                report.delta, spec.family.name, spec.n, K,
                ", ".join(
                    "{} / {}".format(format_graded(w.upper), format_graded(w.lower))
                    for w in report.witnesses
                ),
            ),
            delta=report.delta,
            witnesses=report.witnesses,
        )


def _check_unipotent(matrix, basis):
    for (row, column), value in matrix.to_dok().items():
        if not value:
            continue
        xi_row, xi_column = basis.degrees[row][1], basis.degrees[column][1]
        if xi_row > xi_column or (xi_row == xi_column and (row != column or value != 1)):
            raise InvariantViolation(
                "Quantization is not unipotent-triangular at ({}, {})".format(
                    format_monomial(basis.monomials[row]), format_monomial(basis.monomials[column])
                )
            )


@validated
def quantize_symbol(P: Symbol, spec: dt.AlgebraSpec, lam, mu, truncation: tuple) -> Symbol:
    """
    The unique eigensymbol of C(L^{lam,mu}) with principal part P, P being an eigensymbol of C(L^t)
    """
    lam, mu = to_rational(lam), to_rational(mu)
    K, M = truncation
    degrees = P.xi_degrees()
    if not degrees:
        return Symbol(P.poly, lam, mu)
    if len(degrees) != 1:
        raise InvalidArgumentError("Symbol is not homogeneous in xi: degrees {}".format(degrees))
    k = degrees[0]
    _precheck(spec, lam, mu, K)

    basis_ = monomial_basis(spec.d, K, M)
    vector = basis_.to_vector(P.poly)
    decomposition = eigen_decompose(spec, mu - lam, (K, M))
    for component in decomposition.of_degree(k):
        if component.projector.matmul(vector).sub(vector).is_zero_matrix:
            break
    else:
        raise InvalidArgumentError("Symbol is not an eigenvector of C(L^t)")

    nc = n_c_matrix(spec, lam, mu, (K, M)).matrix
    solution = _tree_solution(vector, k, component.value, component.diagrams, decomposition, nc)
    return Symbol(basis_.to_poly(solution), lam, mu)


@validated
def quantization_matrix(
    spec: dt.AlgebraSpec, lam, mu, K: int, M: int, verify: bool = False
) -> QuantizationMap:
    """
    Matrix of the quantization on S(K, M): the solutions for every eigenprojector, summed
    """
    lam, mu = to_rational(lam), to_rational(mu)
    _precheck(spec, lam, mu, K)

    decomposition = eigen_decompose(spec, mu - lam, (K, M))
    nc = n_c_matrix(spec, lam, mu, (K, M)).matrix

    def solve(component):
        return _tree_solution(
            component.projector, component.degree, component.value,
            component.diagrams, decomposition, nc,
        )

    size = len(monomial_basis(spec.d, K, M))
    total = DomainMatrix.zeros((size, size), QQ)
    for part in parallel_map(solve, decomposition.components):
        total = total.add(part)

    if Settings().invariants:
        _check_unipotent(total, monomial_basis(spec.d, K, M))

    result = QuantizationMap(total, spec, lam, mu, dt.Truncation(K, M), False)
    if verify:
        report = verify_equivariance(result)
        result = result._replace(verified=not report.violations)
        if report.violations:
            logger.warning("%d equivariance violations", len(report.violations))
    return result


@validated
def verify_equivariance(Q: QuantizationMap, margin: int = 1) -> dt.EquivarianceReport:
    """
    Compares L^{lam,mu}_X o Q with Q o L^t_X for every basis X of g on symbols of
    x-degree at most M - margin
    """
    if margin < 1:
        raise InvalidArgumentError("Lie derivatives along g_1 need a margin of at least 1")
    spec = Q.spec
    K, M = Q.truncation
    top = M - margin
    if top < 0:
        return dt.EquivarianceReport(0, ())

    full = Q.basis
    small = len(monomial_basis(spec.d, K, top))
    restricted = Q.matrix.extract(list(range(len(full))), list(range(small)))
    for (row, _), value in restricted.to_dok().items():
        if value and row >= small:
            raise TruncationError("Quantization raises the x-degree")
    restricted = restricted.extract(list(range(small)), list(range(small)))

    operators = basis_representation(Representation.diff_ops, spec, Q.lam, Q.mu, K, top, M)
    tensors = basis_representation(Representation.tensor_fields, spec, Q.lam, Q.mu, K, top, M)
    # Both sides land in S(K, top + 1) which is a prefix of S(K, M)
    width = len(monomial_basis(spec.d, K, top + 1))

    violations = []
    for index, (operator, tensor) in enumerate(zip(operators, tensors)):
        lhs = operator.matmul(restricted)
        rhs = Q.matrix.extract(list(range(len(full))), list(range(width))).matmul(
            tensor.extract(list(range(width)), list(range(small)))
        )
        columns = sorted({column for (_, column), v in lhs.sub(rhs).to_dok().items() if v})
        violations.extend(
            dt.Violation(index, format_monomial(full.monomials[column])) for column in columns
        )
    return dt.EquivarianceReport(len(operators) * small, tuple(violations))


@validated
def verify_casimir_intertwining(Q: QuantizationMap) -> bool:
    """
    C(L^{lam,mu}) Q = Q C(L^t) on the truncation
    """
    operator = casimir_matrix(Representation.diff_ops, Q.spec, Q.lam, Q.mu, Q.truncation).matrix
    tensor = casimir_matrix(Representation.tensor_fields, Q.spec, Q.lam, Q.mu, Q.truncation).matrix
    return operator.matmul(Q.matrix).sub(Q.matrix.matmul(tensor)).is_zero_matrix


GammaLevel = typing.NamedTuple(
    "GammaLevel",
    [
        ("degree", int),
        ("basis", DomainMatrix),
        ("rank", int),
        ("diagrams", typing.Tuple[tuple, ...]),
    ],
)


GammaTree = typing.NamedTuple(
    "GammaTree",
    [("root", tuple), ("degree", int), ("levels", typing.Tuple[GammaLevel, ...])],
)


def _dense(matrix):
    """
    Dense copy with a uniform representation type
    """
    return matrix.to_sparse().to_dense()


def _column_basis(matrix):
    """
    Columns spanning the column space of 'matrix', in reduced echelon form
    """
    rows, columns = matrix.shape
    if columns == 0:
        return DomainMatrix.zeros((rows, 0), QQ).to_dense()
    reduced, pivots = matrix.to_dense().transpose().rref()
    if not pivots:
        return DomainMatrix.zeros((rows, 0), QQ).to_dense()
    selected = reduced.extract(list(range(len(pivots))), list(range(rows)))
    return _dense(selected.transpose())


def _rank(matrix):
    if matrix.shape[1] == 0:
        return 0
    return matrix.to_dense().rank()


def _hstack(matrices, rows):
    matrices = [_dense(m) for m in matrices if m.shape[1]]
    if not matrices:
        return DomainMatrix.zeros((rows, 0), QQ).to_dense()
    return matrices[0].hstack(*matrices[1:])


@validated
def gamma_tree(root: tuple, k: int, spec: dt.AlgebraSpec, lam, mu) -> GammaTree:
    """
    Iterated images of the root summand under gamma(g_1), on constant-coefficient symbols
    """
    root = as_diagram(root)
    if not is_admissible(root, spec, k):
        raise InvalidArgumentError(
            "Diagram {} is not a summand of degree {}".format(format_diagram(root) or "()", k)
        )
    lam, mu = to_rational(lam), to_rational(mu)
    fiber = monomial_basis(spec.d, k, 0)
    decomposition = eigen_decompose(spec, mu - lam, (k, 0))
    start = decomposition.containing(root, k)

    cocycles = [
        operator_matrix(
            lambda poly, X=realize_vector_field(eps, spec): gamma_poly(X, poly, lam, mu),
            fiber,
            fiber,
        ).to_dense()
        for eps in dual_bases(spec).eps
    ]
    h0_actions = [
        representation_matrix(Representation.tensor_fields, h, spec, lam, mu, k, 0, 0).to_dense()
        for h in h0_basis(spec)
    ]

    current = _column_basis(start.projector)
    levels = []
    for level in range(k + 1):
        degree = k - level
        rank = current.shape[1]
        diagrams = []
        for component in decomposition.of_degree(degree):
            if rank and not component.projector.to_dense().matmul(current).is_zero_matrix:
                diagrams.extend(component.diagrams)
        if Settings().invariants and rank:
            for action in h0_actions:
                if _rank(_hstack([current, action.matmul(current)], len(fiber))) != rank:
                    raise InvariantViolation(
                        "Level {} of the gamma-tree is not an h_0-submodule".format(level)
                    )
        levels.append(GammaLevel(degree, current, rank, tuple(diagrams)))
        if level == 1 and k >= 1 and rank == 0:
            logger.warning("gamma(g_1) vanishes on %s@%d", format_diagram(root), k)
        if level < k:
            images = [cocycle.matmul(current) for cocycle in cocycles] if rank else []
            current = _column_basis(_hstack(images, len(fiber)))
    return GammaTree(root, k, tuple(levels))


NCImage = typing.NamedTuple(
    "NCImage", [("nc_rank", int), ("gamma_rank", int), ("equal", bool)]
)


@validated
def nc_linear_sections(spec: dt.AlgebraSpec, lam, mu, root: tuple, k: int) -> NCImage:
    """
    Compares N_C of the root summand with linear coefficients against gamma(g_1) of the root
    """
    lam, mu = to_rational(lam), to_rational(mu)
    if k < 1:
        raise InvalidArgumentError("N_C vanishes on degree 0")
    full = monomial_basis(spec.d, k, 1)
    constant = len(monomial_basis(spec.d, k, 0))
    decomposition = eigen_decompose(spec, mu - lam, (k, 1))
    component = decomposition.containing(root, k)

    linear = [i for i, (x_degree, _) in enumerate(full.degrees) if x_degree == 1]
    sections = component.projector.extract(list(range(len(full))), linear)
    nc = n_c_matrix(spec, lam, mu, (k, 1)).matrix
    image = nc.matmul(sections).extract(list(range(constant)), list(range(len(linear))))

    level = gamma_tree(root, k, spec, lam, mu).levels[1].basis
    nc_rank, gamma_rank = _rank(image), _rank(level)
    joint = _rank(_hstack([image, level], constant))
    return NCImage(nc_rank, gamma_rank, nc_rank == gamma_rank == joint)
