"""
The 3-graded orthogonal and symplectic algebras g = g_-1 + g_0 + g_1

Elements are triples (a, A, omega) embedded in gl(2n) as the block matrix
[[A, a], [omega, -A^T]]; a and omega are antisymmetric (orthogonal family)
or symmetric (symplectic family) and the bracket is the matrix commutator.
"""
import functools
import logging
import typing

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from . import domain_types as dt
from .decorators import validated
from .exceptions import InvalidArgumentError, InvariantViolation, SingularGramError
from .polynomials import PolyVectorField, symbol_ring, x_gen
from .settings import Settings
from .utils import to_rational

logger = logging.getLogger(__name__)

_FAMILY_NAMES = {
    "o": dt.Family.orthogonal,
    "orthogonal": dt.Family.orthogonal,
    "sp": dt.Family.symplectic,
    "symplectic": dt.Family.symplectic,
}


def parse_family(value) -> dt.Family:
    if isinstance(value, dt.Family):
        return value
    try:
        return _FAMILY_NAMES[str(value).strip().lower()]
    except KeyError:
        raise InvalidArgumentError(
            "Unknown family '{}', expected one of: o, sp".format(value)
        )


@validated
def make_algebra(family: typing.Union[dt.Family, str], n: int) -> dt.AlgebraSpec:
    family = parse_family(family)
    if n < 2:
        raise InvalidArgumentError("Rank must be at least 2, got {}".format(n))

    if family is dt.Family.orthogonal:
        d = n * (n - 1) // 2
        dim_g = n * (2 * n - 1)
    else:
        d = n * (n + 1) // 2
        dim_g = n * (2 * n + 1)

    if dim_g != 2 * d + n * n:
        raise InvariantViolation("dim g != 2d + n^2 for {} n={}".format(family.name, n))

    return dt.AlgebraSpec(family, n, d, dim_g, n * n - 1)


def symmetry_sign(spec: dt.AlgebraSpec) -> int:
    """
    a^T = sign * a for the off-diagonal blocks
    """
    return -1 if spec.family is dt.Family.orthogonal else 1


@functools.lru_cache(maxsize=None)
def coordinate_pairs(spec: dt.AlgebraSpec) -> typing.Tuple[typing.Tuple[int, int], ...]:
    """
    Index pairs (i, j) of the independent entries of g_-1, row-major over i < j
    (orthogonal) or i <= j (symplectic)
    """
    offset = 1 if spec.family is dt.Family.orthogonal else 0
    return tuple(
        (i, j) for i in range(spec.n) for j in range(i + offset, spec.n)
    )


def _rows(data, n=None):
    if isinstance(data, DomainMatrix):
        data = data.to_list()
    rows = tuple(tuple(to_rational(entry) for entry in row) for row in data)
    size = len(rows)
    if any(len(row) != size for row in rows) or (n is not None and size != n):
        raise InvalidArgumentError("Expected a square {0}x{0} matrix".format(n or size))
    return rows


def _zero_rows(n):
    return tuple((QQ.zero,) * n for _ in range(n))


def _combine(left, right, factor):
    return tuple(
        tuple(x + factor * y for x, y in zip(row_x, row_y))
        for row_x, row_y in zip(left, right)
    )


def _scale(rows, factor):
    return tuple(tuple(factor * x for x in row) for row in rows)


class GradedElement(object):
    """
    Element (a, A, omega) of g_-1 + g_0 + g_1 in matrix coordinates
    """

    __slots__ = ("a", "A", "omega")

    def __init__(self, a, A, omega):
        self.A = _rows(A)
        n = len(self.A)
        self.a = _rows(a, n)
        self.omega = _rows(omega, n)

    @classmethod
    def zero(cls, n):
        return cls(_zero_rows(n), _zero_rows(n), _zero_rows(n))

    @property
    def n(self):
        return len(self.A)

    def components(self):
        return self.a, self.A, self.omega

    def degree(self) -> typing.Optional[int]:
        """
        The grading degree when exactly one component is nonzero
        """
        nonzero = [
            degree
            for degree, rows in zip((-1, 0, 1), self.components())
            if any(any(row) for row in rows)
        ]
        return nonzero[0] if len(nonzero) == 1 else None

    def is_zero(self):
        return not any(any(row) for rows in self.components() for row in rows)

    def to_matrix(self) -> DomainMatrix:
        n = self.n
        entries = {}
        for i in range(n):
            for j in range(n):
                for (row, column), value in (
                    ((i, j), self.A[i][j]),
                    ((i, n + j), self.a[i][j]),
                    ((n + i, j), self.omega[i][j]),
                    ((n + i, n + j), -self.A[j][i]),
                ):
                    if value:
                        entries[(row, column)] = value
        return DomainMatrix.from_dok(entries, (2 * n, 2 * n), QQ).to_sparse()

    @classmethod
    def from_matrix(cls, matrix: DomainMatrix):
        rows, columns = matrix.shape
        if rows != columns or rows % 2:
            raise InvalidArgumentError("Block matrix must be 2n x 2n")
        n = rows // 2
        dense = matrix.to_list()
        A = [row[:n] for row in dense[:n]]
        a = [row[n:] for row in dense[:n]]
        omega = [row[:n] for row in dense[n:]]
        for i in range(n):
            for j in range(n):
                if dense[n + i][n + j] != -A[j][i]:
                    raise InvariantViolation(
                        "Lower right block is not -A^T at ({}, {})".format(i, j)
                    )
        return cls(a, A, omega)

    def coordinates(self, spec: dt.AlgebraSpec) -> typing.Tuple:
        """
        Coordinates in the basis of g: g_-1 pairs, the n^2 entries of A, g_1 pairs
        """
        pairs = coordinate_pairs(spec)
        return (
            tuple(self.a[i][j] for i, j in pairs)
            + tuple(entry for row in self.A for entry in row)
            + tuple(self.omega[i][j] for i, j in pairs)
        )

    @classmethod
    def from_coordinates(cls, coordinates, spec: dt.AlgebraSpec):
        result = cls.zero(spec.n)
        for value, element in zip(coordinates, basis(spec)):
            if value:
                result = result + element * value
        return result

    def __add__(self, other):
        return GradedElement(
            _combine(self.a, other.a, 1),
            _combine(self.A, other.A, 1),
            _combine(self.omega, other.omega, 1),
        )

    def __sub__(self, other):
        return GradedElement(
            _combine(self.a, other.a, -1),
            _combine(self.A, other.A, -1),
            _combine(self.omega, other.omega, -1),
        )

    def __neg__(self):
        return self * -1

    def __mul__(self, scalar):
        scalar = to_rational(scalar)
        return GradedElement(
            _scale(self.a, scalar), _scale(self.A, scalar), _scale(self.omega, scalar)
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self.components() == other.components()

    def __hash__(self):
        return hash(self.components())

    def __repr__(self):
        def text(rows):
            return [[str(entry) for entry in row] for row in rows]

        return "GradedElement(a={}, A={}, omega={})".format(
            text(self.a), text(self.A), text(self.omega)
        )


def check_element(x: GradedElement, spec: dt.AlgebraSpec):
    """
    Raises if the element does not belong to the algebra of the given spec
    """
    if x.n != spec.n:
        raise InvalidArgumentError(
            "Element of rank {} used with an algebra of rank {}".format(x.n, spec.n)
        )
    sign = symmetry_sign(spec)
    for name, rows in (("a", x.a), ("omega", x.omega)):
        for i in range(spec.n):
            for j in range(i, spec.n):
                if rows[j][i] != sign * rows[i][j]:
                    raise InvalidArgumentError(
                        "Component {} violates the {} symmetry at ({}, {})".format(
                            name, spec.family.name, i, j
                        )
                    )


def _unit(n, i, j, sign):
    rows = [[QQ.zero] * n for _ in range(n)]
    rows[i][j] = QQ.one
    if i != j:
        rows[j][i] = QQ(sign)
    return rows


@functools.lru_cache(maxsize=None)
def basis(spec: dt.AlgebraSpec) -> typing.Tuple[GradedElement, ...]:
    """
    The fixed coordinate basis of g, ordered as its coordinates
    """
    n, sign = spec.n, symmetry_sign(spec)
    zero = _zero_rows(n)
    lower = tuple(
        GradedElement(_unit(n, i, j, sign), zero, zero)
        for i, j in coordinate_pairs(spec)
    )
    middle = []
    for i in range(n):
        for j in range(n):
            A = [[QQ.zero] * n for _ in range(n)]
            A[i][j] = QQ.one
            middle.append(GradedElement(zero, A, zero))
    upper = tuple(
        GradedElement(zero, zero, _unit(n, i, j, sign))
        for i, j in coordinate_pairs(spec)
    )
    return lower + tuple(middle) + upper


def graded_basis(spec: dt.AlgebraSpec, degree: int) -> typing.Tuple[GradedElement, ...]:
    elements = basis(spec)
    d, n = spec.d, spec.n
    if degree == -1:
        return elements[:d]
    if degree == 0:
        return elements[d : d + n * n]
    if degree == 1:
        return elements[d + n * n :]
    raise InvalidArgumentError("Grading degree must be -1, 0 or 1")


def euler(spec: dt.AlgebraSpec) -> GradedElement:
    """
    The grading element: ad(E) acts by p on g_p
    """
    n = spec.n
    A = [[QQ(-1, 2) if i == j else QQ.zero for j in range(n)] for i in range(n)]
    return GradedElement(_zero_rows(n), A, _zero_rows(n))


def _bracket(x, y):
    mx, my = x.to_matrix(), y.to_matrix()
    return GradedElement.from_matrix(mx.matmul(my).sub(my.matmul(mx)))


@validated
def bracket(x: GradedElement, y: GradedElement, spec: dt.AlgebraSpec) -> GradedElement:
    check_element(x, spec)
    check_element(y, spec)
    result = _bracket(x, y)
    if Settings().invariants:
        check_element(result, spec)
    return result


@functools.lru_cache(maxsize=None)
def _basis_adjoints(spec: dt.AlgebraSpec):
    """
    ad(b_c) for every basis element, as {row: {column: value}}
    """
    elements = basis(spec)
    adjoints = []
    for x in elements:
        columns = {}
        for j, y in enumerate(elements):
            for i, value in enumerate(_bracket(x, y).coordinates(spec)):
                if value:
                    columns.setdefault(i, {})[j] = value
        adjoints.append(columns)
    logger.debug("Computed structure constants of %s n=%d", spec.family.name, spec.n)
    return tuple(adjoints)


def _adjoint_dod(x: GradedElement, spec: dt.AlgebraSpec):
    result = {}
    for coefficient, adjoint in zip(x.coordinates(spec), _basis_adjoints(spec)):
        if not coefficient:
            continue
        for i, row in adjoint.items():
            target = result.setdefault(i, {})
            for j, value in row.items():
                target[j] = target.get(j, QQ.zero) + coefficient * value
    return {
        i: {j: v for j, v in row.items() if v} for i, row in result.items()
    }


@validated
def adjoint_matrix(x: GradedElement, spec: dt.AlgebraSpec) -> DomainMatrix:
    """
    Matrix of ad(x) in the coordinate basis of g
    """
    check_element(x, spec)
    dod = {i: row for i, row in _adjoint_dod(x, spec).items() if row}
    return DomainMatrix.from_dod(dod, (spec.dim_g, spec.dim_g), QQ)


def _killing(x, y, spec):
    left, right = _adjoint_dod(x, spec), _adjoint_dod(y, spec)
    total = QQ.zero
    for i, row in left.items():
        for j, value in row.items():
            other = right.get(j)
            if other is not None and i in other:
                total += value * other[i]
    return total


@validated
def killing_form(x: GradedElement, y: GradedElement, spec: dt.AlgebraSpec):
    """
    tr(ad(x) ad(y)), computed from the structure constants
    """
    check_element(x, spec)
    check_element(y, spec)
    return _killing(x, y, spec)


@functools.lru_cache(maxsize=None)
def h0_basis(spec: dt.AlgebraSpec) -> typing.Tuple[GradedElement, ...]:
    """
    E_ij for i != j, then E_ii - E_nn for i < n
    """
    n = spec.n
    zero = _zero_rows(n)
    elements = []
    for i in range(n):
        for j in range(n):
            if i != j:
                A = [[QQ.zero] * n for _ in range(n)]
                A[i][j] = QQ.one
                elements.append(GradedElement(zero, A, zero))
    for i in range(n - 1):
        A = [[QQ.zero] * n for _ in range(n)]
        A[i][i] = QQ.one
        A[n - 1][n - 1] = -QQ.one
        elements.append(GradedElement(zero, A, zero))
    return tuple(elements)


DualBasisPackage = typing.NamedTuple(
    "DualBasisPackage",
    [
        ("e", typing.Tuple[GradedElement, ...]),
        ("eps", typing.Tuple[GradedElement, ...]),
        ("h", typing.Tuple[GradedElement, ...]),
        ("h_star", typing.Tuple[GradedElement, ...]),
        ("euler", GradedElement),
        ("euler_star", GradedElement),
    ],
)


def _gram(left, right, spec):
    rows = [[_killing(x, y, spec) for y in right] for x in left]
    return DomainMatrix(rows, (len(left), len(right)), QQ)


def _inverse(matrix, what):
    try:
        return matrix.to_dense().inv()
    except DMNonInvertibleMatrixError:
        raise SingularGramError("Killing form restricted to {} is degenerate".format(what))


def _combination(coefficients, elements, n):
    result = GradedElement.zero(n)
    for coefficient, element in zip(coefficients, elements):
        if coefficient:
            result = result + element * coefficient
    return result


@functools.lru_cache(maxsize=None)
def _dual_bases(spec: dt.AlgebraSpec) -> DualBasisPackage:
    n = spec.n
    e = graded_basis(spec, -1)
    f = graded_basis(spec, 1)

    # beta(e_j, eps_i) = sum_k C_ik B_jk must be delta_ij, so C = (B^T)^-1
    pairing = _gram(e, f, spec)
    coefficients = _inverse(pairing.transpose(), "g_-1 x g_1").to_list()
    eps = tuple(_combination(row, f, n) for row in coefficients)

    h = h0_basis(spec)
    inverse_gram = _inverse(_gram(h, h, spec), "h_0").to_list()
    h_star = tuple(_combination(row, h, n) for row in inverse_gram)

    grading = euler(spec)
    norm = _killing(grading, grading, spec)
    if norm != 2 * spec.d:
        raise InvariantViolation("beta(E, E) = {} instead of 2d = {}".format(norm, 2 * spec.d))

    package = DualBasisPackage(e, eps, h, h_star, grading, grading * (QQ.one / norm))

    if Settings().invariants:
        check_dual_bases(package, spec)

    logger.debug("Dual bases ready for %s n=%d", spec.family.name, n)
    return package


@validated
def dual_bases(spec: dt.AlgebraSpec) -> DualBasisPackage:
    return _dual_bases(spec)


def pairing_matrix(package: DualBasisPackage, spec: dt.AlgebraSpec) -> DomainMatrix:
    """
    beta between (e, h, E) and (eps, h*, E/2d); the identity for a correct package
    """
    left = package.e + package.h + (package.euler,)
    right = package.eps + package.h_star + (package.euler_star,)
    return _gram(left, right, spec)


def check_dual_bases(package: DualBasisPackage, spec: dt.AlgebraSpec):
    size = spec.d + spec.dim_h0 + 1
    identity = DomainMatrix.eye(size, QQ).to_dense()
    if not pairing_matrix(package, spec).to_dense().unify_eq(identity):
        raise InvariantViolation("Dual basis pairing is not the identity")

    total = GradedElement.zero(spec.n)
    for x, y in zip(package.e, package.eps):
        total = total + _bracket(x, y)
    if total != package.euler * QQ(-1, 2):
        raise InvariantViolation("sum [e_i, eps_i] != -E/2")


def _field_matrix(x: GradedElement, spec: dt.AlgebraSpec):
    """
    a - A X - X A^T - X omega X as a matrix of polynomials
    """
    ring = symbol_ring(spec.d)
    n, sign = spec.n, symmetry_sign(spec)
    X = [[ring.zero] * n for _ in range(n)]
    for c, (i, j) in enumerate(coordinate_pairs(spec)):
        X[i][j] = x_gen(ring, c)
        if i != j:
            X[j][i] = x_gen(ring, c) * sign

    def product(left, right):
        return [
            [sum((left[i][k] * right[k][j] for k in range(n)), ring.zero) for j in range(n)]
            for i in range(n)
        ]

    a = [[ring(v) for v in row] for row in x.a]
    A = [[ring(v) for v in row] for row in x.A]
    At = [[A[j][i] for j in range(n)] for i in range(n)]
    omega = [[ring(v) for v in row] for row in x.omega]

    AX, XAt, XwX = product(A, X), product(X, At), product(product(X, omega), X)
    return [
        [a[i][j] - AX[i][j] - XAt[i][j] - XwX[i][j] for j in range(n)]
        for i in range(n)
    ]


@validated
def realize_vector_field(x: GradedElement, spec: dt.AlgebraSpec) -> PolyVectorField:
    """
    Infinitesimal fractional-linear action on X in g_-1, flattened to the d coordinates

    The sign convention a - AX - XA^T - X omega X makes x -> field(x) a homomorphism
    for the bracket of vector fields as derivations; E maps to the Euler field
    """
    check_element(x, spec)
    ring = symbol_ring(spec.d)
    matrix = _field_matrix(x, spec)
    field = PolyVectorField([matrix[i][j] for i, j in coordinate_pairs(spec)], ring)
    if field.degree() > 2:
        raise InvariantViolation("Realized field has degree above 2")
    return field


@functools.lru_cache(maxsize=None)
def basis_fields(spec: dt.AlgebraSpec) -> typing.Tuple[PolyVectorField, ...]:
    return tuple(realize_vector_field(x, spec) for x in basis(spec))


@validated
def h0_killing_ratio(spec: dt.AlgebraSpec):
    """
    The constant l with beta = l * beta_0 on h_0, beta_0(A, B) = 2n tr(AB)
    """
    n = spec.n
    h = h0_basis(spec)[-1]
    trace = sum(h.A[i][j] * h.A[j][i] for i in range(n) for j in range(n))
    return _killing(h, h, spec) / (2 * n * trace)
