"""
Polynomial rings of symbols, monomial bases of truncated symbol spaces and polynomial vector fields

A symbol in d base variables lives in the ring QQ[x1..xd, xi1..xid]; the first d exponents
of a monomial are the x-exponents, the last d the xi-exponents
"""
import functools
import logging
import typing

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyRing

from . import domain_types as dt
from .exceptions import InvalidArgumentError, TruncationError
from .utils import exponent_tuples

logger = logging.getLogger(__name__)


@functools.lru_cache(maxsize=None)
def symbol_ring(d: int) -> PolyRing:
    if d < 1:
        raise InvalidArgumentError("Symbol ring needs at least one variable")
    names = ["x{}".format(i + 1) for i in range(d)]
    names += ["xi{}".format(i + 1) for i in range(d)]
    return PolyRing(names, QQ)


def x_gen(ring, i):
    return ring.gens[i]


def xi_gen(ring, i):
    return ring.gens[ring.ngens // 2 + i]


def split_degree(monomial: dt.Monomial) -> typing.Tuple[int, int]:
    """
    Returns the (x-degree, xi-degree) of an exponent vector
    """
    d = len(monomial) // 2
    return sum(monomial[:d]), sum(monomial[d:])


def xi_degrees(poly) -> typing.Set[int]:
    return {split_degree(monomial)[1] for monomial in poly.keys()}


def x_degrees(poly) -> typing.Set[int]:
    return {split_degree(monomial)[0] for monomial in poly.keys()}


def format_monomial(monomial: dt.Monomial) -> str:
    d = len(monomial) // 2
    factors = []
    for i, power in enumerate(monomial):
        if power:
            name = "x{}".format(i + 1) if i < d else "xi{}".format(i - d + 1)
            factors.append(name if power == 1 else "{}^{}".format(name, power))
    return "*".join(factors) or "1"


class MonomialBasis(object):
    """
    Ordered monomial basis of the truncated symbol space S(K, M):
    xi-degree at most K, x-degree at most M

    Monomials are ordered by x-degree, then xi-degree, then descending lex order,
    so S(K, M') is a prefix of S(K, M) whenever M' <= M
    """

    def __init__(self, d, K, M):
        if K < 0 or M < 0:
            raise InvalidArgumentError("Truncation degrees must be non-negative")
        self.d = d
        self.truncation = dt.Truncation(K, M)
        self.monomials = tuple(
            x_part + xi_part
            for x_degree in range(M + 1)
            for xi_degree in range(K + 1)
            for x_part in exponent_tuples(d, x_degree)
            for xi_part in exponent_tuples(d, xi_degree)
        )
        self.index = {monomial: i for i, monomial in enumerate(self.monomials)}
        self.degrees = tuple(split_degree(monomial) for monomial in self.monomials)

    @property
    def K(self):
        return self.truncation.K

    @property
    def M(self):
        return self.truncation.M

    def __len__(self):
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)

    def prefix_size(self, M):
        """
        Number of monomials of x-degree at most M
        """
        return sum(1 for x_degree, _ in self.degrees if x_degree <= M)

    def indices_of_xi_degree(self, k, max_x_degree=None):
        return [
            i
            for i, (x_degree, xi_degree) in enumerate(self.degrees)
            if xi_degree == k and (max_x_degree is None or x_degree <= max_x_degree)
        ]

    def to_vector(self, poly) -> DomainMatrix:
        """
        Column vector of a polynomial; monomials outside the truncation are an error
        """
        entries = {}
        for monomial, coefficient in poly.items():
            try:
                entries[(self.index[monomial], 0)] = coefficient
            except KeyError:
                raise TruncationError(
                    "Monomial {} is outside of S{}".format(
                        format_monomial(monomial), tuple(self.truncation)
                    )
                )
        return DomainMatrix.from_dok(entries, (len(self), 1), QQ).to_sparse()

    def to_poly(self, vector: DomainMatrix, column=0):
        ring = symbol_ring(self.d)
        terms = {}
        for (row, col), value in vector.to_dok().items():
            if col == column and value:
                terms[self.monomials[row]] = value
        return ring.from_dict(terms)

    def __repr__(self):
        return "MonomialBasis(d={}, K={}, M={})".format(self.d, self.K, self.M)


@functools.lru_cache(maxsize=None)
def monomial_basis(d: int, K: int, M: int) -> MonomialBasis:
    basis = MonomialBasis(d, K, M)
    logger.debug("Built monomial basis d=%d K=%d M=%d of size %d", d, K, M, len(basis))
    return basis


def operator_matrix(func, source: MonomialBasis, target: MonomialBasis) -> DomainMatrix:
    """
    Sparse matrix of a linear map on polynomials, column j being the image of source monomial j
    """
    ring = symbol_ring(source.d)
    entries = {}
    for column, monomial in enumerate(source.monomials):
        image = func(ring.from_dict({monomial: QQ.one}))
        for image_monomial, coefficient in image.items():
            row = target.index.get(image_monomial)
            if row is None:
                raise TruncationError(
                    "Image monomial {} leaves S{}".format(
                        format_monomial(image_monomial), tuple(target.truncation)
                    )
                )
            entries[(row, column)] = coefficient
    return DomainMatrix.from_dok(entries, (len(target), len(source)), QQ).to_sparse()


class PolyVectorField(object):
    """
    Polynomial vector field sum_i X^i d/dx_i, components in the x-variables of a symbol ring
    """

    __slots__ = ("ring", "components")

    def __init__(self, components, ring=None):
        components = tuple(components)
        if ring is None:
            if not components:
                raise InvalidArgumentError("A vector field needs at least one component")
            ring = components[0].ring
        if len(components) != ring.ngens // 2:
            raise InvalidArgumentError(
                "Expected {} components, got {}".format(ring.ngens // 2, len(components))
            )
        for component in components:
            if any(split_degree(monomial)[1] for monomial in component.keys()):
                raise InvalidArgumentError("Vector field components must not contain xi")
        self.ring = ring
        self.components = tuple(ring(component) for component in components)

    @classmethod
    def euler(cls, d):
        ring = symbol_ring(d)
        return cls([x_gen(ring, i) for i in range(d)], ring)

    @classmethod
    def constant(cls, values, d):
        ring = symbol_ring(d)
        return cls([ring(QQ.convert(value)) for value in values], ring)

    @property
    def dimension(self):
        return len(self.components)

    def degree(self):
        """
        Maximal total degree of the components, -1 for the zero field
        """
        degrees = [split_degree(m)[0] for c in self.components for m in c.keys()]
        return max(degrees, default=-1)

    def homogeneous_part(self, degree):
        return PolyVectorField(
            [
                self.ring.from_dict(
                    {m: v for m, v in c.items() if split_degree(m)[0] == degree}
                )
                for c in self.components
            ],
            self.ring,
        )

    def is_zero(self):
        return all(not component for component in self.components)

    def derivative(self, poly):
        """
        The field applied to a polynomial as a derivation
        """
        result = self.ring.zero
        for i, component in enumerate(self.components):
            if component:
                result += component * poly.diff(i)
        return result

    def jacobian(self):
        """
        Matrix of partial derivatives, entry [i][j] = d X^i / d x_j
        """
        return tuple(
            tuple(component.diff(j) for j in range(self.dimension))
            for component in self.components
        )

    def divergence(self):
        result = self.ring.zero
        for i, component in enumerate(self.components):
            result += component.diff(i)
        return result

    def bracket(self, other):
        """
        Lie bracket of vector fields seen as derivations: [U, V] = U V - V U
        """
        return PolyVectorField(
            [
                self.derivative(v) - other.derivative(u)
                for u, v in zip(self.components, other.components)
            ],
            self.ring,
        )

    def __add__(self, other):
        return PolyVectorField(
            [u + v for u, v in zip(self.components, other.components)], self.ring
        )

    def __sub__(self, other):
        return PolyVectorField(
            [u - v for u, v in zip(self.components, other.components)], self.ring
        )

    def __neg__(self):
        return PolyVectorField([-u for u in self.components], self.ring)

    def __mul__(self, scalar):
        scalar = QQ.convert(scalar)
        return PolyVectorField([u * scalar for u in self.components], self.ring)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, PolyVectorField):
            return NotImplemented
        return self.ring == other.ring and self.components == other.components

    __hash__ = None

    def __repr__(self):
        terms = []
        for i, component in enumerate(self.components):
            if component:
                terms.append("({})*d/dx{}".format(component.as_expr(), i + 1))
        return "PolyVectorField({})".format(" + ".join(terms) or "0")
