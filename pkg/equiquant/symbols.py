"""
Weyl-algebra calculus on symbols and normal-ordered differential operators

A differential operator sum c(x) d^alpha is stored through its total symbol
sum c(x) xi^alpha in the same ring as symbols, all x factors on the left.
"""
import functools
import itertools
import logging
import math

from sympy.polys.domains import QQ

from .decorators import validated
from .exceptions import InvalidArgumentError, WeightMismatchError
from .polynomials import PolyVectorField, split_degree, symbol_ring, xi_gen
from .utils import to_rational

logger = logging.getLogger(__name__)


class _Weighted(object):
    __slots__ = ("poly",)

    @property
    def ring(self):
        return self.poly.ring

    @property
    def d(self):
        return self.poly.ring.ngens // 2

    def xi_degrees(self):
        return sorted({split_degree(m)[1] for m in self.poly.keys()})

    def x_degrees(self):
        return sorted({split_degree(m)[0] for m in self.poly.keys()})


class Symbol(_Weighted):
    """
    Polynomial in x and xi with the weight context (lambda, mu)
    """

    __slots__ = ("lam", "mu")

    def __init__(self, poly, lam=0, mu=0):
        self.poly = poly
        self.lam = to_rational(lam)
        self.mu = to_rational(mu)

    @property
    def delta(self):
        return self.mu - self.lam

    def __add__(self, other):
        _check_same_weights(self, other)
        return Symbol(self.poly + other.poly, self.lam, self.mu)

    def __sub__(self, other):
        _check_same_weights(self, other)
        return Symbol(self.poly - other.poly, self.lam, self.mu)

    def __mul__(self, scalar):
        return Symbol(self.poly * to_rational(scalar), self.lam, self.mu)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Symbol):
            return NotImplemented
        return (self.poly, self.lam, self.mu) == (other.poly, other.lam, other.mu)

    __hash__ = None

    def __repr__(self):
        return "Symbol({}, lam={}, mu={})".format(self.poly.as_expr(), self.lam, self.mu)


class DiffOperator(_Weighted):
    """
    Normal-ordered differential operator from lam-densities to mu-densities
    The xi variables of 'poly' stand for the derivatives d/dx
    """

    __slots__ = ("lam", "mu")

    def __init__(self, poly, lam=0, mu=0):
        self.poly = poly
        self.lam = to_rational(lam)
        self.mu = to_rational(mu)

    @classmethod
    def identity(cls, d, weight=0):
        return cls(symbol_ring(d).one, weight, weight)

    def order(self):
        return max(self.xi_degrees(), default=-1)

    def __add__(self, other):
        _check_same_weights(self, other)
        return DiffOperator(self.poly + other.poly, self.lam, self.mu)

    def __sub__(self, other):
        _check_same_weights(self, other)
        return DiffOperator(self.poly - other.poly, self.lam, self.mu)

    def __eq__(self, other):
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return (self.poly, self.lam, self.mu) == (other.poly, other.lam, other.mu)

    __hash__ = None

    def __repr__(self):
        return "DiffOperator({}, lam={}, mu={})".format(
            self.poly.as_expr(), self.lam, self.mu
        )


class Density(_Weighted):
    """
    Polynomial lam-density in the x variables
    """

    __slots__ = ("weight",)

    def __init__(self, poly, weight=0):
        if any(split_degree(m)[1] for m in poly.keys()):
            raise InvalidArgumentError("Densities cannot depend on xi")
        self.poly = poly
        self.weight = to_rational(weight)

    def __eq__(self, other):
        if not isinstance(other, Density):
            return NotImplemented
        return (self.poly, self.weight) == (other.poly, other.weight)

    __hash__ = None

    def __repr__(self):
        return "Density({}, weight={})".format(self.poly.as_expr(), self.weight)


def _check_same_weights(left, right):
    if (left.lam, left.mu) != (right.lam, right.mu):
        raise WeightMismatchError(
            "Weights ({}, {}) and ({}, {}) differ".format(
                left.lam, left.mu, right.lam, right.mu
            )
        )


def _check_field(X, poly):
    if X.ring != poly.ring:
        raise InvalidArgumentError(
            "Vector field in dimension {} applied to a symbol in dimension {}".format(
                X.dimension, poly.ring.ngens // 2
            )
        )


def lie_tensor_poly(X: PolyVectorField, poly, delta):
    """
    sum X^i d_i P - sum d_j X^i xi_i dP/dxi_j + delta div(X) P
    """
    ring = poly.ring
    d = X.dimension
    result = X.derivative(poly)
    jacobian = X.jacobian()
    for j in range(d):
        fiber_derivative = poly.diff(d + j)
        if not fiber_derivative:
            continue
        for i in range(d):
            if jacobian[i][j]:
                result -= jacobian[i][j] * xi_gen(ring, i) * fiber_derivative
    if delta:
        result += X.divergence() * poly * delta
    return result


@validated
def lie_tensor(X: PolyVectorField, P: Symbol, delta=None) -> Symbol:
    _check_field(X, P.poly)
    delta = P.delta if delta is None else to_rational(delta)
    return Symbol(lie_tensor_poly(X, P.poly, delta), P.lam, P.mu)


@validated
def lie_density(X: PolyVectorField, f: Density) -> Density:
    """
    X.f + lam div(X) f
    """
    _check_field(X, f.poly)
    result = X.derivative(f.poly)
    if f.weight:
        result += X.divergence() * f.poly * f.weight
    return Density(result, f.weight)


@functools.lru_cache(maxsize=None)
def _leibniz_factor(alpha, b, gamma):
    factor = 1
    for a_i, b_i, g_i in zip(alpha, b, gamma):
        factor *= math.comb(a_i, g_i) * math.comb(b_i, g_i) * math.factorial(g_i)
    return factor


def compose_poly(left, right):
    """
    Total symbol of the product of two normal-ordered operators:
    sum over gamma of (1/gamma!) d_xi^gamma(left) d_x^gamma(right)
    """
    ring = left.ring
    d = ring.ngens // 2
    terms = {}
    for left_monomial, left_coefficient in left.items():
        a, alpha = left_monomial[:d], left_monomial[d:]
        for right_monomial, right_coefficient in right.items():
            b, beta = right_monomial[:d], right_monomial[d:]
            coefficient = left_coefficient * right_coefficient
            ranges = [range(min(alpha_i, b_i) + 1) for alpha_i, b_i in zip(alpha, b)]
            for gamma in itertools.product(*ranges):
                factor = _leibniz_factor(alpha, b, gamma)
                monomial = tuple(
                    a_i + b_i - g_i for a_i, b_i, g_i in zip(a, b, gamma)
                ) + tuple(
                    alpha_i - g_i + beta_i
                    for alpha_i, g_i, beta_i in zip(alpha, gamma, beta)
                )
                terms[monomial] = terms.get(monomial, QQ.zero) + coefficient * factor
    return ring.from_dict({m: c for m, c in terms.items() if c})


@validated
def compose(D1: DiffOperator, D2: DiffOperator) -> DiffOperator:
    """
    D1 o D2; D2 must land in the densities D1 acts on
    """
    if D2.mu != D1.lam:
        raise WeightMismatchError(
            "Cannot compose: output weight {} of the right factor differs from "
            "input weight {} of the left factor".format(D2.mu, D1.lam)
        )
    if D1.ring != D2.ring:
        raise InvalidArgumentError("Operators live in different dimensions")
    return DiffOperator(compose_poly(D1.poly, D2.poly), D2.lam, D1.mu)


@validated
def normal_order_symbol(D: DiffOperator) -> Symbol:
    return Symbol(D.poly, D.lam, D.mu)


@validated
def symbol_to_operator(P: Symbol) -> DiffOperator:
    return DiffOperator(P.poly, P.lam, P.mu)


@validated
def principal_symbol(D: DiffOperator) -> Symbol:
    """
    Top xi-degree part of the total symbol
    """
    order = D.order()
    top = {m: c for m, c in D.poly.items() if split_degree(m)[1] == order}
    return Symbol(D.ring.from_dict(top), D.lam, D.mu)


@validated
def apply_operator(D: DiffOperator, f: Density) -> Density:
    if f.weight != D.lam:
        raise WeightMismatchError(
            "Operator expects {}-densities, got weight {}".format(D.lam, f.weight)
        )
    ring = D.ring
    d = ring.ngens // 2
    derivatives = {}
    result = ring.zero
    for monomial, coefficient in D.poly.items():
        alpha = monomial[d:]
        derivative = derivatives.get(alpha)
        if derivative is None:
            derivative = f.poly
            for i, power in enumerate(alpha):
                for _ in range(power):
                    derivative = derivative.diff(i)
            derivatives[alpha] = derivative
        if derivative:
            coefficient_poly = ring.from_dict({monomial[:d] + (0,) * d: coefficient})
            result += coefficient_poly * derivative
    return Density(result, D.mu)


def first_order_symbol(X: PolyVectorField, weight):
    """
    Total symbol of the Lie derivative of weight-densities: sum X^i xi_i + weight div(X)
    """
    ring = X.ring
    result = ring.zero
    for i, component in enumerate(X.components):
        if component:
            result += component * xi_gen(ring, i)
    if weight:
        result += X.divergence() * weight
    return result


def lie_diffop_poly(X: PolyVectorField, poly, lam, mu):
    return compose_poly(first_order_symbol(X, mu), poly) - compose_poly(
        poly, first_order_symbol(X, lam)
    )


@validated
def lie_diffop(X: PolyVectorField, P: Symbol, lam=None, mu=None) -> Symbol:
    """
    Total symbol of L^mu_X o D - D o L^lam_X, D being the operator of symbol P
    """
    _check_field(X, P.poly)
    lam = P.lam if lam is None else to_rational(lam)
    mu = P.mu if mu is None else to_rational(mu)
    return Symbol(lie_diffop_poly(X, P.poly, lam, mu), lam, mu)


def gamma_poly(X: PolyVectorField, poly, lam, mu):
    return lie_diffop_poly(X, poly, lam, mu) - lie_tensor_poly(X, poly, mu - lam)


@validated
def gamma(X: PolyVectorField, P: Symbol, lam=None, mu=None) -> Symbol:
    """
    The cocycle X -> L^{lam,mu}_X - L^t_X applied to P
    """
    _check_field(X, P.poly)
    lam = P.lam if lam is None else to_rational(lam)
    mu = P.mu if mu is None else to_rational(mu)
    return Symbol(gamma_poly(X, P.poly, lam, mu), lam, mu)
