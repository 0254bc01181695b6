import unittest

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from equiquant import config, make_algebra
from equiquant.algebra import GradedElement, basis, killing_form
from equiquant.casimir import (
    EigenvaluePoly,
    Representation,
    assemble_casimir,
    casimir_matrix,
    eigenvalue,
    eigenvalue_general,
    eigenvalue_orthogonal,
    eigenvalue_symplectic,
    expand_fiberwise,
    fiber_casimir_matrix,
    h0_casimir_matrix,
    mu_mu_plus_S,
    n_c_matrix,
    predicted_spectrum,
    representation_matrix,
    weight_inner,
    x_monomial_count,
)
from equiquant.exceptions import InvalidArgumentError, TruncationError
from equiquant.ferrers import admissible_diagrams, dim_irrep, g_minus_one_diagram
from equiquant.polynomials import monomial_basis
from equiquant.utils import binomial


def _annihilated(matrix, values):
    identity = DomainMatrix.eye(matrix.shape[0], QQ)
    product = identity
    for value in values:
        product = product.matmul(matrix.sub(identity.scalarmul(value)))
    return product.is_zero_matrix


def _same(left, right):
    return left.sub(right).is_zero_matrix


class EigenvalueTests(unittest.TestCase):
    def setUp(self):
        config(reset=True)

    def tearDown(self):
        config(reset=True)

    def test_collisions(self):
        """
        Verifies the coinciding eigenvalues of (6,4) and (6,2,2,2) at zero shift
        """
        o6, sp5 = make_algebra("o", 6), make_algebra("sp", 5)

        self.assertEqual(eigenvalue((6, 4), o6)(0), QQ(36, 5))
        self.assertEqual(eigenvalue((6, 2, 2, 2), o6)(0), QQ(36, 5))
        self.assertEqual(eigenvalue((6, 2, 2, 2), sp5)(0), 6)
        self.assertEqual(eigenvalue((6, 4), sp5)(0), 6)

    def test_small_values(self):
        """
        Verifies closed forms on the trivial module and on the orthogonal algebra of rank 2
        """
        for family in ("o", "sp"):
            for n in (2, 3, 4):
                spec = make_algebra(family, n)
                self.assertEqual(
                    eigenvalue((), spec), EigenvaluePoly(QQ(spec.d, 2), -QQ(spec.d, 2), 0)
                )

        for k in range(5):
            self.assertEqual(eigenvalue_orthogonal((k, k), 2)(0), QQ(k * (k + 1), 2))

    def test_rejections(self):
        """
        Verifies that odd diagrams and quadratic roots are refused
        """
        with self.assertRaises(InvalidArgumentError):
            eigenvalue_symplectic((3,), 2)
        with self.assertRaises(InvalidArgumentError):
            eigenvalue((), make_algebra("o", 2)).root()
        with self.assertRaises(InvalidArgumentError):
            weight_inner((1, 1, 1), (1,), 2)

    def test_general_formula_agrees(self):
        """
        Verifies that the weight formula agrees with both family-specific closed forms
        """
        for family in ("o", "sp"):
            for n in (2, 3, 4):
                spec = make_algebra(family, n)
                for k in range(4):
                    for diagram in admissible_diagrams(spec, k):
                        self.assertEqual(eigenvalue_general(diagram, spec), eigenvalue(diagram, spec))

    def test_weights(self):
        """
        Verifies inner products of small weights
        """
        self.assertEqual(weight_inner((1,), (1,), 2), QQ(1, 8))
        self.assertEqual(weight_inner((1, 1), (1, 1), 2), 0)
        self.assertEqual(mu_mu_plus_S((), 4), 0)
        self.assertEqual(mu_mu_plus_S((1, 1, 1), 3), 0)
        self.assertEqual(mu_mu_plus_S(g_minus_one_diagram(make_algebra("sp", 2)), 2), 1)

    def test_difference_slope(self):
        """
        Verifies that eigenvalue differences across degrees are linear with slope -(k - l)
        """
        spec = make_algebra("sp", 3)
        for upper in admissible_diagrams(spec, 3):
            for lower in admissible_diagrams(spec, 1):
                difference = eigenvalue(upper, spec) - eigenvalue(lower, spec)
                self.assertEqual(difference.c2, 0)
                self.assertEqual(difference.c1, -2)


class SpectrumTests(unittest.TestCase):
    def setUp(self):
        config(reset=True)

    def tearDown(self):
        config(reset=True)

    def test_predicted_spectrum(self):
        """
        Verifies values and multiplicities of the closed-form spectrum
        """
        spec = make_algebra("sp", 2)
        spectrum = predicted_spectrum(spec, 0, 2, 1)

        self.assertEqual(x_monomial_count(3, 1), 4)
        self.assertEqual(x_monomial_count(3, 2), 10)
        self.assertEqual(
            sum(entry.multiplicity for entry in spectrum), len(monomial_basis(spec.d, 2, 1))
        )
        degree_one = [entry for entry in spectrum if entry.degree == 1]
        self.assertEqual(len(degree_one), 1)
        self.assertEqual(degree_one[0].value, 1)
        self.assertEqual(degree_one[0].multiplicity, 3 * 4)

    def test_collisions_are_grouped(self):
        """
        Verifies that (3,3,3,3) and (4,4,1,1,1,1) share one entry at degree 6
        """
        spec = make_algebra("o", 6)
        with self.assertLogs("equiquant.casimir", level="WARNING"):
            spectrum = predicted_spectrum(spec, 0, 6)

        grouped = [entry for entry in spectrum if len(entry.diagrams) > 1]
        self.assertIn(((3, 3, 3, 3), (4, 4, 1, 1, 1, 1)), [tuple(sorted(e.diagrams)) for e in grouped])
        for entry in grouped:
            self.assertEqual(
                entry.multiplicity, sum(dim_irrep(x, spec.n) for x in entry.diagrams)
            )

    def test_tensor_casimir_spectrum(self):
        """
        Verifies that the explicit Casimir matrix is annihilated by the predicted values
        """
        for family in ("o", "sp"):
            for n in (2, 3):
                spec = make_algebra(family, n)
                K = 2 if n == 2 else 1
                for delta in (QQ(0), QQ(1, 2), QQ(3)):
                    matrix = assemble_casimir(
                        Representation.tensor_fields, spec, 0, delta, (K, 1)
                    ).matrix
                    values = {entry.value for entry in predicted_spectrum(spec, delta, K)}
                    self.assertTrue(_annihilated(matrix, sorted(values)))

    def test_fiberwise(self):
        """
        Verifies that the tensor Casimir acts on the xi part of every x-monomial alike
        """
        spec = make_algebra("o", 3)
        fiber = fiber_casimir_matrix(spec, QQ(1, 3), 2)
        full = assemble_casimir(
            Representation.tensor_fields, spec, QQ(1, 3), QQ(2, 3), (2, 1)
        ).matrix

        self.assertTrue(_same(expand_fiberwise(fiber, spec.d, 2, 1), full))

    def test_h0_casimir_identity(self):
        """
        Verifies that the fiber Casimir is a scalar shift of the Casimir of h_0
        """
        for family in ("o", "sp"):
            spec = make_algebra(family, 2)
            d = spec.d
            for delta in (QQ(0), QQ(2, 3)):
                for k in range(3):
                    fiber = fiber_casimir_matrix(spec, delta, k)
                    indices = monomial_basis(d, k, 0).indices_of_xi_degree(k)
                    block = fiber.extract(indices, indices)
                    scalar = (d * delta - k) * (d * (delta - 1) - k) / (2 * d)
                    shifted = h0_casimir_matrix(spec, k).add(
                        DomainMatrix.eye(len(indices), QQ).scalarmul(scalar)
                    )
                    self.assertTrue(_same(block, shifted))

    def test_h0_casimir_on_g_minus_one(self):
        """
        Verifies that the Casimir of h_0 is built on a bare fiber and is scalar on g_-1
        """
        for family in ("o", "sp"):
            spec = make_algebra(family, 3)
            matrix = h0_casimir_matrix(spec, 1)
            self.assertEqual(matrix.shape, (spec.d, spec.d))

            scalar = matrix.to_dense().to_list()[0][0]
            self.assertTrue(
                _same(matrix, DomainMatrix.eye(spec.d, QQ).scalarmul(scalar))
            )
            self.assertEqual(h0_casimir_matrix(spec, 2).shape[0], binomial(spec.d + 1, 2))

    def test_basis_independence(self):
        """
        Verifies that C(L^t) is unchanged when g_-1 is mixed and the dual basis recomputed
        """
        for family in ("o", "sp"):
            spec = make_algebra(family, 3 if family == "o" else 2)
            d = spec.d
            original = basis(spec)
            mixed = [
                original[i] + original[(i + 1) % d] * QQ(i + 1) for i in range(d)
            ] + list(original[d:])

            size = len(mixed)
            gram = DomainMatrix(
                [[killing_form(u, v, spec) for v in mixed] for u in mixed],
                (size, size),
                QQ,
            )
            inverse = gram.to_dense().inv().to_list()
            duals = []
            for b in range(size):
                dual = GradedElement.zero(spec.n)
                for c in range(size):
                    if inverse[c][b]:
                        dual = dual + mixed[c] * inverse[c][b]
                duals.append(dual)

            K, M = 1, 1
            delta = QQ(1, 3)
            small = len(monomial_basis(d, K, M))
            total = DomainMatrix.zeros((len(monomial_basis(d, K, M + 2)), small), QQ)
            for u, dual in zip(mixed, duals):
                first = representation_matrix(
                    Representation.tensor_fields, dual, spec, 0, delta, K, M, M + 1
                )
                second = representation_matrix(
                    Representation.tensor_fields, u, spec, 0, delta, K, M + 1, M + 2
                )
                total = total.add(second.matmul(first))
            rebuilt = total.extract(list(range(small)), list(range(small)))

            expected = casimir_matrix(
                Representation.tensor_fields, spec, 0, delta, (K, M)
            ).matrix
            self.assertTrue(_same(rebuilt, expected))

    def test_negative_truncation(self):
        """
        Verifies that negative truncation degrees are refused
        """
        spec = make_algebra("sp", 2)
        with self.assertRaises((InvalidArgumentError, TruncationError)):
            casimir_matrix(Representation.diff_ops, spec, 0, 0, (-1, 0))
        with self.assertRaises((InvalidArgumentError, TruncationError)):
            n_c_matrix(spec, 0, 0, (1, -1))


class CasimirRelationTests(unittest.TestCase):
    def setUp(self):
        config(reset=True)

    def tearDown(self):
        config(reset=True)

    def test_difference_is_n_c(self):
        """
        Verifies that C(L^{lam,mu}) - C(L^t) = 2 sum gamma(eps_i) L^t(e_i)
        """
        for family in ("o", "sp"):
            spec = make_algebra(family, 2)
            for lam, mu in ((QQ(0), QQ(0)), (QQ(1, 2), QQ(1, 2)), (QQ(1, 3), QQ(2, 3))):
                truncation = (2, 1)
                operator = casimir_matrix(Representation.diff_ops, spec, lam, mu, truncation).matrix
                tensor = casimir_matrix(Representation.tensor_fields, spec, lam, mu, truncation).matrix
                nc = n_c_matrix(spec, lam, mu, truncation).matrix

                self.assertTrue(_same(operator.sub(tensor), nc))

    def test_n_c_lowers_degrees(self):
        """
        Verifies that N_C lowers both degrees by one
        """
        spec = make_algebra("sp", 2)
        symbols = monomial_basis(spec.d, 2, 2)
        nc = n_c_matrix(spec, QQ(1, 2), QQ(1, 2), (2, 2)).matrix

        self.assertFalse(nc.is_zero_matrix)
        for (row, column), value in nc.to_dok().items():
            self.assertEqual(symbols.degrees[row][0], symbols.degrees[column][0] - 1)
            self.assertEqual(symbols.degrees[row][1], symbols.degrees[column][1] - 1)

    def test_representation_is_linear(self):
        """
        Verifies that the matrix of a combination is the combination of matrices
        """
        spec = make_algebra("o", 3)
        x, y = basis(spec)[0], basis(spec)[-1]

        def matrix(element):
            return representation_matrix(
                Representation.diff_ops, element, spec, QQ(1, 2), QQ(1, 2), 1, 0, 1
            )

        combined = matrix(x * 2 + y)
        separate = matrix(x).scalarmul(QQ(2)).add(matrix(y))
        self.assertTrue(_same(combined, separate))


if __name__ == "__main__":
    unittest.main()
