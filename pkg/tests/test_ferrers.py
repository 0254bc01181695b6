import collections
import unittest

from equiquant import config, make_algebra
from equiquant.domain_types import GradedDiagram
from equiquant.exceptions import InvalidArgumentError
from equiquant.ferrers import (
    EMPTY,
    FerrersDiagram,
    admissible_diagrams,
    check_tree_dominance,
    dim_irrep,
    dominance_lt,
    dual_diagram,
    format_diagram,
    format_graded,
    g_minus_one_diagram,
    is_admissible,
    lr_tensor,
    normalize,
    parse_diagram,
    tilde_tree,
)
from equiquant.utils import binomial

try:
    import lrcalc
except ImportError:
    lrcalc = None


class DiagramTests(unittest.TestCase):
    def setUp(self):
        config(reset=True)

    def tearDown(self):
        config(reset=True)

    def test_parse_and_format(self):
        """
        Verifies the "k1,k2,..." text format of diagrams
        """
        self.assertEqual(parse_diagram("6,4,2,2"), (6, 4, 2, 2))
        self.assertEqual(parse_diagram("(2,1)"), (2, 1))
        self.assertEqual(parse_diagram("3,0,0"), (3,))
        self.assertIs(parse_diagram(""), EMPTY)
        self.assertEqual(format_diagram(FerrersDiagram((4, 2))), "4,2")
        self.assertEqual(format_graded(GradedDiagram(FerrersDiagram((2,)), 1)), "2@1")
        self.assertEqual(format_graded(GradedDiagram(EMPTY, 0)), "@0")

        for bad in ("2,3", "a,b", "-1"):
            with self.assertRaises(InvalidArgumentError):
                parse_diagram(bad)

    def test_dimensions(self):
        """
        Verifies the hook-content formula on small modules
        """
        self.assertEqual(dim_irrep((), 5), 1)
        self.assertEqual(dim_irrep((1,), 4), 4)
        self.assertEqual(dim_irrep((2, 1), 3), 8)
        self.assertEqual(dim_irrep((4,), 2), 5)
        self.assertEqual(dim_irrep((2, 2), 4), 20)
        self.assertEqual(dim_irrep((1, 1, 1, 1), 4), 1)

        with self.assertRaises(InvalidArgumentError):
            dim_irrep((1, 1, 1), 2)

    def test_normalize_and_dual(self):
        """
        Verifies that full columns are stripped and duals are complements in the rectangle
        """
        self.assertEqual(normalize((3, 2, 1), 3), (2, 1))
        self.assertEqual(normalize((2, 2, 2), 3), ())
        self.assertEqual(normalize((2, 1), 3), (2, 1))

        self.assertEqual(dual_diagram((1,), 3), (1, 1))
        self.assertEqual(dual_diagram((2, 1), 3), (2, 1))
        self.assertEqual(dual_diagram((2,), 2), (2,))
        self.assertEqual(dual_diagram((1, 1), 4), (1, 1))

    def test_dominance(self):
        """
        Verifies the strict componentwise order on diagrams
        """
        self.assertTrue(dominance_lt((1, 1), (2, 2)))
        self.assertTrue(dominance_lt((), (2,)))
        self.assertFalse(dominance_lt((2, 2), (2, 2)))
        self.assertFalse(dominance_lt((2, 1), (3,)))


class LittlewoodRichardsonTests(unittest.TestCase):
    def setUp(self):
        config(reset=True)

    def tearDown(self):
        config(reset=True)

    def test_small_products(self):
        """
        Verifies known tensor products with and without normalization
        """
        self.assertEqual(lr_tensor((1,), (1,), 3), collections.Counter({(2,): 1, (1, 1): 1}))
        self.assertEqual(
            lr_tensor((2, 1), (2, 1), 3, normalized=False),
            collections.Counter({(4, 2): 1, (4, 1, 1): 1, (3, 3): 1, (3, 2, 1): 2, (2, 2, 2): 1}),
        )
        self.assertEqual(
            lr_tensor((2,), (2,), 2), collections.Counter({(4,): 1, (2,): 1, (): 1})
        )

    def test_dimension_count(self):
        """
        Verifies that the dimensions of a product add up to the product of dimensions
        """
        n = 4
        for a, b in (((2, 1), (1, 1)), ((3,), (2, 2)), ((1, 1, 1), (2,))):
            product = lr_tensor(a, b, n, normalized=False)
            total = sum(count * dim_irrep(shape, n) for shape, count in product.items())
            self.assertEqual(total, dim_irrep(a, n) * dim_irrep(b, n))

    @unittest.skipIf(lrcalc is None, "lrcalc is not installed")
    def test_matches_lrcalc(self):
        """
        Verifies the products against the lrcalc library
        """
        for a, b, n in (((2, 1), (2, 1), 3), ((3, 1), (2, 2), 4), ((2, 2), (1, 1), 4)):
            expected = {
                tuple(shape): count for shape, count in lrcalc.mult(list(a), list(b), n).items()
            }
            result = {tuple(shape): count for shape, count in lr_tensor(a, b, n, normalized=False).items()}
            self.assertEqual(result, expected)


class AdmissibleDiagramTests(unittest.TestCase):
    def setUp(self):
        config(reset=True)

    def tearDown(self):
        config(reset=True)

    def test_examples(self):
        """
        Verifies the summands of small symmetric powers
        """
        sp2 = make_algebra("sp", 2)
        self.assertEqual(admissible_diagrams(sp2, 1), [(2,)])
        self.assertEqual(admissible_diagrams(sp2, 2), [(4,), (2, 2)])
        self.assertEqual(admissible_diagrams(sp2, 0), [()])

        o4 = make_algebra("o", 4)
        self.assertEqual(admissible_diagrams(o4, 2), [(2, 2), (1, 1, 1, 1)])
        self.assertTrue(is_admissible((1, 1), o4, 1))
        self.assertFalse(is_admissible((2,), o4, 1))
        self.assertFalse(is_admissible((1, 1), o4, 2))

        self.assertEqual(g_minus_one_diagram(o4), (1, 1))
        self.assertEqual(g_minus_one_diagram(sp2), (2,))

        with self.assertRaises(InvalidArgumentError):
            admissible_diagrams(sp2, -1)

    def test_dimension_sums(self):
        """
        Verifies that the summands of S^k(g_-1) fill its dimension
        """
        for family in ("o", "sp"):
            for n in range(2, 5):
                spec = make_algebra(family, n)
                for k in range(5):
                    total = sum(dim_irrep(x, n) for x in admissible_diagrams(spec, k))
                    self.assertEqual(total, binomial(spec.d + k - 1, k))


class TildeTreeTests(unittest.TestCase):
    def setUp(self):
        config(reset=True)

    def tearDown(self):
        config(reset=True)

    def test_examples(self):
        """
        Verifies small trees level by level
        """
        tree = tilde_tree((2, 2), 2, make_algebra("o", 4))
        self.assertEqual(tree.levels, (((2, 2),), ((1, 1),), ((),)))
        self.assertEqual(tree.links[1], (((1, 1), ((2, 2),)),))

        tree = tilde_tree((2,), 1, make_algebra("sp", 2))
        self.assertEqual(tree.levels, (((2,),), ((),)))

        tree = tilde_tree((), 0, make_algebra("sp", 3))
        self.assertEqual(tree.levels, (((),),))

    def test_inadmissible_root(self):
        """
        Verifies that roots which are not summands are rejected
        """
        with self.assertRaises(InvalidArgumentError):
            tilde_tree((2,), 1, make_algebra("o", 4))

        with self.assertRaises(InvalidArgumentError):
            tilde_tree("2,2", 1, make_algebra("o", 4))

    def test_children_are_dominated(self):
        """
        Verifies that every child is strictly dominated by one of its parents and by the root
        """
        for family in ("o", "sp"):
            for n in (2, 3, 4):
                spec = make_algebra(family, n)
                for k in range(4):
                    for root in admissible_diagrams(spec, k):
                        tree = tilde_tree(root, k, spec)
                        check_tree_dominance(tree)
                        for level in tree.levels[1:]:
                            for child in level:
                                self.assertTrue(dominance_lt(child, root))


if __name__ == "__main__":
    unittest.main()
