from django.test import SimpleTestCase

from Graphs import coloring
from Graphs.diagram import with_weights
from Graphs.exceptions import PreconditionError, ResourceCapExceeded
from Graphs.generators import bouquet_raw_matrix, theta, trefoil_with_vertex, two_loop_bouquet
from Graphs.serializers import raw_matrix_from_data


class LinearAlgebraTests(SimpleTestCase):
    def test_rref_and_nullspace(self):
        rows = [[1, 2, 3], [2, 4, 6]]
        R, pivots = coloring.rref(rows, 7, 3)
        self.assertEqual(R, [[1, 2, 3]])
        self.assertEqual(pivots, [0])
        basis = coloring.nullspace(rows, 7, 3)
        self.assertEqual(len(basis), 2)
        for vec in basis:
            self.assertEqual(sum(a * b for a, b in zip(rows[0], vec)) % 7, 0)

    def test_zero_coordinate_witness(self):
        basis = [b.values for b in coloring.nullspace_basis(two_loop_bouquet(), -1, 5)]
        self.assertEqual(len(basis), 3)
        witness = coloring.zero_coordinate_witness(basis, [0, 4], 5)
        self.assertIsNotNone(witness)
        self.assertEqual((witness[0], witness[4]), (0, 0))
        self.assertTrue(any(witness))
        self.assertIsNone(coloring.zero_coordinate_witness([], [0], 5))


class ModulusTests(SimpleTestCase):
    def test_check_modulus(self):
        with self.assertRaises(PreconditionError):
            coloring.check_modulus(9, 2)
        with self.assertRaises(PreconditionError):
            coloring.check_modulus(2, 1)
        coloring.check_modulus(2, 1, allow_even_prime=True)
        with self.assertRaises(PreconditionError) as ctx:
            coloring.check_modulus(5, 10)
        self.assertIn("modular inverse of n undefined", ctx.exception.message)


class NullityTests(SimpleTestCase):
    def test_bouquet_at_minus_one(self):
        d = two_loop_bouquet()
        self.assertEqual(coloring.nullity(d, -1, 5), 3)
        for p in (3, 7, 11, 13):
            with self.subTest(p=p):
                self.assertEqual(coloring.nullity(d, -1, p), 2)

    def test_bouquet_at_five(self):
        d = two_loop_bouquet()
        self.assertEqual(coloring.nullity(d, 5, 17), 3)
        for p in (3, 7, 11, 13):
            with self.subTest(p=p):
                self.assertEqual(coloring.nullity(d, 5, p), 2)

    def test_reference_matrix_agrees(self):
        M, _ = raw_matrix_from_data(bouquet_raw_matrix())
        self.assertEqual(coloring.matrix_nullity(coloring.matrix_mod_p(M, -1, 5)), 3)
        self.assertEqual(coloring.matrix_nullity(coloring.matrix_mod_p(M, 5, 17)), 3)
        self.assertEqual(coloring.matrix_nullity(coloring.matrix_mod_p(M, 5, 7)), 2)

    def test_trefoil(self):
        self.assertEqual(coloring.nullity(trefoil_with_vertex(), -1, 3), 2)
        self.assertEqual(coloring.nullity(trefoil_with_vertex(), -1, 5), 1)

    def test_basis_vectors_are_colorings(self):
        d = two_loop_bouquet()
        for col in coloring.nullspace_basis(d, -1, 5):
            self.assertTrue(coloring.is_coloring(d, col.values, -1, 5))
        self.assertFalse(coloring.is_coloring(d, [1] + [0] * 9, -1, 5))


class EnumerationTests(SimpleTestCase):
    def test_enumerate_all(self):
        found = coloring.enumerate_colorings(two_loop_bouquet(), -1, 5)
        self.assertEqual(len(found), 125)
        self.assertEqual(len({c.values for c in found}), 125)
        self.assertEqual(found[0]["a1"], 0)

    def test_cap(self):
        with self.assertRaises(ResourceCapExceeded) as ctx:
            coloring.enumerate_colorings(two_loop_bouquet(), -1, 5, cap=100)
        self.assertIn("p^N", ctx.exception.message)


class DeterminantCriterionTests(SimpleTestCase):
    def test_bouquet(self):
        d = two_loop_bouquet()
        check = coloring.coloring_determinant_check(d, -1, 5, 1)
        self.assertEqual(check.threshold, 2)
        self.assertTrue(check.extra_colorings)
        self.assertTrue(check.divides)
        self.assertTrue(check.agrees)
        for p in (3, 7, 11, 13):
            for n, k in [(-1, 1), (5, 1), (-1, 2), (5, 2)]:
                with self.subTest(p=p, n=n, k=k):
                    self.assertTrue(coloring.coloring_determinant_check(d, n, p, k).agrees)

    def test_lower_bound(self):
        # N_p >= e - v + 1 en grafos conexos
        for d in [two_loop_bouquet(), theta(), trefoil_with_vertex()]:
            c, v, e = d.counts
            self.assertGreaterEqual(coloring.nullity(d, 2, 3), e - v + 1)


class TrivialWeightingTests(SimpleTestCase):
    def test_colorings_are_flows(self):
        zero_theta = with_weights(theta(), {"s1": 0, "s2": 0, "s3": 0})
        flows = coloring.trivial_weighting_colorings(zero_theta, 5)
        self.assertEqual(len(flows), 2)
        self.assertEqual(coloring.nullity(zero_theta, 2, 5), 2)
        for flow in flows:
            self.assertTrue(coloring.is_coloring(zero_theta, flow.values, 2, 5))

        zero_bouquet = with_weights(two_loop_bouquet(), {"X": 0, "Y": 0})
        self.assertEqual(
            len(coloring.trivial_weighting_colorings(zero_bouquet, 7)),
            coloring.nullity(zero_bouquet, 3, 7),
        )

    def test_requires_trivial_weighting(self):
        with self.assertRaises(PreconditionError):
            coloring.trivial_weighting_colorings(theta(), 5)
