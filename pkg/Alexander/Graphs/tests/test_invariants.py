import random

from django.test import SimpleTestCase

from Graphs.exceptions import PreconditionError, ResourceCapExceeded
from Graphs.generators import bouquet_raw_matrix, corpus, loop, theta, trefoil_with_vertex, two_loop_bouquet
from Graphs.invariants import (
    DetOptions,
    IntMatrix,
    alexander_poly,
    block_det_poly,
    block_diagonal,
    brute_force_minor_gcd,
    det_poly,
    determinant_at,
    determinantal_divisors,
    evaluate_matrix,
    matrix_determinant_at,
    smith_normal_form,
    unit_reduction,
)
from Graphs.laurent import LaurentPoly, divides, normalize_unit, parse
from Graphs.serializers import raw_matrix_from_data
from Graphs.wirtinger import AlexMatrix, closed_form_matrix

DELTA_1 = parse("t^2 - 2*t + 2")


def random_laurent_matrix(rng: random.Random, nrows: int, ncols: int) -> AlexMatrix:
    def entry() -> LaurentPoly:
        if rng.random() < 0.4:
            return LaurentPoly.zero()
        return LaurentPoly.from_pairs(
            (rng.randint(-2, 2), rng.choice([-2, -1, 1, 2])) for _ in range(rng.randint(1, 2))
        )

    return AlexMatrix.from_rows([[entry() for _ in range(ncols)] for _ in range(nrows)])


def unimodular_shuffle(rng: random.Random, M: AlexMatrix, steps: int = 6) -> AlexMatrix:
    """Operaciones elementales invertibles sobre Z[t^{±1}] en filas y columnas."""
    rows = [list(r) for r in M.rows]
    for _ in range(steps):
        nrows, ncols = len(rows), len(rows[0])
        kind = rng.choice(["add_row", "add_col", "swap_rows", "swap_cols", "scale_row", "scale_col"])
        unit = LaurentPoly.monomial(rng.choice([-1, 1]), rng.randint(-2, 2))
        factor = LaurentPoly.from_pairs([(rng.randint(-1, 1), rng.choice([-2, -1, 1, 2]))])
        if kind == "add_row" and nrows > 1:
            i, j = rng.sample(range(nrows), 2)
            rows[j] = [b + factor * a for a, b in zip(rows[i], rows[j])]
        elif kind == "add_col" and ncols > 1:
            i, j = rng.sample(range(ncols), 2)
            for r in rows:
                r[j] = r[j] + factor * r[i]
        elif kind == "swap_rows" and nrows > 1:
            i, j = rng.sample(range(nrows), 2)
            rows[i], rows[j] = rows[j], rows[i]
        elif kind == "swap_cols" and ncols > 1:
            i, j = rng.sample(range(ncols), 2)
            for r in rows:
                r[i], r[j] = r[j], r[i]
        elif kind == "scale_row":
            i = rng.randrange(nrows)
            rows[i] = [unit * x for x in rows[i]]
        elif kind == "scale_col":
            j = rng.randrange(ncols)
            for r in rows:
                r[j] = unit * r[j]
    return AlexMatrix.from_rows(rows)


class AlexanderPolynomialTests(SimpleTestCase):
    def test_bouquet(self):
        d = two_loop_bouquet()
        self.assertEqual(alexander_poly(d, 1), DELTA_1)
        self.assertEqual(alexander_poly(d, 2), 1)
        self.assertEqual(alexander_poly(d, 0), 0)
        self.assertEqual(alexander_poly(d, 1, route="fox"), DELTA_1)

    def test_reference_matrix(self):
        M, (c, v, _) = raw_matrix_from_data(bouquet_raw_matrix())
        self.assertEqual(normalize_unit(det_poly(M, c + v - 1)), DELTA_1)
        self.assertEqual(normalize_unit(det_poly(M, c + v - 2)), 1)
        self.assertEqual(det_poly(M, c + v), 0)

    def test_small_diagrams(self):
        self.assertEqual(alexander_poly(trefoil_with_vertex(), 1), parse("t^2 - t + 1"))
        self.assertEqual(alexander_poly(loop(), 1), 1)
        self.assertEqual(alexander_poly(loop(), 0), 0)
        self.assertEqual(alexander_poly(theta(), 1), 1)

    def test_divisibility_chain(self):
        d = two_loop_bouquet(1, 2)
        polys = [alexander_poly(d, k) for k in range(0, 4)]
        for lower, higher in zip(polys, polys[1:]):
            self.assertTrue(divides(higher, lower))

    def test_rejects_negative_k(self):
        with self.assertRaises(PreconditionError):
            alexander_poly(loop(), -1)


class DetPolyTests(SimpleTestCase):
    def test_edge_cases(self):
        M = AlexMatrix.from_rows([[parse("t - 1"), 0], [0, parse("t + 1")]])
        self.assertEqual(det_poly(M, 0), 1)
        self.assertEqual(det_poly(M, -2), 1)
        self.assertEqual(det_poly(M, 3), 0)
        self.assertEqual(det_poly(M, 2), normalize_unit(parse("t^2 - 1")))
        self.assertEqual(det_poly(M, 1), 1)

    def test_unit_reduction_keeps_determinant(self):
        M = closed_form_matrix(two_loop_bouquet())
        reduced, k = unit_reduction(M, 8)
        self.assertLess(reduced.shape[0], M.shape[0])
        self.assertLess(k, 8)
        self.assertEqual(normalize_unit(det_poly(reduced, k, DetOptions.naive())), DELTA_1)

    def test_naive_matches_optimized(self):
        rng = random.Random(20)
        for _ in range(50):
            M = random_laurent_matrix(rng, rng.randint(1, 5), rng.randint(1, 6))
            for k in range(1, min(M.shape) + 1):
                with self.subTest(rows=M.text_rows(), k=k):
                    self.assertEqual(
                        normalize_unit(det_poly(M, k, DetOptions.naive())),
                        normalize_unit(det_poly(M, k)),
                    )

    def test_monomial_entries_keep_their_offsets(self):
        M = AlexMatrix.from_rows([[parse("t"), 1], [1, 1]])
        self.assertEqual(normalize_unit(det_poly(M, 2, DetOptions.naive())), normalize_unit(parse("t - 1")))
        self.assertEqual(normalize_unit(det_poly(M, 2, DetOptions(unit_reduction=False))), normalize_unit(parse("t - 1")))
        M = AlexMatrix.from_rows([[parse("t^2"), parse("t^-1")], [parse("t"), parse("1 + t")]])
        self.assertEqual(normalize_unit(det_poly(M, 2, DetOptions.naive())), normalize_unit(parse("t^3 + t^2 - 1")))

    def test_bouquet_without_reduction(self):
        M = closed_form_matrix(two_loop_bouquet())
        self.assertEqual(normalize_unit(det_poly(M, 8, DetOptions.naive())), DELTA_1)
        self.assertEqual(normalize_unit(det_poly(M, 8, DetOptions(unit_reduction=False))), DELTA_1)
        self.assertEqual(normalize_unit(det_poly(M, 7, DetOptions(unit_reduction=False))), 1)

    def test_invariant_under_unimodular_operations(self):
        rng = random.Random(24)
        for i, d in enumerate(corpus(seed=23, size=15, max_crossings=5, max_strands=3)):
            c, v, _ = d.counts
            M = closed_form_matrix(d)
            shuffled = unimodular_shuffle(rng, M)
            for k in (1, 2):
                with self.subTest(i=i, k=k):
                    self.assertEqual(
                        normalize_unit(det_poly(shuffled, c + v - k)),
                        normalize_unit(det_poly(M, c + v - k)),
                    )
        rng = random.Random(25)
        for _ in range(20):
            M = random_laurent_matrix(rng, 3, 4)
            shuffled = unimodular_shuffle(rng, M)
            for k in (1, 2, 3):
                with self.subTest(rows=M.text_rows(), k=k):
                    self.assertEqual(
                        normalize_unit(det_poly(shuffled, k, DetOptions.naive())),
                        normalize_unit(det_poly(M, k, DetOptions.naive())),
                    )

    def test_threads_and_redundant_row(self):
        M = closed_form_matrix(two_loop_bouquet())
        self.assertEqual(normalize_unit(det_poly(M, 8, DetOptions(threads=2))), DELTA_1)
        self.assertEqual(normalize_unit(det_poly(M, 8, DetOptions(unit_reduction=False, threads=3))), DELTA_1)
        for d in corpus(seed=8, size=25):
            c, v, _ = d.counts
            M = closed_form_matrix(d)
            for k in (1, 2):
                self.assertEqual(
                    normalize_unit(det_poly(M, c + v - k, DetOptions(drop_redundant_row=True))),
                    normalize_unit(det_poly(M, c + v - k)),
                )

    def test_minor_cap(self):
        M = closed_form_matrix(two_loop_bouquet())
        options = DetOptions(early_exit=False, unit_reduction=False, minor_cap=5)
        with self.assertRaises(ResourceCapExceeded) as ctx:
            det_poly(M, 8, options)
        self.assertEqual(ctx.exception.exit_code, 3)

    def test_block_formula(self):
        A = closed_form_matrix(two_loop_bouquet())
        B = closed_form_matrix(trefoil_with_vertex())
        D = block_diagonal([A, B])
        self.assertEqual(D.shape, (13, 14))
        for k in (10, 11, 12):
            self.assertEqual(normalize_unit(det_poly(D, k)), block_det_poly([A, B], k))
        self.assertEqual(
            block_det_poly([A, B], 11),
            normalize_unit(DELTA_1 * parse("t^2 - t + 1")),
        )


class SmithNormalFormTests(SimpleTestCase):
    def test_known_forms(self):
        self.assertEqual(smith_normal_form(IntMatrix.of([[2, 4], [6, 8]])).factors, (2, 4))
        self.assertEqual(smith_normal_form(IntMatrix.of([[0, 0], [0, 0]])).rank, 0)
        self.assertEqual(smith_normal_form(IntMatrix.of([[2, 0], [0, 3]])).factors, (1, 6))
        self.assertEqual(determinantal_divisors(IntMatrix.of([[2, 0, 0], [0, 4, 0], [0, 0, 6]])), [2, 4, 48])

    def test_matches_brute_force(self):
        rng = random.Random(7)
        for _ in range(100):
            nrows, ncols = rng.randint(1, 6), rng.randint(1, 7)
            M = IntMatrix.of([[rng.randint(-4, 4) for _ in range(ncols)] for _ in range(nrows)])
            snf = smith_normal_form(M)
            divisors = determinantal_divisors(M)
            for j in range(1, min(nrows, ncols) + 1):
                with self.subTest(rows=M.rows, j=j):
                    expected = brute_force_minor_gcd(M, j)
                    self.assertEqual(divisors[j - 1] if j <= snf.rank else 0, expected)
            for a, b in zip(snf.factors, snf.factors[1:]):
                self.assertEqual(b % a, 0)

    def test_larger_matrices(self):
        rng = random.Random(9)
        for _ in range(4):
            M = IntMatrix.of([[rng.randint(-3, 3) for _ in range(7)] for _ in range(6)])
            divisors = determinantal_divisors(M)
            for j in (1, 2, 6):
                expected = brute_force_minor_gcd(M, j)
                self.assertEqual(divisors[j - 1] if j <= len(divisors) else 0, expected)


class DeterminantTests(SimpleTestCase):
    def test_bouquet_values(self):
        d = two_loop_bouquet()
        self.assertEqual(determinant_at(d, -1, 1).value, 5)
        self.assertEqual(determinant_at(d, 5, 1).value, 17)
        self.assertEqual(determinant_at(d, -1, 2).value, 1)
        self.assertEqual(determinant_at(d, 5, 2).value, 1)
        self.assertEqual(determinant_at(d, 1, 1).value, 1)
        self.assertEqual(determinant_at(trefoil_with_vertex(), -1, 1).value, 3)

    def test_reference_matrix_values(self):
        M, (c, v, _) = raw_matrix_from_data(bouquet_raw_matrix())
        self.assertEqual(matrix_determinant_at(M, -1, c + v - 1).value, 5)
        self.assertEqual(matrix_determinant_at(M, 5, c + v - 1).value, 17)
        self.assertEqual(matrix_determinant_at(M, 5, c + v - 2).value, 1)

    def test_composite_argument_is_flagged(self):
        result = determinant_at(two_loop_bouquet(), 6, 1)
        self.assertFalse(result.invariant)
        self.assertTrue(determinant_at(two_loop_bouquet(), 7, 1).invariant)

    def test_evaluate_matrix_clears_negative_exponents(self):
        M = AlexMatrix.from_rows([[parse("t^-1"), parse("-t^-2")]])
        self.assertEqual(evaluate_matrix(M, 3).rows, ((3, -1),))

    def test_rejects_bad_arguments(self):
        with self.assertRaises(PreconditionError):
            determinant_at(loop(), 0, 1)
        with self.assertRaises(PreconditionError):
            determinant_at(loop(), 2, 0)
