from django.test import SimpleTestCase

from Graphs.exceptions import PreconditionError
from Graphs.generators import (
    BOUQUET_MATRIX,
    bouquet_raw_matrix,
    corpus,
    loop,
    theta,
    trefoil_with_vertex,
    two_loop_bouquet,
)
from Graphs.laurent import LaurentPoly, exact_div, parse
from Graphs.serializers import raw_matrix_from_data
from Graphs.wirtinger import (
    GroupWord,
    alexander_matrix,
    augment,
    closed_form_matrix,
    crossing_word,
    fox_derivative,
    relation_augmentations,
    wirtinger_presentation,
)


class GroupWordTests(SimpleTestCase):
    def test_reduction_and_inverse(self):
        w = GroupWord.of(("a", 1), ("b", 1), ("b", -1), ("c", -1))
        self.assertEqual(w.reduced(), GroupWord.of(("a", 1), ("c", -1)))
        self.assertEqual(len((w * w.inverse()).reduced()), 0)

    def test_crossing_words(self):
        self.assertEqual(crossing_word("b", "a", "c", 1), GroupWord.of(("b", 1), ("c", 1), ("b", -1), ("a", -1)))
        self.assertEqual(crossing_word("b", "a", "c", -1), GroupWord.of(("b", -1), ("c", 1), ("b", 1), ("a", -1)))

    def test_presentation_labels(self):
        pres = wirtinger_presentation(trefoil_with_vertex())
        self.assertEqual(pres.generators, ("a0", "a1", "a2", "a3"))
        self.assertEqual(pres.labels, ("crossing 1", "crossing 2", "crossing 3", "vertex v"))
        self.assertEqual(len(pres.relations), 4)


class FoxCalculusTests(SimpleTestCase):
    def test_derivatives(self):
        w = GroupWord.of(("a", 1), ("b", 1), ("a", -1))
        weights = {"a": 1, "b": 2}
        # d/da (a b a^-1) = 1 - a b a^-1
        self.assertEqual(augment(fox_derivative(w, "a"), weights), parse("1 - t^2"))
        # d/db (a b a^-1) = a
        self.assertEqual(augment(fox_derivative(w, "b"), weights), parse("t"))
        self.assertFalse(fox_derivative(w, "c"))

    def test_fundamental_formula(self):
        # sum_j chi(dr/da_j)(t^{w_j} - 1) = chi(r) - 1
        d = two_loop_bouquet(2, 3)
        weights = d.arc_weights()
        for r in wirtinger_presentation(d).relations:
            total = LaurentPoly.zero()
            for a in d.arcs:
                total = total + augment(fox_derivative(r, a), weights) * (LaurentPoly.monomial(1, weights[a]) - 1)
            self.assertEqual(total, augment(r, weights) - 1)

    def test_relations_augment_to_one(self):
        for d in corpus(seed=3, size=40):
            self.assertTrue(all(x == 1 for x in relation_augmentations(d)))


class AlexanderMatrixTests(SimpleTestCase):
    def test_shapes_and_labels(self):
        M = closed_form_matrix(two_loop_bouquet())
        self.assertEqual(M.shape, (9, 10))
        self.assertEqual(M.row_labels[0], "crossing 1")
        self.assertEqual(M.row_labels[-1], "vertex v")
        self.assertEqual(closed_form_matrix(loop()).rows, ((LaurentPoly.zero(),),))

    def test_vertex_row(self):
        M = closed_form_matrix(two_loop_bouquet())
        row = dict(zip(M.col_labels, M.rows[-1]))
        self.assertEqual(row["a1"], parse("-t^-1"))
        self.assertEqual(row["a5"], parse("-t^-2"))
        self.assertEqual(row["a7"], parse("t^-2"))
        self.assertEqual(row["a10"], parse("t^-1"))

    def test_fox_route_matches_closed_form(self):
        for d in [loop(2), theta(), trefoil_with_vertex(), two_loop_bouquet(2, -1)] + corpus(seed=5, size=40):
            self.assertEqual(alexander_matrix(d), closed_form_matrix(d))

    def test_requires_balance(self):
        with self.assertRaises(PreconditionError):
            closed_form_matrix(theta((1, 1, 1)))
        with self.assertRaises(PreconditionError):
            alexander_matrix(theta((1, 2, 3)))

    def test_reference_bouquet_matrix(self):
        """Cada fila coincide con una fila de la matriz de referencia salvo una unidad ±t^r."""
        for x, y in [(1, 1), (2, 3), (-1, 4)]:
            ours = closed_form_matrix(two_loop_bouquet(x, y))
            reference, _ = raw_matrix_from_data(bouquet_raw_matrix(x, y))
            targets = [dict(zip(reference.col_labels, r)) for r in reference.rows]
            for row in ours.rows:
                mine = dict(zip(ours.col_labels, row))
                self.assertTrue(
                    any(self._unit_multiple(mine, other) for other in targets),
                    f"fila sin par en la referencia: {mine}",
                )
        self.assertEqual(len(BOUQUET_MATRIX), 9)

    @staticmethod
    def _unit_multiple(mine, other) -> bool:
        pivot = next((a for a, v in other.items() if v), None)
        if pivot is None or not mine.get(pivot):
            return False
        try:
            unit = exact_div(mine[pivot], other[pivot])
        except PreconditionError:
            return False
        if not unit.is_unit():
            return False
        return all(mine.get(a, LaurentPoly.zero()) == unit * v for a, v in other.items())


class CorpusTests(SimpleTestCase):
    def test_corpus_is_deterministic(self):
        self.assertEqual(corpus(seed=11, size=10), corpus(seed=11, size=10))
        self.assertNotEqual(corpus(seed=1, size=5), corpus(seed=2, size=5))
