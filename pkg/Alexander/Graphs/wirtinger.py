"""
Presentación de Wirtinger, cálculo libre de Fox y la matriz de Alexander.

Convención de cruces (a = under_in, b = over, c = under_out):
    positivo: b c b^-1 a^-1 = 1
    negativo: b^-1 c b a^-1 = 1
Relación de vértice: a_1^{e_1} ... a_n^{e_n} = 1, en el orden de la lista.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from .diagram import Diagram, require_balanced, require_valid
from .exceptions import PreconditionError
from .laurent import LaurentPoly, to_text

logger = logging.getLogger(__name__)

Letter = Tuple[str, int]


# =========================================================
# Palabras y anillo de grupo
# =========================================================
@dataclass(frozen=True)
class GroupWord:
    letters: Tuple[Letter, ...] = ()

    @classmethod
    def of(cls, *letters: Letter) -> "GroupWord":
        return cls(tuple(letters))

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def reduced(self) -> "GroupWord":
        """Cancelación libre de pares adyacentes x x^-1."""
        out: List[Letter] = []
        for g, e in self.letters:
            if out and out[-1][0] == g and out[-1][1] == -e:
                out.pop()
            else:
                out.append((g, e))
        return GroupWord(tuple(out))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(g if e == 1 else f"{g}^-1" for g, e in self.letters)


class GroupRingElem:
    """Combinación entera finita de palabras libremente reducidas."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[GroupWord, int] | None = None):
        acc: Dict[GroupWord, int] = {}
        for w, c in (terms or {}).items():
            w = w.reduced()
            acc[w] = acc.get(w, 0) + c
        self._terms = {w: c for w, c in acc.items() if c}

    def items(self):
        return self._terms.items()

    def __add__(self, other: "GroupRingElem") -> "GroupRingElem":
        acc = dict(self._terms)
        for w, c in other._terms.items():
            acc[w] = acc.get(w, 0) + c
        return GroupRingElem(acc)

    def __neg__(self) -> "GroupRingElem":
        return GroupRingElem({w: -c for w, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupRingElem) and self._terms == other._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        return "GroupRingElem(" + ", ".join(f"{c}*[{w}]" for w, c in self._terms.items()) + ")"


# =========================================================
# Presentación de Wirtinger
# =========================================================
@dataclass(frozen=True)
class Presentation:
    generators: Tuple[str, ...]
    relations: Tuple[GroupWord, ...]
    labels: Tuple[str, ...]


def crossing_word(over: str, under_in: str, under_out: str, sign: int) -> GroupWord:
    if sign > 0:
        return GroupWord.of((over, 1), (under_out, 1), (over, -1), (under_in, -1))
    return GroupWord.of((over, -1), (under_out, 1), (over, 1), (under_in, -1))


def relation_labels(d: Diagram) -> List[str]:
    return [f"crossing {i}" for i in range(1, len(d.crossings) + 1)] + [
        f"vertex {v.id}" for v in d.vertices
    ]


def wirtinger_presentation(d: Diagram) -> Presentation:
    require_valid(d)
    relations = [crossing_word(x.over, x.under_in, x.under_out, x.sign) for x in d.crossings]
    relations += [GroupWord(tuple((i.arc, i.sign) for i in v.incident)) for v in d.vertices]
    return Presentation(tuple(d.arcs), tuple(relations), tuple(relation_labels(d)))


# =========================================================
# Cálculo de Fox y aumentación
# =========================================================
def fox_derivative(w: GroupWord, generator: str) -> GroupRingElem:
    """
    Reglas: d(a_i)/d(a_j) = delta_ij, d(gh) = d(g) + g d(h),
    d(g^-1) = -g^-1 d(g).
    """
    acc: Dict[GroupWord, int] = {}
    prefix = GroupWord()
    for g, e in w.letters:
        if g == generator:
            if e > 0:
                acc[prefix] = acc.get(prefix, 0) + 1
            else:
                term = prefix * GroupWord.of((g, -1))
                acc[term] = acc.get(term, 0) - 1
        prefix = prefix * GroupWord.of((g, e))
    return GroupRingElem(acc)


def augment(x: Union[GroupWord, GroupRingElem], weights: Mapping[str, int]) -> LaurentPoly:
    """chi: cada generador a -> t^{peso(a)}; lineal sobre el anillo de grupo."""
    if isinstance(x, GroupWord):
        return LaurentPoly.monomial(1, sum(e * weights[g] for g, e in x.letters))
    acc = LaurentPoly.zero()
    for w, c in x.items():
        acc = acc + LaurentPoly.monomial(c, sum(e * weights[g] for g, e in w.letters))
    return acc


def relation_augmentations(d: Diagram) -> List[LaurentPoly]:
    """chi(r) para cada relación; todas valen 1 en un diagrama balanceado."""
    weights = d.arc_weights()
    return [augment(r, weights) for r in wirtinger_presentation(d).relations]


# =========================================================
# Matriz de Alexander
# =========================================================
@dataclass(frozen=True)
class AlexMatrix:
    rows: Tuple[Tuple[LaurentPoly, ...], ...]
    row_labels: Tuple[str, ...]
    col_labels: Tuple[str, ...]

    @classmethod
    def from_rows(
        cls,
        rows: Sequence[Sequence[LaurentPoly]],
        row_labels: Sequence[str] | None = None,
        col_labels: Sequence[str] | None = None,
    ) -> "AlexMatrix":
        rows = tuple(tuple(LaurentPoly.coerce(x) for x in r) for r in rows)
        width = len(rows[0]) if rows else len(col_labels or ())
        if any(len(r) != width for r in rows):
            raise PreconditionError("filas de longitud distinta")
        return cls(
            rows,
            tuple(row_labels or (f"r{i}" for i in range(1, len(rows) + 1))),
            tuple(col_labels or (f"a{j}" for j in range(1, width + 1))),
        )

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.col_labels)

    def entry(self, i: int, j: int) -> LaurentPoly:
        return self.rows[i][j]

    def map(self, fn) -> "AlexMatrix":
        return AlexMatrix(
            tuple(tuple(fn(x) for x in r) for r in self.rows), self.row_labels, self.col_labels
        )

    def text_rows(self) -> List[List[str]]:
        return [[to_text(x) for x in r] for r in self.rows]


def _assemble(d: Diagram, rows: Iterable[Dict[str, LaurentPoly]]) -> AlexMatrix:
    arcs = d.arcs
    dense = [tuple(row.get(a, LaurentPoly.zero()) for a in arcs) for row in rows]
    return AlexMatrix(tuple(dense), tuple(relation_labels(d)), tuple(arcs))


def alexander_matrix(d: Diagram) -> AlexMatrix:
    """Ruta genérica: chi(d r_i / d a_j) para cada relación y generador."""
    require_balanced(d)
    weights = d.arc_weights()
    pres = wirtinger_presentation(d)
    rows = []
    for r in pres.relations:
        rows.append({a: augment(fox_derivative(r, a), weights) for a in {g for g, _ in r.letters}})
    matrix = _assemble(d, rows)
    logger.debug("alexander_matrix: %dx%d", *matrix.shape)
    return matrix


def _accumulate(row: Dict[str, LaurentPoly], arc: str, value: LaurentPoly) -> None:
    row[arc] = row.get(arc, LaurentPoly.zero()) + value


def closed_form_matrix(d: Diagram) -> AlexMatrix:
    """
    Ruta directa con las filas cerradas:
      cruce +: -1 en a, 1 - t^{w2} en b, t^{w1} en c
      cruce -: -1 en a, -t^{-w1} + t^{-w1+w2} en b, t^{-w1} en c
      vértice: e_i t^{m_i} en a_i, m_i = sum_{j<i} e_j w_j + min(e_i, 0) w_i
    con w1 el peso del arco superior y w2 el de la arista inferior.
    """
    require_balanced(d)
    weight = d.arc_weights()
    one = LaurentPoly.one()
    rows: List[Dict[str, LaurentPoly]] = []

    for x in d.crossings:
        w1, w2 = weight[x.over], weight[x.under_in]
        row: Dict[str, LaurentPoly] = {}
        _accumulate(row, x.under_in, -one)
        if x.sign > 0:
            _accumulate(row, x.over, one - LaurentPoly.monomial(1, w2))
            _accumulate(row, x.under_out, LaurentPoly.monomial(1, w1))
        else:
            _accumulate(row, x.over, LaurentPoly.monomial(-1, -w1) + LaurentPoly.monomial(1, w2 - w1))
            _accumulate(row, x.under_out, LaurentPoly.monomial(1, -w1))
        rows.append(row)

    for v in d.vertices:
        row = {}
        m = 0
        for inc in v.incident:
            w = weight[inc.arc]
            _accumulate(row, inc.arc, LaurentPoly.monomial(inc.sign, m + min(inc.sign, 0) * w))
            m += inc.sign * w
        rows.append(row)

    return _assemble(d, rows)
