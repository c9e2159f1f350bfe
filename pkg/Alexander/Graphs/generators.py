"""
Diagramas de ejemplo y generador aleatorio de corpus.

braid_theta: s hebras salen de un vértice inferior B, recorren una palabra
de trenza hacia el norte y llegan a un vértice superior T. Es planar por
construcción. Posiciones 1..s de oeste a este; sigma_i (i > 0) cruza las
hebras en i, i+1 con la de la posición i por encima (cruce positivo) y
sigma_i^-1 (i < 0) con la de i+1 por encima (cruce negativo).
"""
from __future__ import annotations

import random
from typing import List, Sequence, Tuple

from .diagram import Crossing, Diagram, Edge, Incidence, Vertex
from .exceptions import PreconditionError


def braid_theta(strands: int, word: Sequence[int], weights: Sequence[int]) -> Diagram:
    if strands < 1:
        raise PreconditionError("se necesita al menos una hebra")
    if len(weights) != strands:
        raise PreconditionError("un peso por hebra")
    arcs: List[List[str]] = [[f"s{h}a0"] for h in range(1, strands + 1)]
    at = list(range(strands))  # at[posición] = hebra
    crossings: List[Crossing] = []
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < strands - 1:
            raise PreconditionError(f"generador fuera de rango: {g}")
        left, right = at[i], at[i + 1]
        top, bottom, sign = (left, right, 1) if g > 0 else (right, left, -1)
        new = f"s{bottom + 1}a{len(arcs[bottom])}"
        crossings.append(Crossing(arcs[top][-1], arcs[bottom][-1], new, sign))
        arcs[bottom].append(new)
        at[i], at[i + 1] = right, left

    edges = tuple(Edge(f"s{h + 1}", int(weights[h]), tuple(arcs[h])) for h in range(strands))
    bottom_vertex = Vertex("B", tuple(Incidence(arcs[h][0], -1) for h in range(strands)))
    top_vertex = Vertex("T", tuple(Incidence(arcs[at[i]][-1], 1) for i in reversed(range(strands))))
    return Diagram(edges, tuple(crossings), (bottom_vertex, top_vertex))


def balanced_weights(rng: random.Random, strands: int, bound: int = 3) -> List[int]:
    """Pesos que suman cero, no todos nulos."""
    while True:
        head = [rng.randint(-bound, bound) for _ in range(strands - 1)]
        weights = head + [-sum(head)]
        if any(weights):
            return weights


def random_braid_theta(
    rng: random.Random,
    max_crossings: int = 8,
    max_strands: int = 4,
    untouched: bool = False,
    weight_bound: int = 3,
) -> Diagram:
    """
    Theta de trenza aleatoria. Con untouched=True la hebra del extremo este
    no cruza nada, de modo que su arista es contraíble.
    """
    strands = rng.randint(2, max(2, max_strands))
    usable = strands - 2 if untouched else strands - 1
    length = rng.randint(0, max_crossings) if usable > 0 else 0
    word = [rng.choice([1, -1]) * rng.randint(1, usable) for _ in range(length)]
    return braid_theta(strands, word, balanced_weights(rng, strands, weight_bound))


def corpus(seed: int, size: int, max_crossings: int = 8, max_strands: int = 4) -> List[Diagram]:
    rng = random.Random(seed)
    return [random_braid_theta(rng, max_crossings, max_strands) for _ in range(size)]


# -----------------------------
# Diagramas fijos
# -----------------------------
def loop(weight: int = 1) -> Diagram:
    return Diagram.build([("e1", weight, ["a1"])], [], [("v", [("a1", -1), ("a1", 1)])])


def theta(weights: Tuple[int, int, int] = (1, 1, -2)) -> Diagram:
    """Tres aristas x -> y sin cruces."""
    return braid_theta(3, [], list(weights))


def path_graph(weights: Tuple[int, int] = (0, 0)) -> Diagram:
    return Diagram.build(
        [("e1", weights[0], ["a1"]), ("e2", weights[1], ["a2"])],
        [],
        [("x", [("a1", -1)]), ("y", [("a1", 1), ("a2", -1)]), ("z", [("a2", 1)])],
    )


def trefoil_with_vertex(weight: int = 1) -> Diagram:
    """Trébol con un vértice de grado 2 insertado."""
    return Diagram.build(
        [("k", weight, ["a0", "a1", "a2", "a3"])],
        [("a2", "a0", "a1", 1), ("a0", "a1", "a2", 1), ("a1", "a2", "a3", 1)],
        [("v", [("a0", -1), ("a3", 1)])],
    )


def two_loop_bouquet(x: int = 1, y: int = 1) -> Diagram:
    """Ramo de dos lazos X, Y en un vértice con ocho cruces."""
    return Diagram.build(
        [
            ("X", x, ["a1", "a3", "a6", "a9", "a10"]),
            ("Y", y, ["a5", "a2", "a4", "a8", "a7"]),
        ],
        [
            ("a2", "a1", "a3", 1),
            ("a3", "a2", "a4", 1),
            ("a5", "a3", "a6", -1),
            ("a4", "a5", "a2", 1),
            ("a7", "a6", "a9", 1),
            ("a4", "a8", "a7", -1),
            ("a9", "a4", "a8", -1),
            ("a8", "a9", "a10", -1),
        ],
        [("v", [("a1", -1), ("a5", -1), ("a7", 1), ("a10", 1)])],
    )


# Matriz de referencia del ramo (filas: ocho cruces y el vértice; columnas a1..a10).
BOUQUET_MATRIX: Tuple[Tuple[str, ...], ...] = (
    ("-1", "1-t^x", "t^y", "0", "0", "0", "0", "0", "0", "0"),
    ("0", "-1", "1-t^y", "t^x", "0", "0", "0", "0", "0", "0"),
    ("0", "0", "t^y", "0", "1-t^x", "-1", "0", "0", "0", "0"),
    ("0", "t^y", "0", "1-t^y", "-1", "0", "0", "0", "0", "0"),
    ("0", "0", "0", "0", "0", "-1", "1-t^x", "0", "t^y", "0"),
    ("0", "0", "0", "1-t^y", "0", "0", "-1", "t^y", "0", "0"),
    ("0", "0", "0", "t^x", "0", "0", "0", "-1", "1-t^y", "0"),
    ("0", "0", "0", "0", "0", "0", "0", "1-t^x", "t^y", "-1"),
    ("-t^{-x}", "0", "0", "0", "-t^{-x-y}", "0", "t^{-x-y}", "0", "0", "t^{-x}"),
)


def bouquet_raw_matrix(x: int = 1, y: int = 1) -> dict:
    """Documento de matriz cruda (formato de --raw-matrix)."""
    return {
        "c": 8,
        "v": 1,
        "e": 2,
        "rows": [list(r) for r in BOUQUET_MATRIX],
        "substitute": {"x": x, "y": y},
    }
