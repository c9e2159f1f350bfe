"""
p-coloraciones en n: matriz de coloración sobre F_p, nulidad N_p,
enumeración y el criterio p | det_k(G, w)(n).
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import isprime

from .diagram import Diagram, require_balanced
from .exceptions import PreconditionError, ResourceCapExceeded
from .invariants import matrix_determinant_at
from .laurent import eval_mod
from .wirtinger import AlexMatrix, closed_form_matrix

logger = logging.getLogger(__name__)

DEFAULT_ENUMERATION_CAP = 10 ** 6

Vector = Tuple[int, ...]


# =========================================================
# Tipos
# =========================================================
@dataclass(frozen=True)
class ModMatrix:
    rows: Tuple[Vector, ...]
    p: int
    col_labels: Tuple[str, ...]

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.col_labels)


@dataclass(frozen=True)
class Coloring:
    p: int
    n: int
    arcs: Tuple[str, ...]
    values: Vector

    def as_dict(self) -> Dict[str, int]:
        return dict(zip(self.arcs, self.values))

    def __getitem__(self, arc: str) -> int:
        return self.values[self.arcs.index(arc)]


@dataclass(frozen=True)
class ColoringCheck:
    p: int
    n: int
    k: int
    nullity: int
    threshold: int
    raw_determinant: int
    extra_colorings: bool
    divides: bool

    @property
    def agrees(self) -> bool:
        return self.extra_colorings == self.divides


# =========================================================
# Álgebra lineal sobre F_p
# =========================================================
def check_modulus(p: int, n: int, allow_even_prime: bool = False) -> None:
    if not isprime(p):
        raise PreconditionError(f"p = {p} no es primo")
    if p == 2 and not allow_even_prime:
        raise PreconditionError("p = 2 excluido (se requiere primo impar)")
    if n % p == 0:
        raise PreconditionError(f"modular inverse of n undefined: {p} divide a n = {n}")


def rref(rows: Sequence[Sequence[int]], p: int, ncols: int) -> Tuple[List[List[int]], List[int]]:
    """Forma escalonada reducida sobre F_p; devuelve (filas no nulas, columnas pivote)."""
    A = [[x % p for x in r] for r in rows]
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(A)) if A[i][c]), None)
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [(x * inv) % p for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(a - f * b) % p for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def nullspace(rows: Sequence[Sequence[int]], p: int, ncols: int) -> List[Vector]:
    R, pivots = rref(rows, p, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for row, c in zip(R, pivots):
            vec[c] = (-row[f]) % p
        basis.append(tuple(vec))
    return basis


def matrix_mod_p(M: AlexMatrix, n: int, p: int, allow_even_prime: bool = False) -> ModMatrix:
    """C = M|_{t=n} mod p; exponentes negativos con el inverso de n mod p."""
    check_modulus(p, n, allow_even_prime)
    rows = tuple(tuple(eval_mod(x, n, p) for x in r) for r in M.rows)
    return ModMatrix(rows, p, M.col_labels)


def coloring_matrix(d: Diagram, n: int, p: int, allow_even_prime: bool = False) -> ModMatrix:
    require_balanced(d)
    return matrix_mod_p(closed_form_matrix(d), n, p, allow_even_prime)


def matrix_nullity(C: ModMatrix) -> int:
    _, pivots = rref(C.rows, C.p, C.shape[1])
    return C.shape[1] - len(pivots)


def nullity(d: Diagram, n: int, p: int, allow_even_prime: bool = False) -> int:
    """N_p(G, w, n)."""
    return matrix_nullity(coloring_matrix(d, n, p, allow_even_prime))


def nullspace_basis(d: Diagram, n: int, p: int, allow_even_prime: bool = False) -> List[Coloring]:
    C = coloring_matrix(d, n, p, allow_even_prime)
    return [Coloring(p, n, C.col_labels, v) for v in nullspace(C.rows, p, C.shape[1])]


def is_coloring(d: Diagram, values: Sequence[int], n: int, p: int, allow_even_prime: bool = False) -> bool:
    C = coloring_matrix(d, n, p, allow_even_prime)
    return all(sum(a * b for a, b in zip(row, values)) % p == 0 for row in C.rows)


def enumerate_colorings(
    d: Diagram,
    n: int,
    p: int,
    cap: int = DEFAULT_ENUMERATION_CAP,
    allow_even_prime: bool = False,
) -> List[Coloring]:
    """Las p^{N_p} coloraciones, cada una verificada contra todas las relaciones."""
    C = coloring_matrix(d, n, p, allow_even_prime)
    basis = nullspace(C.rows, p, C.shape[1])
    total = p ** len(basis)
    if total > cap:
        raise ResourceCapExceeded(f"p^N = {p}^{len(basis)} = {total} coloraciones superan el tope {cap}")

    out: List[Coloring] = []
    width = C.shape[1]
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        vec = [0] * width
        for c, b in zip(coeffs, basis):
            if c:
                vec = [(x + c * y) % p for x, y in zip(vec, b)]
        if any(sum(a * b for a, b in zip(row, vec)) % p for row in C.rows):
            raise PreconditionError("vector del núcleo que no satisface las relaciones")
        out.append(Coloring(p, n, C.col_labels, tuple(vec)))
    logger.debug("enumerate_colorings: %d coloraciones (p=%d, n=%d)", len(out), p, n)
    return out


def zero_coordinate_witness(span: Sequence[Sequence[int]], J: Sequence[int], p: int) -> Optional[Vector]:
    """
    Vector no nulo del subespacio generado por `span` que se anula en las
    coordenadas J, o None si no existe.
    """
    if not span:
        return None
    width = len(span[0])
    basis, _ = rref(span, p, width)
    if not basis:
        return None
    # combinaciones lambda con sum_i lambda_i B_i[j] = 0 para j en J
    system = [[b[j] for b in basis] for j in J]
    if system:
        combos = nullspace(system, p, len(basis))
    else:
        combos = [tuple(1 if i == 0 else 0 for i in range(len(basis)))]
    if not combos:
        return None
    lam = combos[0]
    return tuple(sum(l * b[c] for l, b in zip(lam, basis)) % p for c in range(width))


# =========================================================
# Criterio de divisibilidad
# =========================================================
def matrix_coloring_check(
    M: AlexMatrix,
    counts: Tuple[int, int, int],
    n: int,
    p: int,
    k: int,
    allow_even_prime: bool = False,
) -> ColoringCheck:
    c, v, e = counts
    N = matrix_nullity(matrix_mod_p(M, n, p, allow_even_prime))
    raw = matrix_determinant_at(M, n, c + v - k).raw
    threshold = e - v + k
    return ColoringCheck(
        p=p, n=n, k=k,
        nullity=N,
        threshold=threshold,
        raw_determinant=raw,
        extra_colorings=N > threshold,
        divides=raw % p == 0,
    )


def coloring_determinant_check(d: Diagram, n: int, p: int, k: int, allow_even_prime: bool = False) -> ColoringCheck:
    """(N_p > e - v + k) <=> p | det_k(G, w)(n) sin normalizar."""
    require_balanced(d)
    return matrix_coloring_check(closed_form_matrix(d), d.counts, n, p, k, allow_even_prime)


# =========================================================
# Pesado trivial
# =========================================================
def trivial_weighting_colorings(d: Diagram, p: int) -> List[Coloring]:
    """
    Con todos los pesos nulos las coloraciones son flujos mod p del grafo:
    valor constante a lo largo de cada arista y suma con signo nula en cada
    vértice. Devuelve una base de esos flujos levantados a los arcos.
    """
    if any(e.weight for e in d.edges):
        raise PreconditionError("se requiere el pesado trivial (todos los pesos nulos)")
    check_modulus(p, 1)
    edges = [e.id for e in d.edges]
    of_arc = d.edge_of_arc()
    rows = []
    for v in d.vertices:
        row = [0] * len(edges)
        for inc in v.incident:
            row[edges.index(of_arc[inc.arc].id)] += inc.sign
        rows.append(row)
    arcs = tuple(d.arcs)
    out = []
    for flow in nullspace(rows, p, len(edges)):
        values = dict(zip(edges, flow))
        out.append(Coloring(p, 1, arcs, tuple(values[of_arc[a].id] for a in arcs)))
    return out
