"""
det(M, k) sobre Z[t^{±1}], polinomios de Alexander Delta_k, forma normal de
Smith entera y los determinantes det_k(G, w)(n).
"""
from __future__ import annotations

import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import reduce
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from sympy import Matrix, Poly, ZZ, isprime
from sympy.polys.polyerrors import ExactQuotientFailed

from .diagram import Diagram, require_balanced
from .exceptions import PreconditionError, ResourceCapExceeded
from .laurent import T, LaurentPoly, eval_int, gcd, normalize_unit
from .wirtinger import AlexMatrix, alexander_matrix, closed_form_matrix

logger = logging.getLogger(__name__)

SparseRow = Dict[int, LaurentPoly]


# =========================================================
# Tipos
# =========================================================
@dataclass(frozen=True)
class IntMatrix:
    rows: Tuple[Tuple[int, ...], ...]
    row_labels: Tuple[str, ...] = ()
    col_labels: Tuple[str, ...] = ()

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        width = len(rows[0]) if rows else 0
        return cls(
            rows,
            tuple(f"r{i}" for i in range(1, len(rows) + 1)),
            tuple(f"c{j}" for j in range(1, width + 1)),
        )

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else len(self.col_labels))


@dataclass(frozen=True)
class SNFResult:
    factors: Tuple[int, ...]
    rank: int


@dataclass(frozen=True)
class DeterminantResult:
    value: int
    raw: int
    invariant: bool


@dataclass(frozen=True)
class DetOptions:
    early_exit: bool = True
    unit_reduction: bool = True
    drop_redundant_row: bool = False
    threads: int = 1
    minor_cap: Optional[int] = None

    @classmethod
    def naive(cls) -> "DetOptions":
        return cls(early_exit=False, unit_reduction=False, drop_redundant_row=False, threads=1)


# =========================================================
# Reducción por pivotes unidad
# =========================================================
def _sparse(M: AlexMatrix) -> List[SparseRow]:
    return [{j: x for j, x in enumerate(r) if x} for r in M.rows]


def _drop_empty(rows: List[SparseRow]) -> Tuple[List[SparseRow], int]:
    """Quita filas y columnas nulas; devuelve las filas reindexadas y el ancho."""
    rows = [r for r in rows if r]
    cols = sorted({j for r in rows for j in r})
    index = {j: i for i, j in enumerate(cols)}
    return [{index[j]: x for j, x in r.items()} for r in rows], len(cols)


def unit_reduction(M: AlexMatrix, k: int) -> Tuple[AlexMatrix, int]:
    """
    Mientras haya una entrada ±t^r: limpia su columna con operaciones de
    fila, elimina su fila y su columna y baja k en uno.
    det(M, k) = det(M', k') por la descomposición en bloques [u] ⊕ M'.
    """
    rows, width = _drop_empty(_sparse(M))
    while k > 0 and rows:
        pivot = None
        for i in sorted(range(len(rows)), key=lambda i: len(rows[i])):
            for j, x in rows[i].items():
                if x.is_unit():
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i, j = pivot
        prow = rows.pop(i)
        inv = prow[j] ** -1
        for r in rows:
            factor = r.get(j)
            if factor is None:
                continue
            scale = factor * inv
            for col, val in prow.items():
                updated = r.get(col, LaurentPoly.zero()) - scale * val
                if updated:
                    r[col] = updated
                else:
                    r.pop(col, None)
        rows, width = _drop_empty(rows)
        k -= 1

    dense = tuple(tuple(r.get(j, LaurentPoly.zero()) for j in range(width)) for r in rows)
    return AlexMatrix(
        dense,
        tuple(f"r{i}" for i in range(1, len(dense) + 1)),
        tuple(f"c{j}" for j in range(1, width + 1)),
    ), k


# =========================================================
# Menores
# =========================================================
def _exact_step(numerator: Poly, prev: Poly) -> Poly:
    try:
        return numerator.exquo(prev, auto=False)
    except ExactQuotientFailed as exc:
        raise PreconditionError(f"Bareiss: paso no exacto sobre Z[t] ({prev.as_expr()})") from exc


def bareiss_det(entries: List[List[Poly]]) -> Poly:
    """Determinante libre de fracciones sobre Z[t]."""
    M = [list(r) for r in entries]
    n = len(M)
    if n == 0:
        return Poly(1, T, domain=ZZ)
    sign = 1
    prev = Poly(1, T, domain=ZZ)
    for k in range(n - 1):
        if M[k][k].is_zero:
            for i in range(k + 1, n):
                if not M[i][k].is_zero:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return Poly(0, T, domain=ZZ)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = _exact_step(M[k][k] * M[i][j] - M[i][k] * M[k][j], prev)
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return -det if sign < 0 else det


def _shifted_polys(M: AlexMatrix) -> List[List[Poly]]:
    """Multiplica cada fila por t^{-min} y la pasa a Z[t]."""
    out = []
    for r in M.rows:
        nonzero = [x.min_degree() for x in r if x]
        s = min(nonzero) if nonzero else 0
        out.append([_as_poly(x, s) for x in r])
    return out


def _as_poly(x: LaurentPoly, s: int) -> Poly:
    # conserva el desplazamiento relativo dentro de la fila
    return Poly.from_dict({(e - s,): c for e, c in x.items()} or {(0,): 0}, T, domain=ZZ)


def _minor_indices(nrows: int, ncols: int, k: int) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    for cols in itertools.combinations(range(ncols), k):
        for rows in itertools.combinations(range(nrows), k):
            yield rows, cols


def _minor(polys: List[List[Poly]], rows: Tuple[int, ...], cols: Tuple[int, ...]) -> LaurentPoly:
    return LaurentPoly.from_poly(bareiss_det([[polys[i][j] for j in cols] for i in rows]))


def minor_gcd(M: AlexMatrix, k: int, options: DetOptions = DetOptions()) -> LaurentPoly:
    """MCD normalizado de los menores k x k, sin reducciones previas."""
    nrows, ncols = M.shape
    if k <= 0:
        return LaurentPoly.one()
    if k > min(nrows, ncols):
        return LaurentPoly.zero()
    polys = _shifted_polys(M)
    running = LaurentPoly.zero()
    evaluated = 0
    indices = _minor_indices(nrows, ncols, k)
    batch = max(1, options.threads) * 32

    executor = ThreadPoolExecutor(max_workers=options.threads) if options.threads > 1 else None
    try:
        while True:
            chunk = list(itertools.islice(indices, batch))
            if not chunk:
                break
            evaluated += len(chunk)
            if options.minor_cap is not None and evaluated > options.minor_cap:
                raise ResourceCapExceeded(
                    f"minor cap exceeded: más de {options.minor_cap} menores de tamaño {k}"
                )
            if executor is not None:
                values = list(executor.map(lambda rc: _minor(polys, *rc), chunk))
            else:
                values = [_minor(polys, *rc) for rc in chunk]
            for value in values:
                running = gcd(running, value)
                if options.early_exit and running == LaurentPoly.one():
                    break
            if options.early_exit and running == LaurentPoly.one():
                break
    finally:
        if executor is not None:
            executor.shutdown()

    logger.debug("minor_gcd: %d menores de tamaño %d evaluados", evaluated, k)
    return running


def det_poly(M: AlexMatrix, k: int, options: DetOptions = DetOptions()) -> LaurentPoly:
    """det(M, k): MCD de los menores k x k; k <= 0 -> 1; k > min(dim) -> 0."""
    nrows, ncols = M.shape
    if k <= 0:
        return LaurentPoly.one()
    if k > min(nrows, ncols):
        return LaurentPoly.zero()
    if options.drop_redundant_row and k <= nrows - 1:
        # la última relación es consecuencia de las demás
        M = AlexMatrix(M.rows[:-1], M.row_labels[:-1], M.col_labels)
    if options.unit_reduction:
        before = M.shape
        M, k = unit_reduction(M, k)
        logger.debug("det_poly: reducción %s -> %s, k=%d", before, M.shape, k)
    return minor_gcd(M, k, options)


# =========================================================
# Polinomios de Alexander
# =========================================================
def alexander_poly(
    d: Diagram,
    k: int,
    options: DetOptions = DetOptions(),
    route: str = "closed",
) -> LaurentPoly:
    """Delta_k(G, w) = det(M(D, w), c + v - k), normalizado."""
    if k < 0:
        raise PreconditionError("k debe ser no negativo")
    require_balanced(d)
    M = closed_form_matrix(d) if route == "closed" else alexander_matrix(d)
    c, v, _ = d.counts
    return normalize_unit(det_poly(M, c + v - k, options))


def block_diagonal(blocks: Sequence[AlexMatrix]) -> AlexMatrix:
    rows: List[Tuple[LaurentPoly, ...]] = []
    width = sum(b.shape[1] for b in blocks)
    offset = 0
    zero = LaurentPoly.zero()
    for b in blocks:
        _, w = b.shape
        for r in b.rows:
            rows.append((zero,) * offset + tuple(r) + (zero,) * (width - offset - w))
        offset += w
    return AlexMatrix.from_rows(rows, col_labels=[f"c{j}" for j in range(1, width + 1)])


def block_det_poly(blocks: Sequence[AlexMatrix], k: int, options: DetOptions = DetOptions()) -> LaurentPoly:
    """gcd{ prod det(M_i, k_i) : k_1 + ... + k_n = k }."""
    if k <= 0:
        return LaurentPoly.one()
    limits = [min(b.shape) for b in blocks]
    cache: Dict[Tuple[int, int], LaurentPoly] = {}

    def det_i(i: int, ki: int) -> LaurentPoly:
        if (i, ki) not in cache:
            cache[(i, ki)] = det_poly(blocks[i], ki, options)
        return cache[(i, ki)]

    running = LaurentPoly.zero()
    for split in itertools.product(*(range(lim + 1) for lim in limits)):
        if sum(split) != k:
            continue
        product = LaurentPoly.one()
        for i, ki in enumerate(split):
            product = product * det_i(i, ki)
        running = gcd(running, product)
    return running


def wedge_formula(d1: Diagram, d2: Diagram, k: int, options: DetOptions = DetOptions()) -> LaurentPoly:
    """gcd{ Delta_{k1}(d1) Delta_{k2}(d2) : k1 + k2 = k + 1, k1, k2 >= 1 }."""
    running = LaurentPoly.zero()
    for k1 in range(1, k + 1):
        k2 = k + 1 - k1
        running = gcd(running, alexander_poly(d1, k1, options) * alexander_poly(d2, k2, options))
    return running


# =========================================================
# Forma normal de Smith
# =========================================================
def smith_normal_form(M: IntMatrix) -> SNFResult:
    """
    Factores invariantes d_1 | d_2 | ... | d_r por eliminación con el menor
    pivote en valor absoluto.
    """
    A = [list(r) for r in M.rows]
    nrows, ncols = M.shape
    factors: List[int] = []
    t = 0
    while t < min(nrows, ncols):
        nonzero = [(abs(A[i][j]), i, j) for i in range(t, nrows) for j in range(t, ncols) if A[i][j]]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        A[t], A[pi] = A[pi], A[t]
        for r in A:
            r[t], r[pj] = r[pj], r[t]

        while True:
            done = True
            p = A[t][t]
            for i in range(t + 1, nrows):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    done = False
            for j in range(t + 1, ncols):
                q = A[t][j] // p
                if q:
                    for r in A:
                        r[j] -= q * r[t]
                if A[t][j]:
                    done = False
            if done:
                # el pivote debe dividir al resto del bloque
                bad = next(
                    ((i, j) for i in range(t + 1, nrows) for j in range(t + 1, ncols) if A[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                A[t] = [a + b for a, b in zip(A[t], A[bad[0]])]
                continue
            # remanentes no nulos: mover el menor al pivote y repetir
            candidates = [(abs(A[i][t]), i, t) for i in range(t, nrows) if A[i][t]]
            candidates += [(abs(A[t][j]), t, j) for j in range(t, ncols) if A[t][j]]
            _, pi, pj = min(candidates)
            A[t], A[pi] = A[pi], A[t]
            for r in A:
                r[t], r[pj] = r[pj], r[t]
        factors.append(abs(A[t][t]))
        t += 1
    return SNFResult(tuple(factors), len(factors))


def determinantal_divisors(M: IntMatrix) -> List[int]:
    """d_1 ... d_j para j = 1..rango (MCD de los menores j x j)."""
    out, acc = [], 1
    for f in smith_normal_form(M).factors:
        acc *= f
        out.append(acc)
    return out


def brute_force_minor_gcd(M: IntMatrix, j: int) -> int:
    nrows, ncols = M.shape
    if j <= 0:
        return 1
    g = 0
    for rows in itertools.combinations(range(nrows), j):
        for cols in itertools.combinations(range(ncols), j):
            g = math.gcd(g, int(Matrix([[M.rows[r][c] for c in cols] for r in rows]).det(method="bareiss")))
    return g


# =========================================================
# Determinantes en t = n
# =========================================================
def evaluate_matrix(M: AlexMatrix, n: int) -> IntMatrix:
    """Limpia exponentes negativos fila por fila y sustituye t = n."""
    if n == 0:
        raise PreconditionError("n debe ser distinto de cero")
    rows = []
    for r in M.rows:
        nonzero = [x.min_degree() for x in r if x]
        s = min(nonzero) if nonzero else 0
        rows.append(tuple(eval_int(x.shift(-s), n) if x else 0 for x in r))
    return IntMatrix(tuple(rows), M.row_labels, M.col_labels)


def _strip(value: int, prime: int) -> int:
    while value and value % prime == 0:
        value //= prime
    return value


def matrix_determinant_at(M: AlexMatrix, n: int, size: int) -> DeterminantResult:
    """MCD de los menores size x size de M|_{t=n} vía SNF, normalizado según n."""
    snf = smith_normal_form(evaluate_matrix(M, n))
    if size <= 0:
        raw = 1
    elif size > snf.rank:
        raw = 0
    else:
        raw = reduce(lambda a, b: a * b, snf.factors[:size], 1)
    magnitude = abs(n)
    if magnitude == 1:
        return DeterminantResult(abs(raw), raw, True)
    if isprime(magnitude):
        return DeterminantResult(abs(_strip(raw, magnitude)), raw, True)
    logger.info("det en n=%d: |n| compuesto, valor no invariante", n)
    return DeterminantResult(abs(raw), raw, False)


def determinant_at(d: Diagram, n: int, k: int) -> DeterminantResult:
    """det_k(G, w)(n)."""
    if n == 0:
        raise PreconditionError("n debe ser distinto de cero")
    if k < 1:
        raise PreconditionError("k debe ser al menos 1")
    require_balanced(d)
    c, v, _ = d.counts
    return matrix_determinant_at(closed_form_matrix(d), n, c + v - k)
