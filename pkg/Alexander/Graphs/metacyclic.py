"""
Grupo metacíclico Gamma(p, m, k) = <alpha, beta | alpha^p = beta^m = 1,
beta alpha beta^-1 = alpha^k> y las representaciones que inducen las
p-coloraciones en k junto con el peso mod m.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from sympy import isprime

from .coloring import (
    DEFAULT_ENUMERATION_CAP,
    Coloring,
    check_modulus,
    enumerate_colorings,
    is_coloring,
    nullity,
)
from .diagram import Diagram, require_balanced, weight_gcd
from .exceptions import PreconditionError, RepresentationError
from .wirtinger import GroupWord, wirtinger_presentation

logger = logging.getLogger(__name__)


# =========================================================
# Grupo
# =========================================================
@dataclass(frozen=True)
class MetaElem:
    a: int
    b: int

    def __str__(self) -> str:
        return f"α^{self.a}β^{self.b}"


@dataclass(frozen=True)
class MetaGroup:
    p: int
    m: int
    k: int

    def __post_init__(self):
        if not isprime(self.p) or self.p == 2:
            raise PreconditionError(f"p = {self.p} debe ser un primo impar")
        if self.m < 1:
            raise PreconditionError("m debe ser positivo")
        if self.k % self.p == 0:
            raise PreconditionError(f"{self.p} divide a k = {self.k}")
        if pow(self.k, self.m, self.p) != 1:
            raise PreconditionError(f"k^m != 1 mod p (k={self.k}, m={self.m}, p={self.p})")
        object.__setattr__(self, "k", self.k % self.p)

    @property
    def order(self) -> int:
        return self.p * self.m

    def elem(self, a: int, b: int) -> MetaElem:
        return MetaElem(a % self.p, b % self.m)

    @property
    def identity(self) -> MetaElem:
        return MetaElem(0, 0)

    @property
    def alpha(self) -> MetaElem:
        return MetaElem(1 % self.p, 0)

    @property
    def beta(self) -> MetaElem:
        return MetaElem(0, 1 % self.m)

    def elements(self) -> Iterator[MetaElem]:
        for a in range(self.p):
            for b in range(self.m):
                yield MetaElem(a, b)


def ord_p(k: int, p: int) -> int:
    """Orden de k en (Z/p)^*."""
    if k % p == 0:
        raise PreconditionError(f"{p} divide a k = {k}")
    x, m = k % p, 1
    while x != 1:
        x = (x * k) % p
        m += 1
    return m


def meta_mul(g: MetaGroup, x: MetaElem, y: MetaElem) -> MetaElem:
    """(alpha^a1 beta^b1)(alpha^a2 beta^b2) = alpha^{a1 + k^b1 a2} beta^{b1 + b2}."""
    return g.elem(x.a + pow(g.k, x.b, g.p) * y.a, x.b + y.b)


def meta_inv(g: MetaGroup, x: MetaElem) -> MetaElem:
    """(alpha^a beta^b)^-1 = alpha^{-a k^-b} beta^{-b}."""
    return g.elem(-x.a * pow(g.k, -x.b, g.p), -x.b)


def meta_pow(g: MetaGroup, x: MetaElem, e: int) -> MetaElem:
    base = x if e >= 0 else meta_inv(g, x)
    result = g.identity
    for _ in range(abs(e)):
        result = meta_mul(g, result, base)
    return result


def element_order(g: MetaGroup, x: MetaElem) -> int:
    y, n = x, 1
    while y != g.identity:
        y = meta_mul(g, y, x)
        n += 1
    return n


def image_subgroup(g: MetaGroup, generators: Iterable[MetaElem]) -> Set[MetaElem]:
    """Clausura por productos (BFS) del conjunto generado."""
    gens = set(generators)
    seen = {g.identity}
    queue = deque([g.identity])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = meta_mul(g, x, s)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def is_cyclic_subgroup(g: MetaGroup, subgroup: Set[MetaElem]) -> bool:
    size = len(subgroup)
    return any(element_order(g, x) == size for x in subgroup)


# =========================================================
# Representaciones
# =========================================================
@dataclass(frozen=True)
class Representation:
    group: MetaGroup
    arcs: Tuple[str, ...]
    images: Tuple[MetaElem, ...]

    def image(self, arc: str) -> MetaElem:
        return self.images[self.arcs.index(arc)]

    def as_dict(self) -> Dict[str, MetaElem]:
        return dict(zip(self.arcs, self.images))


def evaluate_word(g: MetaGroup, images: Dict[str, MetaElem], word: GroupWord) -> MetaElem:
    result = g.identity
    for arc, e in word.letters:
        x = images[arc]
        result = meta_mul(g, result, x if e > 0 else meta_inv(g, x))
    return result


def is_homomorphism(d: Diagram, g: MetaGroup, images: Dict[str, MetaElem]) -> bool:
    return all(
        evaluate_word(g, images, r) == g.identity for r in wirtinger_presentation(d).relations
    )


def build_representation(d: Diagram, g: MetaGroup, coloring: Coloring) -> Representation:
    """arco -> alpha^{gamma(arco)} beta^{peso mod m}; verifica cada relación."""
    require_balanced(d)
    if coloring.p != g.p:
        raise PreconditionError(f"coloración mod {coloring.p} en un grupo con p = {g.p}")
    if (coloring.n - g.k) % g.p:
        raise PreconditionError(f"coloración en n = {coloring.n}, se esperaba k = {g.k} mod {g.p}")
    weights = d.arc_weights()
    values = coloring.as_dict()
    images = {a: g.elem(values[a], weights[a]) for a in d.arcs}

    pres = wirtinger_presentation(d)
    for label, r in zip(pres.labels, pres.relations):
        value = evaluate_word(g, images, r)
        if value != g.identity:
            logger.error("representación inválida: %s -> %s (p=%d, m=%d, k=%d)", label, value, g.p, g.m, g.k)
            raise RepresentationError(f"la relación {label} no se anula: {value}")
    return Representation(g, tuple(d.arcs), tuple(images[a] for a in d.arcs))


def cyclic_coloring(d: Diagram, p: int, k: int, r: int) -> Coloring:
    """Color de un arco de peso w: r (1 - k^w) / (1 - k) mod p."""
    require_balanced(d)
    check_modulus(p, k)
    if (k - 1) % p == 0:
        raise PreconditionError("k ≡ 1 mod p: la fórmula cíclica degenera")
    inv = pow(1 - k, -1, p)
    weights = d.arc_weights()
    values = tuple((r * (1 - pow(k, weights[a], p)) * inv) % p for a in d.arcs)
    if not is_coloring(d, values, k, p):
        logger.error("coloración cíclica inválida (p=%d, k=%d, r=%d)", p, k, r)
        raise RepresentationError("la coloración cíclica no satisface las relaciones")
    return Coloring(p, k, tuple(d.arcs), values)


# =========================================================
# Automorfismos y conteo
# =========================================================
def automorphisms(g: MetaGroup) -> List[Tuple[int, int]]:
    """Pares (a, b): alpha -> alpha^a, beta -> alpha^b beta."""
    return [(a, b) for a in range(1, g.p) for b in range(g.p)]


def apply_automorphism(g: MetaGroup, auto: Tuple[int, int], x: MetaElem) -> MetaElem:
    a, b = auto
    return meta_mul(g, g.elem(a * x.a, 0), meta_pow(g, g.elem(b, 1), x.b))


def orbit_count(reps: Sequence[Representation]) -> Tuple[int, List[int]]:
    """Órbitas de las representaciones bajo los automorfismos; (número, tamaños)."""
    if not reps:
        return 0, []
    g = reps[0].group
    autos = automorphisms(g)
    remaining = {r.images for r in reps}
    sizes: List[int] = []
    while remaining:
        start = next(iter(remaining))
        orbit = {tuple(apply_automorphism(g, auto, x) for x in start) for auto in autos}
        remaining -= orbit
        sizes.append(len(orbit))
    return len(sizes), sorted(sizes)


def classify_image(rep: Representation) -> str:
    """
    "surjective" o "cyclic" según la imagen. Con pesos de mcd 1 la imagen
    proyecta sobre Z_m, así que cualquier otra imagen delata un error.
    """
    g = rep.group
    sub = image_subgroup(g, rep.images)
    if len(sub) == g.order:
        return "surjective"
    if is_cyclic_subgroup(g, sub):
        return "cyclic"
    logger.error(
        "imagen propia no cíclica de orden %d en Gamma(%d,%d,%d): %s",
        len(sub), g.p, g.m, g.k, " ".join(str(x) for x in rep.images),
    )
    raise RepresentationError(f"imagen de orden {len(sub)} ni sobreyectiva ni cíclica")


@dataclass(frozen=True)
class RepresentationCount:
    p: int
    m: int
    k: int
    nullity: int
    total: int
    cyclic: int
    surjective: int
    inequivalent_surjective: int
    inequivalent_formula: Optional[int]
    orbit_sizes: Tuple[int, ...]
    representations: Tuple[Representation, ...] = ()


def classify_and_count(
    d: Diagram,
    p: int,
    k: int,
    m: Optional[int] = None,
    cap: int = DEFAULT_ENUMERATION_CAP,
    keep: bool = False,
) -> RepresentationCount:
    """
    Construye y verifica todas las representaciones, las clasifica por su
    imagen y cuenta las clases de equivalencia de las sobreyectivas.
    """
    require_balanced(d)
    if weight_gcd(d) != 1:
        raise PreconditionError("se requiere un pesado reducido (mcd de los pesos = 1)")
    base = ord_p(k, p)
    if (k - 1) % p == 0:
        raise PreconditionError("k ≡ 1 mod p: no hay representaciones no cíclicas")
    if m is None:
        m = base
    elif m % base:
        raise PreconditionError(f"m = {m} debe ser múltiplo de ord_p(k) = {base}")
    g = MetaGroup(p, m, k)

    colorings = enumerate_colorings(d, k, p, cap=cap)
    reps = [build_representation(d, g, c) for c in colorings]
    cyclic, surjective = 0, []
    for rep in reps:
        if classify_image(rep) == "surjective":
            surjective.append(rep)
        else:
            cyclic += 1

    N = nullity(d, k, p)
    orbits, sizes = orbit_count(surjective)
    formula = (p ** (N - 1) - 1) // (p - 1) if m == base and N >= 1 else None
    logger.info(
        "classify_and_count p=%d k=%d m=%d: total=%d cíclicas=%d sobreyectivas=%d clases=%d",
        p, k, m, len(reps), cyclic, len(surjective), orbits,
    )
    return RepresentationCount(
        p=p, m=m, k=g.k, nullity=N,
        total=len(reps),
        cyclic=cyclic,
        surjective=len(surjective),
        inequivalent_surjective=orbits,
        inequivalent_formula=formula,
        orbit_sizes=tuple(sizes),
        representations=tuple(reps) if keep else (),
    )

