"""
Modelo de diagramas de grafos espaciales orientados y pesados.

Un diagrama guarda aristas (con su secuencia de arcos), cruces y vértices
con la lista ordenada de arcos incidentes. La lista de un vértice es el
orden horario de los arcos alrededor del vértice visto desde arriba.

Todas las transformaciones devuelven diagramas nuevos; los valores son
inmutables.
"""
from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass, replace
from functools import reduce
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

import networkx as nx
from networkx.utils import UnionFind

from .exceptions import InvalidDiagram, PreconditionError

logger = logging.getLogger(__name__)


# =========================================================
# Tipos
# =========================================================
@dataclass(frozen=True)
class Edge:
    id: str
    weight: int
    arcs: Tuple[str, ...]


@dataclass(frozen=True)
class Crossing:
    over: str
    under_in: str
    under_out: str
    sign: int


@dataclass(frozen=True)
class Incidence:
    arc: str
    sign: int  # +1 entra al vértice, -1 sale


@dataclass(frozen=True)
class Vertex:
    id: str
    incident: Tuple[Incidence, ...]


@dataclass(frozen=True)
class Violation:
    rule: str
    ident: str

    def __str__(self) -> str:
        return f"{self.rule}: {self.ident}"


@dataclass(frozen=True)
class Diagram:
    edges: Tuple[Edge, ...] = ()
    crossings: Tuple[Crossing, ...] = ()
    vertices: Tuple[Vertex, ...] = ()

    @classmethod
    def build(
        cls,
        edges: Iterable[Tuple[str, int, Sequence[str]]],
        crossings: Iterable[Tuple[str, str, str, int]] = (),
        vertices: Iterable[Tuple[str, Sequence[Tuple[str, int]]]] = (),
    ) -> "Diagram":
        """Atajo desde tuplas planas (usado por generadores y pruebas)."""
        return cls(
            edges=tuple(Edge(str(i), int(w), tuple(arcs)) for i, w, arcs in edges),
            crossings=tuple(Crossing(o, a, c, int(s)) for o, a, c, s in crossings),
            vertices=tuple(
                Vertex(str(i), tuple(Incidence(a, int(s)) for a, s in inc)) for i, inc in vertices
            ),
        )

    # -----------------------------
    # Consultas
    # -----------------------------
    @property
    def arcs(self) -> List[str]:
        """Orden canónico de columnas: arcos de cada arista en orden de entrada."""
        return [a for e in self.edges for a in e.arcs]

    @property
    def counts(self) -> Tuple[int, int, int]:
        """(c, v, e)."""
        return len(self.crossings), len(self.vertices), len(self.edges)

    def edge(self, edge_id: str) -> Edge:
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise PreconditionError(f"arista inexistente: {edge_id}")

    def vertex(self, vertex_id: str) -> Vertex:
        for v in self.vertices:
            if v.id == vertex_id:
                return v
        raise PreconditionError(f"vértice inexistente: {vertex_id}")

    def edge_of_arc(self) -> Dict[str, Edge]:
        return {a: e for e in self.edges for a in e.arcs}

    def arc_weights(self) -> Dict[str, int]:
        return {a: e.weight for e in self.edges for a in e.arcs}

    def weights(self) -> Dict[str, int]:
        return {e.id: e.weight for e in self.edges}

    def endpoints(self) -> Dict[str, Tuple[str, str]]:
        """arista -> (vértice de salida, vértice de llegada)."""
        tail: Dict[str, str] = {}
        head: Dict[str, str] = {}
        owner = self.edge_of_arc()
        for v in self.vertices:
            for inc in v.incident:
                e = owner[inc.arc]
                if inc.sign < 0 and inc.arc == e.arcs[0]:
                    tail[e.id] = v.id
                elif inc.sign > 0 and inc.arc == e.arcs[-1]:
                    head[e.id] = v.id
        return {e.id: (tail[e.id], head[e.id]) for e in self.edges}

    def crossings_on(self, arc: str) -> List[int]:
        return [
            i for i, x in enumerate(self.crossings)
            if arc in (x.over, x.under_in, x.under_out)
        ]


# =========================================================
# Validación
# =========================================================
def validate(d: Diagram) -> List[Violation]:
    """Lista de invariantes violadas (vacía si el diagrama es válido)."""
    report: List[Violation] = []

    edge_ids = Counter(e.id for e in d.edges)
    for eid, n in edge_ids.items():
        if not eid:
            report.append(Violation("empty edge id", repr(eid)))
        elif n > 1:
            report.append(Violation("duplicate edge id", eid))

    vertex_ids = Counter(v.id for v in d.vertices)
    for vid, n in vertex_ids.items():
        if not vid:
            report.append(Violation("empty vertex id", repr(vid)))
        elif n > 1:
            report.append(Violation("duplicate vertex id", vid))

    arc_count = Counter(a for e in d.edges for a in e.arcs)
    for e in d.edges:
        if not e.arcs:
            report.append(Violation("edge without arcs", e.id))
    for arc, n in arc_count.items():
        if not arc:
            report.append(Violation("empty arc id", repr(arc)))
        if n > 1:
            report.append(Violation("arc in multiple edges", arc))

    owner = d.edge_of_arc()
    position = {a: i for e in d.edges for i, a in enumerate(e.arcs)}

    # -----------------------------
    # Cruces
    # -----------------------------
    joined: Counter = Counter()
    for i, x in enumerate(d.crossings, start=1):
        tag = f"crossing {i}"
        if x.sign not in (1, -1):
            report.append(Violation("crossing sign not in {+1,-1}", tag))
        missing = [a for a in (x.over, x.under_in, x.under_out) if a not in owner]
        if missing:
            report.extend(Violation("unknown arc", f"{tag} ({a})") for a in missing)
            continue
        e_in, e_out = owner[x.under_in], owner[x.under_out]
        if e_in.id != e_out.id:
            report.append(Violation("under-arcs on different edges", tag))
            continue
        if position[x.under_out] != position[x.under_in] + 1:
            report.append(Violation("under-arcs not consecutive", tag))
            continue
        joined[(x.under_in, x.under_out)] += 1

    for e in d.edges:
        for a, b in zip(e.arcs, e.arcs[1:]):
            n = joined[(a, b)]
            if n == 0:
                report.append(Violation("consecutive arcs without crossing", f"{a}->{b}"))
            elif n > 1:
                report.append(Violation("consecutive arcs joined by several crossings", f"{a}->{b}"))

    # -----------------------------
    # Vértices
    # -----------------------------
    starts: Counter = Counter()
    ends: Counter = Counter()
    for v in d.vertices:
        for inc in v.incident:
            if inc.sign not in (1, -1):
                report.append(Violation("local sign not in {+1,-1}", f"{v.id} ({inc.arc})"))
                continue
            if inc.arc not in owner:
                report.append(Violation("unknown arc", f"{v.id} ({inc.arc})"))
                continue
            e = owner[inc.arc]
            if inc.sign < 0:
                if inc.arc != e.arcs[0]:
                    report.append(Violation("outgoing entry is not the first arc of its edge", f"{v.id} ({inc.arc})"))
                starts[e.id] += 1
            else:
                if inc.arc != e.arcs[-1]:
                    report.append(Violation("incoming entry is not the last arc of its edge", f"{v.id} ({inc.arc})"))
                ends[e.id] += 1

    for e in d.edges:
        if not e.arcs:
            continue
        if starts[e.id] != 1:
            report.append(Violation("edge must leave exactly one vertex", e.id))
        if ends[e.id] != 1:
            report.append(Violation("edge must enter exactly one vertex", e.id))

    return report


def require_valid(d: Diagram) -> Diagram:
    report = validate(d)
    if report:
        raise InvalidDiagram(report)
    return d


def vertex_imbalance(d: Diagram) -> Dict[str, int]:
    weight = d.arc_weights()
    return {v.id: sum(inc.sign * weight[inc.arc] for inc in v.incident) for v in d.vertices}


def is_balanced(d: Diagram) -> bool:
    require_valid(d)
    return all(total == 0 for total in vertex_imbalance(d).values())


def require_balanced(d: Diagram) -> Diagram:
    require_valid(d)
    bad = [vid for vid, total in vertex_imbalance(d).items() if total]
    if bad:
        raise PreconditionError(f"unbalanced diagram: la suma ponderada no es cero en {', '.join(bad)}")
    return d


# =========================================================
# Grafo subyacente
# =========================================================
def underlying_graph(d: Diagram) -> nx.MultiDiGraph:
    g = nx.MultiDiGraph()
    g.add_nodes_from(v.id for v in d.vertices)
    for eid, (tail, head) in d.endpoints().items():
        g.add_edge(tail, head, key=eid)
    return g


def connected_components(d: Diagram) -> int:
    require_valid(d)
    return nx.number_weakly_connected_components(underlying_graph(d)) if d.vertices else 0


def balanced_weighting_basis(d: Diagram) -> List[Tuple[int, ...]]:
    """
    Base entera del retículo de pesos balanceados (espacio de ciclos):
    un ciclo fundamental por arista fuera de un bosque generador.
    """
    require_valid(d)
    ends = d.endpoints()
    index = {e.id: i for i, e in enumerate(d.edges)}

    forest = nx.Graph()
    forest.add_nodes_from(v.id for v in d.vertices)
    uf = UnionFind(v.id for v in d.vertices)
    chords: List[str] = []
    for e in d.edges:
        tail, head = ends[e.id]
        if uf[tail] != uf[head]:
            uf.union(tail, head)
            forest.add_edge(tail, head, edge=e.id)
        else:
            chords.append(e.id)

    basis: List[Tuple[int, ...]] = []
    for eid in chords:
        vec = [0] * len(d.edges)
        vec[index[eid]] = 1
        tail, head = ends[eid]
        # regreso por el árbol de head a tail
        path = nx.shortest_path(forest, head, tail)
        for x, y in zip(path, path[1:]):
            tree_edge = forest.edges[x, y]["edge"]
            vec[index[tree_edge]] += 1 if ends[tree_edge] == (x, y) else -1
        basis.append(tuple(vec))
    return basis


# =========================================================
# Pesos
# =========================================================
def with_weights(d: Diagram, weights: Mapping[str, int]) -> Diagram:
    unknown = set(weights) - {e.id for e in d.edges}
    if unknown:
        raise PreconditionError(f"aristas inexistentes: {', '.join(sorted(unknown))}")
    return replace(d, edges=tuple(replace(e, weight=int(weights.get(e.id, e.weight))) for e in d.edges))


def weight_gcd(d: Diagram) -> int:
    return reduce(math.gcd, (e.weight for e in d.edges), 0)


def reduce_weighting(d: Diagram) -> Tuple[Diagram, int]:
    require_balanced(d)
    g = weight_gcd(d)
    if g == 0:
        raise PreconditionError("trivial weighting")
    reduced = replace(d, edges=tuple(replace(e, weight=e.weight // g) for e in d.edges))
    return reduced, g


def unit_weighting(d: Diagram) -> Diagram:
    """Todas las aristas con peso 1; exige grado de entrada = grado de salida."""
    require_valid(d)
    g = underlying_graph(d)
    bad = [v for v in g.nodes if g.in_degree(v) != g.out_degree(v)]
    if bad:
        raise PreconditionError(
            f"la orientación no es euleriana (entrada != salida en {', '.join(sorted(bad))})"
        )
    return replace(d, edges=tuple(replace(e, weight=1) for e in d.edges))


# =========================================================
# Transformaciones
# =========================================================
def mirror(d: Diagram) -> Diagram:
    """
    Reflexión sobre una recta vertical: cambia el signo de cada cruce e
    invierte el orden en cada vértice. El arco inferior conserva su
    dirección, así que under_in sigue siendo el arco entrante.
    """
    require_valid(d)
    return Diagram(
        edges=d.edges,
        crossings=tuple(replace(x, sign=-x.sign) for x in d.crossings),
        vertices=tuple(replace(v, incident=tuple(reversed(v.incident))) for v in d.vertices),
    )


def reverse_all(d: Diagram) -> Diagram:
    """Invertir todas las orientaciones equivale a negar todos los pesos."""
    require_valid(d)
    return replace(d, edges=tuple(replace(e, weight=-e.weight) for e in d.edges))


def contract_edge(d: Diagram, edge_id: str) -> Diagram:
    """
    Contrae una arista de un solo arco sin cruces entre vértices distintos.
    Con x = primer vértice que contiene el arco e y el otro extremo, la lista
    fusionada es x_antes + y_despues + y_antes + x_despues.
    """
    require_valid(d)
    e = d.edge(edge_id)
    if len(e.arcs) != 1:
        raise PreconditionError(f"not contractible in this form: {edge_id} tiene más de un arco")
    arc = e.arcs[0]
    if d.crossings_on(arc):
        raise PreconditionError(f"not contractible in this form: {edge_id} participa en cruces")
    holders = [v for v in d.vertices if any(inc.arc == arc for inc in v.incident)]
    if len(holders) != 2:
        raise PreconditionError(f"not contractible in this form: {edge_id} es un lazo")
    x, y = holders

    def split(v: Vertex) -> Tuple[Tuple[Incidence, ...], Tuple[Incidence, ...]]:
        i = next(k for k, inc in enumerate(v.incident) if inc.arc == arc)
        return v.incident[:i], v.incident[i + 1:]

    x_before, x_after = split(x)
    y_before, y_after = split(y)
    merged = Vertex(x.id, x_before + y_after + y_before + x_after)

    logger.debug("contract_edge %s: fusiona %s y %s", edge_id, x.id, y.id)
    return Diagram(
        edges=tuple(other for other in d.edges if other.id != edge_id),
        crossings=d.crossings,
        vertices=tuple(merged if v.id == x.id else v for v in d.vertices if v.id != y.id),
    )


def rotate_vertex(d: Diagram, vertex_id: str, shift: int = 1) -> Diagram:
    require_valid(d)
    v = d.vertex(vertex_id)
    n = len(v.incident)
    if n == 0:
        return d
    s = shift % n
    rotated = replace(v, incident=v.incident[s:] + v.incident[:s])
    return replace(d, vertices=tuple(rotated if w.id == vertex_id else w for w in d.vertices))


def _cross(u: Tuple[int, int], w: Tuple[int, int]) -> int:
    return u[0] * w[1] - u[1] * w[0]


def _fresh_arc(d: Diagram, base: str) -> str:
    taken = set(d.arcs)
    k = 1
    while f"{base}~{k}" in taken:
        k += 1
    return f"{base}~{k}"


def twist_vertex(d: Diagram, vertex_id: str, position: int, over: str = "first") -> Diagram:
    """
    Medio giro de las entradas `position` y `position+1` del vértice: se
    intercambian y los dos extremos se cruzan una vez junto al vértice.
    `over` elige qué entrada (la primera o la segunda) pasa por encima.
    """
    require_valid(d)
    if over not in ("first", "second"):
        raise PreconditionError("over debe ser 'first' o 'second'")
    v = d.vertex(vertex_id)
    if not 0 <= position < len(v.incident) - 1:
        raise PreconditionError(f"posición fuera de rango en {vertex_id}: {position}")
    first, second = v.incident[position], v.incident[position + 1]
    if first.arc == second.arc:
        raise PreconditionError("ambas entradas son el mismo arco")

    # Geometría local: vértice en el origen, aristas hacia el norte; la primera
    # entrada queda al oeste. Tras el giro la primera se aleja hacia el noroeste
    # y la segunda hacia el noreste.
    def travel(inc: Incidence, away: Tuple[int, int]) -> Tuple[int, int]:
        return away if inc.sign < 0 else (-away[0], -away[1])

    direction = {"first": travel(first, (-1, 1)), "second": travel(second, (1, 1))}
    under = "second" if over == "first" else "first"
    top, bottom = (first, second) if over == "first" else (second, first)
    sign = 1 if _cross(direction[over], direction[under]) > 0 else -1

    owner = d.edge_of_arc()
    under_edge = owner[bottom.arc]
    piece = _fresh_arc(d, bottom.arc)
    if bottom.sign < 0:
        crossing = Crossing(top.arc, piece, bottom.arc, sign)
        new_arcs = (piece,) + under_edge.arcs
    else:
        crossing = Crossing(top.arc, bottom.arc, piece, sign)
        new_arcs = under_edge.arcs + (piece,)

    moved = Incidence(piece, bottom.sign)
    swapped = (moved, first) if over == "first" else (second, moved)
    incident = v.incident[:position] + swapped + v.incident[position + 2:]

    return Diagram(
        edges=tuple(replace(e, arcs=new_arcs) if e.id == under_edge.id else e for e in d.edges),
        crossings=d.crossings + (crossing,),
        vertices=tuple(replace(w, incident=incident) if w.id == vertex_id else w for w in d.vertices),
    )


def permute_vertex(d: Diagram, vertex_id: str, order: Sequence[int]) -> Diagram:
    """
    Reordena la lista del vértice según `order` (índices de la lista actual)
    mediante medios giros de vecinos, agregando los cruces correspondientes.
    """
    v = d.vertex(vertex_id)
    if sorted(order) != list(range(len(v.incident))):
        raise PreconditionError("order debe ser una permutación de las entradas")
    current = list(range(len(v.incident)))
    target = list(order)
    # burbuja: cada intercambio de vecinos es un medio giro
    for i in range(len(target)):
        j = current.index(target[i])
        while j > i:
            d = twist_vertex(d, vertex_id, j - 1, over="first")
            current[j - 1], current[j] = current[j], current[j - 1]
            j -= 1
    return d


# -----------------------------
# Haces paralelos
# -----------------------------
def _copy_id(base: str, k: int, n: int, mark: str = "") -> str:
    return base if n == 1 else f"{base}.{k}{mark}"


def _ids_clash(d: Diagram) -> bool:
    arcs = [a for e in d.edges for a in e.arcs]
    edges = [e.id for e in d.edges]
    return len(set(arcs)) != len(arcs) or len(set(edges)) != len(edges)


def bundle(d: Diagram, copies: Mapping[str, Sequence[int]]) -> Diagram:
    """
    Reemplaza cada arista E por len(copies[E]) copias paralelas con los pesos
    dados. La copia k queda a la derecha de la k-1 según la orientación.
    En cada cruce la copia inferior j pasa bajo las copias superiores en
    orden k decreciente (cruce positivo) o creciente (negativo).

    Los ids nuevos son "{arco}.{k}" y "{copia}+{l}"; si chocan con ids ya
    presentes se les agrega una marca "'" hasta que sean únicos.
    """
    require_valid(d)
    unknown = set(copies) - {e.id for e in d.edges}
    if unknown:
        raise PreconditionError(f"aristas inexistentes: {', '.join(sorted(unknown))}")
    mult = {e.id: len(copies.get(e.id, (e.weight,))) for e in d.edges}
    for eid, n in mult.items():
        if n < 1:
            raise PreconditionError(f"multiplicidad nula en {eid}")
    mark = ""
    while True:
        out = _bundle(d, copies, mult, mark)
        if not _ids_clash(out):
            return out
        logger.debug("bundle: ids repetidos con marca %r, se reintenta", mark)
        mark += "'"


def _bundle(d: Diagram, copies: Mapping[str, Sequence[int]], mult: Dict[str, int], mark: str) -> Diagram:
    owner = d.edge_of_arc()
    weights = {e.id: tuple(copies.get(e.id, (e.weight,))) for e in d.edges}

    def arc_copy(arc: str, k: int) -> str:
        return _copy_id(arc, k, mult[owner[arc].id], mark)

    by_pair = {(x.under_in, x.under_out): x for x in d.crossings}

    def pieces(x: Crossing, j: int) -> List[str]:
        n_over = mult[owner[x.over].id]
        inner = [f"{arc_copy(x.under_in, j)}+{l}{mark}" for l in range(1, n_over)]
        return [arc_copy(x.under_in, j)] + inner + [arc_copy(x.under_out, j)]

    edges: List[Edge] = []
    for e in d.edges:
        n = mult[e.id]
        for j in range(n):
            arcs: List[str] = [arc_copy(e.arcs[0], j)]
            for a, b in zip(e.arcs, e.arcs[1:]):
                arcs.extend(pieces(by_pair[(a, b)], j)[1:])
            edges.append(Edge(_copy_id(e.id, j, n, mark), weights[e.id][j], tuple(arcs)))

    crossings: List[Crossing] = []
    for x in d.crossings:
        n_over = mult[owner[x.over].id]
        order = list(range(n_over - 1, -1, -1)) if x.sign > 0 else list(range(n_over))
        for j in range(mult[owner[x.under_in].id]):
            p = pieces(x, j)
            for l, k in enumerate(order):
                crossings.append(Crossing(arc_copy(x.over, k), p[l], p[l + 1], x.sign))

    vertices: List[Vertex] = []
    for v in d.vertices:
        incident: List[Incidence] = []
        for inc in v.incident:
            n = mult[owner[inc.arc].id]
            ks = range(n) if inc.sign < 0 else range(n - 1, -1, -1)
            incident.extend(Incidence(arc_copy(inc.arc, k), inc.sign) for k in ks)
        vertices.append(Vertex(v.id, tuple(incident)))

    return Diagram(tuple(edges), tuple(crossings), tuple(vertices))


def parallelize(d: Diagram, n: int, r: int) -> Diagram:
    """
    Cada arista pasa a n copias paralelas: las r primeras conservan la
    orientación y las n-r restantes se invierten (peso negado).
    """
    if n < 1:
        raise PreconditionError("n debe ser positivo")
    if not 0 <= r <= n:
        raise PreconditionError("r debe cumplir 0 <= r <= n")
    require_balanced(d)
    copies = {e.id: [e.weight] * r + [-e.weight] * (n - r) for e in d.edges}
    return bundle(d, copies)


def split_weight(d: Diagram, edge_id: str) -> Diagram:
    """Arista de peso w -> |w| aristas paralelas de peso sign(w)."""
    require_valid(d)
    w = d.edge(edge_id).weight
    if w == 0:
        raise PreconditionError(f"la arista {edge_id} tiene peso 0")
    unit = 1 if w > 0 else -1
    return bundle(d, {edge_id: [unit] * abs(w)})


def prefixed(d: Diagram, prefix: str) -> Diagram:
    def p(x: str) -> str:
        return f"{prefix}{x}"

    return Diagram(
        edges=tuple(Edge(p(e.id), e.weight, tuple(p(a) for a in e.arcs)) for e in d.edges),
        crossings=tuple(Crossing(p(x.over), p(x.under_in), p(x.under_out), x.sign) for x in d.crossings),
        vertices=tuple(
            Vertex(p(v.id), tuple(Incidence(p(i.arc), i.sign) for i in v.incident)) for v in d.vertices
        ),
    )


def wedge(
    d1: Diagram,
    v1: str,
    d2: Diagram,
    v2: str,
    prefixes: Tuple[str, str] = ("1.", "2."),
) -> Diagram:
    """Une d1 y d2 por v1 ~ v2; la lista fusionada es la de v1 seguida de la de v2."""
    require_valid(d1)
    require_valid(d2)
    d1.vertex(v1)
    d2.vertex(v2)
    a, b = prefixed(d1, prefixes[0]), prefixed(d2, prefixes[1])
    left, right = f"{prefixes[0]}{v1}", f"{prefixes[1]}{v2}"
    merged = Vertex(left, a.vertex(left).incident + b.vertex(right).incident)
    out = Diagram(
        edges=a.edges + b.edges,
        crossings=a.crossings + b.crossings,
        vertices=tuple(merged if v.id == left else v for v in a.vertices)
        + tuple(v for v in b.vertices if v.id != right),
    )
    clashes = validate(out)
    if clashes:
        raise InvalidDiagram(clashes)
    return out
