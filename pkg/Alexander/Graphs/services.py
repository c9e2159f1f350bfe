from __future__ import annotations

import logging
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from django.conf import settings

from . import coloring, diagram as dg, invariants, metacyclic
from .diagram import Diagram
from .exceptions import MalformedInput, PreconditionError
from .laurent import LaurentPoly, normalize_unit, to_text
from .serializers import diagram_from_data, diagram_to_data, loads, raw_matrix_from_data
from .wirtinger import AlexMatrix, alexander_matrix, closed_form_matrix

logger = logging.getLogger(__name__)


# =========================================================
# Helpers de salida
# =========================================================
def poly_payload(p: LaurentPoly) -> Dict[str, Any]:
    return {"text": to_text(p), "pairs": [[e, str(c)] for e, c in p.to_pairs()]}


def matrix_payload(M: AlexMatrix) -> Dict[str, Any]:
    return {
        "rows": M.text_rows(),
        "row_labels": list(M.row_labels),
        "col_labels": list(M.col_labels),
    }


@dataclass
class Outcome:
    operation: str
    inputs: Dict[str, Any]
    result: Any
    text: str

    def as_document(self) -> Dict[str, Any]:
        return {"operation": self.operation, "inputs": self.inputs, "result": self.result}


# =========================================================
# Fuentes
# =========================================================
@dataclass
class GraphSource:
    """Diagrama (modo principal) o matriz cruda con sus conteos (c, v, e)."""
    path: str
    diagram: Optional[Diagram] = None
    matrix: Optional[AlexMatrix] = None
    counts: Tuple[int, int, int] = (0, 0, 0)
    raw_data: Any = field(default=None, repr=False)

    def require_diagram(self) -> Diagram:
        if self.diagram is None:
            raise PreconditionError("esta operación requiere un diagrama, no una matriz cruda")
        return self.diagram

    def alexander_matrix(self) -> AlexMatrix:
        if self.matrix is None:
            self.matrix = closed_form_matrix(self.require_diagram())
        return self.matrix


def read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedInput(f"no se puede leer {path}: {exc.strerror}") from exc


def load_source(path: str, raw_matrix: bool = False, check: bool = True) -> GraphSource:
    data = loads(read_text(path))
    if raw_matrix:
        matrix, counts = raw_matrix_from_data(data)
        return GraphSource(path=path, matrix=matrix, counts=counts, raw_data=data)
    d = diagram_from_data(data, check=check)
    return GraphSource(path=path, diagram=d, counts=d.counts, raw_data=data)


def load_diagram(path: str) -> Diagram:
    return load_source(path).require_diagram()


# =========================================================
# Servicio
# =========================================================
class InvariantService:
    """
    Orquesta los cálculos de un diagrama o matriz cruda:
      - resuelve la configuración (settings.SPATIAL_GRAPHS + flags)
      - llama a los módulos puros
      - arma el resultado (texto humano y documento JSON)
    """

    DEFAULTS = {
        "ENUMERATION_CAP": 10 ** 6,
        "MINOR_CAP": 2_000_000,
        "THREADS": 1,
        "ALLOW_EVEN_PRIME": False,
        "DROP_REDUNDANT_ROW": False,
        "UNIT_REDUCTION": True,
    }

    def __init__(self, source: GraphSource, **overrides):
        self.source = source
        self.config = {**self.DEFAULTS, **getattr(settings, "SPATIAL_GRAPHS", {})}
        self.config.update({k: v for k, v in overrides.items() if v is not None})

    @property
    def det_options(self) -> invariants.DetOptions:
        if self.config.get("NAIVE"):
            return invariants.DetOptions.naive()
        return invariants.DetOptions(
            early_exit=True,
            unit_reduction=bool(self.config["UNIT_REDUCTION"]),
            drop_redundant_row=bool(self.config["DROP_REDUNDANT_ROW"]),
            threads=int(self.config["THREADS"]),
            minor_cap=self.config["MINOR_CAP"],
        )

    def _inputs(self, **extra) -> Dict[str, Any]:
        mode = "raw-matrix" if self.source.diagram is None else "diagram"
        return {"source": self.source.path, "mode": mode, **{k: str(v) for k, v in extra.items() if v is not None}}

    def _timed(self, operation: str, started: float) -> None:
        logger.info("%s en %.3fs (%s)", operation, time.perf_counter() - started, self.source.path)

    # -----------------------------
    # API principal
    # -----------------------------
    def validate(self) -> Outcome:
        d = self.source.require_diagram()
        report = dg.validate(d)
        balanced = not report and all(v == 0 for v in dg.vertex_imbalance(d).values())
        result = {
            "valid": not report,
            "violations": [str(v) for v in report],
            "balanced": balanced,
        }
        if report:
            text = "\n".join(["invalid"] + [f"  {v}" for v in report])
        else:
            text = "valid, balanced" if balanced else "valid, unbalanced"
        return Outcome("validate", self._inputs(), result, text)

    def matrix(self, route: str = "closed") -> Outcome:
        if self.source.diagram is None:
            M = self.source.alexander_matrix()
        elif route == "fox":
            M = alexander_matrix(self.source.diagram)
        else:
            M = closed_form_matrix(self.source.diagram)
        lines = ["\t".join(["", *M.col_labels])]
        lines += ["\t".join([label, *row]) for label, row in zip(M.row_labels, M.text_rows())]
        return Outcome("matrix", self._inputs(route=route), matrix_payload(M), "\n".join(lines))

    def alexander(self, k: int) -> Outcome:
        started = time.perf_counter()
        c, v, _ = self.source.counts
        if k < 0:
            raise PreconditionError("k debe ser no negativo")
        if self.source.diagram is not None:
            dg.require_balanced(self.source.diagram)
        poly = normalize_unit(invariants.det_poly(self.source.alexander_matrix(), c + v - k, self.det_options))
        self._timed("alex", started)
        return Outcome("alex", self._inputs(k=k), poly_payload(poly), to_text(poly))

    def determinant(self, n: int, k: int) -> Outcome:
        started = time.perf_counter()
        if n == 0:
            raise PreconditionError("n debe ser distinto de cero")
        if k < 1:
            raise PreconditionError("k debe ser al menos 1")
        c, v, _ = self.source.counts
        if self.source.diagram is not None:
            dg.require_balanced(self.source.diagram)
        det = invariants.matrix_determinant_at(self.source.alexander_matrix(), n, c + v - k)
        self._timed("det", started)
        result = {"value": str(det.value), "raw": str(det.raw), "invariant": det.invariant}
        text = str(det.value) if det.invariant else f"{det.value} (not diagram-invariant: |n| compuesto)"
        return Outcome("det", self._inputs(n=n, k=k), result, text)

    def colorings(self, p: int, n: int, enumerate_all: bool = False, check_k: Optional[int] = None) -> Outcome:
        started = time.perf_counter()
        allow_even = bool(self.config["ALLOW_EVEN_PRIME"])
        if self.source.diagram is not None:
            dg.require_balanced(self.source.diagram)
        C = coloring.matrix_mod_p(self.source.alexander_matrix(), n, p, allow_even)
        basis = coloring.nullspace(C.rows, p, C.shape[1])
        result: Dict[str, Any] = {
            "nullity": str(len(basis)),
            "basis": [dict(zip(C.col_labels, map(str, vec))) for vec in basis],
        }
        lines = [f"N_{p}(n={n}) = {len(basis)}"]
        lines += ["  " + " ".join(f"{a}={x}" for a, x in zip(C.col_labels, vec)) for vec in basis]

        if enumerate_all:
            d = self.source.require_diagram()
            found = coloring.enumerate_colorings(d, n, p, cap=int(self.config["ENUMERATION_CAP"]), allow_even_prime=allow_even)
            result["colorings"] = [{a: str(x) for a, x in col.as_dict().items()} for col in found]
            lines.append(f"colorings: {len(found)}")

        if check_k is not None:
            check = coloring.matrix_coloring_check(
                self.source.alexander_matrix(), self.source.counts, n, p, check_k, allow_even
            )
            result["check"] = {
                "k": str(check.k),
                "threshold": str(check.threshold),
                "raw_determinant": str(check.raw_determinant),
                "extra_colorings": check.extra_colorings,
                "divides": check.divides,
                "agrees": check.agrees,
            }
            lines.append(
                f"check k={check_k}: N_p > {check.threshold} is {check.extra_colorings}, "
                f"p | det is {check.divides} -> {'agree' if check.agrees else 'DISAGREE'}"
            )
        self._timed("color", started)
        return Outcome("color", self._inputs(p=p, n=n, k=check_k), result, "\n".join(lines))

    def representations(self, p: int, k: int, m: Optional[int] = None, list_all: bool = False) -> Outcome:
        started = time.perf_counter()
        d = self.source.require_diagram()
        counts = metacyclic.classify_and_count(
            d, p, k, m=m, cap=int(self.config["ENUMERATION_CAP"]), keep=list_all
        )
        result: Dict[str, Any] = {
            "m": str(counts.m),
            "nullity": str(counts.nullity),
            "total": str(counts.total),
            "cyclic": str(counts.cyclic),
            "surjective": str(counts.surjective),
            "inequivalent_surjective": str(counts.inequivalent_surjective),
            "inequivalent_formula": None if counts.inequivalent_formula is None else str(counts.inequivalent_formula),
        }
        lines = [
            f"Gamma({p},{counts.m},{counts.k}): total={counts.total} cyclic={counts.cyclic} "
            f"surjective={counts.surjective} inequivalent={counts.inequivalent_surjective}"
        ]
        if list_all:
            result["representations"] = [
                {a: str(x) for a, x in rep.as_dict().items()} for rep in counts.representations
            ]
            lines += ["  " + " ".join(f"{a}={x}" for a, x in rep.as_dict().items()) for rep in counts.representations]
        self._timed("reps", started)
        return Outcome("reps", self._inputs(p=p, k=k, m=m), result, "\n".join(lines))

    def weightings(self) -> Outcome:
        d = self.source.require_diagram()
        basis = dg.balanced_weighting_basis(d)
        ids = [e.id for e in d.edges]
        result = {
            "balanced": all(v == 0 for v in dg.vertex_imbalance(d).values()),
            "components": str(dg.connected_components(d)),
            "gcd": str(dg.weight_gcd(d)),
            "basis": [dict(zip(ids, map(str, vec))) for vec in basis],
        }
        lines = [f"rank {len(basis)}"] + ["  " + " ".join(f"{e}={w}" for e, w in zip(ids, vec)) for vec in basis]
        return Outcome("weightings", self._inputs(), result, "\n".join(lines))


# =========================================================
# Transformaciones
# =========================================================
class TransformService:
    """Aplica una transformación de diagrama y devuelve el diagrama resultante."""

    def __init__(self, source: GraphSource):
        self.diagram = source.require_diagram()
        self.path = source.path

    def apply(self, action: str, **params) -> Outcome:
        handlers = {
            "mirror": lambda: dg.mirror(self.diagram),
            "reverse-all": lambda: dg.reverse_all(self.diagram),
            "contract": lambda: dg.contract_edge(self.diagram, params["edge"]),
            "parallel": lambda: dg.parallelize(self.diagram, int(params["n"]), int(params["r"])),
            "split-weight": lambda: dg.split_weight(self.diagram, params["edge"]),
            "reduce": lambda: dg.reduce_weighting(self.diagram)[0],
            "rotate": lambda: dg.rotate_vertex(self.diagram, params["vertex"], int(params["shift"])),
            "twist": lambda: dg.twist_vertex(
                self.diagram, params["vertex"], int(params["position"]), params.get("over") or "first"
            ),
            "wedge": lambda: dg.wedge(
                self.diagram, params["v1"], load_diagram(params["other"]), params["v2"]
            ),
        }
        if action not in handlers:
            raise PreconditionError(f"transformación desconocida: {action}")
        started = time.perf_counter()
        result = handlers[action]()
        logger.info("transform %s en %.3fs", action, time.perf_counter() - started)
        data = diagram_to_data(result)
        inputs = {"source": self.path, "action": action, **{k: str(v) for k, v in params.items() if v is not None}}
        return Outcome("transform", inputs, data, "")
