"""
Serializers DRF para los documentos JSON: diagramas y matrices crudas.
"""
from __future__ import annotations

import json
from typing import Any, Dict

from rest_framework import serializers

from .diagram import Crossing, Diagram, Edge, Incidence, Vertex, validate
from .exceptions import InvalidDiagram, MalformedInput
from .laurent import parse
from .wirtinger import AlexMatrix

SIGN_CHOICES = [1, -1]


# =========================================================
# Diagramas
# =========================================================
class IncidenceSerializer(serializers.Serializer):
    arc = serializers.CharField(allow_blank=False, trim_whitespace=False)
    sign = serializers.ChoiceField(choices=SIGN_CHOICES)


class EdgeSerializer(serializers.Serializer):
    id = serializers.CharField(allow_blank=False, trim_whitespace=False)
    weight = serializers.IntegerField()
    arcs = serializers.ListField(
        child=serializers.CharField(allow_blank=False, trim_whitespace=False),
        allow_empty=False,
    )


class CrossingSerializer(serializers.Serializer):
    over = serializers.CharField(allow_blank=False, trim_whitespace=False)
    under_in = serializers.CharField(allow_blank=False, trim_whitespace=False)
    under_out = serializers.CharField(allow_blank=False, trim_whitespace=False)
    sign = serializers.ChoiceField(choices=SIGN_CHOICES)


class VertexSerializer(serializers.Serializer):
    id = serializers.CharField(allow_blank=False, trim_whitespace=False)
    incident = IncidenceSerializer(many=True)


class DiagramSerializer(serializers.Serializer):
    """
    {"edges": [...], "crossings": [...], "vertices": [...]}.
    `save()` devuelve un Diagram; la validación estructural se hace aparte
    (validate del módulo diagram) para poder reportarla completa.
    """
    edges = EdgeSerializer(many=True)
    crossings = CrossingSerializer(many=True, required=False, default=list)
    vertices = VertexSerializer(many=True, required=False, default=list)

    def create(self, validated_data: Dict[str, Any]) -> Diagram:
        return Diagram(
            edges=tuple(
                Edge(e["id"], int(e["weight"]), tuple(e["arcs"])) for e in validated_data["edges"]
            ),
            crossings=tuple(
                Crossing(x["over"], x["under_in"], x["under_out"], int(x["sign"]))
                for x in validated_data.get("crossings", [])
            ),
            vertices=tuple(
                Vertex(v["id"], tuple(Incidence(i["arc"], int(i["sign"])) for i in v["incident"]))
                for v in validated_data.get("vertices", [])
            ),
        )


def diagram_from_data(data: Any, check: bool = True) -> Diagram:
    serializer = DiagramSerializer(data=data)
    if not serializer.is_valid():
        raise MalformedInput("Datos inválidos", details=serializer.errors)
    d = serializer.save()
    if check:
        report = validate(d)
        if report:
            raise InvalidDiagram(report)
    return d


def diagram_to_data(d: Diagram) -> Dict[str, Any]:
    data = DiagramSerializer(d).data
    return json.loads(json.dumps(data))


def dumps(data: Any) -> str:
    """Salida canónica: claves ordenadas, orden de listas intacto."""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False)


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"JSON inválido: {exc}") from exc


# =========================================================
# Matrices crudas
# =========================================================
class RawMatrixSerializer(serializers.Serializer):
    """
    {"c", "v", "e", "rows": [[texto, ...], ...], "substitute": {"x": 1, ...}}
    con dimensiones (c+v) x (c+e).
    """
    c = serializers.IntegerField(min_value=0)
    v = serializers.IntegerField(min_value=0)
    e = serializers.IntegerField(min_value=0)
    rows = serializers.ListField(child=serializers.ListField(child=serializers.CharField()))
    substitute = serializers.DictField(child=serializers.IntegerField(), required=False, default=dict)

    def validate(self, attrs):
        c, v, e = attrs["c"], attrs["v"], attrs["e"]
        rows = attrs["rows"]
        if len(rows) != c + v:
            raise serializers.ValidationError({"rows": f"se esperaban {c + v} filas, hay {len(rows)}"})
        bad = [i for i, r in enumerate(rows, start=1) if len(r) != c + e]
        if bad:
            raise serializers.ValidationError(
                {"rows": f"se esperaban {c + e} columnas; filas con otro largo: {bad}"}
            )
        parsed = []
        for i, r in enumerate(rows, start=1):
            try:
                parsed.append([parse(x, attrs.get("substitute")) for x in r])
            except MalformedInput as exc:
                raise serializers.ValidationError({"rows": f"fila {i}: {exc.message}"})
        attrs["parsed"] = parsed
        return attrs

    def create(self, validated_data: Dict[str, Any]):
        c, v, e = validated_data["c"], validated_data["v"], validated_data["e"]
        matrix = AlexMatrix.from_rows(
            validated_data["parsed"],
            row_labels=[f"crossing {i}" for i in range(1, c + 1)] + [f"vertex {j}" for j in range(1, v + 1)],
            col_labels=[f"a{j}" for j in range(1, c + e + 1)],
        )
        return matrix, (c, v, e)


def raw_matrix_from_data(data: Any):
    serializer = RawMatrixSerializer(data=data)
    if not serializer.is_valid():
        raise MalformedInput("Datos inválidos", details=serializer.errors)
    return serializer.save()
