"""
Errores de dominio. Cada clase lleva el código de salida que usan los
comandos de manage.py al traducirla a CommandError.
"""
from __future__ import annotations

from typing import Any, Iterable, Optional


class SpatialGraphError(Exception):
    exit_code = 1

    def __init__(self, message: str, details: Optional[Any] = None):
        super().__init__(message)
        self.message = message
        self.details = details


class MalformedInput(SpatialGraphError):
    """JSON o texto que no se puede interpretar."""
    exit_code = 1


class InvalidDiagram(SpatialGraphError):
    """El diagrama viola invariantes estructurales; `report` lista cada una."""
    exit_code = 1

    def __init__(self, report: Iterable[Any]):
        self.report = list(report)
        lines = "; ".join(str(v) for v in self.report)
        super().__init__(f"diagrama inválido: {lines}", details=[str(v) for v in self.report])


class PreconditionError(SpatialGraphError):
    exit_code = 2


class ResourceCapExceeded(SpatialGraphError):
    exit_code = 3


class RepresentationError(SpatialGraphError):
    """Falla de auto-verificación: indica un error de implementación."""
    exit_code = 4
