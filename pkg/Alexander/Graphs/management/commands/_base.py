"""
Base común de los comandos de Graphs: lectura de la fuente, flags
compartidos, salida humana o JSON y traducción de errores de dominio a
CommandError con su código de salida.
"""
from __future__ import annotations

import logging

from django.core.management.base import BaseCommand, CommandError

from Graphs.exceptions import SpatialGraphError
from Graphs.serializers import dumps
from Graphs.services import GraphSource, InvariantService, Outcome, load_source

logger = logging.getLogger("Graphs.commands")


def describe(exc: SpatialGraphError) -> str:
    if not exc.details or isinstance(exc.details, list):
        return exc.message
    return f"{exc.message}: {dumps(exc.details)}"


class GraphCommand(BaseCommand):
    # los comandos que aceptan --raw-matrix lo activan
    accepts_raw_matrix = True
    # validate necesita leer diagramas inválidos para reportarlos
    check_on_load = True

    def add_arguments(self, parser):
        parser.add_argument("source", help="archivo JSON del diagrama ('-' para stdin)")
        if self.accepts_raw_matrix:
            parser.add_argument("--raw-matrix", action="store_true", help="la fuente es una matriz cruda")
        parser.add_argument("--json", action="store_true", help="salida JSON {operation, inputs, result}")
        parser.add_argument("--threads", type=int, default=None)
        parser.add_argument("--cap", type=int, default=None, help="tope de enumeración")
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def service(self, source: GraphSource, options) -> InvariantService:
        return InvariantService(
            source,
            THREADS=options.get("threads"),
            ENUMERATION_CAP=options.get("cap"),
        )

    def run(self, source: GraphSource, options) -> Outcome:
        raise NotImplementedError

    def handle(self, *args, **options):
        try:
            source = load_source(
                options["source"],
                raw_matrix=bool(options.get("raw_matrix")),
                check=self.check_on_load,
            )
            outcome = self.run(source, options)
        except SpatialGraphError as exc:
            logger.debug("comando fallido: %s", exc.message)
            raise CommandError(describe(exc), returncode=exc.exit_code) from exc
        self.emit(outcome, options)

    def emit(self, outcome: Outcome, options) -> None:
        if options.get("json"):
            self.stdout.write(dumps(outcome.as_document()))
        else:
            self.stdout.write(outcome.text)
