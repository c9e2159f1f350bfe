from ._base import GraphCommand


class Command(GraphCommand):
    help = "Imprime la matriz de Alexander M(D, w) con sus etiquetas de filas y columnas."

    def add_command_arguments(self, parser):
        parser.add_argument("--route", choices=["closed", "fox"], default="closed",
                            help="fórmula cerrada o cálculo de Fox sobre la presentación")

    def run(self, source, options):
        return self.service(source, options).matrix(options["route"])
