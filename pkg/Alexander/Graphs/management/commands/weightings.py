from ._base import GraphCommand


class Command(GraphCommand):
    help = "Base del retículo de pesados balanceados (espacio de ciclos entero)."
    accepts_raw_matrix = False

    def run(self, source, options):
        return self.service(source, options).weightings()
