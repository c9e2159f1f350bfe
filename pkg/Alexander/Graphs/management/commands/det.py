from ._base import GraphCommand


class Command(GraphCommand):
    help = "Calcula det_k(G, w)(n)."

    def add_command_arguments(self, parser):
        parser.add_argument("--n", type=int, required=True)
        parser.add_argument("--k", type=int, required=True)

    def run(self, source, options):
        return self.service(source, options).determinant(options["n"], options["k"])
