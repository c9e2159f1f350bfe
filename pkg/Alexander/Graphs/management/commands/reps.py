from ._base import GraphCommand


class Command(GraphCommand):
    help = "Cuenta las representaciones metacíclicas Gamma(p, m, k) y sus clases."

    def add_command_arguments(self, parser):
        parser.add_argument("--p", type=int, required=True)
        parser.add_argument("--k", type=int, required=True)
        parser.add_argument("--m", type=int, default=None, help="múltiplo de ord_p(k)")
        parser.add_argument("--list", action="store_true", dest="list_all")

    def run(self, source, options):
        return self.service(source, options).representations(
            options["p"], options["k"], m=options.get("m"), list_all=bool(options.get("list_all"))
        )
