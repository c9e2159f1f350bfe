from ._base import GraphCommand


class Command(GraphCommand):
    help = "p-coloraciones en n: nulidad, base y verificación contra det_k."

    def add_command_arguments(self, parser):
        parser.add_argument("--p", type=int, required=True)
        parser.add_argument("--n", type=int, required=True)
        parser.add_argument("--enumerate", action="store_true", dest="enumerate_all")
        parser.add_argument("--check-k", type=int, default=None)
        parser.add_argument("--allow-even-prime", action="store_true")

    def service(self, source, options):
        service = super().service(source, options)
        if options.get("allow_even_prime"):
            service.config["ALLOW_EVEN_PRIME"] = True
        return service

    def run(self, source, options):
        return self.service(source, options).colorings(
            options["p"],
            options["n"],
            enumerate_all=bool(options.get("enumerate_all")),
            check_k=options.get("check_k"),
        )
