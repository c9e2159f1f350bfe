from ._base import GraphCommand


class Command(GraphCommand):
    help = "Calcula Delta_k normalizado."

    def add_command_arguments(self, parser):
        parser.add_argument("--k", type=int, required=True)
        parser.add_argument("--naive", action="store_true",
                            help="sin reducción por unidades ni corte temprano")
        parser.add_argument("--minor-cap", type=int, default=None)

    def service(self, source, options):
        service = super().service(source, options)
        service.config.update({"NAIVE": bool(options.get("naive"))})
        if options.get("minor_cap") is not None:
            service.config["MINOR_CAP"] = options["minor_cap"]
        return service

    def run(self, source, options):
        return self.service(source, options).alexander(options["k"])
