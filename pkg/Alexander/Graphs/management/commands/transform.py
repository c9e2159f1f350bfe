from Graphs.serializers import dumps
from Graphs.services import TransformService

from ._base import GraphCommand


class Command(GraphCommand):
    help = "Transforma un diagrama y escribe el resultado como JSON canónico."
    accepts_raw_matrix = False

    def add_command_arguments(self, parser):
        actions = parser.add_subparsers(dest="action", required=True)
        actions.add_parser("mirror")
        actions.add_parser("reverse-all")
        actions.add_parser("reduce")

        contract = actions.add_parser("contract")
        contract.add_argument("edge")

        split = actions.add_parser("split-weight")
        split.add_argument("edge")

        parallel = actions.add_parser("parallel")
        parallel.add_argument("n", type=int)
        parallel.add_argument("r", type=int)

        wedge = actions.add_parser("wedge")
        wedge.add_argument("other")
        wedge.add_argument("v1")
        wedge.add_argument("v2")

        rotate = actions.add_parser("rotate")
        rotate.add_argument("vertex")
        rotate.add_argument("shift", type=int)

        twist = actions.add_parser("twist")
        twist.add_argument("vertex")
        twist.add_argument("position", type=int)
        twist.add_argument("--over", choices=["first", "second"], default="first")

    PARAMS = ("edge", "n", "r", "other", "v1", "v2", "vertex", "shift", "position", "over")

    def run(self, source, options):
        params = {k: options[k] for k in self.PARAMS if options.get(k) is not None}
        return TransformService(source).apply(options["action"], **params)

    def emit(self, outcome, options):
        if options.get("json"):
            self.stdout.write(dumps(outcome.as_document()))
        else:
            self.stdout.write(dumps(outcome.result))
