from ._base import GraphCommand


class Command(GraphCommand):
    help = "Valida un diagrama y reporta cada invariante estructural violada."
    accepts_raw_matrix = False
    check_on_load = False

    def run(self, source, options):
        return self.service(source, options).validate()
