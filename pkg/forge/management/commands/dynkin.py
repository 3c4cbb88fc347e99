from ...dynkin import diagram_symmetries, serialize, to_diagram
from ..base import ForgeCommand


class Command(ForgeCommand):
    help = "Draw the Dynkin diagram of a Cartan matrix as text or Graphviz dot"

    formats = ("text", "dot", "json")

    def add_command_arguments(self, parser):
        parser.add_argument("--symmetries", action="store_true", help="List the diagram symmetries (json format)")

    def run(self, **options):
        spec = self.load_spec(options)
        diagram = to_diagram(spec)
        if options["format"] == "json":
            payload = {"diagram": serialize(diagram, "text"), "dot": serialize(diagram, "dot")}
            if options["symmetries"]:
                payload["symmetries"] = [[s + 1 for s in sigma] for sigma in diagram_symmetries(spec)]
            self.emit(payload, options)
            return
        text = serialize(diagram, options["format"])
        self.emit(text if text.endswith("\n") else text + "\n", options)
