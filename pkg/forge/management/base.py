import json
import sys
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from ..builder import Caps
from ..conf import engine_settings
from ..errors import ForgeError
from ..serializers import CartanSpecSerializer


class ForgeCommand(BaseCommand):
    """Common flags, spec loading and error mapping for the engine commands.

    Subclasses implement ``run(**options)`` and return a JSON-ready payload
    (or a string for text formats). ``ForgeError`` becomes a ``CommandError``
    carrying the error's exit code.
    """

    formats = ("json",)
    takes_spec = True

    def add_arguments(self, parser):
        if self.takes_spec:
            parser.add_argument("spec", help="CartanSpec JSON file, or - for stdin")
            parser.add_argument("--param-value", type=int, default=None, help="Specialize the parameter a to this residue")
        conf = engine_settings()
        parser.add_argument("--dim-cap", type=int, default=conf.dim_cap)
        parser.add_argument("--height-cap", type=int, default=conf.height_cap)
        parser.add_argument("--format", choices=self.formats, default=self.formats[0])
        parser.add_argument("--out", default=None, help="Write the result here instead of stdout")
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def caps(self, options) -> Caps:
        if options["dim_cap"] < 1 or options["height_cap"] < 1:
            raise CommandError("caps must be positive", returncode=2)
        return Caps(options["dim_cap"], options["height_cap"])

    def load_spec(self, options):
        source = options["spec"]
        try:
            text = sys.stdin.read() if source == "-" else Path(source).read_text(encoding="utf-8")
            payload = json.loads(text)
        except (OSError, json.JSONDecodeError) as exc:
            raise CommandError(f"cannot read {source}: {exc}", returncode=2)
        if options.get("param_value") is not None:
            payload["param_value"] = str(options["param_value"])
        serializer = CartanSpecSerializer(data=payload)
        if not serializer.is_valid():
            raise CommandError(f"invalid CartanSpec: {serializer.errors}", returncode=2)
        return serializer.validated_data["spec"]

    def emit(self, payload, options):
        if isinstance(payload, str):
            text = payload
        else:
            text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
        if options["out"]:
            Path(options["out"]).write_text(text, encoding="utf-8")
            self.stdout.write(self.style.SUCCESS(f"Wrote {options['out']}"))
        else:
            self.stdout.write(text, ending="")

    def handle(self, *args, **options):
        try:
            self.run(**options)
        except ForgeError as exc:
            raise CommandError(f"{type(exc).__name__}: {exc}", returncode=exc.code)

    def run(self, **options):
        raise NotImplementedError
