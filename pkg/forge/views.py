import logging

from django.http import HttpResponse
from rest_framework import status
from rest_framework.permissions import AllowAny
from rest_framework.response import Response
from rest_framework.views import APIView

from .builder import FINITE, build
from .conf import engine_settings
from .dynkin import diagram_symmetries, serialize, to_diagram
from .errors import ForgeError
from .expectations import load_expectations
from .reflections import enumerate_orbit
from .reports import build_report, sdim_json
from .serializers import BuildRequestSerializer, DynkinRequestSerializer, OrbitRequestSerializer

logger = logging.getLogger(__name__)


def _invalid(serializer):
    errors = serializer.errors
    first = next(iter(errors.values()), ["Invalid request."])
    if isinstance(first, dict):
        first = next(iter(first.values()), ["Invalid request."])
    detail = first[0] if isinstance(first, list) and first else str(first)
    return Response({"detail": str(detail), "errors": errors}, status=status.HTTP_400_BAD_REQUEST)


def _failed(exc: ForgeError):
    logger.info("request failed: %s", exc)
    return Response({"detail": str(exc), "error": type(exc).__name__}, status=status.HTTP_400_BAD_REQUEST)


class BuildView(APIView):
    permission_classes = [AllowAny]

    def post(self, request):
        serializer = BuildRequestSerializer(data=request.data)
        if not serializer.is_valid():
            return _invalid(serializer)
        data = serializer.validated_data
        try:
            b = build(data["spec"], data["caps"])
            return Response(build_report(b, structure=data["structure"], audit=data["audit"]), status=status.HTTP_200_OK)
        except ForgeError as exc:
            return _failed(exc)


class OrbitView(APIView):
    permission_classes = [AllowAny]

    def post(self, request):
        serializer = OrbitRequestSerializer(data=request.data)
        if not serializer.is_valid():
            return _invalid(serializer)
        data = serializer.validated_data
        try:
            b = build(data["spec"], data["caps"])
            if b.verdict != FINITE:
                return Response(
                    {"detail": "The algebra exceeded the caps; no orbit is computed.", "sdim": sdim_json(b.sdim())},
                    status=status.HTTP_400_BAD_REQUEST,
                )
            orbit = enumerate_orbit(data["spec"], data["caps"], verify_sdim=data["verify_sdim"], prebuilt=b)
        except ForgeError as exc:
            return _failed(exc)
        payload = orbit.to_json()
        payload["rectangle"] = orbit.rectangle()
        payload["ordered_rectangle"] = orbit.ordered_rectangle()
        return Response(payload, status=status.HTTP_200_OK)


class DynkinView(APIView):
    permission_classes = [AllowAny]

    def post(self, request):
        serializer = DynkinRequestSerializer(data=request.data)
        if not serializer.is_valid():
            return _invalid(serializer)
        data = serializer.validated_data
        spec = data["spec"]
        diagram = to_diagram(spec)
        if data["format"] == "dot":
            return HttpResponse(serialize(diagram, "dot"), content_type="text/vnd.graphviz")
        payload = {"diagram": serialize(diagram, "text")}
        if data["symmetries"]:
            payload["symmetries"] = [[s + 1 for s in sigma] for sigma in diagram_symmetries(spec)]
        return Response(payload, status=status.HTTP_200_OK)


class ExpectationsView(APIView):
    permission_classes = [AllowAny]

    def get(self, request):
        try:
            entries = load_expectations()
        except ForgeError as exc:
            return _failed(exc)
        return Response(
            [
                {
                    "family": e.family,
                    "p": e.p,
                    "sdim": sdim_json(e.sdim),
                    "orbit": e.orbit,
                    "orbit_ordered": e.orbit_ordered,
                    "slow": e.slow,
                    "source": e.source,
                }
                for e in entries
            ],
            status=status.HTTP_200_OK,
        )


class HealthView(APIView):
    permission_classes = [AllowAny]

    def get(self, request):
        conf = engine_settings()
        return Response({"status": "ok", "dim_cap": conf.dim_cap, "height_cap": conf.height_cap})
