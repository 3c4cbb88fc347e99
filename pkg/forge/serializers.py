from rest_framework import serializers

from .builder import Caps
from .cartan import make_spec, specialize_spec
from .conf import engine_settings
from .errors import ForgeError
from .scalars import PrimeField


class ParityField(serializers.Field):
    """Either a string like "ev od ev" / "010" or a list of tokens."""

    def to_internal_value(self, data):
        if isinstance(data, str):
            tokens = data.split() if " " in data.strip() else list(data.strip())
        elif isinstance(data, list):
            tokens = [str(t) for t in data]
        else:
            raise serializers.ValidationError("parity must be a string or a list of tokens.")
        if not tokens:
            raise serializers.ValidationError("parity must not be empty.")
        return tokens

    def to_representation(self, value):
        return value


class CartanSpecSerializer(serializers.Serializer):
    p = serializers.IntegerField(min_value=2)
    matrix = serializers.ListField(child=serializers.ListField(child=serializers.CharField(trim_whitespace=True)))
    parity = ParityField()
    parametric = serializers.BooleanField(required=False, allow_null=True, default=None)
    param_value = serializers.CharField(required=False, allow_blank=False)
    symmetric_zeros = serializers.BooleanField(required=False, default=True)

    def validate(self, attrs):
        try:
            spec = make_spec(
                attrs["p"], attrs["matrix"], attrs["parity"], attrs.get("parametric"), attrs["symmetric_zeros"]
            )
            if "param_value" in attrs:
                spec = specialize_spec(spec, int(attrs["param_value"]), PrimeField(spec.p))
        except (ForgeError, ValueError) as exc:
            raise serializers.ValidationError(str(exc))
        attrs["spec"] = spec
        return attrs


class CapsSerializer(serializers.Serializer):
    dim_cap = serializers.IntegerField(min_value=1, required=False)
    height_cap = serializers.IntegerField(min_value=1, required=False)

    def validate(self, attrs):
        conf = engine_settings()
        dim_cap = attrs.get("dim_cap", conf.dim_cap)
        height_cap = attrs.get("height_cap", conf.height_cap)
        if dim_cap > conf.dim_cap or height_cap > conf.height_cap:
            raise serializers.ValidationError(
                f"caps are bounded by the configured dim_cap={conf.dim_cap} and height_cap={conf.height_cap}."
            )
        attrs["caps"] = Caps(dim_cap, height_cap)
        return attrs


class BuildRequestSerializer(serializers.Serializer):
    spec = CartanSpecSerializer()
    caps = CapsSerializer(required=False)
    structure = serializers.BooleanField(required=False, default=True)
    audit = serializers.BooleanField(required=False, default=False)

    def validate(self, attrs):
        attrs["spec"] = attrs["spec"]["spec"]
        caps = attrs.get("caps")
        attrs["caps"] = caps["caps"] if caps else CapsSerializer().validate({})["caps"]
        return attrs


class OrbitRequestSerializer(BuildRequestSerializer):
    verify_sdim = serializers.BooleanField(required=False, allow_null=True, default=None)


class DynkinRequestSerializer(serializers.Serializer):
    spec = CartanSpecSerializer()
    format = serializers.ChoiceField(choices=["text", "dot"], default="text")
    symmetries = serializers.BooleanField(required=False, default=False)

    def validate(self, attrs):
        attrs["spec"] = attrs["spec"]["spec"]
        return attrs
