# pylint: disable=W0223
"""
The JSON system description read by ``manage.py analyze``::

    {
        "version": 1,
        "d_sys": 2,
        "d_res": 2,
        "unitary": {"u_t": [[[1, 0], ...], ...]},
        "pi0": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]],
        "t": 1.0,
        "basis": ...,
        "tolerances": {"diag": 1e-9, "unital": 1e-8},
        "states": [...]
    }

Exactly one of ``hamiltonians`` (``h_sys``, ``h_res``, ``h_int``) and
``unitary`` (``u_t`` or ``u_int``, optionally ``u_sys`` and ``u_res``) is
present.
"""
from dataclasses import dataclass, field

from django.utils.translation import gettext as _
from rest_framework import serializers

from htheorem import settings
from htheorem.exceptions import HTheoremError
from htheorem.numkernel import as_density
from htheorem.system_builder import HamiltonianSystem, ReservoirState, UnitarySystem

from .fields import ComplexMatrixField, check_dimension


@dataclass(frozen=True)
class SystemDescription:
    "A validated system description, ready for the analysis pipeline."

    system: object
    reservoir: ReservoirState
    tol_diag: float = None
    tol_unital: float = None
    states: tuple = field(default=(), repr=False)


class HamiltoniansSerializer(serializers.Serializer):
    h_sys = ComplexMatrixField()
    h_res = ComplexMatrixField()
    h_int = ComplexMatrixField()


class UnitarySerializer(serializers.Serializer):
    u_t = ComplexMatrixField(required=False)
    u_int = ComplexMatrixField(required=False)
    u_sys = ComplexMatrixField(required=False)
    u_res = ComplexMatrixField(required=False)

    def validate(self, attrs):
        if ("u_t" in attrs) == ("u_int" in attrs):
            raise serializers.ValidationError(
                _("Give exactly one of 'u_t' and 'u_int'.")
            )
        return attrs


class TolerancesSerializer(serializers.Serializer):
    diag = serializers.FloatField(min_value=0.0, required=False)
    unital = serializers.FloatField(min_value=0.0, required=False)


class SystemSpecSerializer(serializers.Serializer):
    version = serializers.IntegerField(min_value=1)
    d_sys = serializers.IntegerField(min_value=1)
    d_res = serializers.IntegerField(min_value=1)
    hamiltonians = HamiltoniansSerializer(required=False)
    unitary = UnitarySerializer(required=False)
    pi0 = ComplexMatrixField()
    t = serializers.FloatField(default=1.0)
    basis = ComplexMatrixField(required=False)
    tolerances = TolerancesSerializer(required=False)
    states = serializers.ListField(child=ComplexMatrixField(), required=False)

    def validate_version(self, value):
        if value > settings.SPEC_VERSION:
            raise serializers.ValidationError(
                _("Unsupported version %(version)d, this release reads up to %(supported)d.")
                % {"version": value, "supported": settings.SPEC_VERSION}
            )
        return value

    def validate(self, attrs):
        if ("hamiltonians" in attrs) == ("unitary" in attrs):
            raise serializers.ValidationError(
                _("Give exactly one evolution: 'hamiltonians' or 'unitary'.")
            )
        d_sys, d_res = attrs["d_sys"], attrs["d_res"]
        composite = d_sys * d_res
        dims = {"h_sys": d_sys, "h_res": d_res, "h_int": composite}
        dims.update({"u_t": composite, "u_int": composite, "u_sys": d_sys, "u_res": d_res})
        for group in ("hamiltonians", "unitary"):
            for name, matrix in attrs.get(group, {}).items():
                check_dimension("%s.%s" % (group, name), matrix, dims[name])
        check_dimension("pi0", attrs["pi0"], d_res)
        check_dimension("basis", attrs.get("basis"), d_sys)
        for index, state in enumerate(attrs.get("states", [])):
            check_dimension("states.%d" % index, state, d_sys)
        return attrs

    def create(self, validated_data):
        d_sys, d_res = validated_data["d_sys"], validated_data["d_res"]
        basis = validated_data.get("basis")
        try:
            if "hamiltonians" in validated_data:
                system = HamiltonianSystem(
                    d_sys,
                    d_res,
                    t=validated_data["t"],
                    basis_psi=basis,
                    **validated_data["hamiltonians"]
                )
            else:
                system = UnitarySystem(
                    d_sys, d_res, basis_psi=basis, **validated_data["unitary"]
                )
            reservoir = ReservoirState.from_density(validated_data["pi0"])
            states = tuple(
                as_density(state, d_sys) for state in validated_data.get("states", [])
            )
        except HTheoremError as e:
            raise serializers.ValidationError({e.code: [str(e.detail)]})

        tolerances = validated_data.get("tolerances", {})
        return SystemDescription(
            system,
            reservoir,
            tol_diag=tolerances.get("diag"),
            tol_unital=tolerances.get("unital"),
            states=states,
        )
