# pylint: disable=W0223
from rest_framework import serializers

from .fields import ComplexMatrixField


class TheoremReportSerializer(serializers.Serializer):
    diag_invariant = serializers.BooleanField()
    diag_residual = serializers.FloatField(min_value=0.0)
    unital = serializers.BooleanField()
    unitality_defect = serializers.FloatField(min_value=0.0)
    agreement_residual = serializers.FloatField(min_value=0.0, allow_null=True)
    factorization_ok = serializers.BooleanField()
    worst_off_block_norm = serializers.FloatField(min_value=0.0)
    worst_norm_defect = serializers.FloatField(min_value=0.0)
    dephasing_residual = serializers.FloatField(min_value=0.0, allow_null=True)
    reconstruction_defect = serializers.FloatField(min_value=0.0, allow_null=True)
    spectral_residual = serializers.FloatField(min_value=0.0, allow_null=True)
    implication_consistent = serializers.BooleanField()


class UnitalitySerializer(serializers.Serializer):
    phi_of_one = ComplexMatrixField()
    defect_fro = serializers.FloatField(min_value=0.0)
    basis = ComplexMatrixField(allow_null=True)
    commutator_matrix = ComplexMatrixField(allow_null=True)
    agreement_residual = serializers.FloatField(min_value=0.0, allow_null=True)


class EntropyDiagnosticSerializer(serializers.Serializer):
    label = serializers.CharField()
    gain = serializers.FloatField()
    holevo_bound = serializers.FloatField()
    gap = serializers.FloatField()


class TimingSerializer(serializers.Serializer):
    elapsed_seconds = serializers.FloatField(min_value=0.0)


class AnalysisReportSerializer(serializers.Serializer):
    version = serializers.IntegerField(min_value=1)
    kind = serializers.CharField()
    scenario = serializers.CharField(required=False)
    input_digest = serializers.CharField()
    theorem = TheoremReportSerializer()
    unitality = UnitalitySerializer()
    entropy = EntropyDiagnosticSerializer(many=True)
    trajectory = serializers.ListField(child=serializers.FloatField(), required=False)
    timing = TimingSerializer(required=False)


class SweepConfigSerializer(serializers.Serializer):
    family = serializers.CharField()
    trials = serializers.IntegerField(min_value=1)
    dsys = serializers.ListField(child=serializers.IntegerField(min_value=1))
    dres = serializers.ListField(child=serializers.IntegerField(min_value=1))
    seed = serializers.IntegerField()
    tol_diag = serializers.FloatField(min_value=0.0)
    tol_unital = serializers.FloatField(min_value=0.0)


class TrialSerializer(TheoremReportSerializer):
    index = serializers.IntegerField(min_value=0)
    d_sys = serializers.IntegerField(min_value=1)
    d_res = serializers.IntegerField(min_value=1)


class SweepSummarySerializer(serializers.Serializer):
    trials = serializers.IntegerField(min_value=1)
    diag_invariant = serializers.IntegerField(min_value=0)
    unital = serializers.IntegerField(min_value=0)
    violations = serializers.IntegerField(min_value=0)
    max_diag_residual = serializers.FloatField(min_value=0.0)
    max_agreement_residual = serializers.FloatField(min_value=0.0, allow_null=True)
    max_unitality_defect_invariant = serializers.FloatField(min_value=0.0, allow_null=True)
    max_off_block_norm_invariant = serializers.FloatField(min_value=0.0, allow_null=True)
    max_norm_defect_invariant = serializers.FloatField(min_value=0.0, allow_null=True)
    max_dephasing_residual = serializers.FloatField(min_value=0.0, allow_null=True)
    max_reconstruction_defect = serializers.FloatField(min_value=0.0, allow_null=True)


class SweepReportSerializer(serializers.Serializer):
    version = serializers.IntegerField(min_value=1)
    kind = serializers.CharField()
    config = SweepConfigSerializer()
    summary = SweepSummarySerializer()
    trials = TrialSerializer(many=True)
    timing = TimingSerializer(required=False)
