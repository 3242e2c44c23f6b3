from rest_framework import serializers

from geometry.exceptions import GeometryError
from geometry.gf import build_field, format_polynomial
from geometry.unitals import UnitalKind
from .models import VerificationRun


def jsonable(value):
    """Plain JSON data with string keys, tuples as lists."""
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, 'to_json'):
        return jsonable(value.to_json())
    if hasattr(value, 'item'):
        return value.item()
    return value


class BaseModelSerializer(serializers.ModelSerializer):
    """Base serializer with common fields for all models"""
    created_at = serializers.DateTimeField(read_only=True, format="%B %d, %Y, %I:%M %p")
    updated_at = serializers.DateTimeField(read_only=True, format="%B %d, %Y, %I:%M %p")


class FieldSpecSerializer(serializers.Serializer):
    p = serializers.IntegerField()
    e = serializers.IntegerField()
    q = serializers.IntegerField()
    order = serializers.IntegerField()
    modulus = serializers.ListField(child=serializers.IntegerField())
    tables = serializers.BooleanField(source='has_tables')

    def to_representation(self, instance):
        data = super().to_representation(instance)
        if self.context.get('pretty'):
            data['modulus_pretty'] = format_polynomial(instance.modulus)
        return data

class PointSetSerializer(serializers.Serializer):
    """A point set as its field, size and normalized coordinates in key order."""

    def to_representation(self, instance):
        F = instance.field
        coords = instance.coords()
        if self.context.get('pretty'):
            points = [[F.format(c) for c in P] for P in coords]
        else:
            points = [list(P) for P in coords]
        return {
            'field': F.to_json(),
            'dimension': instance.dimension,
            'size': len(instance),
            'points': points,
        }


class VerificationReportSerializer(serializers.Serializer):
    name = serializers.CharField()
    verdict = serializers.CharField()
    checks = serializers.DictField(child=serializers.BooleanField())

    def to_representation(self, instance):
        data = super().to_representation(instance)
        data['checks'] = dict(sorted(data['checks'].items()))
        data['profile'] = {str(size): count for size, count in sorted(instance.profile.items())}
        data['kind_profile'] = [
            {'kind': kind, 'size': size, 'count': count}
            for (kind, size), count in sorted(instance.kind_profile.items())
        ]
        data['witnesses'] = jsonable(instance.witnesses)
        data['metadata'] = jsonable(instance.metadata)
        if self.context.get('timing'):
            data['elapsed'] = round(instance.elapsed, 6)
        return data


class VerificationRunSerializer(BaseModelSerializer):
    class Meta:
        model = VerificationRun
        fields = '__all__'


class RunStatsSerializer(serializers.Serializer):
    command = serializers.CharField()
    passed = serializers.IntegerField()
    failed = serializers.IntegerField()


class FieldInputSerializer(serializers.Serializer):
    """p and e of GF(p^{2e}) with an optional modulus override."""
    p = serializers.IntegerField(min_value=2)
    e = serializers.IntegerField(min_value=1)
    modulus = serializers.ListField(child=serializers.IntegerField(min_value=0), required=False)

    def validate(self, attrs):
        try:
            attrs['field'] = build_field(attrs['p'], attrs['e'], attrs.get('modulus'))
        except GeometryError as exc:
            raise serializers.ValidationError({'detail': str(exc)})
        F = attrs['field']
        for name in ('a', 'b'):
            if name in attrs and not 0 <= attrs[name] < F.qsq:
                raise serializers.ValidationError({name: f'must be an element of GF({F.qsq})'})
        return attrs


class EbertInputSerializer(FieldInputSerializer):
    a = serializers.IntegerField(min_value=0)
    b = serializers.IntegerField(min_value=0)


class ConstructInputSerializer(FieldInputSerializer):
    kind = serializers.ChoiceField(choices=[k.value for k in UnitalKind])
    a = serializers.IntegerField(min_value=0, required=False, default=0)
    b = serializers.IntegerField(min_value=0, required=False, default=0)
