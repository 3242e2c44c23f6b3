import logging

from django.db.models import Count, Q
from rest_framework import status, viewsets
from rest_framework.decorators import action
from rest_framework.pagination import PageNumberPagination
from rest_framework.permissions import AllowAny
from rest_framework.response import Response
from rest_framework.views import APIView

from geometry.exceptions import GeometryError
from geometry.unitals import UnitalSpec, classify, construct, ebert_check, ebert_value
from .models import VerificationRun
from .serializers import (ConstructInputSerializer, EbertInputSerializer, PointSetSerializer,
                          RunStatsSerializer, VerificationRunSerializer)

logger = logging.getLogger(__name__)


class StandardResultsSetPagination(PageNumberPagination):
    page_size = 10
    page_size_query_param = 'page_size'
    max_page_size = 100


class SoftDeleteModelViewSet(viewsets.ModelViewSet):

    def destroy(self, request, *args, **kwargs):
        instance = self.get_object()
        instance.is_active = False
        instance.is_deleted = True
        instance.save()
        return Response(status=status.HTTP_204_NO_CONTENT)


class VerificationRunViewSet(SoftDeleteModelViewSet):
    queryset = VerificationRun.objects.filter(is_active=True, is_deleted=False)
    serializer_class = VerificationRunSerializer
    pagination_class = StandardResultsSetPagination
    permission_classes = [AllowAny]
    http_method_names = ['get', 'delete', 'head', 'options']

    def get_queryset(self):
        queryset = super().get_queryset()
        command = self.request.query_params.get('command')
        verdict = self.request.query_params.get('verdict')
        if command:
            queryset = queryset.filter(command=command)
        if verdict:
            queryset = queryset.filter(verdict=verdict)
        return queryset

    @action(detail=False, methods=['get'])
    def stats(self, request):
        rows = (
            self.get_queryset()
            .values('command')
            .annotate(passed=Count('id', filter=Q(verdict='pass')), failed=Count('id', filter=Q(verdict='fail')))
            .order_by('command')
        )
        serializer = RunStatsSerializer(rows, many=True)
        return Response(serializer.data)


class EbertCheckView(APIView):
    """Decide Ebert's condition for one pair (a, b)."""
    permission_classes = [AllowAny]

    def post(self, request):
        serializer = EbertInputSerializer(data=request.data)
        if not serializer.is_valid():
            return Response(serializer.errors, status=status.HTTP_400_BAD_REQUEST)
        F, a, b = (serializer.validated_data[k] for k in ('field', 'a', 'b'))
        try:
            result = {
                'ebert': ebert_check(F, a, b),
                'class': classify(F, a, b).value,
                'value': ebert_value(F, a, b),
            }
        except GeometryError as exc:
            return Response({'detail': str(exc)}, status=status.HTTP_400_BAD_REQUEST)
        return Response(result, status=status.HTTP_200_OK)


class ConstructView(APIView):
    """Build a unital and return its point set."""
    permission_classes = [AllowAny]

    def post(self, request):
        serializer = ConstructInputSerializer(data=request.data)
        if not serializer.is_valid():
            return Response(serializer.errors, status=status.HTTP_400_BAD_REQUEST)
        data = serializer.validated_data
        try:
            spec = UnitalSpec(data['kind'], data['field'], a=data['a'], b=data['b'])
            points = construct(spec)
        except GeometryError as exc:
            logger.warning('construct rejected: %s', exc)
            return Response({'detail': str(exc)}, status=status.HTTP_400_BAD_REQUEST)
        return Response(PointSetSerializer(points).data, status=status.HTTP_200_OK)
