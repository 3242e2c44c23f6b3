from django.urls import path, include
from rest_framework.routers import DefaultRouter
from .views import ConstructView, EbertCheckView, VerificationRunViewSet

router = DefaultRouter()
router.register(r'runs', VerificationRunViewSet)

urlpatterns = [
    path('', include(router.urls)),
    path('checks/ebert/', EbertCheckView.as_view(), name='check-ebert'),
    path('checks/construct/', ConstructView.as_view(), name='check-construct'),
]
