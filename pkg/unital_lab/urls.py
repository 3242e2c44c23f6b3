"""
URL configuration for unital_lab project.

Stored verification runs and the quick checks live under /unital_lab/.
"""
from django.contrib import admin
from django.urls import path, include

urlpatterns = [
    path('admin/', admin.site.urls),
    path('unital_lab/', include('reports.urls')),
]
