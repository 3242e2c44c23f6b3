from django.contrib import admin
from .models import VerificationRun


@admin.register(VerificationRun)
class VerificationRunAdmin(admin.ModelAdmin):
    list_display = ('id', 'command', 'verdict', 'elapsed', 'created_at', 'is_active')
    list_filter = ('command', 'verdict', 'is_active')
    readonly_fields = ('created_at', 'updated_at')
