import logging
import random
import string

from django.db import models

logger = logging.getLogger(__name__)


def generate_custom_uuid(length=12):
    """Generate a custom alphanumeric ID of specified length."""
    characters = string.ascii_uppercase + string.digits
    return ''.join(random.choices(characters, k=length))


class BaseModel(models.Model):
    """Abstract base model with soft-delete flags and timestamps."""
    is_active = models.BooleanField(default=True)
    is_deleted = models.BooleanField(default=False)
    created_at = models.DateTimeField(auto_now_add=True)
    updated_at = models.DateTimeField(auto_now=True)

    class Meta:
        abstract = True


class VerificationRun(BaseModel):
    """One stored verification: the command, its input and the report it produced."""
    VERDICT_CHOICES = (
        ('pass', 'Pass'),
        ('fail', 'Fail'),
    )

    id = models.CharField(
        primary_key=True,
        default=generate_custom_uuid,
        editable=False,
        max_length=12,
        unique=True
    )
    command = models.CharField(max_length=50)
    field = models.JSONField(default=dict)
    parameters = models.JSONField(default=dict, blank=True)
    verdict = models.CharField(max_length=4, choices=VERDICT_CHOICES)
    profile = models.JSONField(default=dict, blank=True)
    witnesses = models.JSONField(default=list, blank=True)
    metadata = models.JSONField(default=dict, blank=True)
    elapsed = models.FloatField(default=0.0)

    class Meta:
        ordering = ['-created_at']

    def __str__(self):
        return f'{self.command} {self.verdict} ({self.id})'


def record_run(command, report, field=None, parameters=None):
    """Persist a VerificationReport as a VerificationRun."""
    from .serializers import VerificationReportSerializer

    data = VerificationReportSerializer(report).data
    run = VerificationRun.objects.create(
        command=command,
        field=field.to_json() if hasattr(field, 'to_json') else (field or {}),
        parameters=parameters or {},
        verdict=data['verdict'],
        profile=data['profile'],
        witnesses=data['witnesses'],
        metadata=data['metadata'],
        elapsed=report.elapsed,
    )
    logger.info('stored %s run %s (%s)', command, run.id, run.verdict)
    return run
