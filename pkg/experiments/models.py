"""
Experiments App Models
"""
import uuid
from django.db import models


class ExperimentRun(models.Model):
    """One CLI invocation and the reports it wrote"""
    STATUS_SUCCESS = 0
    STATUS_ERROR = 1
    STATUS_FINDING = 2

    id = models.UUIDField(primary_key=True, default=uuid.uuid4, editable=False)
    command = models.CharField(max_length=20, choices=[
        ('resolvent', 'Resolvent'),
        ('vsum', 'Variational Sum'),
        ('evolve', 'Evolution'),
        ('diagnose', 'Diagnostic'),
        ('sweep', 'Sweep'),
    ])
    subkind = models.CharField(max_length=30, blank=True)
    seed = models.IntegerField(default=0)
    status = models.PositiveSmallIntegerField(choices=[
        (STATUS_SUCCESS, 'Success'),
        (STATUS_ERROR, 'Operational Error'),
        (STATUS_FINDING, 'Finding'),
    ], default=STATUS_SUCCESS)
    payload_digest = models.CharField(max_length=64, blank=True, help_text="SHA-256 of the deterministic payload")
    report_paths = models.JSONField(default=list, blank=True)
    config = models.JSONField(default=dict, blank=True)
    message = models.TextField(blank=True)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ['-created_at']
        indexes = [
            models.Index(fields=['command', 'status'], name='experiments_cmd_status_idx'),
            models.Index(fields=['payload_digest'], name='experiments_digest_idx'),
        ]

    @property
    def is_finding(self):
        return self.status == self.STATUS_FINDING

    def __str__(self):
        label = f"{self.command} {self.subkind}".strip()
        return f"{label} (status {self.status}) {self.payload_digest[:12]}"


class FindingRunManager(models.Manager):
    def get_queryset(self):
        return super().get_queryset().filter(status=ExperimentRun.STATUS_FINDING)


class FailedRunManager(models.Manager):
    def get_queryset(self):
        return super().get_queryset().filter(status=ExperimentRun.STATUS_ERROR)


class FindingRun(ExperimentRun):
    objects = FindingRunManager()

    class Meta:
        proxy = True
        verbose_name = "Finding Run"
        verbose_name_plural = "Finding Runs"


class FailedRun(ExperimentRun):
    objects = FailedRunManager()

    class Meta:
        proxy = True
        verbose_name = "Failed Run"
        verbose_name_plural = "Failed Runs"
