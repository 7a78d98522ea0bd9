from django.db import models


class BenchRun(models.Model):
    class Status(models.TextChoices):
        PENDING = 'pending', 'Pending'
        RUNNING = 'running', 'Running'
        DONE = 'done', 'Done'
        FAILED = 'failed', 'Failed'

    config = models.JSONField(help_text="generator settings (GenConfig)")
    strategies = models.JSONField(help_text="strategy names, e.g. [\"simple\", \"lp:2\"]")
    seed = models.BigIntegerField(db_index=True)
    verify = models.BooleanField(default=False)
    status = models.CharField(max_length=10, choices=Status.choices, default=Status.PENDING, db_index=True)
    report = models.JSONField(blank=True, null=True, help_text="bench report (format_version 1)")
    error = models.TextField(blank=True, default='')
    created_at = models.DateTimeField(auto_now_add=True, db_index=True)
    finished_at = models.DateTimeField(blank=True, null=True)

    class Meta:
        ordering = ['-created_at']
        indexes = [
            models.Index(fields=['status', 'created_at'], name='bench_status_created_idx'),
        ]

    def __str__(self):
        return f"BenchRun {self.pk} ({self.status}, seed {self.seed})"

    @property
    def n_instances(self):
        if not self.report:
            return None
        return len(self.report.get('instances', []))
