from django.contrib import admin
from .models import ExperimentRun, FindingRun, FailedRun


@admin.register(ExperimentRun)
class ExperimentRunAdmin(admin.ModelAdmin):
    list_display = ['command', 'subkind', 'status', 'seed', 'short_digest', 'created_at']
    list_filter = ['command', 'status', 'created_at']
    search_fields = ['command', 'subkind', 'payload_digest', 'message']
    readonly_fields = ['id', 'payload_digest', 'report_paths', 'config', 'created_at']

    fieldsets = (
        ('Run', {
            'fields': ('id', 'command', 'subkind', 'seed', 'status', 'message')
        }),
        ('Reports', {
            'fields': ('payload_digest', 'report_paths'),
        }),
        ('Configuration', {
            'fields': ('config',),
            'classes': ('collapse',)
        }),
        ('Timestamps', {
            'fields': ('created_at',),
        }),
    )

    def short_digest(self, obj):
        return obj.payload_digest[:12]
    short_digest.short_description = 'Digest'


@admin.register(FindingRun)
class FindingRunAdmin(ExperimentRunAdmin):
    list_filter = ['command', 'created_at']


@admin.register(FailedRun)
class FailedRunAdmin(ExperimentRunAdmin):
    list_filter = ['command', 'created_at']
