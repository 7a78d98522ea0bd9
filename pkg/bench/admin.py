from django.contrib import admin
from django.utils.translation import gettext_lazy as _
from unfold.admin import ModelAdmin

from .models import BenchRun


@admin.register(BenchRun)
class BenchRunAdmin(ModelAdmin):
    list_display = ['id', 'status', 'seed', 'verify', 'created_at', 'finished_at']
    list_filter = ['status', 'verify', 'created_at']
    search_fields = ['seed', 'error']
    readonly_fields = ['created_at', 'finished_at', 'report']
    date_hierarchy = 'created_at'

    fieldsets = (
        (_('Run'), {
            'fields': ('config', 'strategies', 'seed', 'verify')
        }),
        (_('Outcome'), {
            'fields': ('status', 'error', 'report')
        }),
        (_('Timestamps'), {
            'fields': ('created_at', 'finished_at'),
            'classes': ('collapse',)
        }),
    )
