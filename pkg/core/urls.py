from django.urls import path

from core.views import HealthCheckView, ValidateScheduleView

urlpatterns = [
    path('health/', HealthCheckView.as_view(), name='health_check'),
    path('validate/', ValidateScheduleView.as_view(), name='validate_schedule'),
]
