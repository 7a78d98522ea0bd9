from django.urls import path, include
from rest_framework.routers import DefaultRouter

from .views import BenchRunViewSet, GanttView

router = DefaultRouter()
router.register(r'runs', BenchRunViewSet, basename='bench-run')

urlpatterns = [
    path('gantt/', GanttView.as_view(), name='gantt'),
    path('', include(router.urls)),
]
