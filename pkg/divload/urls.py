"""
URL configuration for divload.

Each app mounts its API under its own prefix; the OpenAPI schema and the
Swagger UI come from drf-spectacular.
"""
from django.contrib import admin
from django.urls import path, include
from drf_spectacular.views import SpectacularAPIView, SpectacularSwaggerView


urlpatterns = [
    path('admin/', admin.site.urls),

    path('core/', include('core.urls')),
    path('lp/', include('lp.urls')),
    path('heuristics/', include('heuristics.urls')),
    path('simulation/', include('simulation.urls')),
    path('bench/', include('bench.urls')),

    path('schema/', SpectacularAPIView.as_view(), name='schema'),
    path('', SpectacularSwaggerView.as_view(url_name='schema'), name='swagger-ui'),
]
