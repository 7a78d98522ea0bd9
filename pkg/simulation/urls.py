from django.urls import path

from .views import ReplayView

urlpatterns = [
    path('replay/', ReplayView.as_view(), name='simulation_replay'),
]
