from django.urls import path

from .views import HeuristicView

urlpatterns = [
    path('run/', HeuristicView.as_view(), name='heuristic_run'),
]
