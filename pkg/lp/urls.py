from django.urls import path

from .views import ExportView, SolveView

urlpatterns = [
    path('solve/', SolveView.as_view(), name='lp_solve'),
    path('export/', ExportView.as_view(), name='lp_export'),
]
