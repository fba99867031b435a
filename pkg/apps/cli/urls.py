from django.urls import path

from .views import get_duals, get_gramian, get_masks, get_spike

urlpatterns = [
    path('masks/', get_masks, name='masks'),
    path('duals/', get_duals, name='duals'),
    path('gramian/', get_gramian, name='gramian'),
    path('spike/', get_spike, name='spike'),
]
