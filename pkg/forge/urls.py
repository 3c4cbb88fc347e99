from django.urls import path

from .views import BuildView, DynkinView, ExpectationsView, OrbitView

urlpatterns = [
    path("build/", BuildView.as_view(), name="build"),
    path("orbit/", OrbitView.as_view(), name="orbit"),
    path("dynkin/", DynkinView.as_view(), name="dynkin"),
    path("expectations/", ExpectationsView.as_view(), name="expectations"),
]
