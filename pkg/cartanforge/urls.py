from django.urls import include, path

from forge.views import HealthView

urlpatterns = [
    path("health/", HealthView.as_view(), name="health"),
    path("api/", include("forge.urls")),
]
