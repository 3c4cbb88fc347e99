import os
from pathlib import Path

from dotenv import load_dotenv
from corsheaders.defaults import default_headers, default_methods

load_dotenv()

from forge.conf import settings_from_env  # noqa: E402  (reads the environment loaded above)

BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.getenv("DJANGO_SECRET_KEY", "django-insecure-change-this")
DEBUG = os.getenv("DJANGO_DEBUG", "true").lower() == "true"
ALLOWED_HOSTS = os.getenv("DJANGO_ALLOWED_HOSTS", "*").split(",")

INSTALLED_APPS = [
    "django.contrib.contenttypes",
    "django.contrib.staticfiles",
    # Third-party
    "corsheaders",
    "rest_framework",
    # Local
    "forge.apps.ForgeConfig",
]

MIDDLEWARE = [
    "corsheaders.middleware.CorsMiddleware",
    "django.middleware.security.SecurityMiddleware",
    "django.middleware.common.CommonMiddleware",
    "django.middleware.clickjacking.XFrameOptionsMiddleware",
]

ROOT_URLCONF = "cartanforge.urls"

TEMPLATES = [
    {
        "BACKEND": "django.template.backends.django.DjangoTemplates",
        "DIRS": [],
        "APP_DIRS": True,
        "OPTIONS": {
            "context_processors": [
                "django.template.context_processors.debug",
                "django.template.context_processors.request",
            ],
        },
    },
]

WSGI_APPLICATION = "cartanforge.wsgi.application"
ASGI_APPLICATION = "cartanforge.asgi.application"

# Nothing is persisted; the database only lets the test runner boot.
DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.sqlite3",
        "NAME": BASE_DIR / "db.sqlite3",
    }
}

LANGUAGE_CODE = "en-us"
TIME_ZONE = "UTC"
USE_I18N = True
USE_TZ = True

STATIC_URL = "/static/"
STATIC_ROOT = BASE_DIR / "staticfiles"

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

# Engine knobs: CARTANFORGE_THREADS, CARTANFORGE_DIM_CAP, CARTANFORGE_HEIGHT_CAP,
# CARTANFORGE_ORBIT_CAP, CARTANFORGE_VERIFY_ORBIT_SDIM, CARTANFORGE_CHECK_MAX_DIM,
# CARTANFORGE_STRUCTURE_PAIRS, CARTANFORGE_EXPECTATIONS
CARTANFORGE = settings_from_env()

REST_FRAMEWORK = {
    "DEFAULT_AUTHENTICATION_CLASSES": (),
    "DEFAULT_PERMISSION_CLASSES": (
        "rest_framework.permissions.AllowAny",
    ),
    "DEFAULT_RENDERER_CLASSES": (
        "rest_framework.renderers.JSONRenderer",
    ),
    "UNAUTHENTICATED_USER": None,
}

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {"format": "%(asctime)s %(levelname)s %(name)s %(message)s"},
    },
    "handlers": {
        "console": {"class": "logging.StreamHandler", "formatter": "verbose"},
    },
    "loggers": {
        "forge": {
            "handlers": ["console"],
            "level": os.getenv("CARTANFORGE_LOG_LEVEL", "INFO").upper(),
            "propagate": False,
        },
    },
}

# CORS (development allows all; production reads from env)
if DEBUG:
    CORS_ALLOW_ALL_ORIGINS = True
else:
    _cors_origins_env = os.getenv("DJANGO_CORS_ALLOWED_ORIGINS", "").strip()
    CORS_ALLOWED_ORIGINS = [o.strip() for o in _cors_origins_env.split(",") if o.strip()]

CORS_ALLOW_HEADERS = list(default_headers) + [
    "content-type",
]
CORS_ALLOW_METHODS = list(default_methods) + [
    "OPTIONS",
]
