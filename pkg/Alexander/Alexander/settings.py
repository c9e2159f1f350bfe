"""
Django settings for Alexander project.

Proyecto sin vistas ni base de datos propia: la app Graphs expone sus
cálculos como comandos de manage.py.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/6.0/ref/settings/
"""

import os

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get('ALEXANDER_SECRET_KEY', 'django-insecure-alexander-local-only')

DEBUG = False

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'rest_framework',
    'Graphs',
]

MIDDLEWARE = []


# Database
# Graphs no define modelos y los tests son SimpleTestCase.

DATABASES = {}

# Solo se usan los serializers de DRF: sin usuarios ni autenticación.
REST_FRAMEWORK = {
    "UNAUTHENTICATED_USER": None,
    "DEFAULT_AUTHENTICATION_CLASSES": [],
    "DEFAULT_PERMISSION_CLASSES": [],
}


# Internationalization

LANGUAGE_CODE = 'es'

TIME_ZONE = 'UTC'

USE_I18N = True

USE_TZ = True


# -----------------------------
#  Grafos espaciales
# -----------------------------
# Los flags de los comandos (--cap, --threads, ...) pisan estos valores.
SPATIAL_GRAPHS = {
    "ENUMERATION_CAP": 10 ** 6,
    "MINOR_CAP": 2_000_000,
    "THREADS": 1,
    "ALLOW_EVEN_PRIME": False,
    "DROP_REDUNDANT_ROW": False,
    "UNIT_REDUCTION": True,
}


# -----------------------------
#  Logging (siempre a stderr)
# -----------------------------
LOG_LEVEL = os.environ.get('ALEXANDER_LOG_LEVEL', 'INFO').upper()

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "simple": {"format": "{levelname} {name} {message}", "style": "{"},
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "simple",
        },
    },
    "loggers": {
        "Graphs": {"handlers": ["console"], "level": LOG_LEVEL, "propagate": False},
    },
}
