"""
Django settings for the varsum project.
"""

import os
from pathlib import Path
import environ

# Initialize environment variables
env = environ.Env(
    DEBUG=(bool, True),
    ALLOWED_HOSTS=(list, []),
    VARSUM_WORKERS=(int, 1),
    VARSUM_LOG_LEVEL=(str, 'INFO'),
    VARSUM_DEFAULT_TOL=(float, 1e-4),
    VARSUM_PATH_DEPTH=(int, 20),
    VARSUM_RECORD_RUNS=(bool, True),
)

# Build paths inside the project
BASE_DIR = Path(__file__).resolve().parent.parent

# Read .env file
environ.Env.read_env(os.path.join(BASE_DIR, '.env'))

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = env('SECRET_KEY', default='django-insecure-CHANGE-THIS-IN-PRODUCTION-' + 'x' * 50)

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = env('DEBUG')

ALLOWED_HOSTS = env('ALLOWED_HOSTS')


# Application definition
INSTALLED_APPS = [
    'django.contrib.admin',
    'django.contrib.auth',
    'django.contrib.contenttypes',
    'django.contrib.sessions',
    'django.contrib.messages',
    'django.contrib.staticfiles',

    # Local apps (modular)
    'core.apps.CoreConfig',
    'linalg.apps.LinalgConfig',
    'monotone.apps.MonotoneConfig',
    'sums.apps.SumsConfig',
    'evolution.apps.EvolutionConfig',
    'catalog.apps.CatalogConfig',
    'experiments.apps.ExperimentsConfig',
]

MIDDLEWARE = [
    'django.middleware.security.SecurityMiddleware',
    'django.contrib.sessions.middleware.SessionMiddleware',
    'django.middleware.common.CommonMiddleware',
    'django.middleware.csrf.CsrfViewMiddleware',
    'django.contrib.auth.middleware.AuthenticationMiddleware',
    'django.contrib.messages.middleware.MessageMiddleware',
    'django.middleware.clickjacking.XFrameOptionsMiddleware',
]

ROOT_URLCONF = 'config.urls'

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [
                'django.template.context_processors.debug',
                'django.template.context_processors.request',
                'django.contrib.auth.context_processors.auth',
                'django.contrib.messages.context_processors.messages',
            ],
        },
    },
]

WSGI_APPLICATION = 'config.wsgi.application'


# Database (the experiment run ledger)
DATABASES = {
    'default': env.db('DATABASE_URL', default='sqlite:///db.sqlite3')
}


# Internationalization
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = True
USE_TZ = True


# Static files (admin only)
STATIC_URL = '/static/'
STATIC_ROOT = BASE_DIR / 'staticfiles'


# Default primary key field type
DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Experiments
# Library apps keep their numeric defaults as module constants; only the
# experiments app reads this dict.
VARSUM = {
    'OUTPUT_DIR': env('VARSUM_OUTPUT_DIR', default=str(BASE_DIR / 'reports')),
    'WORKERS': env('VARSUM_WORKERS'),
    'LOG_LEVEL': env('VARSUM_LOG_LEVEL'),
    'DEFAULT_TOL': env('VARSUM_DEFAULT_TOL'),
    'PATH_DEPTH': env('VARSUM_PATH_DEPTH'),
    'RECORD_RUNS': env('VARSUM_RECORD_RUNS'),
}


# Logging
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'varsum': {
            'format': '%(asctime)s %(levelname)s %(name)s %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'varsum',
        },
    },
    'loggers': {
        app: {
            'handlers': ['console'],
            'level': VARSUM['LOG_LEVEL'],
            'propagate': False,
        }
        for app in ('core', 'linalg', 'monotone', 'sums', 'evolution', 'catalog', 'experiments')
    },
}


# Security Settings (Production)
if not DEBUG:
    SESSION_COOKIE_SECURE = True
    CSRF_COOKIE_SECURE = True
    SECURE_CONTENT_TYPE_NOSNIFF = True
    X_FRAME_OPTIONS = 'DENY'
