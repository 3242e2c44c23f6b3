"""
Django settings for unital_lab project.

Values come from the environment (a local .env file is loaded first).
"""

from pathlib import Path
import os

import dj_database_url
from dotenv import load_dotenv
load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get('SECRET_KEY', 'unital-lab-insecure-development-key')

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = os.environ.get('DEBUG', 'False').lower() in ('1', 'true', 'yes')

ALLOWED_HOSTS = ['*']


# Application definition

INSTALLED_APPS = [
    'django.contrib.admin',
    'django.contrib.auth',
    'django.contrib.contenttypes',
    'django.contrib.sessions',
    'django.contrib.messages',
    'django.contrib.staticfiles',
    'rest_framework',
    'geometry',
    'reports',
]

DATABASES = {
    'default': dj_database_url.config(
        default=f'sqlite:///{BASE_DIR / "db.sqlite3"}',
        conn_max_age=600,
    )
}

MIDDLEWARE = [
    'django.middleware.security.SecurityMiddleware',
    'django.contrib.sessions.middleware.SessionMiddleware',
    'django.middleware.common.CommonMiddleware',
    'django.middleware.csrf.CsrfViewMiddleware',
    'django.contrib.auth.middleware.AuthenticationMiddleware',
    'django.contrib.messages.middleware.MessageMiddleware',
    'django.middleware.clickjacking.XFrameOptionsMiddleware',
]

ROOT_URLCONF = 'unital_lab.urls'

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [
                'django.template.context_processors.request',
                'django.contrib.auth.context_processors.auth',
                'django.contrib.messages.context_processors.messages',
            ],
        },
    },
]

WSGI_APPLICATION = 'unital_lab.wsgi.application'


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = True

USE_TZ = True


DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

STATIC_URL = '/static/'

STATIC_ROOT = os.path.join(BASE_DIR, 'static')


REST_FRAMEWORK = {
    'DEFAULT_PERMISSION_CLASSES': (
        'rest_framework.permissions.AllowAny',
    ),
    'DEFAULT_AUTHENTICATION_CLASSES': (),
}


# Computation bounds

UNITAL_MAX_FIELD = int(os.environ.get('UNITAL_MAX_FIELD', 2 ** 20))
UNITAL_TABLE_LIMIT = int(os.environ.get('UNITAL_TABLE_LIMIT', 2 ** 16))
UNITAL_ENUMERATE_MAX_Q = int(os.environ.get('UNITAL_ENUMERATE_MAX_Q', 5))
UNITAL_CROSSCHECK_MAX_Q = int(os.environ.get('UNITAL_CROSSCHECK_MAX_Q', 4))
UNITAL_GROUP_MAX_Q = int(os.environ.get('UNITAL_GROUP_MAX_Q', 5))
UNITAL_LINALG_MAX_COLUMNS = int(os.environ.get('UNITAL_LINALG_MAX_COLUMNS', 2000))
UNITAL_JOBS = int(os.environ.get('UNITAL_JOBS', 1))
UNITAL_LOG_LEVEL = os.environ.get('UNITAL_LOG_LEVEL', 'INFO')


LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'timestamped': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'timestamped',
        },
    },
    'loggers': {
        'geometry': {
            'handlers': ['console'],
            'level': UNITAL_LOG_LEVEL,
        },
        'reports': {
            'handlers': ['console'],
            'level': UNITAL_LOG_LEVEL,
        },
    }
}
