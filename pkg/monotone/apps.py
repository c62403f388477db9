from django.apps import AppConfig


class MonotoneConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'monotone'
    verbose_name = 'Monotone operators'
