from django.apps import AppConfig


class SumsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'sums'
    verbose_name = 'Operator sums'
