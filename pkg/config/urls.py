"""
URL Configuration for the varsum project: the admin browses the run ledger.
"""
from django.contrib import admin
from django.urls import path

urlpatterns = [
    path('admin/', admin.site.urls),
]

# Admin site customization
admin.site.site_header = "Varsum Experiments"
admin.site.site_title = "Varsum Admin"
admin.site.index_title = "Experiment run ledger"
