import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "cartanforge.settings")
django.setup()
