import os
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent / "Alexander"))
os.environ.setdefault("DJANGO_SETTINGS_MODULE", "Alexander.settings")

import django  # noqa: E402

django.setup()
