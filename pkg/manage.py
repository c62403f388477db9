#!/usr/bin/env python
"""
Command-line entry point of varsum.

    python manage.py resolvent --config spec.json
    python manage.py vsum --config pair.json --format csv
    python manage.py evolve --config problem.json --set steps=400
    python manage.py diagnose acute-angle --config pair.json --seed 3
    python manage.py sweep --config sweep.json --workers 4

Exit status: 0 success, 2 finding, 1 operational error.
"""
import os
import sys


def main():
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'config.settings')
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django; install varsum with its dependencies "
            "(pip install -e .) in the active environment."
        ) from exc
    execute_from_command_line(sys.argv)


if __name__ == '__main__':
    main()
