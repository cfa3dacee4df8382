"""Standalone entry point: ``python -m intent_pipeline <command> [options]``."""

import sys
from typing import List, Optional

from django.conf import settings


def configure_standalone() -> None:
    """Minimal in-memory Django settings when not running inside a project."""
    if not settings.configured:
        settings.configure(
            INSTALLED_APPS=["intent_pipeline"],
            INTENT_PIPELINE={},
            USE_TZ=True,
        )


def main(argv: Optional[List[str]] = None) -> None:
    import django
    from django.core.management import ManagementUtility

    configure_standalone()
    django.setup()
    ManagementUtility(["intent-pipeline", *(sys.argv[1:] if argv is None else argv)]).execute()


if __name__ == "__main__":
    main()
