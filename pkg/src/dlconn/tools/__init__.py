from .app_logging import configure_logging_to_terminal
from .make_reports import (build_counts, build_criterion, build_steinberg, build_suite, build_verification,
                           verification_entries)
