from pathlib import Path

import dlconn

BASE_DIR = Path(dlconn.__file__).resolve().parent

SUITE_SPECIFICATION_DIR = BASE_DIR / 'suite_specifications'
DEFAULT_SUITE = SUITE_SPECIFICATION_DIR / 'acceptance.yaml'
