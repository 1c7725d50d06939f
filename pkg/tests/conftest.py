"""
Shared pytest setup.

analytic_widths.config reads the WIDTHS_* settings once, at import time, so
the project .env is loaded here before any test module imports the library.
The project root is put on sys.path so that `commands` imports without an
installed package.
"""

import sys
from pathlib import Path

from dotenv import load_dotenv
from loguru import logger

ROOT = Path(__file__).resolve().parent.parent

if load_dotenv(ROOT / ".env"):
    logger.debug(f"WIDTHS_* settings for the tests read from {ROOT / '.env'}")

sys.path.insert(0, str(ROOT))
