"""
SexticLab – Konfiguration
=========================
Liest Einstellungen aus der Umgebung (bzw. einer .env-Datei).
Alle Werte haben Defaults, damit Tests ohne .env laufen.
"""

import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

load_dotenv()

PROJECT_ROOT = Path(__file__).parent.parent


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    return int(raw)


def _optional_int_env(name: str) -> Optional[int]:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return None
    return int(raw)


LOG_LEVEL = os.getenv("SEXTIC_LOG_LEVEL", "INFO").upper()

# Erzwingt den Seed aller generischen Projektivitäten (nur zum Debuggen)
SEED_OVERRIDE: Optional[int] = _optional_int_env("SEXTIC_SEED_OVERRIDE")

MAX_RETRIES = _int_env("SEXTIC_MAX_RETRIES", 8)
DISPLAY_PRECISION = _int_env("SEXTIC_DISPLAY_PRECISION", 6)

FIXTURE_DIR = Path(os.getenv("SEXTIC_FIXTURE_DIR", str(PROJECT_ROOT / "eval")))
DB_PATH = Path(os.getenv("SEXTIC_DB_PATH", str(PROJECT_ROOT / "sextic_cache.db")))

# psd-Sandwich um s (psd knapp darüber, nicht psd knapp darunter)
VERIFY_THRESHOLD = _int_env("SEXTIC_VERIFY_THRESHOLD", 1) != 0

PSD_MAX_DOUBLINGS = _int_env("SEXTIC_PSD_MAX_DOUBLINGS", 40)
BISECTION_STEPS = _int_env("SEXTIC_BISECTION_STEPS", 4)
