"""
SexticLab – Deterministische Zufallsquellen
===========================================
Alle generischen Projektivitäten und Stichproben werden aus einem
SHA-256-Digest der Eingabe geseedet. SEXTIC_SEED_OVERRIDE (bzw.
--seed-override) ersetzt den Digest-Seed.
"""

import hashlib
import json
import random
from typing import Any, Optional

from sextic import config


def canonical(obj: Any) -> Any:
    """JSON-fähige, reihenfolgetreue Darstellung von Formen, Punkten und Listen."""
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if hasattr(obj, "to_strings"):
        return obj.to_strings()
    if isinstance(obj, (list, tuple)):
        return [canonical(o) for o in obj]
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in sorted(obj.items(), key=lambda kv: str(kv[0]))}
    return str(obj)


def input_digest(*parts: Any) -> str:
    payload = json.dumps(canonical(list(parts)), sort_keys=True, ensure_ascii=True)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def seed_for(*parts: Any, override: Optional[int] = None) -> int:
    if override is not None:
        return override
    if config.SEED_OVERRIDE is not None:
        return config.SEED_OVERRIDE
    return int(input_digest(*parts)[:16], 16)


def make_rng(label: str, *parts: Any, seed: Optional[int] = None) -> random.Random:
    """Zufallsquelle für eine Stufe; label trennt die Stufen einer Rechnung."""
    base = seed if seed is not None else seed_for(*parts)
    return random.Random(f"{base}:{label}")
