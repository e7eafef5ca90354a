from __future__ import annotations

import hashlib
import json
import math
from decimal import ROUND_HALF_UP, Decimal


def round_half_away(x: float) -> int:
    """Round to the nearest integer, halves away from zero (not banker's rounding)."""
    return int(math.copysign(math.floor(abs(x) + 0.5), x))


def fixed(x: float, places: int) -> str:
    """Decimal string of ``x`` with ``places`` digits, halves away from zero.

    Rounds the shortest repr of ``x`` (what a reader sees), so 0.0125 -> "0.013"
    regardless of its binary expansion.
    """
    q = Decimal(1).scaleb(-places)
    s = format(Decimal(repr(float(x))).quantize(q, rounding=ROUND_HALF_UP), "f")
    if s.startswith("-") and Decimal(s) == 0:
        s = s[1:]
    return s


def derive_seed(root: int, *names: object) -> int:
    """Independent 64-bit sub-seed for a named stream under ``root``.

    Adding a new stream name never changes the values of existing streams.
    """
    key = json.dumps([int(root), *[str(n) for n in names]], separators=(",", ":"))
    return int.from_bytes(hashlib.sha256(key.encode()).digest()[:8], "big")


def config_hash(obj: object) -> str:
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]
