"""Embedded binary expansion of pi - 3 for round-constant windows."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

EMBEDDED_BITS = 8192


@lru_cache(maxsize=1)
def _fraction_int() -> int:
    text = resources.files("gleeok_analysis.assets").joinpath("pi_fraction.hex").read_text()
    hexstr = "".join(line.strip() for line in text.splitlines() if line.strip() and not line.startswith("#"))
    if len(hexstr) * 4 != EMBEDDED_BITS:
        raise RuntimeError("embedded expansion has unexpected length")
    return int(hexstr, 16)


def window128(offset: int) -> int:
    """128 fractional bits of pi - 3 starting at bit `offset` (0-based)."""
    if offset < 0:
        raise ValueError("offset must be nonnegative")
    if offset + 128 > EMBEDDED_BITS:
        raise ValueError(
            f"window at offset {offset} needs {offset + 128} bits; the embedded "
            f"expansion holds {EMBEDDED_BITS} (raise EMBEDDED_BITS and regenerate the asset)"
        )
    frac = _fraction_int()
    return (frac >> (EMBEDDED_BITS - offset - 128)) & ((1 << 128) - 1)
