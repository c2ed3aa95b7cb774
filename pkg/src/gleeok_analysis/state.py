"""128-bit state handling.

States are plain Python ints in 0 .. 2^128 - 1.  Bit x_j of the cipher's
state string (x0 leftmost) sits at integer bit position 127 - j, so x0 is
the most significant bit of the 32-hex-digit rendering.  This convention is
fixed package-wide; see CONVENTIONS.md.
"""

from __future__ import annotations

from enum import IntEnum

MASK128 = (1 << 128) - 1


class Branch(IntEnum):
    B1 = 1
    B2 = 2
    B3 = 3


PRF = "prf"


def to_hex(x: int) -> str:
    if not 0 <= x <= MASK128:
        raise ValueError("state out of range")
    return format(x, "032x")


def from_hex(s: str) -> int:
    s = s.strip().removeprefix("0x")
    x = int(s, 16)
    if x > MASK128:
        raise ValueError("more than 128 bits")
    return x


def get_bit(x: int, j: int) -> int:
    """Value of bit x_j (x0 = most significant)."""
    return (x >> (127 - j)) & 1


def set_bit(x: int, j: int, v: int) -> int:
    m = 1 << (127 - j)
    return (x | m) if v else (x & ~m)


def bit_positions(x: int) -> list[int]:
    """Indices j with x_j = 1, ascending."""
    return [j for j in range(128) if (x >> (127 - j)) & 1]


def from_bits(js) -> int:
    x = 0
    for j in js:
        x |= 1 << (127 - j)
    return x


def rotl128(x: int, s: int) -> int:
    s %= 128
    if s == 0:
        return x
    return ((x << s) | (x >> (128 - s))) & MASK128


def get_nibble(x: int, idx: int) -> int:
    """Nibble idx in 1..32; nibble 1 = bits x0..x3."""
    return (x >> (4 * (32 - idx))) & 0xF


def set_nibble(x: int, idx: int, v: int) -> int:
    sh = 4 * (32 - idx)
    return (x & ~(0xF << sh)) | ((v & 0xF) << sh)


def parity(x: int) -> int:
    return bin(x).count("1") & 1
