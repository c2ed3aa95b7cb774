"""Per-branch linear-layer and key-schedule parameters."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .state import Branch


@dataclass(frozen=True)
class ThetaParams:
    t0: int
    t1: int
    t2: int

    def __post_init__(self):
        ts = (self.t0, self.t1, self.t2)
        if len(set(ts)) != 3 or not all(0 <= t <= 127 for t in ts):
            raise ValueError("offsets must be three distinct values in 0..127")
        if not (self.t0 < self.t1 < self.t2):
            raise ValueError("offsets must be canonicalized ascending")

    @property
    def taps(self) -> tuple[int, int, int]:
        return (self.t0, self.t1, self.t2)


@dataclass(frozen=True)
class PiParam:
    p: int

    def __post_init__(self):
        if not (1 <= self.p <= 127) or gcd(self.p, 128) != 1:
            raise ValueError("multiplier must be odd and in 1..127")

    @property
    def inv(self) -> int:
        return pow(self.p, -1, 128)


THETA = {
    Branch.B1: ThetaParams(12, 31, 86),
    Branch.B2: ThetaParams(4, 23, 78),
    Branch.B3: ThetaParams(7, 15, 23),
}

PI = {
    Branch.B1: PiParam(117),
    Branch.B2: PiParam(117),
    Branch.B3: PiParam(11),
}

# key-schedule index multipliers
PK = {Branch.B1: 29, Branch.B2: 51, Branch.B3: 107}

# 3/5-bit alternating layer for branches 1-2, uniform 4-bit layer for branch 3:
# per byte, s3 covers the top 3 bits and s5 the low 5; per nibble, s4.
SBOX_LAYOUT = {
    Branch.B1: "s3s5",
    Branch.B2: "s3s5",
    Branch.B3: "s4",
}


def sbox_slices(branch: Branch) -> list[tuple[str, int]]:
    """(sbox name, first bit index) for every Sbox instance of the layer."""
    if SBOX_LAYOUT[branch] == "s4":
        return [("s4", 4 * k) for k in range(32)]
    out = []
    for k in range(16):
        out.append(("s3", 8 * k))
        out.append(("s5", 8 * k + 3))
    return out
