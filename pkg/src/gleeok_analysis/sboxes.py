"""The three Gleeok-128 Sboxes and generic Sbox algebra (inverse, ANF, degree)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property


@dataclass(frozen=True)
class Sbox:
    name: str
    n: int
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != 1 << self.n:
            raise ValueError(f"{self.name}: table must have 2^{self.n} entries")
        if sorted(self.table) != list(range(1 << self.n)):
            raise ValueError(f"{self.name}: table is not a permutation")

    def __call__(self, x: int) -> int:
        return self.table[x]

    @cached_property
    def inverse(self) -> "Sbox":
        inv = [0] * (1 << self.n)
        for x, y in enumerate(self.table):
            inv[y] = x
        return Sbox(self.name + "_inv", self.n, tuple(inv))

    @cached_property
    def anf(self) -> tuple[tuple[int, ...], ...]:
        """Per output bit (0 = msb), the monomials of its ANF.

        A monomial is an input-variable mask (bit k set = variable x_k
        present, x0 = msb); mask 0 is the constant-1 term.
        """
        out = []
        for bit in range(self.n):
            f = [(self.table[x] >> (self.n - 1 - bit)) & 1 for x in range(1 << self.n)]
            coeffs = moebius(f)
            monos = []
            for val_mask in range(1 << self.n):
                if coeffs[val_mask]:
                    # val_mask indexes by input value bits (lsb = x_{n-1});
                    # rewrite as variable mask with bit k = x_k present
                    var_mask = 0
                    for k in range(self.n):
                        if (val_mask >> (self.n - 1 - k)) & 1:
                            var_mask |= 1 << k
                    monos.append(var_mask)
            out.append(tuple(sorted(monos, key=lambda m: (bin(m).count("1"), m))))
        return tuple(out)

    @cached_property
    def degree(self) -> int:
        return max(max((bin(m).count("1") for m in monos), default=0) for monos in self.anf)


def moebius(f: list[int]) -> list[int]:
    """Moebius transform: truth table of a boolean function -> ANF coefficients."""
    c = list(f)
    n = len(c).bit_length() - 1
    for k in range(n):
        step = 1 << k
        for i in range(len(c)):
            if i & step:
                c[i] ^= c[i ^ step]
    return c


S3 = Sbox("s3", 3, (0x0, 0x5, 0x3, 0x2, 0x6, 0x1, 0x4, 0x7))
S4 = Sbox("s4", 4, (0x1, 0x0, 0x2, 0x4, 0x3, 0x8, 0x6, 0xD,
                    0x9, 0xA, 0xB, 0xE, 0xF, 0xC, 0x7, 0x5))
S5 = Sbox("s5", 5, (0x00, 0x05, 0x0A, 0x0B, 0x14, 0x11, 0x16, 0x17,
                    0x09, 0x0C, 0x03, 0x02, 0x0D, 0x08, 0x0F, 0x0E,
                    0x12, 0x15, 0x18, 0x1B, 0x06, 0x01, 0x04, 0x07,
                    0x1A, 0x1D, 0x10, 0x13, 0x1E, 0x19, 0x1C, 0x1F))

SBOXES = {"s3": S3, "s4": S4, "s5": S5}

# forward/inverse algebraic degrees used by the degree-profile arithmetic;
# asserted against the ANF-computed values at import time
FORWARD_DEGREE = {"s3": 2, "s4": 3, "s5": 2}
INVERSE_DEGREE = {"s3": 2, "s4": 3, "s5": 3}

for _name, _sb in SBOXES.items():
    assert _sb.degree == FORWARD_DEGREE[_name], (_name, _sb.degree)
    assert _sb.inverse.degree == INVERSE_DEGREE[_name], (_name, _sb.inverse.degree)
