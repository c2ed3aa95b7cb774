"""Bit-exact Gleeok-128: key schedule, round constants, branch and PRF encryption.

Evaluation is half-round granular: each full round r (1-based) splits into an
S-half (the Sbox layer) and an L-half (theta, pi, round-key xor, round-constant
xor).  Half-round positions count 0 .. 2R, position 2k sits after k full
rounds, 2k+1 after round k+1's Sbox layer.  Round r's L-half xors RK_r and the
round constant with index r-1 (constant indexing starts at 0 for the first
round; see CONVENTIONS.md).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import pi_digits
from .params import PI, PK, THETA, ThetaParams, PiParam, sbox_slices
from .sboxes import SBOXES
from .state import MASK128, Branch, rotl128

MASK256 = (1 << 256) - 1
MAX_ROUNDS = 12


@dataclass(frozen=True)
class RoundSpan:
    """Half-round positions [start, end); whitening applies RK_0 at the start."""

    start: int
    end: int
    whitening: bool = False

    def __post_init__(self):
        if not (0 <= self.start <= self.end):
            raise ValueError("need 0 <= start <= end")

    @classmethod
    def full(cls, rounds: int) -> "RoundSpan":
        return cls(0, 2 * rounds, whitening=True)


def apply_sbox_layer(branch: Branch, x: int, inverse: bool = False) -> int:
    lut = _layer_luts(branch)[1 if inverse else 0]
    out = 0
    for i in range(16):
        sh = 8 * (15 - i)
        out |= lut[(x >> sh) & 0xFF] << sh
    return out


def apply_theta(params: ThetaParams, x: int) -> int:
    t0, t1, t2 = params.taps
    return rotl128(x, t0) ^ rotl128(x, t1) ^ rotl128(x, t2)


def apply_pi(param: PiParam, x: int) -> int:
    tables = _pi_tables(param.p)
    out = 0
    for i in range(16):
        out |= tables[i][(x >> (8 * (15 - i))) & 0xFF]
    return out


def derive_round_keys(master: int, branch: Branch, rounds: int) -> list[int]:
    """RK_0 .. RK_rounds; RK_0 is the whitening key."""
    if not 0 <= master <= MASK256:
        raise ValueError("master key out of range")
    if rounds < 0:
        raise ValueError("rounds must be nonnegative")
    k0 = master >> 128
    k1 = master & MASK128
    if branch == Branch.B2:
        k0, k1 = k1, k0
    elif branch == Branch.B3:
        full = (master << 64) & MASK256 | (master >> 192)
        k0, k1 = full >> 128, full & MASK128
    halves = [k0, k1]
    perm = _key_perm(PK[branch])
    keys = []
    for r in range(rounds + 1):
        h = r % 2
        halves[h] = _permute_bits(halves[h], perm)
        keys.append(halves[h])
    return keys


def derive_round_constants(branch: Branch, rounds: int) -> list[int]:
    """RC_0 .. RC_{rounds-1}; round r (1-based) xors constant index r-1."""
    if rounds > MAX_ROUNDS:
        raise ValueError(f"embedded expansion covers at most {MAX_ROUNDS} rounds")
    return [pi_digits.window128(128 * (r + MAX_ROUNDS * int(branch))) for r in range(rounds)]


class BranchCipher:
    """One keyed branch with precomputed schedule, supporting span evaluation."""

    def __init__(self, branch: Branch, master: int, rounds: int = MAX_ROUNDS):
        self.branch = Branch(branch)
        self.rounds = rounds
        self.round_keys = derive_round_keys(master, self.branch, rounds)
        self.round_consts = derive_round_constants(self.branch, rounds)
        self.theta = THETA[self.branch]
        self.pi = PI[self.branch]

    def encrypt(self, x: int, span: RoundSpan | None = None) -> int:
        span = span or RoundSpan.full(self.rounds)
        if span.end > 2 * self.rounds:
            raise ValueError("span exceeds configured rounds")
        s = x
        if span.whitening:
            s ^= self.round_keys[0]
        for h in range(span.start, span.end):
            if h % 2 == 0:
                s = apply_sbox_layer(self.branch, s)
            else:
                r = (h + 1) // 2
                s = apply_theta(self.theta, s)
                s = apply_pi(self.pi, s)
                s ^= self.round_keys[r] ^ self.round_consts[r - 1]
        return s


class PrfCipher:
    """The three-branch PRF: xor of the branch permutations on a shared input."""

    def __init__(self, master: int, rounds: int = MAX_ROUNDS):
        self.rounds = rounds
        self.branches = {b: BranchCipher(b, master, rounds) for b in Branch}

    def encrypt(self, x: int, span: RoundSpan | None = None) -> int:
        span = span or RoundSpan.full(self.rounds)
        out = 0
        for bc in self.branches.values():
            out ^= bc.encrypt(x, span)
        return out


def encrypt_branch(branch: Branch, master: int, x: int, span: RoundSpan) -> int:
    rounds = max((span.end + 1) // 2, 1)
    return BranchCipher(branch, master, rounds).encrypt(x, span)


def encrypt_prf(master: int, x: int, rounds: int) -> int:
    if not 1 <= rounds <= MAX_ROUNDS:
        raise ValueError("rounds must be in 1..12")
    return PrfCipher(master, rounds).encrypt(x)


# ---------------------------------------------------------------- internals

@lru_cache(maxsize=None)
def _layer_luts(branch: Branch) -> tuple[list[int], list[int]]:
    """Byte-wise LUTs for the forward and inverse Sbox layers."""
    fwd = [0] * 256
    inv = [0] * 256
    slices = [(name, start % 8) for name, start in sbox_slices(branch) if start < 8]
    for b in range(256):
        f = i = 0
        for name, off in slices:
            sb = SBOXES[name]
            width = sb.n
            sh = 8 - off - width
            v = (b >> sh) & ((1 << width) - 1)
            f |= sb(v) << sh
            i |= sb.inverse(v) << sh
        fwd[b] = f
        inv[b] = i
    return fwd, inv


@lru_cache(maxsize=None)
def _pi_tables(p: int) -> list[dict]:
    """Byte-indexed scatter tables: output bit j*p^-1 reads input bit j."""
    pinv = pow(p, -1, 128)
    tables = []
    for bi in range(16):
        t = [0] * 256
        for bv in range(256):
            acc = 0
            for k in range(8):
                if (bv >> (7 - k)) & 1:
                    j = 8 * bi + k
                    acc |= 1 << (127 - (j * pinv) % 128)
            t[bv] = acc
        tables.append(t)
    return tables


@lru_cache(maxsize=None)
def _key_perm(pk: int) -> tuple[int, ...]:
    return tuple((pk * j) % 128 for j in range(128))


def _permute_bits(half: int, perm: tuple[int, ...]) -> int:
    out = 0
    for j in range(128):
        if (half >> (127 - perm[j])) & 1:
            out |= 1 << (127 - j)
    return out
