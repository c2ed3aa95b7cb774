"""Bitsliced (lane-parallel) Gleeok-128 evaluation on numpy uint64 words.

A batch of W states is an array of shape (128, W/64) uint64: row j holds bit
x_j of every lane, lane l living in word l >> 6 at bit l & 63.  Sbox layers
run as ANF circuits (AND-products shared across monomials), the linear half
as three fused theta+pi row gathers, so throughput lands at a few tens of ns
per lane-round.  Correctness is pinned to the scalar implementation by tests
on random batches.
"""

from __future__ import annotations

import numpy as np

from .cipher import MAX_ROUNDS, RoundSpan, derive_round_constants, derive_round_keys
from .params import PI, THETA, sbox_slices
from .sboxes import SBOXES
from .state import Branch

ALL1 = np.uint64(0xFFFFFFFFFFFFFFFF)


def nwords(lanes: int) -> int:
    return (lanes + 63) // 64


def zeros(lanes: int) -> np.ndarray:
    return np.zeros((128, nwords(lanes)), dtype=np.uint64)


def random_states(gen: np.random.Generator, lanes: int) -> np.ndarray:
    return gen.integers(0, 1 << 64, size=(128, nwords(lanes)), dtype=np.uint64)


def from_ints(values: list[int]) -> np.ndarray:
    st = zeros(len(values))
    for lane, v in enumerate(values):
        w, b = lane >> 6, lane & 63
        for j in range(128):
            if (v >> (127 - j)) & 1:
                st[j, w] |= np.uint64(1 << b)
    return st


def to_ints(states: np.ndarray, lanes: int) -> list[int]:
    out = []
    for lane in range(lanes):
        w, b = lane >> 6, lane & 63
        v = 0
        for j in range(128):
            if (int(states[j, w]) >> b) & 1:
                v |= 1 << (127 - j)
        out.append(v)
    return out


def xor_constant(states: np.ndarray, value: int) -> None:
    rows = [j for j in range(128) if (value >> (127 - j)) & 1]
    if rows:
        states[rows] ^= ALL1


def row_parities(states: np.ndarray) -> int:
    """128-bit int whose bit x_j is the xor of row j over all lanes."""
    counts = np.bitwise_count(states).sum(axis=1)
    out = 0
    for j in range(128):
        if counts[j] & 1:
            out |= 1 << (127 - j)
    return out


def masked_row(states: np.ndarray, mask: int) -> np.ndarray:
    """Per-lane parity of mask . state, as a packed word vector."""
    rows = [j for j in range(128) if (mask >> (127 - j)) & 1]
    if not rows:
        return np.zeros(states.shape[1], dtype=np.uint64)
    return np.bitwise_xor.reduce(states[rows], axis=0)


def popcount_words(vec: np.ndarray, lanes: int) -> int:
    full, rem = divmod(lanes, 64)
    total = int(np.bitwise_count(vec[:full]).sum()) if full else 0
    if rem:
        total += int(np.bitwise_count(vec[full] & np.uint64((1 << rem) - 1)))
    return total


class _SboxCircuit:
    """Shared-product ANF plan for one Sbox applied to stacked bit slices."""

    def __init__(self, sbox):
        self.n = sbox.n
        monos = sorted({m for out in sbox.anf for m in out if m and m.bit_count() > 1},
                       key=lambda m: (m.bit_count(), m))
        self.products = []  # (mask, left mask, right var index)
        known = {1 << v for v in range(sbox.n)}
        for m in monos:
            v = (m & -m).bit_length() - 1
            left = m & (m - 1)
            assert left in known or left.bit_count() == 1
            self.products.append((m, left, v))
            known.add(m)
        self.outputs = sbox.anf

    def __call__(self, cols: list[np.ndarray], out: list[np.ndarray]) -> None:
        vals = {1 << v: cols[v] for v in range(self.n)}
        for mask, left, v in self.products:
            vals[mask] = vals[left] & cols[v]
        for k, monos in enumerate(self.outputs):
            acc = None
            flip = False
            for m in monos:
                if m == 0:
                    flip = True
                elif acc is None:
                    acc = vals[m].copy()
                else:
                    acc ^= vals[m]
            if acc is None:
                acc = np.zeros_like(cols[0])
            if flip:
                acc ^= ALL1
            out[k][...] = acc


class _SboxLayer:
    """One branch's full Sbox layer, all instances evaluated together."""

    def __init__(self, branch: Branch):
        slices = sbox_slices(branch)
        self.group = 8 if any(n == "s3" for n, _ in slices) else 4
        seen = set()
        self.parts = []
        for name, start in slices:
            off = start % self.group
            if (name, off) not in seen:
                seen.add((name, off))
                self.parts.append((off, SBOXES[name].n, _SboxCircuit(SBOXES[name])))

    def __call__(self, states: np.ndarray) -> np.ndarray:
        g = self.group
        nw = states.shape[1]
        inb = states.reshape(128 // g, g, nw)
        outb = np.empty_like(inb)
        for off, n, circuit in self.parts:
            cols = [np.ascontiguousarray(inb[:, off + k, :]) for k in range(n)]
            outs = [outb[:, off + k, :] for k in range(n)]
            circuit(cols, outs)
        return outb.reshape(128, nw)


class BitslicedBranch:
    def __init__(self, branch: Branch, master: int, rounds: int = MAX_ROUNDS):
        self.branch = Branch(branch)
        self.rounds = rounds
        self.sbox_layer = _SboxLayer(self.branch)
        self.round_keys = derive_round_keys(master, self.branch, rounds)
        consts = derive_round_constants(self.branch, rounds)
        p = PI[self.branch].p
        t0, t1, t2 = THETA[self.branch].taps
        idx = np.arange(128)
        # fused theta+pi: out[i] = in[i*p + t0] ^ in[i*p + t1] ^ in[i*p + t2]
        self.tap_idx = [((idx * p + t) % 128).astype(np.intp) for t in (t0, t1, t2)]
        self.lhalf_rows = []
        for r in range(1, rounds + 1):
            v = self.round_keys[r] ^ consts[r - 1]
            self.lhalf_rows.append(np.array([j for j in range(128) if (v >> (127 - j)) & 1], dtype=np.intp))
        self.wk_rows = np.array([j for j in range(128) if (self.round_keys[0] >> (127 - j)) & 1], dtype=np.intp)

    def encrypt(self, states: np.ndarray, span: RoundSpan | None = None) -> np.ndarray:
        span = span or RoundSpan.full(self.rounds)
        if span.end > 2 * self.rounds:
            raise ValueError("span exceeds configured rounds")
        s = states.copy()
        i0, i1, i2 = self.tap_idx
        for pos in range(span.start, span.end + 1):
            if pos == span.start:
                if span.whitening and len(self.wk_rows):
                    s[self.wk_rows] ^= ALL1
                continue
            h = pos - 1
            if h % 2 == 0:
                s = self.sbox_layer(s)
            else:
                t = s[i0]
                t ^= s[i1]
                t ^= s[i2]
                s = t
                rows = self.lhalf_rows[(h - 1) // 2]
                if len(rows):
                    s[rows] ^= ALL1
        return s


class BitslicedPrf:
    def __init__(self, master: int, rounds: int = MAX_ROUNDS):
        self.rounds = rounds
        self.branches = {b: BitslicedBranch(b, master, rounds) for b in Branch}

    def encrypt(self, states: np.ndarray, span: RoundSpan | None = None) -> np.ndarray:
        span = span or RoundSpan.full(self.rounds)
        out = None
        for bc in self.branches.values():
            c = bc.encrypt(states, span)
            out = c if out is None else out ^ c
        return out


def build_engine(target, master: int, rounds: int):
    """target is a Branch or the string 'prf'."""
    if target == "prf":
        return BitslicedPrf(master, rounds)
    return BitslicedBranch(Branch(target), master, rounds)
