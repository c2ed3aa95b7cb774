"""Connectivity tables (DDT / LAT / DLCT) and verification against the embedded references."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .sboxes import SBOXES, Sbox
from .state import parity

KINDS = ("ddt", "lat", "dlct_unsigned", "dlct_signed")


@dataclass(frozen=True)
class ConnTable:
    kind: str
    sbox: str
    n: int
    entries: tuple[tuple[int, ...], ...]

    def __getitem__(self, row: int):
        return self.entries[row]


def build_table(sbox: Sbox, kind: str) -> ConnTable:
    """Exhaustive table computation over all 2^n inputs per (row, column)."""
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    size = 1 << sbox.n
    half = size // 2
    rows = []
    for a in range(size):
        row = [0] * size
        if kind == "ddt":
            for x in range(size):
                row[sbox(x) ^ sbox(x ^ a)] += 1
        elif kind == "lat":
            for b in range(size):
                agree = sum(1 for x in range(size) if parity(x & a) == parity(sbox(x) & b))
                row[b] = agree - half
        else:
            for b in range(size):
                same = sum(1 for x in range(size)
                           if parity(sbox(x) & b) == parity(sbox(x ^ a) & b))
                v = same - half
                row[b] = abs(v) if kind == "dlct_unsigned" else v
        rows.append(tuple(row))
    return ConnTable(kind, sbox.name, sbox.n, tuple(rows))


@lru_cache(maxsize=None)
def conn_table(sbox_name: str, kind: str) -> ConnTable:
    return build_table(SBOXES[sbox_name], kind)


def load_reference(sbox_name: str, kind: str) -> ConnTable:
    """Reference table from the shipped plain-text assets (dlct assets are signed)."""
    base = "dlct" if kind.startswith("dlct") else kind
    text = resources.files("gleeok_analysis.assets").joinpath(f"{base}_{sbox_name}.txt").read_text()
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        vals = [int(v) for v in line.split()]
        if kind == "dlct_unsigned":
            vals = [abs(v) for v in vals]
        rows.append(tuple(vals))
    n = SBOXES[sbox_name].n
    if len(rows) != 1 << n or any(len(r) != 1 << n for r in rows):
        raise ValueError(f"reference {kind}/{sbox_name} has wrong shape")
    return ConnTable(kind, sbox_name, n, tuple(rows))


@dataclass
class TableReport:
    checked: list[tuple[str, str]] = field(default_factory=list)
    mismatches: list[tuple[str, str, int, int, int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def render(self) -> str:
        lines = [f"tables checked: {len(self.checked)}"]
        for sbox, kind in self.checked:
            lines.append(f"  {sbox} {kind}")
        if self.ok:
            lines.append("all entries match the embedded references")
        else:
            lines.append(f"MISMATCHES: {len(self.mismatches)}")
            for sbox, kind, r, c, want, got in self.mismatches:
                lines.append(f"  {sbox} {kind} [{r:#x}][{c:#x}] expected {want} got {got}")
        return "\n".join(lines)


def verify_reference_tables(sboxes: dict[str, Sbox] | None = None) -> TableReport:
    """Entrywise comparison of generated tables against the embedded references.

    Mismatches are report content, not errors; a fault-injected sbox yields a
    populated mismatch list naming every affected cell.
    """
    sboxes = sboxes or SBOXES
    report = TableReport()
    for name, sbox in sboxes.items():
        for kind in ("ddt", "lat", "dlct_signed"):
            ref = load_reference(name, kind)
            got = build_table(sbox, kind)
            report.checked.append((name, kind))
            size = 1 << sbox.n
            for r in range(size):
                for c in range(size):
                    if ref[r][c] != got[r][c]:
                        report.mismatches.append((name, kind, r, c, ref[r][c], got[r][c]))
    return report


def table_weight(kind: str, n: int, entry: int) -> int:
    """Weight exponent of a nonzero entry (probability or |correlation| as 2^-w)."""
    mag = abs(entry)
    if mag == 0 or mag & (mag - 1):
        raise ValueError("entry magnitude must be a nonzero power of two")
    ref = (1 << n) if kind == "ddt" else (1 << (n - 1))
    return ref.bit_length() - mag.bit_length()
