"""Linear inequality systems over 0/1 variables and their table characterizations.

Each shipped system describes the valid transitions of one connectivity table
as feasible 0/1 points.  Point layout: input difference/mask bits first
(msb first), then output bits, then weight/sign variables; see PointEncoding.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

import numpy as np

from .sboxes import SBOXES
from .tables import conn_table, table_weight

MAX_ENUM_VARS = 16


@dataclass(frozen=True)
class Inequality:
    coeffs: tuple[int, ...]
    rhs: int  # sum(coeffs * vars) >= rhs

    def satisfied(self, point) -> bool:
        return sum(c * v for c, v in zip(self.coeffs, point)) >= self.rhs


@dataclass(frozen=True)
class IneqSystem:
    name: str
    varnames: tuple[str, ...]
    inequalities: tuple[Inequality, ...]

    def __post_init__(self):
        for ineq in self.inequalities:
            if len(ineq.coeffs) != len(self.varnames):
                raise ValueError(f"{self.name}: coefficient width mismatch")

    @property
    def var_count(self) -> int:
        return len(self.varnames)

    def extended(self, extra: Inequality) -> "IneqSystem":
        return IneqSystem(self.name, self.varnames, self.inequalities + (extra,))


@dataclass(frozen=True)
class PointEncoding:
    """How feasible points map to table transitions.

    weight_terms: (coefficient, variable name) pairs whose weighted sum is the
    transition weight; sign_var names the trailing sign variable, if any.
    """

    sbox: str
    kind: str
    weight_terms: tuple[tuple[int, str], ...]
    sign_var: str | None = None


ENCODINGS = {
    ("s3", "ddt"): PointEncoding("s3", "ddt", ((2, "p"),)),
    ("s4", "ddt"): PointEncoding("s4", "ddt", ((2, "p0"), (1, "p1"))),
    ("s5", "ddt"): PointEncoding("s5", "ddt", ((2, "p0"), (3, "p1"), (4, "p2"))),
    ("s3", "lat"): PointEncoding("s3", "lat", ((1, "c"),)),
    ("s4", "lat"): PointEncoding("s4", "lat", ((1, "c0"), (1, "c1"))),
    ("s5", "lat"): PointEncoding("s5", "lat", ((1, "c0"), (1, "c1"))),
    ("s3", "dlct_unsigned"): PointEncoding("s3", "dlct_unsigned", ()),
    ("s4", "dlct_unsigned"): PointEncoding("s4", "dlct_unsigned", ((1, "c"),)),
    ("s5", "dlct_unsigned"): PointEncoding("s5", "dlct_unsigned", ()),
    ("s3", "dlct_signed"): PointEncoding("s3", "dlct_signed", (), "s"),
    ("s4", "dlct_signed"): PointEncoding("s4", "dlct_signed", ((1, "c"),), "s"),
    ("s5", "dlct_signed"): PointEncoding("s5", "dlct_signed", (), "s"),
}


def asset_name(sbox: str, kind: str) -> str:
    suffix = {"ddt": "ddt", "lat": "lat",
              "dlct_unsigned": "dlct", "dlct_signed": "dlct"}[kind]
    variant = "" if kind in ("ddt", "lat") else ("_unsigned" if kind == "dlct_unsigned" else "_signed")
    return f"ineq_{suffix}_{sbox}{variant}.txt"


@lru_cache(maxsize=None)
def load_system(sbox: str, kind: str) -> IneqSystem:
    fname = asset_name(sbox, kind)
    text = resources.files("gleeok_analysis.assets").joinpath(fname).read_text()
    varnames = None
    ineqs = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("vars "):
            varnames = tuple(line.split()[1:])
            continue
        lhs, rhs = line.split(">=")
        ineqs.append(Inequality(tuple(int(v) for v in lhs.split()), int(rhs)))
    if varnames is None:
        raise ValueError(f"{fname}: missing vars header")
    return IneqSystem(f"{kind}_{sbox}", varnames, tuple(ineqs))


def all_systems() -> list[tuple[str, str, IneqSystem]]:
    out = []
    for sbox in ("s3", "s4", "s5"):
        for kind in ("ddt", "lat", "dlct_unsigned", "dlct_signed"):
            out.append((sbox, kind, load_system(sbox, kind)))
    return out


def feasible_points(system: IneqSystem) -> list[tuple[int, ...]]:
    """All 0/1 assignments satisfying every inequality, by exhaustive scan."""
    k = system.var_count
    if k > MAX_ENUM_VARS:
        raise ValueError(f"refusing exhaustive scan over 2^{k} assignments (cap {MAX_ENUM_VARS})")
    pts = ((np.arange(1 << k)[:, None] >> np.arange(k)[None, ::-1]) & 1).astype(np.int64)
    ok = np.ones(1 << k, dtype=bool)
    for ineq in system.inequalities:
        ok &= pts @ np.array(ineq.coeffs, dtype=np.int64) >= ineq.rhs
    return [tuple(int(v) for v in row) for row in pts[ok]]


def cutting_off_inequality(point) -> Inequality:
    """Inequality violated by exactly the given 0/1 point."""
    coeffs = tuple(-1 if v else 1 for v in point)
    return Inequality(coeffs, 1 - sum(point))


def point_tuples(system: IneqSystem, encoding: PointEncoding) -> set[tuple]:
    """(input, output, weight[, sign]) tuples derivable from the feasible points."""
    n = SBOXES[encoding.sbox].n
    names = system.varnames
    idx = {nm: i for i, nm in enumerate(names)}
    in_idx = [idx[f"x{k}"] for k in range(n)]
    out_idx = [idx[f"y{k}"] for k in range(n)]
    tuples = set()
    for pt in feasible_points(system):
        a = sum(pt[i] << (n - 1 - k) for k, i in enumerate(in_idx))
        b = sum(pt[i] << (n - 1 - k) for k, i in enumerate(out_idx))
        w = sum(c * pt[idx[nm]] for c, nm in encoding.weight_terms)
        if encoding.sign_var is None:
            tuples.add((a, b, w))
        else:
            tuples.add((a, b, w, pt[idx[encoding.sign_var]]))
    return tuples


def table_tuples(encoding: PointEncoding) -> set[tuple]:
    """The same tuples, derived from the exhaustively generated table."""
    table = conn_table(encoding.sbox, encoding.kind)
    n = table.n
    tuples = set()
    for a in range(1 << n):
        for b in range(1 << n):
            e = table[a][b]
            if e == 0:
                continue
            w = table_weight(table.kind, n, e)
            if encoding.sign_var is None:
                tuples.add((a, b, w))
            else:
                tuples.add((a, b, w, 1 if e < 0 else 0))
    return tuples


@dataclass
class CharacterizationReport:
    system: str
    spurious: set = field(default_factory=set)   # from points, not in table
    missing: set = field(default_factory=set)    # in table, not from points

    @property
    def ok(self) -> bool:
        return not self.spurious and not self.missing

    def render(self) -> str:
        if self.ok:
            return f"{self.system}: exact characterization"
        return (f"{self.system}: MISMATCH, {len(self.spurious)} spurious and "
                f"{len(self.missing)} missing transitions\n"
                f"  spurious: {sorted(self.spurious)[:8]}\n"
                f"  missing:  {sorted(self.missing)[:8]}")


def verify_characterization(system: IneqSystem, encoding: PointEncoding) -> CharacterizationReport:
    """Exact set comparison of point-derived vs table-derived transition tuples.

    Weight-split degeneracy (several feasible splits of the same weight sum)
    collapses here because the comparison is on weight sums.
    """
    got = point_tuples(system, encoding)
    want = table_tuples(encoding)
    return CharacterizationReport(system.name, got - want, want - got)


def verify_all() -> list[CharacterizationReport]:
    return [verify_characterization(sys_, ENCODINGS[(sbox, kind)])
            for sbox, kind, sys_ in all_systems()]
