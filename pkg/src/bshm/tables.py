"""TSV rendering of parameter sweeps and diffs against golden tables."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from importlib import resources

from .core import SrgParams
from .params import (DEFAULT_POLICY, HadamardPolicy, TableRow, enumerate_equiangular, enumerate_imprimitive,
                     enumerate_type1, enumerate_type2)

BASE_COLUMNS = ("n", "ell", "a", "b", "v", "k", "lambda", "mu", "exists", "reason")
EXTRA_COLUMNS = {
    "equiangular": ("k_inside", "lambda_inside", "mu_inside"),
    "type1": (),
    "type2": (),
    "imprimitive-b0": ("r", "s"),
    "imprimitive-bm1": ("r", "s"),
}
GOLDEN_FILES = {
    "equiangular": "table2.tsv",
    "type1": "table3.tsv",
    "type2": "table4.tsv",
    "imprimitive-b0": "table5.tsv",
    "imprimitive-bm1": "table6.tsv",
}
# ranges the published tables cover
EQUIANGULAR_ELL_MAX = 700
EQUIANGULAR_N_MAX = 1296
TYPED_N_MAX = 256
IMPRIMITIVE_RANGES = {"imprimitive-b0": (1, 8, 8), "imprimitive-bm1": (2, 12, 8)}  # r_min, r_max, s_max


def row_fields(row: TableRow) -> tuple[str, ...]:
    g = row.graph
    base = (row.n, row.ell, row.a, row.b, g.v, g.k, g.lam, g.mu, row.exists, row.reason)
    return tuple(str(x) for x in base + tuple(row.extra))


def format_tsv(family: str, rows) -> str:
    lines = ["\t".join(BASE_COLUMNS + EXTRA_COLUMNS[family])]
    lines += ["\t".join(row_fields(r)) for r in rows]
    return "\n".join(lines) + "\n"


def parse_tsv(text: str) -> list[TableRow]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    header = lines[0].split("\t")
    if tuple(header[:10]) != BASE_COLUMNS:
        raise ValueError(f"unexpected header {header}")
    out = []
    for ln in lines[1:]:
        f = ln.split("\t")
        if len(f) != len(header):
            raise ValueError(f"row has {len(f)} fields, header has {len(header)}: {ln!r}")
        n, ell, a, b, v, k, lam, mu = (int(x) for x in f[:8])
        out.append(TableRow(n, ell, a, b, SrgParams(v, k, lam, mu), f[8], f[9], tuple(int(x) for x in f[10:])))
    return out


def load_golden(family: str, directory=None) -> list[TableRow]:
    name = GOLDEN_FILES[family]
    if directory is None:
        text = resources.files("bshm").joinpath("data").joinpath(name).read_text(encoding="utf-8")
    else:
        with open(os.path.join(directory, name), encoding="utf-8") as fh:
            text = fh.read()
    return parse_tsv(text)


def sweep(family: str, policy: HadamardPolicy = DEFAULT_POLICY) -> list[TableRow]:
    """Regenerate one table over its published range; imprimitive tables keep open rows only."""
    if family == "equiangular":
        return enumerate_equiangular(EQUIANGULAR_ELL_MAX, EQUIANGULAR_N_MAX, policy)
    if family == "type1":
        return enumerate_type1(TYPED_N_MAX, policy=policy)
    if family == "type2":
        return enumerate_type2(TYPED_N_MAX, policy=policy)
    if family in IMPRIMITIVE_RANGES:
        r_min, r_max, s_max = IMPRIMITIVE_RANGES[family]
        fam = "b0" if family == "imprimitive-b0" else "bm1"
        return [r for r in enumerate_imprimitive(fam, r_max, s_max, r_min, policy) if r.exists == "open"]
    raise ValueError(f"unknown family {family!r}")


def _line(row: TableRow) -> str:
    return "\t".join(row_fields(row))


@dataclass
class TableDiff:
    family: str
    missing: list = field(default_factory=list)   # golden rows not produced
    surplus: list = field(default_factory=list)   # produced rows absent from the golden file
    mismatched: list = field(default_factory=list)  # (golden, produced) with equal parameters
    order_ok: bool = True

    @property
    def clean(self) -> bool:
        return not (self.missing or self.surplus or self.mismatched) and self.order_ok

    def report(self) -> str:
        out = [f"{self.family}: {'match' if self.clean else 'DIFF'}"]
        out += [f"  missing  {_line(r)}" for r in self.missing]
        out += [f"  surplus  {_line(r)}  (needs external SRG vetting)" for r in self.surplus]
        for g, p in self.mismatched:
            out.append(f"  golden   {_line(g)}")
            out.append(f"  produced {_line(p)}")
        if not self.order_ok:
            out.append("  row order differs")
        return "\n".join(out)


def diff_rows(family: str, produced, golden) -> TableDiff:
    d = TableDiff(family)
    gk = {r.params: r for r in golden}
    pk = {r.params: r for r in produced}
    d.missing = [r for r in golden if r.params not in pk]
    d.surplus = [r for r in produced if r.params not in gk]
    d.mismatched = [(gk[p], r) for p, r in pk.items() if p in gk and row_fields(gk[p]) != row_fields(r)]
    common_p = [r.params for r in produced if r.params in gk]
    common_g = [r.params for r in golden if r.params in pk]
    d.order_ok = common_p == common_g
    return d


def reproduce_tables(golden_dir=None, policy: HadamardPolicy = DEFAULT_POLICY) -> dict[str, TableDiff]:
    return {fam: diff_rows(fam, sweep(fam, policy), load_golden(fam, golden_dir)) for fam in GOLDEN_FILES}
