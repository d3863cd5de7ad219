"""Verification of balancedly splittable Hadamard matrices.

A Hadamard matrix H of order n is split by a row subset H1 of size ell when
the inner products of distinct columns of H1 take at most two values a >= b.
``verify_bshm`` checks this and returns a certificate carrying the derived
parameters and the strongly regular graph on the columns (edge iff the
H1-inner product equals a).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (NoAllOnesRow, NotHadamard, NotRegular, NotStronglyRegular,
                     NotUnbiased, ParamMismatch, StructureViolation, TooManyValues,
                     InconsistentKa)
from .pm_matrix import PmMatrix, RowSubset, as_subset

SCHEMA = "bshm-cert/1"

KINDS = ("type1", "type2", "equiangular", "degenerate")


@dataclass(frozen=True)
class SrgParams:
    v: int
    k: int
    lam: int
    mu: int

    def complement(self) -> "SrgParams":
        v, k, lam, mu = self.v, self.k, self.lam, self.mu
        return SrgParams(v, v - k - 1, v - 2 * k + mu - 2, v - 2 * k + lam)

    @property
    def is_primitive(self) -> bool:
        return self.mu > 0 and self.v - 2 * self.k + self.lam > 0

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.v, self.k, self.lam, self.mu)

    def to_dict(self) -> dict:
        return {"v": self.v, "k": self.k, "lambda": self.lam, "mu": self.mu}


@dataclass(frozen=True)
class BshmCertificate:
    n: int
    ell: int
    rows: tuple[int, ...]
    a: int
    b: int
    kind: str
    k_a: int | None
    graph: SrgParams | None
    primitive: bool | None
    allones_row: str
    trivial: bool

    @property
    def params(self) -> tuple[int, int, int, int]:
        return (self.n, self.ell, self.a, self.b)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "n": self.n,
            "ell": self.ell,
            "rows": list(self.rows),
            "a": self.a,
            "b": self.b,
            "kind": self.kind,
            "k_a": self.k_a,
            "graph": None if self.graph is None else self.graph.to_dict(),
            "primitive": self.primitive,
            "allones_row": self.allones_row,
            "trivial": self.trivial,
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, d: dict) -> "BshmCertificate":
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unknown certificate schema {d.get('schema')!r}")
        g = d["graph"]
        graph = None if g is None else SrgParams(g["v"], g["k"], g["lambda"], g["mu"])
        return cls(d["n"], d["ell"], tuple(d["rows"]), d["a"], d["b"], d["kind"], d["k_a"],
                   graph, d["primitive"], d["allones_row"], d["trivial"])

    @classmethod
    def from_json(cls, text: str) -> "BshmCertificate":
        return cls.from_dict(json.loads(text))


# -- graphs -------------------------------------------------------------

def associated_graph(h: PmMatrix, rows, a: int) -> np.ndarray:
    """Adjacency on columns: i ~ j iff the H1-inner product of i and j is a."""
    g = h.column_gram(as_subset(rows))
    adj = g == a
    np.fill_diagonal(adj, False)
    return adj.astype(np.uint8)


def srg_params(adj: np.ndarray) -> SrgParams:
    """(v, k, lambda, mu) by counting common neighbours.

    A vacuous lambda (empty graph) or mu (complete graph) is reported as 0.
    """
    a = np.asarray(adj)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("adjacency matrix must be square")
    a = a.astype(bool)
    if not np.array_equal(a, a.T) or a.diagonal().any():
        raise ValueError("adjacency must be symmetric with zero diagonal")
    v = a.shape[0]
    deg = a.sum(axis=1)
    if np.any(deg != deg[0]):
        raise NotRegular(f"degrees vary: {sorted(set(deg.tolist()))[:4]}")
    af = a.astype(np.float64)
    common = np.rint(af @ af).astype(np.int64)
    off = ~np.eye(v, dtype=bool)
    lam_vals = np.unique(common[a])
    mu_vals = np.unique(common[off & ~a])
    if len(lam_vals) > 1 or len(mu_vals) > 1:
        raise NotStronglyRegular(f"lambda values {lam_vals.tolist()[:4]}, mu values {mu_vals.tolist()[:4]}")
    lam = int(lam_vals[0]) if len(lam_vals) else 0
    mu = int(mu_vals[0]) if len(mu_vals) else 0
    return SrgParams(v, int(deg[0]), lam, mu)


def primitivity(p: SrgParams) -> bool:
    return p.is_primitive


# -- certificate ----------------------------------------------------------

def _row_sums(h: PmMatrix) -> np.ndarray:
    return h.n_cols - 2 * np.bitwise_count(h.row_plane).sum(axis=1, dtype=np.int64)


def _first_pairs(gram: np.ndarray, values, limit: int = 3):
    out = []
    for v in list(values)[:limit]:
        i, j = np.argwhere(np.triu(gram == v, 1))[0]
        out.append((int(i), int(j), int(v)))
    return out


def verify_bshm(h: PmMatrix, rows, *, check_hadamard: bool = True) -> BshmCertificate:
    rows = as_subset(rows)
    n = h.n_rows
    if check_hadamard and not h.is_hadamard():
        raise NotHadamard(f"{h.n_rows}x{h.n_cols} matrix is not Hadamard")
    ell = len(rows)
    if not 1 <= ell <= n - 1:
        raise ValueError(f"need 1 <= ell <= n - 1, got ell={ell}, n={n}")
    gram = h.column_gram(rows)
    vals = np.unique(gram[np.triu_indices(n, 1)])
    if len(vals) > 2:
        raise TooManyValues(vals.tolist(), _first_pairs(gram, vals[::-1]))
    a, b = int(vals.max()), int(vals.min())
    trivial = ell in (1, n - 1)

    ones = h.all_ones_rows()
    inside = set(rows.indices)
    if any(o in inside for o in ones):
        allones = "H1"
    elif ones:
        allones = "H2"
    else:
        allones = "none"

    off = ~np.eye(n, dtype=bool)
    counts = ((gram == a) & off).sum(axis=1)
    k_a = int(counts[0]) if np.all(counts == counts[0]) else None

    if a == b:
        kind = "degenerate"
    elif b == -a:
        kind = "equiangular"
    else:
        if k_a is None:
            raise InconsistentKa(f"number of a-neighbours varies over columns: {sorted(set(counts.tolist()))[:4]}")
        c = ell - b + (a - b) * k_a + b * n
        sums = _row_sums(h)
        mask = np.zeros(n, dtype=bool)
        mask[list(rows.indices)] = True
        h1_balanced = bool(np.all(sums[mask] == 0))
        h2_balanced = bool(np.all(sums[~mask] == 0))
        if c == 0 and h1_balanced:
            kind = "type1"
        elif c == n and h2_balanced:
            kind = "type2"
        else:
            raise RuntimeError(f"internal inconsistency: c={c}, H1 balanced={h1_balanced}, H2 balanced={h2_balanced}")

    graph = None
    if not trivial and a != b:
        adj = ((gram == a) & off).astype(np.uint8)
        if kind == "equiangular":
            try:
                graph = srg_params(adj)
            except (NotRegular, NotStronglyRegular):
                graph = None
        else:
            graph = srg_params(adj)
    primitive = None if graph is None else graph.is_primitive
    return BshmCertificate(n, ell, rows.indices, a, b, kind, k_a, graph, primitive, allones, trivial)


# -- transforms -----------------------------------------------------------

def switch(h: PmMatrix, rows) -> BshmCertificate:
    """Certificate for the complementary rows: (ell, a, b) -> (n - ell, -b, -a).

    The column graph defined by the original label a (H2-inner product -a)
    is unchanged; with the canonical ordering a >= b the new certificate's
    graph is therefore the complement of the old one.
    """
    rows = as_subset(rows)
    cert = verify_bshm(h, rows)
    comp = rows.complement(h.n_rows)
    new = verify_bshm(h, comp)
    if not cert.trivial and cert.a != cert.b:
        g1 = associated_graph(h, rows, cert.a)
        g2 = associated_graph(h, comp, -cert.a)
        if not np.array_equal(g1, g2):
            raise RuntimeError("switching changed the label-tracked graph")
    return new


def add_allones_row(h: PmMatrix, rows) -> tuple[RowSubset, BshmCertificate]:
    rows = as_subset(rows)
    inside = set(rows.indices)
    cand = [o for o in h.all_ones_rows() if o not in inside]
    if not cand:
        raise NoAllOnesRow("no all-ones row outside the subset")
    before = verify_bshm(h, rows)
    new_rows = RowSubset(rows.indices + (cand[0],))
    after = verify_bshm(h, new_rows)
    if (after.ell, after.a, after.b) != (before.ell + 1, before.a + 1, before.b + 1):
        raise RuntimeError("adding the all-ones row did not shift (ell, a, b) by one")
    return new_rows, after


def remove_allones_row(h: PmMatrix, rows) -> tuple[RowSubset, BshmCertificate]:
    rows = as_subset(rows)
    inside = [o for o in h.all_ones_rows() if o in set(rows.indices)]
    if not inside:
        raise NoAllOnesRow("no all-ones row inside the subset")
    before = verify_bshm(h, rows)
    new_rows = RowSubset(i for i in rows.indices if i != inside[0])
    after = verify_bshm(h, new_rows)
    if (after.ell, after.a, after.b) != (before.ell - 1, before.a - 1, before.b - 1):
        raise RuntimeError("removing the all-ones row did not shift (ell, a, b) by one")
    return new_rows, after


def to_regular_form(h: PmMatrix, rows, pivot_row: int) -> PmMatrix:
    """Negate columns so that ``pivot_row`` becomes all ones."""
    cert = verify_bshm(h, rows)
    if cert.kind != "equiangular":
        raise ParamMismatch(f"regular form applies to b = -a, got kind {cert.kind}")
    return PmMatrix(h.bits ^ h.bits[pivot_row:pivot_row + 1, :])


def extract_unbiased_mate(h: PmMatrix, rows) -> PmMatrix:
    """L = (H1^T H1 - H2^T H2) / (2a) for (n, ell) = (4a^2, 2a^2 +/- a)."""
    rows = as_subset(rows)
    cert = verify_bshm(h, rows)
    a, n, ell = cert.a, cert.n, cert.ell
    if cert.kind != "equiangular" or n != 4 * a * a or ell not in (2 * a * a - a, 2 * a * a + a):
        raise ParamMismatch(f"need b = -a with n = 4a^2 and ell = 2a^2 +/- a, got {cert.params}")
    full = h.to_array(np.int64)
    mask = np.zeros(n, dtype=bool)
    mask[list(rows.indices)] = True
    h1, h2 = full[mask], full[~mask]
    m = h1.T @ h1 - h2.T @ h2
    if np.any(m % (2 * a)):
        raise NotUnbiased("Gram difference not divisible by 2a")
    mate = m // (2 * a)
    if not np.all(np.abs(mate) == 1):
        raise NotUnbiased("mate has entries other than +/-1")
    lm = PmMatrix.from_array(mate)
    if not lm.is_hadamard():
        raise NotUnbiased("mate is not Hadamard")
    cross = full @ mate.T
    if not np.all(np.abs(cross) == 2 * a):
        raise NotUnbiased("H L^T has entries other than +/-2a")
    return lm


@dataclass(frozen=True)
class PbdReport:
    incidence: np.ndarray  # points x blocks, 0/1
    block_sizes: tuple[int, ...]
    pair_count: int
    intersection_sizes: tuple[int, ...]
    allowed_intersections: tuple[Fraction, ...]

    @property
    def n_points(self) -> int:
        return self.incidence.shape[0]

    @property
    def n_blocks(self) -> int:
        return self.incidence.shape[1]


def extract_pbd(h: PmMatrix, rows) -> PbdReport:
    """Pairwise balanced design read off a Type 1 split."""
    rows = as_subset(rows)
    cert = verify_bshm(h, rows)
    if cert.kind != "type1" or cert.trivial:
        raise ParamMismatch(f"need a nontrivial Type 1 certificate, got {cert.kind}")
    n, ell, a, b = cert.params
    s = h.to_array(np.int64)[list(rows.indices)]
    s = s * s[:, :1]
    x = (1 - s[:, 1:]) // 2
    sizes = x.sum(axis=0)
    allowed_sizes = {Fraction(ell - a, 2), Fraction(ell - b, 2)}
    if not set(map(Fraction, sizes.tolist())) <= allowed_sizes:
        raise StructureViolation(f"block sizes {sorted(set(sizes.tolist()))} not in {sorted(allowed_sizes)}")
    pairs = x @ x.T
    off = pairs[~np.eye(ell, dtype=bool)]
    if np.any(off != n // 4) or n % 4:
        raise StructureViolation(f"point pairs lie in {sorted(set(off.tolist()))} blocks, expected {n // 4}")
    inter = x.T @ x
    iv = set(inter[~np.eye(n - 1, dtype=bool)].tolist())
    allowed = tuple(sorted({Fraction(ell - a, 4), Fraction(ell - b, 4),
                            Fraction(ell + a - 2 * b, 4), Fraction(ell + b - 2 * a, 4)}))
    if not {Fraction(v) for v in iv} <= set(allowed):
        raise StructureViolation(f"block intersections {sorted(iv)} not in {allowed}")
    x.setflags(write=False)
    return PbdReport(x, tuple(sorted(set(sizes.tolist()))), n // 4, tuple(sorted(iv)), allowed)


def structure_decompose(h: PmMatrix, rows) -> tuple[list[int], PmMatrix]:
    """Column classes of an imprimitive split.

    For (a, b) = (ell, 0) the distinct columns of H1 form a Hadamard matrix
    L of order ell; for (a, b) = (ell, -1) they form L with (1^T over L)
    Hadamard.  Returns a column permutation with H1[:, perm] = (L L ... L)
    and L itself.
    """
    rows = as_subset(rows)
    cert = verify_bshm(h, rows)
    ell = cert.ell
    if (cert.a, cert.b) == (ell, 0):
        n_classes = ell
    elif (cert.a, cert.b) == (ell, -1):
        n_classes = ell + 1
    else:
        raise ParamMismatch(f"need (a, b) = (ell, 0) or (ell, -1), got {(cert.a, cert.b)}")
    sub = h.bits[list(rows.indices)]
    classes: dict[bytes, list[int]] = {}
    for c in range(h.n_cols):
        classes.setdefault(sub[:, c].tobytes(), []).append(c)
    members = list(classes.values())
    if len(members) != n_classes:
        raise StructureViolation(f"{len(members)} column classes, expected {n_classes}")
    mult = len(members[0])
    if any(len(m) != mult for m in members):
        raise StructureViolation("column classes have unequal sizes")
    lmat = PmMatrix(sub[:, [m[0] for m in members]])
    check = lmat if n_classes == ell else PmMatrix(np.vstack([np.zeros((1, n_classes), bool), lmat.bits]))
    if not check.is_hadamard():
        raise StructureViolation("class representatives do not form a Hadamard matrix")
    perm = [m[copy] for copy in range(mult) for m in members]
    return perm, lmat
