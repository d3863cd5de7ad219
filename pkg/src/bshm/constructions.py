"""Explicit Hadamard matrices and the splits they carry.

Every constructor returns the matrix together with a certificate produced
by :func:`bshm.core.verify_bshm`, so a returned object is always checked.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product
from typing import Sequence

import numpy as np

from .core import BshmCertificate, add_allones_row, structure_decompose, verify_bshm
from .errors import ParamMismatch
from .pds import verify_packing, verify_pds_char
from .pm_matrix import PmMatrix, RowSubset, as_subset
from .z2 import Z2Subset, character_table, spread_lines

S1 = PmMatrix.from_array([[1, 1], [1, -1]])


def sylvester(r: int) -> PmMatrix:
    """S_r = S_1 (x) S_{r-1}, order 2^r."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    h = PmMatrix.from_array([[1]])
    for _ in range(r):
        h = S1.kronecker(h)
    return h


# -- finite fields of odd order ------------------------------------------------

def prime_power(q: int) -> tuple[int, int] | None:
    """(p, k) with q = p^k, or None."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, x = 0, q
    while x % p == 0:
        x //= p
        k += 1
    return (p, k) if x == 1 else None


def _poly_rem(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a modulo monic m; coefficient lists, lowest degree first."""
    a = a[:]
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return [x % p for x in a[:dm]] + [0] * max(0, dm - len(a))


def _irreducible(p: int, k: int) -> list[int]:
    """First monic irreducible polynomial of degree k over GF(p) (lexicographic)."""
    if k == 1:
        return [0, 1]
    for tail in product(range(p), repeat=k):
        f = list(tail) + [1]
        if f[0] == 0:
            continue
        ok = True
        for d in range(1, k // 2 + 1):
            for g_tail in product(range(p), repeat=d):
                g = list(g_tail) + [1]
                if not any(_poly_rem(f, g, p)):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return f
    raise RuntimeError("no irreducible polynomial found")


@lru_cache(maxsize=16)
def _gf_odd(q: int):
    """Digit table and quadratic character for GF(q), q an odd prime power.

    Element x has base-p digits = polynomial coefficients.
    """
    pk = prime_power(q)
    if pk is None or pk[0] == 2:
        raise ValueError(f"{q} is not an odd prime power")
    p, k = pk
    digits = np.array([[(x // p ** i) % p for i in range(k)] for x in range(q)], dtype=np.int64)
    mod = _irreducible(p, k)
    chi = -np.ones(q, dtype=np.int64)
    chi[0] = 0
    for x in range(1, q):
        c = digits[x].tolist()
        sq = [0] * (2 * k - 1)
        for i, u in enumerate(c):
            if u:
                for j, w in enumerate(c):
                    sq[i + j] += u * w
        r = _poly_rem(sq, mod, p) if k > 1 else [sq[0] % p]
        chi[sum(int(v) * p ** i for i, v in enumerate(r))] = 1
    return p, k, digits, chi


def jacobsthal(q: int) -> np.ndarray:
    """Q[x, y] = chi(x - y) over GF(q)."""
    p, k, digits, chi = _gf_odd(q)
    diff = (digits[:, None, :] - digits[None, :, :]) % p
    idx = (diff * (p ** np.arange(k))).sum(axis=2)
    return chi[idx]


def paley_hadamard(q: int, kind: str = "I") -> PmMatrix:
    """Paley type I (order q+1, q = 3 mod 4) or type II (order 2(q+1), q = 1 mod 4)."""
    qmat = jacobsthal(q)
    ones = np.ones(q, dtype=np.int64)
    if kind == "I":
        if q % 4 != 3:
            raise ValueError("Paley I needs q = 3 (mod 4)")
        s = np.zeros((q + 1, q + 1), dtype=np.int64)
        s[0, 1:], s[1:, 0], s[1:, 1:] = ones, -ones, qmat
        h = np.eye(q + 1, dtype=np.int64) + s
    elif kind == "II":
        if q % 4 != 1:
            raise ValueError("Paley II needs q = 1 (mod 4)")
        c = np.zeros((q + 1, q + 1), dtype=np.int64)
        c[0, 1:], c[1:, 0], c[1:, 1:] = ones, ones, qmat
        h = np.kron(c, [[1, 1], [1, -1]]) + np.kron(np.eye(q + 1, dtype=np.int64), [[1, -1], [-1, -1]])
    else:
        raise ValueError("kind must be 'I' or 'II'")
    out = PmMatrix.from_array(h)
    if not out.is_hadamard():
        raise RuntimeError(f"Paley {kind} construction failed for q={q}")
    return out


@lru_cache(maxsize=64)
def hadamard_matrix(n: int) -> PmMatrix:
    """Some Hadamard matrix of order n from Sylvester, Paley and Kronecker products."""
    if n == 1:
        return PmMatrix.from_array([[1]])
    if n == 2:
        return S1
    if n % 4:
        raise ValueError(f"no Hadamard matrix of order {n}")
    if n & (n - 1) == 0:
        return sylvester(n.bit_length() - 1)
    pk = prime_power(n - 1)
    if pk and pk[0] != 2 and (n - 1) % 4 == 3:
        return paley_hadamard(n - 1, "I")
    pk = prime_power(n // 2 - 1)
    if n // 2 - 1 > 1 and pk and pk[0] != 2 and (n // 2 - 1) % 4 == 1:
        return paley_hadamard(n // 2 - 1, "II")
    for d in range(2, n // 2 + 1):
        if n % d == 0 and (d <= 2 or d % 4 == 0) and (n // d <= 2 or (n // d) % 4 == 0):
            try:
                return hadamard_matrix(d).kronecker(hadamard_matrix(n // d))
            except ValueError:
                continue
    raise ValueError(f"no construction available for a Hadamard matrix of order {n}")


# -- difference sets in Z_2^r -------------------------------------------------

def bent_difference_set(m: int) -> Z2Subset:
    """Support of f(x, y) = x.y on GF(2)^m x GF(2)^m; element (x << m) | y."""
    if not 1 <= m <= 7:
        raise ValueError("m must be in 1..7")
    q = 1 << m
    xs = np.arange(q, dtype=np.uint64)
    par = np.bitwise_count(xs[:, None] & xs[None, :]) & 1
    x, y = np.nonzero(par)
    return Z2Subset(2 * m, (x << m) | y)


def spread_union_pds(m: int, s: int, lines: Sequence[int] | None = None) -> Z2Subset:
    """Union of s spread lines with the identity removed."""
    spread = spread_lines(m)
    if lines is None:
        lines = range(s)
    lines = list(lines)
    if len(lines) != s or len(set(lines)) != s or not 0 <= min(lines, default=0) <= max(lines, default=0) <= len(spread) - 1:
        raise ValueError(f"need {s} distinct line indices in 0..{len(spread) - 1}")
    ind = np.zeros(1 << (2 * m), dtype=bool)
    for i in lines:
        ind |= spread[i].indicator
    ind[0] = False
    return Z2Subset.from_indicator(2 * m, ind)


def pds_to_bshm(d: Z2Subset) -> tuple[PmMatrix, BshmCertificate]:
    """Character table of Z_2^r split by the rows indexed by D."""
    pp = verify_pds_char(d)
    h = character_table(d.r)
    cert = verify_bshm(h, d.elements)
    a, b = pp.char_values
    if (cert.a, cert.b) != (a, b):
        raise RuntimeError(f"certificate values {(cert.a, cert.b)} disagree with character sums {(a, b)}")
    return h, cert


# -- packings -----------------------------------------------------------------------

def _check_partition(partition: Sequence[Sequence[int]], t: int) -> list[list[int]]:
    parts = [sorted(int(i) for i in p) for p in partition]
    flat = sorted(i for p in parts for i in p)
    if flat != list(range(t)) or any(not p for p in parts):
        raise ValueError(f"partition must split 0..{t - 1} into nonempty parts")
    return parts


def packing_to_multibshm(m: int, partition: Sequence[Sequence[int]], j: int,
                         check_unions: bool = True) -> tuple[PmMatrix, list[BshmCertificate]]:
    """Rows of the character table of Z_2^{2m} grouped by unions of spread lines.

    ``partition`` groups the 2^m + 1 line indices into blocks; block ``j``
    is certified together with the all-ones row, every other block alone.
    With ``check_unions`` every union of blocks is verified as well.
    """
    spread = spread_lines(m)
    parts = _check_partition(partition, len(spread))
    if not 0 <= j < len(parts):
        raise ValueError("j must index a block")
    delta = 1 << m
    sets = []
    for p in parts:
        ind = np.zeros(1 << (2 * m), dtype=bool)
        for i in p:
            ind |= spread[i].indicator
        ind[0] = False
        sets.append(Z2Subset.from_indicator(2 * m, ind))
    verify_packing(sets, delta, [-len(p) for p in parts])

    order = [0] + [x for s in sets for x in s.elements]
    h = character_table(2 * m).permute_rows(order)
    spans, start = [], 1
    for s in sets:
        spans.append(list(range(start, start + len(s))))
        start += len(s)

    certs = []
    for u, rows in enumerate(spans):
        alpha = -len(parts[u])
        if u == j:
            cert = verify_bshm(h, [0] + rows)
            expect = (len(rows) + 1, delta + alpha + 1, alpha + 1)
        else:
            cert = verify_bshm(h, rows)
            expect = (len(rows), delta + alpha, alpha)
        if (cert.ell, cert.a, cert.b) != expect:
            raise RuntimeError(f"block {u}: got {(cert.ell, cert.a, cert.b)}, expected {expect}")
        certs.append(cert)
    if check_unions:
        for k in range(2, len(spans) + 1):
            for combo in combinations(range(len(spans)), k):
                verify_bshm(h, [x for u in combo for x in spans[u]])
    return h, certs


# -- Kronecker-type constructions ---------------------------------------------------

def kronecker_bshm(h: PmMatrix, rows, k: PmMatrix) -> tuple[PmMatrix, BshmCertificate]:
    """(n, ell, ell, 0) split of H and Hadamard K of order m -> (nm, ell m, ell m, 0)."""
    rows = as_subset(rows)
    cert = verify_bshm(h, rows)
    if cert.b != 0 or cert.a != cert.ell:
        raise ParamMismatch(f"need (a, b) = (ell, 0), got {(cert.a, cert.b)}")
    if not k.is_hadamard():
        raise ParamMismatch("second factor is not Hadamard")
    m = k.n_rows
    big = h.kronecker(k)
    new_rows = [i * m + t for i in rows for t in range(m)]
    return big, verify_bshm(big, new_rows)


def construct_ns_n_n_0(hn: PmMatrix, hs: PmMatrix) -> tuple[PmMatrix, BshmCertificate]:
    """normalise(H_s) (x) H_n split by its first n rows: (ns, n, n, 0)."""
    n, s = hn.n_rows, hs.n_rows
    if s < 2:
        raise ValueError("need s >= 2")
    big = hs.normalize_first_row().kronecker(hn)
    return big, verify_bshm(big, range(n))


def construct_n_2_2_0(h: PmMatrix) -> tuple[PmMatrix, BshmCertificate]:
    """Normalise the first row; rows {0, 1} give (n, 2, 2, 0)."""
    hn = h.normalize_first_row()
    return hn, verify_bshm(hn, [0, 1])


def b0_to_bm1(h: PmMatrix, rows) -> tuple[PmMatrix, BshmCertificate]:
    """(4rs, 4s, 4s, 0) -> (4rs, 4s-1, 4s-1, -1).

    Each column class is negated according to its entry in the last row
    of the block, which turns that row into the all-ones row; the remaining
    rows carry the new split.
    """
    rows = as_subset(rows)
    perm, lmat = structure_decompose(h, rows)
    cert = verify_bshm(h, rows)
    if cert.b != 0:
        raise ParamMismatch("need b = 0")
    n_cls = lmat.n_cols
    flip = lmat.bits[-1]
    cols = [c for i, c in enumerate(perm) if flip[i % n_cls]]
    h2 = h.negate_columns(cols)
    last = rows.indices[-1]
    if h2.all_ones_rows() != [last]:
        raise RuntimeError("column negation did not produce the all-ones row")
    new_rows = RowSubset(rows.indices[:-1])
    new = verify_bshm(h2, new_rows)
    if (new.ell, new.a, new.b) != (cert.ell - 1, cert.ell - 1, -1):
        raise RuntimeError(f"unexpected parameters {new.params}")
    back_rows, back = add_allones_row(h2, new_rows)
    if back.params != cert.params:
        raise RuntimeError("round trip through the all-ones row failed")
    return h2, new
