"""Characters of Z_2^r, Walsh spectra, GF(2^m) and Desarguesian spreads.

Group elements are integers in ``[0, 2^r)``; the group operation is XOR and
the character indexed by ``g`` is ``s -> (-1)^popcount(g & s)``.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable

import numpy as np

from .errors import FormatError
from .pm_matrix import PmMatrix

MAX_RANK = 14

# Fixed defining polynomials, bit i = coefficient of x^i.
GF2M_MODULI = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
}


def char_value(g: int, s: int) -> int:
    return -1 if (g & s).bit_count() & 1 else 1


@lru_cache(maxsize=None)
def _parity_table(r: int) -> np.ndarray:
    # doubling: T_{k+1} = [[T, T], [T, ~T]] with the new bit most significant
    t = np.zeros((1, 1), dtype=bool)
    for _ in range(r):
        t = np.block([[t, t], [t, ~t]])
    t.setflags(write=False)
    return t


def character_table(r: int) -> PmMatrix:
    """Character table of Z_2^r; equals the Sylvester matrix of order 2^r."""
    if not 0 <= r <= MAX_RANK:
        raise ValueError(f"rank must be in [0, {MAX_RANK}]")
    return PmMatrix(_parity_table(r))


def fwht(values: np.ndarray) -> np.ndarray:
    """Unnormalised Walsh-Hadamard transform along the last axis."""
    a = np.array(values, dtype=np.int64, copy=True)
    n = a.shape[-1]
    if n & (n - 1):
        raise ValueError("length must be a power of two")
    h = 1
    while h < n:
        a = a.reshape(a.shape[:-1] + (n // (2 * h), 2, h))
        x, y = a[..., 0, :].copy(), a[..., 1, :].copy()
        a[..., 0, :] = x + y
        a[..., 1, :] = x - y
        a = a.reshape(a.shape[:-3] + (n,))
        h *= 2
    return a


class Z2Subset:
    """A subset of Z_2^r with its Walsh spectrum computed once."""

    __slots__ = ("r", "indicator", "spectrum")

    def __init__(self, r: int, elements: Iterable[int]):
        if not 0 <= r <= MAX_RANK:
            raise ValueError(f"rank must be in [0, {MAX_RANK}]")
        v = 1 << r
        ind = np.zeros(v, dtype=bool)
        for x in elements:
            x = int(x)
            if not 0 <= x < v:
                raise ValueError(f"element {x} outside Z_2^{r}")
            if ind[x]:
                raise ValueError(f"duplicate element {x}")
            ind[x] = True
        ind.setflags(write=False)
        self.r = r
        self.indicator = ind
        spec = fwht(ind.astype(np.int64))
        spec.setflags(write=False)
        self.spectrum = spec

    @classmethod
    def from_indicator(cls, r: int, indicator) -> "Z2Subset":
        return cls(r, np.flatnonzero(np.asarray(indicator, dtype=bool)))

    @property
    def order(self) -> int:
        return 1 << self.r

    @property
    def elements(self) -> list[int]:
        return [int(x) for x in np.flatnonzero(self.indicator)]

    def __len__(self) -> int:
        return int(self.indicator.sum())

    def __contains__(self, x) -> bool:
        return 0 <= x < self.order and bool(self.indicator[x])

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Z2Subset):
            return NotImplemented
        return self.r == other.r and bool(np.array_equal(self.indicator, other.indicator))

    def __hash__(self) -> int:
        return hash((self.r, self.indicator.tobytes()))

    def __repr__(self) -> str:
        return f"Z2Subset(r={self.r}, size={len(self)})"

    def union(self, other: "Z2Subset") -> "Z2Subset":
        return Z2Subset.from_indicator(self.r, self.indicator | other.indicator)

    def with_identity(self) -> "Z2Subset":
        ind = self.indicator.copy()
        ind[0] = True
        return Z2Subset.from_indicator(self.r, ind)

    def without_identity(self) -> "Z2Subset":
        ind = self.indicator.copy()
        ind[0] = False
        return Z2Subset.from_indicator(self.r, ind)

    def nonprincipal_values(self) -> list[int]:
        return sorted({int(x) for x in self.spectrum[1:]}, reverse=True)


def walsh_spectrum(d: Z2Subset) -> np.ndarray:
    """chi_g(D) for every g, indexed by g."""
    return d.spectrum


# -- GF(2^m) --------------------------------------------------------------

def _polymod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a and a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def is_irreducible_gf2(poly: int) -> bool:
    """Trial division by every polynomial of degree <= deg/2."""
    deg = poly.bit_length() - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for q in range(1 << d, 1 << (d + 1)):
            if _polymod(poly, q) == 0:
                return False
    return True


class Gf2mField:
    """GF(2^m) with elements encoded as m-bit integers."""

    def __init__(self, m: int, modulus: int | None = None):
        if m not in GF2M_MODULI and modulus is None:
            raise ValueError(f"no fixed modulus for m={m}; supported 1..7")
        self.m = m
        self.modulus = GF2M_MODULI[m] if modulus is None else modulus
        if self.modulus.bit_length() - 1 != m or not is_irreducible_gf2(self.modulus):
            raise ValueError(f"modulus {self.modulus:#b} is not irreducible of degree {m}")
        self.size = 1 << m
        self._mul = self._table()

    def _table(self) -> np.ndarray:
        q = self.size
        t = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(a, q):
                p = 0
                x, y = a, b
                while y:
                    if y & 1:
                        p ^= x
                    x <<= 1
                    y >>= 1
                t[a, b] = t[b, a] = _polymod(p, self.modulus)
        t.setflags(write=False)
        return t

    def mul(self, a: int, b: int) -> int:
        return int(self._mul[a, b])

    @property
    def mul_table(self) -> np.ndarray:
        return self._mul


def spread_lines(m: int) -> list[Z2Subset]:
    """The 2^m + 1 lines U_lambda = {(x, lambda x)} and U_inf = {(0, y)}.

    A pair (x, y) of GF(2^m) elements is the group element ``(x << m) | y``.
    Lines come in the order lambda = 0, 1, ..., 2^m - 1, then infinity.
    """
    f = Gf2mField(m)
    q = f.size
    xs = np.arange(q)
    lines = [Z2Subset(2 * m, (xs << m) | f.mul_table[lam]) for lam in range(q)]
    lines.append(Z2Subset(2 * m, xs))
    return lines


# -- text format ----------------------------------------------------------

def format_subset(d: Z2Subset) -> str:
    lines = [f"Z2 {d.r}"]
    lines.extend(format(x, f"0{d.r}b") if d.r else "" for x in d.elements)
    return "\n".join(lines) + "\n"


def _parse_blocks(lines: list[str], r: int | None = None) -> list[Z2Subset]:
    blocks: list[tuple[int, list[int]]] = []
    for ln in lines:
        if ln.startswith("Z2"):
            parts = ln.split()
            if len(parts) != 2:
                raise FormatError(f"bad subset header {ln!r}")
            try:
                rank = int(parts[1])
            except ValueError as exc:
                raise FormatError(f"bad subset header {ln!r}") from exc
            if not 0 <= rank <= MAX_RANK:
                raise FormatError(f"rank {rank} out of range")
            if r is not None and rank != r:
                raise FormatError(f"subset rank {rank} does not match {r}")
            blocks.append((rank, []))
            continue
        if not blocks:
            raise FormatError("element before 'Z2 <r>' header")
        rank, elems = blocks[-1]
        if len(ln) != rank or set(ln) - {"0", "1"}:
            raise FormatError(f"element {ln!r} is not a {rank}-bit binary string")
        elems.append(int(ln, 2))
    out = []
    for rank, elems in blocks:
        if len(set(elems)) != len(elems):
            raise FormatError("duplicate element in subset")
        out.append(Z2Subset(rank, elems))
    return out


def parse_subset(text: str) -> Z2Subset:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty subset file")
    blocks = _parse_blocks(lines)
    if len(blocks) != 1:
        raise FormatError(f"expected one subset, found {len(blocks)}")
    return blocks[0]


def read_subset(path) -> Z2Subset:
    with open(path, encoding="ascii") as fh:
        return parse_subset(fh.read())


def write_subset(path, d: Z2Subset) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_subset(d))
