"""Bit-packed +/-1 matrices.

Entries are stored as bits with 1 encoding -1, packed little-endian into
uint64 words.  Both a row plane and a column plane are kept so that row and
column inner products over a subset of the other axis reduce to
``len - 2 * popcount((x ^ y) & mask)``.
"""
from __future__ import annotations

import hashlib
from typing import Iterable, Sequence

import numpy as np

from .errors import FormatError, SizeLimitExceeded

MAX_ORDER = 1 << 14


def _pack(bits: np.ndarray) -> np.ndarray:
    """Pack a 2-d boolean array along axis 1 into uint64 words."""
    n, m = bits.shape
    width = max(1, (m + 63) // 64) * 64
    padded = np.zeros((n, width), dtype=np.uint8)
    padded[:, :m] = bits
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64)


def _popcount_rows(words: np.ndarray) -> np.ndarray:
    return np.bitwise_count(words).sum(axis=-1, dtype=np.int64)


class RowSubset:
    """An ordered set of distinct row indices.

    Indices keep the order they were given in; the packed mask ignores order.
    """

    __slots__ = ("indices", "_masks")

    def __init__(self, indices: Iterable[int]):
        idx = tuple(int(i) for i in indices)
        if len(set(idx)) != len(idx):
            raise ValueError("row subset has repeated indices")
        if any(i < 0 for i in idx):
            raise ValueError("row indices must be nonnegative")
        self.indices = idx
        self._masks: dict[int, np.ndarray] = {}

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __contains__(self, i) -> bool:
        return i in set(self.indices)

    def __eq__(self, other) -> bool:
        if isinstance(other, RowSubset):
            return self.indices == other.indices
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.indices)

    def __repr__(self) -> str:
        return f"RowSubset({list(self.indices)})"

    def sorted(self) -> "RowSubset":
        return RowSubset(sorted(self.indices))

    def complement(self, n: int) -> "RowSubset":
        s = set(self.indices)
        return RowSubset(i for i in range(n) if i not in s)

    def mask(self, n: int) -> np.ndarray:
        """Packed mask over ``n`` positions (cached per ``n``)."""
        m = self._masks.get(n)
        if m is None:
            if self.indices and max(self.indices) >= n:
                raise IndexError(f"row index {max(self.indices)} out of range for {n} rows")
            flags = np.zeros((1, n), dtype=bool)
            flags[0, list(self.indices)] = True
            m = _pack(flags)[0]
            m.setflags(write=False)
            self._masks[n] = m
        return m


def as_subset(rows) -> RowSubset:
    return rows if isinstance(rows, RowSubset) else RowSubset(rows)


class PmMatrix:
    """Immutable +/-1 matrix held as packed bit planes."""

    __slots__ = ("n_rows", "n_cols", "_bits", "_row_plane", "_col_plane")

    def __init__(self, bits: np.ndarray):
        bits = np.asarray(bits, dtype=bool)
        if bits.ndim != 2 or bits.size == 0:
            raise ValueError("a +/-1 matrix must be 2-d and nonempty")
        if max(bits.shape) > MAX_ORDER:
            raise SizeLimitExceeded(f"dimension {max(bits.shape)} exceeds the maximum {MAX_ORDER}")
        self.n_rows, self.n_cols = bits.shape
        self._bits = np.array(bits, dtype=bool)
        self._bits.setflags(write=False)
        self._row_plane = _pack(self._bits)
        self._col_plane = _pack(self._bits.T)
        self._row_plane.setflags(write=False)
        self._col_plane.setflags(write=False)

    # -- construction -------------------------------------------------
    @classmethod
    def from_array(cls, a) -> "PmMatrix":
        a = np.asarray(a)
        if a.ndim != 2:
            raise ValueError("expected a 2-d array")
        if not np.all((a == 1) | (a == -1)):
            raise ValueError("entries must be +1 or -1")
        return cls(a < 0)

    @classmethod
    def from_bits(cls, bits) -> "PmMatrix":
        return cls(np.asarray(bits, dtype=bool))

    # -- views --------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, self.n_cols)

    @property
    def bits(self) -> np.ndarray:
        return self._bits

    @property
    def row_plane(self) -> np.ndarray:
        return self._row_plane

    @property
    def col_plane(self) -> np.ndarray:
        return self._col_plane

    def to_array(self, dtype=np.int8) -> np.ndarray:
        return (1 - 2 * self._bits.astype(dtype)).astype(dtype)

    def entry(self, i: int, j: int) -> int:
        return -1 if self._bits[i, j] else 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, PmMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._bits, other._bits))

    def __hash__(self) -> int:
        return hash(self.digest())

    def __repr__(self) -> str:
        return f"PmMatrix({self.n_rows}x{self.n_cols})"

    def digest(self) -> str:
        """Short content hash, stable across runs."""
        h = hashlib.sha256(f"{self.n_rows}x{self.n_cols}:".encode())
        h.update(np.packbits(self._bits, axis=None).tobytes())
        return h.hexdigest()[:16]

    # -- inner products -----------------------------------------------
    def column_dot(self, rows, i: int, j: int) -> int:
        """Inner product of columns ``i`` and ``j`` restricted to ``rows``."""
        rows = as_subset(rows)
        mask = rows.mask(self.n_rows)
        diff = (self._col_plane[i] ^ self._col_plane[j]) & mask
        return len(rows) - 2 * int(np.bitwise_count(diff).sum())

    def row_dot(self, i: int, j: int, cols=None) -> int:
        if cols is None:
            diff = self._row_plane[i] ^ self._row_plane[j]
            return self.n_cols - 2 * int(np.bitwise_count(diff).sum())
        cols = as_subset(cols)
        diff = (self._row_plane[i] ^ self._row_plane[j]) & cols.mask(self.n_cols)
        return len(cols) - 2 * int(np.bitwise_count(diff).sum())

    def column_gram(self, rows=None, chunk: int = 64) -> np.ndarray:
        """Matrix of column inner products over ``rows`` (all rows if None)."""
        if rows is None:
            planes, length = self._col_plane, self.n_rows
        else:
            rows = as_subset(rows)
            planes, length = self._col_plane & rows.mask(self.n_rows), len(rows)
        return _gram(planes, length, chunk)

    def row_gram(self, chunk: int = 64) -> np.ndarray:
        return _gram(self._row_plane, self.n_cols, chunk)

    def is_hadamard(self) -> bool:
        if self.n_rows != self.n_cols:
            return False
        n = self.n_rows
        if n > 2 and n % 4:
            return False
        return bool(np.array_equal(self.row_gram(), n * np.eye(n, dtype=np.int64)))

    # -- transforms ---------------------------------------------------
    def negate_rows(self, rows: Iterable[int]) -> "PmMatrix":
        b = self._bits.copy()
        b[list(rows), :] ^= True
        return PmMatrix(b)

    def negate_columns(self, cols: Iterable[int]) -> "PmMatrix":
        b = self._bits.copy()
        b[:, list(cols)] ^= True
        return PmMatrix(b)

    def permute_rows(self, perm: Sequence[int]) -> "PmMatrix":
        """Row ``k`` of the result is row ``perm[k]`` of ``self``."""
        perm = list(perm)
        if sorted(perm) != list(range(self.n_rows)):
            raise ValueError("not a permutation of the rows")
        return PmMatrix(self._bits[perm, :])

    def permute_columns(self, perm: Sequence[int]) -> "PmMatrix":
        perm = list(perm)
        if sorted(perm) != list(range(self.n_cols)):
            raise ValueError("not a permutation of the columns")
        return PmMatrix(self._bits[:, perm])

    def normalize_first_row(self) -> "PmMatrix":
        """Negate columns so that row 0 becomes all ones."""
        return PmMatrix(self._bits ^ self._bits[0:1, :])

    def transpose(self) -> "PmMatrix":
        return PmMatrix(self._bits.T)

    def kronecker(self, other: "PmMatrix") -> "PmMatrix":
        """``self (x) other``, entry ((i,t),(j,u)) = self[i,j] * other[t,u]."""
        a, b = self._bits, other._bits
        out = a[:, None, :, None] ^ b[None, :, None, :]
        return PmMatrix(out.reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]))

    def take_rows(self, rows) -> "PmMatrix":
        return PmMatrix(self._bits[list(as_subset(rows).indices), :])

    def all_ones_rows(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(~self._bits.any(axis=1))]


def _gram(planes: np.ndarray, length: int, chunk: int) -> np.ndarray:
    n = planes.shape[0]
    out = np.empty((n, n), dtype=np.int64)
    for lo in range(0, n, chunk):
        hi = min(n, lo + chunk)
        x = planes[lo:hi, None, :] ^ planes[None, :, :]
        out[lo:hi] = length - 2 * _popcount_rows(x)
    return out


# -- text format ----------------------------------------------------------

def format_matrix(h: PmMatrix) -> str:
    lines = [f"HAD {h.n_rows} {h.n_cols}"]
    table = np.where(h.bits, ord("-"), ord("+")).astype(np.uint8)
    lines.extend(row.tobytes().decode("ascii") for row in table)
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> PmMatrix:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise FormatError("empty matrix file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "HAD":
        raise FormatError(f"bad header {lines[0]!r}; expected 'HAD <rows> <cols>'")
    try:
        n_rows, n_cols = int(head[1]), int(head[2])
    except ValueError as exc:
        raise FormatError(f"bad header {lines[0]!r}") from exc
    if n_rows <= 0 or n_cols <= 0:
        raise FormatError("matrix dimensions must be positive")
    if max(n_rows, n_cols) > MAX_ORDER:
        raise SizeLimitExceeded(f"dimension exceeds the maximum {MAX_ORDER}")
    body = lines[1:]
    if len(body) != n_rows:
        raise FormatError(f"header promises {n_rows} rows, found {len(body)}")
    bits = np.zeros((n_rows, n_cols), dtype=bool)
    for r, row in enumerate(body):
        if len(row) != n_cols:
            raise FormatError(f"row {r} has {len(row)} entries, expected {n_cols}")
        bad = set(row) - {"+", "-"}
        if bad:
            raise FormatError(f"row {r} has invalid characters {sorted(bad)}")
        bits[r] = np.frombuffer(row.encode("ascii"), dtype=np.uint8) == ord("-")
    return PmMatrix(bits)


def read_matrix(path) -> PmMatrix:
    with open(path, encoding="ascii") as fh:
        return parse_matrix(fh.read())


def write_matrix(path, h: PmMatrix) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_matrix(h))
