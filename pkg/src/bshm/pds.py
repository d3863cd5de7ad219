"""Partial difference sets in Z_2^r and packings of them.

Two independent verifiers are provided: one counts differences directly,
the other reads the Walsh spectrum.  Vacuous parameters (alpha when
D = {0}, beta when D = G minus 0) are reported as 0 by both.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import FormatError, NotAPacking, NotAPds
from .z2 import MAX_RANK, Z2Subset, _parse_blocks, format_subset


@dataclass(frozen=True)
class PdsParams:
    v: int
    ell: int
    alpha: int
    beta: int
    contains_identity: bool
    # (a, b) nonprincipal character values, a >= b; only the spectral path fills it
    char_values: tuple[int, int] | None = field(default=None, compare=False)

    @property
    def gamma(self) -> int:
        return self.ell - (self.alpha if self.contains_identity else self.beta)

    def quadratic_identity_holds(self) -> bool:
        return self.ell ** 2 == self.gamma + (self.alpha - self.beta) * self.ell + self.beta * self.v


def _check_proper(d: Z2Subset) -> None:
    n = len(d)
    if n == 0 or n == d.order:
        raise NotAPds("a PDS must be nonempty and proper")


def difference_counts(d: Z2Subset) -> np.ndarray:
    """Number of ordered pairs (x, y) in D, x != y, with x ^ y = h, per h."""
    e = np.asarray(d.elements, dtype=np.int64)
    x = (e[:, None] ^ e[None, :]).ravel()
    counts = np.bincount(x, minlength=d.order)
    counts[0] = 0
    return counts


def verify_pds_definition(d: Z2Subset) -> PdsParams:
    _check_proper(d)
    counts = difference_counts(d)
    inside = d.indicator.copy()
    inside[0] = False
    outside = ~d.indicator
    outside[0] = False

    def constant(mask, name):
        vals = np.unique(counts[mask])
        if len(vals) > 1:
            where = [int(np.flatnonzero(mask & (counts == v))[0]) for v in vals[:2]]
            raise NotAPds(f"{name} not constant: values {vals.tolist()} at elements {where}")
        return int(vals[0]) if len(vals) else 0

    alpha = constant(inside, "alpha")
    beta = constant(outside, "beta")
    return PdsParams(d.order, len(d), alpha, beta, bool(d.indicator[0]))


def verify_pds_char(d: Z2Subset) -> PdsParams:
    _check_proper(d)
    spec = d.spectrum
    vals = sorted({int(x) for x in spec[1:]}, reverse=True)
    if len(vals) > 2:
        wit = [int(np.flatnonzero(spec[1:] == v)[0]) + 1 for v in vals[:3]]
        raise NotAPds(f"nonprincipal character sums take values {vals}; characters {wit}")
    a, b = vals[0], vals[-1]
    ell, v, has0 = len(d), d.order, bool(d.indicator[0])
    if has0:
        alpha, beta = ell + a * b, ell + a * b - a - b
    else:
        alpha, beta = ell + a * b + a + b, ell + a * b
    if ell == 1 and has0:
        alpha = 0
    if ell == v - 1 and not has0:
        beta = 0
    return PdsParams(v, ell, alpha, beta, has0, (a, b))


# -- packings -------------------------------------------------------------

@dataclass(frozen=True)
class PackingWitness:
    r: int
    delta: int
    base_sums: tuple[int, ...]
    # elevated[g] = index of the part whose sum is raised by delta at g (-1 at g = 0)
    elevated: np.ndarray = field(compare=False, repr=False)

    @property
    def t(self) -> int:
        return len(self.base_sums)


def verify_packing(parts: Sequence[Z2Subset], delta: int, base_sums: Sequence[int]) -> PackingWitness:
    parts = list(parts)
    base = tuple(int(a) for a in base_sums)
    if not parts:
        raise NotAPacking("empty packing")
    if len(base) != len(parts):
        raise NotAPacking(f"{len(parts)} parts but {len(base)} base sums")
    if delta == 0:
        raise NotAPacking("delta must be nonzero")
    r = parts[0].r
    if any(p.r != r for p in parts):
        raise NotAPacking("parts live in different groups")
    cover = np.zeros(1 << r, dtype=np.int64)
    for p in parts:
        cover += p.indicator
    if cover[0]:
        raise NotAPacking("identity lies in a part")
    if np.any(cover[1:] != 1):
        bad = int(np.flatnonzero(cover[1:] != 1)[0]) + 1
        raise NotAPacking(f"parts do not partition the nonidentity elements (element {bad} covered {cover[bad]} times)")
    if delta + sum(base) != -1:
        raise NotAPacking(f"consistency equation fails: delta + sum(a_i) = {delta + sum(base)}, must be -1")
    spec = np.stack([p.spectrum for p in parts])[:, 1:]
    a = np.asarray(base)[:, None]
    low, high = spec == a, spec == a + delta
    if not np.all(low | high):
        i, g = map(int, np.argwhere(~(low | high))[0])
        raise NotAPacking(f"part {i} has sum {int(spec[i, g])} at character {g + 1}, "
                          f"not in {{{base[i]}, {base[i] + delta}}}")
    per_char = high.sum(axis=0)
    if np.any(per_char != 1):
        g = int(np.flatnonzero(per_char != 1)[0])
        raise NotAPacking(f"character {g + 1} elevates {int(per_char[g])} parts; exactly one required")
    elevated = np.concatenate([[-1], np.argmax(high, axis=0)])
    elevated.setflags(write=False)
    return PackingWitness(r, int(delta), base, elevated)


def infer_base_sums(parts: Sequence[Z2Subset], delta: int) -> tuple[int, ...]:
    """Recover base sums from the spectra; single-valued parts default to unelevated."""
    sums, single = [], []
    for i, p in enumerate(parts):
        vals = sorted({int(x) for x in p.spectrum[1:]})
        if len(vals) == 2 and vals[1] - vals[0] == abs(delta):
            sums.append(vals[0] if delta > 0 else vals[1])
        elif len(vals) == 1:
            sums.append(vals[0])
            single.append(i)
        else:
            raise NotAPacking(f"part {i} has sums {vals}, incompatible with delta {delta}")
    if single and sum(sums) == -1:
        # every character is then elevated in one constant part
        sums[single[0]] -= delta
    return tuple(sums)


def format_packing(parts: Sequence[Z2Subset], delta: int, base_sums: Sequence[int] | None = None) -> str:
    r = parts[0].r
    out = [f"PACK {r} {len(parts)} {delta}"]
    if base_sums is not None:
        out.append("SUMS " + " ".join(str(a) for a in base_sums))
    text = "\n".join(out) + "\n"
    return text + "".join(format_subset(p) for p in parts)


def parse_packing(text: str) -> tuple[list[Z2Subset], int, tuple[int, ...] | None]:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty packing file")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "PACK":
        raise FormatError(f"bad header {lines[0]!r}; expected 'PACK <r> <t> <delta>'")
    try:
        r, t, delta = int(head[1]), int(head[2]), int(head[3])
    except ValueError as exc:
        raise FormatError(f"bad header {lines[0]!r}") from exc
    if not 0 <= r <= MAX_RANK or t < 1:
        raise FormatError("rank or part count out of range")
    body = lines[1:]
    sums = None
    if body and body[0].startswith("SUMS"):
        try:
            sums = tuple(int(x) for x in body[0].split()[1:])
        except ValueError as exc:
            raise FormatError(f"bad SUMS line {body[0]!r}") from exc
        if len(sums) != t:
            raise FormatError(f"SUMS lists {len(sums)} values for {t} parts")
        body = body[1:]
    parts = _parse_blocks(body, r)
    if len(parts) != t:
        raise FormatError(f"header promises {t} parts, found {len(parts)}")
    return parts, delta, sums


def read_packing(path):
    with open(path, encoding="ascii") as fh:
        return parse_packing(fh.read())


def union_check(parts: Sequence[Z2Subset], delta: int, base_sums: Sequence[int]) -> bool:
    """Brute force: every union of parts has sums in {sum a_I, sum a_I + delta}.

    Combined with ``delta + sum(a) = -1`` this is equivalent to
    :func:`verify_packing`; used as an oracle.
    """
    if delta + sum(base_sums) != -1:
        return False
    r = parts[0].r
    cover = sum(p.indicator.astype(int) for p in parts)
    if cover[0] or np.any(cover[1:] != 1):
        return False
    for k in range(1, len(parts) + 1):
        for idx in combinations(range(len(parts)), k):
            spec = sum(parts[i].spectrum for i in idx)[1:]
            s = sum(base_sums[i] for i in idx)
            if not np.all((spec == s) | (spec == s + delta)):
                return False
    return True
