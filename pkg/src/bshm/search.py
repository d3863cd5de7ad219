"""Exhaustive searches with sharding and checkpoint/resume.

Row subsets are visited in colex order.  The rank range is cut into
``shards`` equal blocks; a block is the unit of checkpointing and of
parallel work, so the result list never depends on the worker count.

Checkpoint files hold certificate JSON lines followed by a line
``SHARD <matrix-hash> <ell> <block-index> done`` once the block finished;
JSON lines without a closing SHARD line are discarded on resume.
"""
from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations

import numpy as np

from .core import BshmCertificate, verify_bshm
from .errors import BudgetExceeded, NotHadamard
from .pm_matrix import PmMatrix, RowSubset, _pack
from .z2 import MAX_RANK, Z2Subset

DS_BUDGET = 10 ** 7
BSHM_BUDGET = 10 ** 8
PREFIX_PAIRS = 64


def search_difference_set(r: int, k: int, lam: int, budget: int = DS_BUDGET) -> list[Z2Subset]:
    """All k-subsets of Z_2^r minus 0 on which every nonzero difference occurs lam times."""
    if not 1 <= r <= MAX_RANK:
        raise ValueError(f"rank must be in 1..{MAX_RANK}")
    v = 1 << r
    if not 0 < k < v:
        raise ValueError("need 0 < k < 2^r")
    if math.comb(v - 1, k) > budget:
        raise BudgetExceeded(f"C({v - 1}, {k}) subsets exceed the budget {budget}")
    if k * (k - 1) != lam * (v - 1):
        return []
    hits = []
    target = np.full(v - 1, lam)
    for combo in combinations(range(1, v), k):
        e = np.asarray(combo)
        counts = np.bincount((e[:, None] ^ e[None, :]).ravel(), minlength=v)
        if np.array_equal(counts[1:], target):
            hits.append(Z2Subset(r, combo))
    return hits


# -- colex enumeration ----------------------------------------------------------

def colex_unrank(rank: int, n: int, k: int) -> list[int]:
    out = []
    for i in range(k, 0, -1):
        c = i - 1
        while math.comb(c + 1, i) <= rank:
            c += 1
        rank -= math.comb(c, i)
        out.append(c)
    out.reverse()
    return out


def colex_rank(combo) -> int:
    return sum(math.comb(c, i + 1) for i, c in enumerate(sorted(combo)))


def _colex_next(c: list[int]) -> bool:
    k = len(c)
    for i in range(k):
        if i == k - 1 or c[i] + 1 < c[i + 1]:
            c[i] += 1
            for j in range(i):
                c[j] = j
            return True
    return False


def _block_bounds(total: int, shards: int, block: int) -> tuple[int, int]:
    size = -(-total // shards)
    return block * size, min(total, (block + 1) * size)


def _scan_block(bits: np.ndarray, ell: int, targets, lo: int, hi: int) -> list[tuple[int, ...]]:
    h = PmMatrix(bits)
    n = h.shape[0]
    planes = h.col_plane
    iu, ju = np.triu_indices(n, 1)
    diff = planes[iu] ^ planes[ju]  # (pairs, words)
    allowed = None if targets is None else np.asarray(sorted(set(targets)))
    head = diff[:PREFIX_PAIRS]
    hits = []
    if lo >= hi:
        return hits
    c = colex_unrank(lo, n, ell)
    mask = np.zeros((1, n), dtype=bool)
    for _ in range(hi - lo):
        mask[:] = False
        mask[0, c] = True
        m = _pack(mask)[0]
        # cheap pass over a prefix of the column pairs before the full scan
        if len(np.unique(ell - 2 * np.bitwise_count(head & m).sum(axis=1, dtype=np.int64))) > 2:
            _colex_next(c)
            continue
        dots = ell - 2 * np.bitwise_count(diff & m).sum(axis=1, dtype=np.int64)
        vals = np.unique(dots)
        if len(vals) <= 2 and (allowed is None or np.isin(vals, allowed).all()):
            hits.append(tuple(c))
        _colex_next(c)
    return hits


def _read_checkpoint(path, digest: str, ell: int) -> dict[int, list[BshmCertificate]]:
    done: dict[int, list[BshmCertificate]] = {}
    if not path or not os.path.exists(path):
        return done
    pending: list[BshmCertificate] = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("{"):
                pending.append(BshmCertificate.from_json(line))
                continue
            parts = line.split()
            if len(parts) != 5 or parts[0] != "SHARD":
                raise ValueError(f"bad checkpoint line {line!r}")
            if parts[1] == digest and int(parts[2]) == ell and parts[4] == "done":
                done[int(parts[3])] = pending
            pending = []
    return done


def _append_block(path, digest: str, ell: int, block: int, certs) -> None:
    with open(path, "a", encoding="utf-8") as fh:
        for c in certs:
            fh.write(c.to_json() + "\n")
        fh.write(f"SHARD {digest} {ell} {block} done\n")
        fh.flush()
        os.fsync(fh.fileno())


def search_bshm_rows(h: PmMatrix, ell: int, targets=None, *, shards: int = 1, checkpoint=None,
                     resume: bool = False, workers: int = 1,
                     budget: int = BSHM_BUDGET) -> list[tuple[RowSubset, BshmCertificate]]:
    """Every ell-subset of rows whose column inner products take at most two values.

    ``targets`` restricts the values to a given pair (a, b).  Results come in
    colex order of the row subsets.
    """
    if not h.is_hadamard():
        raise NotHadamard("search needs a Hadamard matrix")
    n = h.shape[0]
    if not 1 <= ell <= n - 1:
        raise ValueError("need 1 <= ell <= n - 1")
    total = math.comb(n, ell)
    if total > budget:
        raise BudgetExceeded(f"C({n}, {ell}) = {total} subsets exceed the budget {budget}")
    shards = max(1, min(shards, total))
    digest = h.digest()
    done = _read_checkpoint(checkpoint, digest, ell) if resume else {}
    if checkpoint and not resume and os.path.exists(checkpoint):
        os.remove(checkpoint)
    todo = [b for b in range(shards) if b not in done]

    def certify(rows):
        return verify_bshm(h, rows, check_hadamard=False)

    if workers > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futs = {b: pool.submit(_scan_block, h.bits, ell, targets, *_block_bounds(total, shards, b)) for b in todo}
            for b in todo:
                certs = [certify(rows) for rows in futs[b].result()]
                done[b] = certs
                if checkpoint:
                    _append_block(checkpoint, digest, ell, b, certs)
    else:
        for b in todo:
            certs = [certify(rows) for rows in _scan_block(h.bits, ell, targets, *_block_bounds(total, shards, b))]
            done[b] = certs
            if checkpoint:
                _append_block(checkpoint, digest, ell, b, certs)
    return [(RowSubset(c.rows), c) for b in range(shards) for c in done[b]]


def search_with_normalization(h: PmMatrix, ell: int, targets=None, **kw) -> dict[str, list]:
    """Search H as given and after making its first row all ones."""
    return {"raw": search_bshm_rows(h, ell, targets, **kw),
            "normalized": search_bshm_rows(h.normalize_first_row(), ell, targets, **kw)}


def load_results(path) -> list[BshmCertificate]:
    """Certificates of completed blocks in a checkpoint file."""
    out = []
    pending = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line.startswith("{"):
                pending.append(BshmCertificate.from_dict(json.loads(line)))
            elif line.startswith("SHARD"):
                out.extend(pending)
                pending = []
    return out
