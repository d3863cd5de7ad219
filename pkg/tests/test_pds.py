import random
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bshm.constructions import bent_difference_set, spread_union_pds
from bshm.errors import FormatError, NotAPacking, NotAPds
from bshm.pds import (format_packing, infer_base_sums, parse_packing, union_check, verify_packing, verify_pds_char,
                      verify_pds_definition)
from bshm.search import search_difference_set
from bshm.z2 import Z2Subset, spread_lines


def both(d):
    """Outcome of each verifier: params without the spectral extras, or None on rejection."""
    out = []
    for fn in (verify_pds_definition, verify_pds_char):
        try:
            out.append(fn(d))
        except NotAPds:
            out.append(None)
    return out


def assert_agree(d):
    p, q = both(d)
    assert (p is None) == (q is None), d.elements
    if p is not None:
        assert p == q
        assert q.quadratic_identity_holds()


def test_all_small_subsets_of_rank_4_agree():
    count = 0
    for k in range(1, 7):
        for combo in combinations(range(16), k):
            assert_agree(Z2Subset(4, combo))
            count += 1
    assert count == 14892


@settings(max_examples=300)
@given(st.sampled_from([5, 6]).flatmap(
    lambda r: st.tuples(st.just(r), st.sets(st.integers(0, (1 << r) - 1), min_size=1, max_size=(1 << r) - 1))))
def test_random_subsets_agree(rs):
    assert_agree(Z2Subset(*rs))


def test_singleton_boundary():
    p = verify_pds_definition(Z2Subset(4, [5]))
    assert (p.v, p.ell, p.alpha, p.beta) == (16, 1, 0, 0)
    assert verify_pds_char(Z2Subset(4, [5])) == p


def test_found_difference_set_is_pds():
    d = search_difference_set(4, 6, 2)[0]
    p = verify_pds_char(d)
    assert (p.alpha, p.beta) == (2, 2)


def test_spread_union_m3_s2():
    p = verify_pds_char(spread_union_pds(3, 2))
    assert (p.v, p.ell, p.alpha, p.beta, p.char_values) == (64, 14, 6, 2, (6, -2))
    assert verify_pds_definition(spread_union_pds(3, 2)) == p


def test_bent_and_full_complement():
    p = verify_pds_char(bent_difference_set(2))
    assert (p.v, p.ell, p.char_values) == (16, 6, (2, -2))
    full = verify_pds_char(Z2Subset(4, range(1, 16)))
    assert full.char_values == (-1, -1)


def test_random_non_pds_rejected():
    rng = random.Random(7)
    hits = 0
    while hits < 20:
        d = Z2Subset(4, rng.sample(range(16), 7))
        p, q = both(d)
        assert (p is None) == (q is None)
        if q is None:
            hits += 1
            with pytest.raises(NotAPds):
                verify_pds_char(d)


def test_improper_rejected():
    with pytest.raises(NotAPds):
        verify_pds_char(Z2Subset(3, []))
    with pytest.raises(NotAPds):
        verify_pds_definition(Z2Subset(3, range(8)))


# -- packings --------------------------------------------------------------------

def _lines_minus_identity(m):
    return [l.without_identity() for l in spread_lines(m)]


def _merge(parts, partition):
    return [Z2Subset(parts[0].r, [e for i in blk for e in parts[i].elements]) for blk in partition]


def test_lp_packing_m2():
    parts = _lines_minus_identity(2)
    w = verify_packing(parts, 4, [-1] * 5)
    assert w.t == 5
    spec = np.stack([p.spectrum for p in parts])[:, 1:]
    assert np.all(spec.sum(axis=0) == -1)
    assert np.all(w.elevated[1:] >= 0)


def test_single_part_fails_consistency():
    with pytest.raises(NotAPacking, match="consistency"):
        verify_packing([Z2Subset(3, range(1, 8))], 4, [-1])


def test_non_covering_parts_rejected():
    with pytest.raises(NotAPacking):
        verify_packing([Z2Subset(4, [1, 2]), Z2Subset(4, [3]), Z2Subset(4, [4, 5])], 4, [-1, -1, -1])


def _random_partition(rng, t, parts):
    labels = [rng.randrange(parts) for _ in range(t)]
    blocks = [[i for i in range(t) if labels[i] == b] for b in range(parts)]
    return [b for b in blocks if b]


def _near_miss(rng, parts):
    """Move one element between two parts."""
    r = parts[0].r
    parts = [list(p.elements) for p in parts]
    i, j = rng.sample(range(len(parts)), 2)
    if len(parts[i]) > 1:
        parts[j].append(parts[i].pop(rng.randrange(len(parts[i]))))
    return [Z2Subset(r, p) for p in parts]


def packing_agrees(parts, delta, sums) -> bool:
    try:
        verify_packing(parts, delta, sums)
        ok = True
    except NotAPacking:
        ok = False
    return ok == union_check(parts, delta, sums)


def test_elevation_equals_all_unions():
    rng = random.Random(11)
    checked = valid = 0
    for m in (1, 2, 3, 4):
        lines = _lines_minus_identity(m)
        delta = 1 << m
        for _ in range(40):
            blocks = _random_partition(rng, len(lines), rng.randint(1, 5))
            parts = _merge(lines, blocks)
            sums = [-len(b) for b in blocks]
            assert packing_agrees(parts, delta, sums)
            valid += union_check(parts, delta, sums)
            checked += 1
            if len(parts) > 1:
                bad = _near_miss(rng, parts)
                if all(len(p) for p in bad):
                    assert packing_agrees(bad, delta, sums)
                    checked += 1
            wrong = list(sums)
            wrong[0] += rng.choice([-1, 1])
            assert packing_agrees(parts, delta, wrong)
            assert packing_agrees(parts, -delta, sums)
    assert valid > 50 and checked > 200


def test_packing_format_roundtrip_and_inference():
    lines = _lines_minus_identity(2)
    parts = _merge(lines, [[0], [1, 2], [3, 4]])
    sums = (-1, -2, -2)
    for given_sums in (sums, None):
        text = format_packing(parts, 4, given_sums)
        got, delta, s = parse_packing(text)
        assert got == parts and delta == 4 and s == given_sums
    assert infer_base_sums(parts, 4) == sums


@pytest.mark.parametrize("text", ["", "PACK 2 1\n", "PACK 2 2 4\nZ2 2\n01\n", "PACK 2 1 4\nSUMS 1 2\nZ2 2\n01\n"])
def test_packing_parse_errors(text):
    with pytest.raises(FormatError):
        parse_packing(text)
