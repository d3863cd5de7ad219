import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bshm import constructions as C
from bshm.core import (BshmCertificate, SrgParams, add_allones_row, associated_graph, extract_pbd,
                       extract_unbiased_mate, primitivity, remove_allones_row, srg_params, structure_decompose, switch,
                       to_regular_form, verify_bshm)
from bshm.errors import (NoAllOnesRow, NotHadamard, NotStronglyRegular, NotRegular, ParamMismatch, TooManyValues)
from bshm.pm_matrix import PmMatrix
from bshm.z2 import character_table

import corpus
from invariants import check, neighbour_count_srg


@pytest.fixture(scope="module")
def bent16():
    d = C.bent_difference_set(2)
    return character_table(4), list(d.elements)


def test_bent_certificate(bent16):
    h, rows = bent16
    c = verify_bshm(h, rows)
    assert c.params == (16, 6, 2, -2)
    assert c.kind == "equiangular" and c.graph == SrgParams(16, 6, 2, 2) and c.primitive


def test_two_rows_of_normalized_order_8():
    h = C.hadamard_matrix(8).normalize_first_row()
    c = verify_bshm(h, [0, 1])
    assert c.params == (8, 2, 2, 0) and c.kind == "type2"
    assert c.graph == SrgParams(8, 3, 2, 0) and not c.primitive


def test_spread_union_certificate():
    d = C.spread_union_pds(3, 2)
    c = verify_bshm(character_table(6), d.elements)
    assert (c.params, c.kind, c.k_a, c.graph) == ((64, 14, 6, -2), "type1", 14, SrgParams(64, 14, 6, 2))


def test_certificate_json_roundtrip(bent16):
    c = verify_bshm(*bent16)
    d = json.loads(c.to_json())
    assert list(d) == ["schema", "n", "ell", "rows", "a", "b", "kind", "k_a", "graph", "primitive", "allones_row",
                       "trivial"]
    assert BshmCertificate.from_json(c.to_json()) == c


def test_errors():
    with pytest.raises(NotHadamard):
        verify_bshm(PmMatrix.from_array(np.ones((4, 4), dtype=int)), [0])
    h = C.hadamard_matrix(16)
    with pytest.raises(TooManyValues) as exc:
        verify_bshm(h, [1, 2, 4, 8, 3])
    assert len(exc.value.values) > 2 and exc.value.witnesses


def test_trivial_and_degenerate():
    h = C.hadamard_matrix(8).normalize_first_row()
    c = verify_bshm(h, [3])
    assert c.trivial and (c.a, c.b) == (1, -1) and c.graph is None
    c = verify_bshm(h, range(1, 8))
    assert c.trivial and c.kind == "degenerate" and (c.a, c.b) == (-1, -1)


def test_associated_graph_complement(bent16):
    h, rows = bent16
    ga, gb = associated_graph(h, rows, 2), associated_graph(h, rows, -2)
    assert np.array_equal(ga + gb + np.eye(16, dtype=np.uint8), np.ones((16, 16), dtype=np.uint8))


def test_srg_params_examples():
    adj = np.kron(np.eye(12, dtype=np.uint8), np.ones((4, 4), dtype=np.uint8))
    np.fill_diagonal(adj, 0)
    assert srg_params(adj) == SrgParams(48, 3, 2, 0)
    assert not primitivity(SrgParams(48, 3, 2, 0))
    assert primitivity(SrgParams(16, 6, 2, 2)) and primitivity(SrgParams(64, 21, 8, 6))
    # Petersen graph, then a degree-preserving edge switch that breaks lambda/mu
    pet = np.zeros((10, 10), dtype=np.uint8)
    for i in range(5):
        for x, y in ((i, (i + 1) % 5), (5 + i, 5 + (i + 2) % 5), (i, 5 + i)):
            pet[x, y] = pet[y, x] = 1
    assert srg_params(pet) == SrgParams(10, 3, 0, 1)
    bad = pet.copy()
    bad[0, 1] = bad[1, 0] = bad[5, 7] = bad[7, 5] = 0
    bad[0, 7] = bad[7, 0] = bad[1, 5] = bad[5, 1] = 1
    assert bad.sum(axis=1).tolist() == [3] * 10
    with pytest.raises(NotStronglyRegular):
        srg_params(bad)
    bad[0, 2] = bad[2, 0] = 1
    with pytest.raises(NotRegular):
        srg_params(bad)


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 24).flatmap(lambda v: st.lists(st.booleans(), min_size=v * (v - 1) // 2,
                                                        max_size=v * (v - 1) // 2).map(lambda e: (v, e))))
def test_srg_params_matches_neighbour_counting(ve):
    v, edges = ve
    adj = np.zeros((v, v), dtype=np.uint8)
    adj[np.triu_indices(v, 1)] = edges
    adj = adj | adj.T
    want = neighbour_count_srg(adj)
    try:
        got = srg_params(adj).as_tuple()
    except (NotRegular, NotStronglyRegular):
        got = None
    assert got == want


def test_switch_examples():
    h = character_table(6)
    rows = C.spread_union_pds(3, 2).elements
    c = verify_bshm(h, rows)
    s = switch(h, rows)
    assert s.params == (64, 50, 2, -6) and s.kind == "type2"
    assert s.graph == c.graph.complement()
    back = switch(h, s.rows)
    assert back.params == c.params and sorted(back.rows) == sorted(c.rows)
    bent = C.bent_difference_set(2)
    e = switch(character_table(4), bent.elements)
    assert e.params == (16, 10, 2, -2) and e.kind == "equiangular"


def test_allones_row_shifts(bent16):
    h, rows = bent16
    new_rows, c = add_allones_row(h, rows)
    assert c.params == (16, 7, 3, -1) and c.kind == "type2" and c.graph == SrgParams(16, 6, 2, 2)
    back_rows, back = remove_allones_row(h, new_rows)
    assert back.params == (16, 6, 2, -2) and sorted(back_rows) == sorted(rows)
    hr = to_regular_form(h, rows, rows[0])
    r2, c2 = remove_allones_row(hr, rows)
    assert c2.params == (16, 5, 1, -3) and c2.kind == "type1" and c2.graph == SrgParams(16, 10, 6, 6)
    with pytest.raises(NoAllOnesRow):
        remove_allones_row(h, rows)


def test_regular_form_graphs(bent16):
    h, rows = bent16
    outside = next(i for i in range(16) if i not in rows)
    assert verify_bshm(to_regular_form(h, rows, outside), rows).graph == SrgParams(16, 6, 2, 2)
    assert verify_bshm(to_regular_form(h, rows, rows[0]), rows).graph == SrgParams(16, 10, 6, 6)
    d = C.bent_difference_set(3)
    h64 = character_table(6)
    out = next(i for i in range(64) if i not in d.elements)
    assert verify_bshm(to_regular_form(h64, d.elements, out), d.elements).graph == SrgParams(64, 28, 12, 12)
    with pytest.raises(ParamMismatch):
        to_regular_form(h64, C.spread_union_pds(3, 2).elements, 0)


@pytest.mark.parametrize("m", [2, 3])
def test_unbiased_mate(m):
    d = C.bent_difference_set(m)
    h = character_table(2 * m)
    lm = extract_unbiased_mate(h, d.elements)
    a = 1 << (m - 1)
    assert lm.is_hadamard()
    cross = h.to_array(np.int64) @ lm.to_array(np.int64).T
    assert np.all(np.abs(cross) == 2 * a)


def test_unbiased_mate_rejects_wrong_order():
    h = character_table(6)
    with pytest.raises(ParamMismatch):
        extract_unbiased_mate(h, C.spread_union_pds(3, 2).elements)


def test_pbd_examples(bent16):
    h, rows = bent16
    hr = to_regular_form(h, rows, rows[0])
    r2, _ = remove_allones_row(hr, rows)
    rep = extract_pbd(hr, r2)
    assert (rep.n_points, rep.n_blocks, rep.pair_count, rep.block_sizes) == (5, 15, 4, (2, 4))
    rep = extract_pbd(character_table(6), C.spread_union_pds(3, 2).elements)
    assert rep.block_sizes == (4, 8) and rep.pair_count == 16
    with pytest.raises(ParamMismatch):
        extract_pbd(C.hadamard_matrix(8).normalize_first_row(), [0, 1])


def test_structure_decompose():
    h, certs = C.packing_to_multibshm(2, [[0], [1, 2], [3, 4]], 0)
    perm, lm = structure_decompose(h, certs[0].rows)
    assert certs[0].params == (16, 4, 4, 0) and lm.shape == (4, 4) and lm.is_hadamard()
    h1 = h.take_rows(certs[0].rows).permute_columns(perm).to_array()
    assert np.array_equal(h1, np.tile(lm.to_array(), (1, 4)))
    h48, c48 = C.construct_ns_n_n_0(C.hadamard_matrix(12), C.hadamard_matrix(4))
    _, l12 = structure_decompose(h48, c48.rows)
    assert l12.shape == (12, 12)
    h3, c3 = C.b0_to_bm1(h, certs[0].rows)
    perm, l3 = structure_decompose(h3, c3.rows)
    assert c3.params == (16, 3, 3, -1) and l3.shape == (3, 4) and len(perm) == 16


@pytest.mark.parametrize("item", corpus.nontrivial(), ids=lambda x: x[0])
def test_invariants_on_constructed(item):
    label, h, rows, cert = item
    assert check(h, rows, cert) == []


def test_parity_and_equiangular_rules():
    for label, h, rows, c in corpus.constructed():
        assert (c.ell - c.a) % 2 == 0 and (c.ell - c.b) % 2 == 0, label
        if c.kind == "equiangular":
            n, ell, a = c.n, c.ell, c.a
            assert n * (ell - a * a) == ell * ell - a * a
            assert a % 2 == 0 and ell % a == 0 and (ell // a) % 2 == 1 and n % (4 * a) == 0
        if not c.trivial:
            assert max(abs(c.a), abs(c.b)) <= min(c.ell, c.n - c.ell)
