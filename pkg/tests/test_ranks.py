import random

import numpy as np
import pytest

from polarank.gf import build_field
from polarank.geometry import SymplecticSpace
from polarank.incidence import build_incidence
from polarank.ranks import DenseRowPacked, rank_mod_p, rank_streaming


def reference_rank(mat, p):
    """Independent oracle: textbook fraction-free elimination on python ints."""
    rows = [[int(x) for x in r] for r in np.asarray(mat) % p]
    cols = len(rows[0]) if rows else 0
    rank = 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], p - 2, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def test_identity_and_ones():
    assert rank_mod_p(np.eye(7, dtype=int), 3) == 7
    assert rank_mod_p(np.ones((3, 3), dtype=int), 3) == 1


def test_multiples_of_p_vanish():
    assert rank_mod_p(3 * np.eye(4, dtype=int), 3) == 0
    assert rank_mod_p([[6, 3], [9, 12]], 3) == 0


@pytest.mark.parametrize("p", [3, 5, 7, 13])
def test_random_matrices_match_reference(p):
    rng = np.random.default_rng(20 + p)
    for shape in [(8, 5), (5, 8), (20, 20), (40, 17)]:
        m = rng.integers(0, p, size=shape)
        assert rank_mod_p(m, p) == reference_rank(m, p)


def test_planted_rank():
    rng = np.random.default_rng(33)
    p = 3
    base = rng.integers(0, p, size=(15, 40))
    while reference_rank(base, p) < 15:
        base = rng.integers(0, p, size=(15, 40))
    combos = (rng.integers(0, p, size=(30, 15)) @ base) % p
    stacked = np.vstack([base, combos])
    rng.shuffle(stacked)
    assert rank_mod_p(stacked, p) == 15


def test_transpose_invariance_and_permutations():
    rng = np.random.default_rng(5)
    m = (rng.random((120, 80)) < 0.05).astype(int)
    r = rank_mod_p(m, 3)
    assert rank_mod_p(m.T, 3) == r
    perm = rng.permutation(120)
    assert rank_mod_p(m[perm], 3) == r
    permc = rng.permutation(80)
    assert rank_mod_p(m[:, permc], 3) == r


def test_transpose_invariance_1200():
    rng = np.random.default_rng(7)
    m = (rng.random((1200, 1200)) < 0.004).astype(np.uint8)
    assert rank_mod_p(m, 3) == rank_mod_p(m.T, 3)


def test_streaming_matches_inmemory_and_order_invariance():
    sp = SymplecticSpace(2, build_field(3, 1))
    mat = build_incidence(sp, 2)
    dense = np.zeros((mat.rows, mat.cols), dtype=np.uint8)
    for i, row in enumerate(mat.row_data):
        dense[i, list(row)] = 1
    r = rank_mod_p(mat)
    assert r == 25
    assert rank_streaming(iter(dense), mat.cols, 3) == r
    assert rank_streaming(iter(dense[::-1]), mat.cols, 3) == r
    doubled = np.vstack([dense, dense])
    assert rank_streaming(iter(doubled), mat.cols, 3) == r


def test_streaming_unreduced_input():
    rows = [[3, 6, 9], [1, 2, 3], [2, 4, 6]]
    assert rank_streaming(iter(rows), 3, 3) == 1


def test_packed_accumulator_budget_paths():
    # uint16 path for larger p
    acc = DenseRowPacked(10, 17)
    assert acc.dtype == np.uint16
    rng = np.random.default_rng(1)
    m = rng.integers(0, 17, size=(12, 10))
    for row in m:
        acc.insert(row)
    assert acc.rank == reference_rank(m, 17)


def test_many_dependent_rows_trigger_delayed_reduction():
    rng = np.random.default_rng(9)
    base = rng.integers(0, 3, size=(3, 400))
    rows = [(c @ base) % 3 for c in rng.integers(0, 3, size=(200, 3))]
    assert rank_streaming(iter(rows), 400, 3) == reference_rank(np.array(rows), 3)


def test_streaming_agrees_on_acceptance_matrices():
    sp = SymplecticSpace(3, build_field(3, 1))
    mat = build_incidence(sp, 2)  # 3640 x 364
    dense_rows = (
        np.bincount(np.array(r, dtype=np.int64), minlength=mat.cols).astype(np.uint8)
        if r else np.zeros(mat.cols, dtype=np.uint8)
        for r in mat.row_data
    )
    assert rank_streaming(dense_rows, mat.cols, 3) == rank_mod_p(mat) == 343
    t = mat.transpose()
    assert rank_mod_p(t) == 343
