from importlib import resources

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hadamaq import io
from hadamaq.exceptions import NotCommutativeStructure, NotMagic
from hadamaq.groups import Perm
from hadamaq.hadamard import EquivalenceWitness, apply_equivalence, dephase, fourier, haagerup, mq, tao, tensor
from hadamaq.phase import ONE
from hadamaq.magic import e_sigma, projection_grid
from hadamaq.squares import MagicSquare, circulant, extract_square, normalize, rows_as_permutations

from conftest import KLEIN_SQUARE, S5_SQUARE


def test_normalized_klein_is_fixed():
    sq, rp, cp = normalize(KLEIN_SQUARE)
    assert sq.tolist() == KLEIN_SQUARE
    assert rp == cp == (0, 1, 2, 3)


@pytest.mark.parametrize("n", range(1, 9))
def test_circulant_is_normalized(n):
    c = circulant(n)
    assert c.tolist() == [[(j - i) % n for j in range(n)] for i in range(n)]
    sq, rp, cp = normalize(c.sigma)
    assert sq == c and rp == cp == tuple(range(n))


def test_normalize_row_swap():
    raw = [KLEIN_SQUARE[1], KLEIN_SQUARE[0], KLEIN_SQUARE[2], KLEIN_SQUARE[3]]
    sq, rp, cp = normalize(raw)
    assert sq.tolist() == KLEIN_SQUARE
    assert np.array_equal(np.array(raw)[np.ix_(rp, cp)], sq.sigma)
    assert rp != (0, 1, 2, 3)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_normalize_any_shuffle(seed):
    rng = np.random.default_rng(seed)
    base = np.array(S5_SQUARE)
    raw = base[np.ix_(rng.permutation(5), rng.permutation(5))]
    sq, rp, cp = normalize(raw)
    assert np.array_equal(raw[np.ix_(rp, cp)], sq.sigma)
    assert (sq.sigma[0] == np.arange(5)).all() and (np.diag(sq.sigma) == 0).all()


def test_not_magic():
    with pytest.raises(NotMagic):
        normalize([[0, 1], [0, 1]])
    with pytest.raises(NotMagic):
        MagicSquare([[1, 0], [0, 1]])


@pytest.mark.parametrize("n", range(2, 9))
def test_extract_fourier(n):
    assert extract_square(projection_grid(fourier(n))) == circulant(n)


def test_extract_mq1():
    assert extract_square(projection_grid(mq(1))).tolist() == KLEIN_SQUARE


@pytest.mark.parametrize("h", [tao(), haagerup()], ids=["tao", "haagerup"])
def test_extract_noncommutative(h):
    with pytest.raises(NotCommutativeStructure):
        extract_square(projection_grid(h))


def test_extract_row_swapped_hadamard_is_normalized():
    w = EquivalenceWitness((1, 0, 2, 3), tuple(range(4)), (ONE,) * 4, (ONE,) * 4)
    sq = extract_square(projection_grid(apply_equivalence(fourier(4), w)))
    assert sq.row_perm is None


def test_extract_records_renormalization():
    raw = [KLEIN_SQUARE[1], KLEIN_SQUARE[0], KLEIN_SQUARE[2], KLEIN_SQUARE[3]]
    E = [np.diag(np.eye(4)[k]) for k in range(4)]
    sq = extract_square(e_sigma(E, raw))
    assert sq.tolist() == KLEIN_SQUARE
    assert sq.row_perm is not None


@pytest.mark.parametrize("h", [fourier(5), mq(1), tensor(fourier(2), fourier(3)), tensor(fourier(2), fourier(4))])
def test_round_trip(h):
    P = projection_grid(dephase(h).matrix)
    sq = extract_square(P)
    assert np.abs(e_sigma(P.P[0], sq).P - P.P).max() <= 1e-9


def test_rows_of_klein():
    perms = rows_as_permutations(MagicSquare(KLEIN_SQUARE))
    assert [p.cycles() for p in perms] == [[], [(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]]


@pytest.mark.parametrize("n", range(2, 8))
def test_circulant_row1_is_shift(n):
    p = rows_as_permutations(circulant(n))[1]
    assert all(p(j) == (j - 1) % n for j in range(n))


def test_rows_are_distinct_bijections():
    perms = rows_as_permutations(MagicSquare(S5_SQUARE))
    assert perms[0] == Perm.identity(5)
    assert len(set(perms)) == 5


def test_msq_round_trip(tmp_path):
    p = tmp_path / "s.msq"
    io.write_msq(MagicSquare(KLEIN_SQUARE), p)
    assert p.read_text().splitlines()[0] == "msq v1 n=4"
    assert io.read_msq(p).tolist() == KLEIN_SQUARE


def test_shipped_square():
    text = resources.files("hadamaq").joinpath("data/five_by_five.msq").read_text()
    assert io.loads_msq(text).tolist() == S5_SQUARE
