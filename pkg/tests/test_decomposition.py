import math
from collections import defaultdict

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hadamaq.decomposition import FourierDecomposition, decompose, quotient_table, verify_decomposition
from hadamaq.exceptions import NotClosed, NotCommutative, SnapFailure
from hadamaq.hadamard import (
    EquivalenceWitness,
    dephase,
    fourier,
    haagerup,
    mq,
    scramble,
    tao,
    tensor,
    tensor_fourier,
)
from hadamaq.magic import projection_grid
from hadamaq.phase import I, Approx
from hadamaq.squares import circulant, extract_square

from conftest import KLEIN_SQUARE


def invariant_factors_oracle(orders):
    # split each cyclic order into prime powers, then stack the largest powers per prime
    powers = defaultdict(list)
    for n in orders:
        p = 2
        while n > 1:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e:
                powers[p].append(p**e)
            p += 1
    depth = max((len(v) for v in powers.values()), default=0)
    out = [1] * depth
    for p, v in powers.items():
        for idx, q in enumerate(sorted(v, reverse=True)):
            out[depth - 1 - idx] *= q
    return [d for d in out if d > 1]


@pytest.mark.parametrize("n", range(2, 9))
def test_quotient_table_fourier(n):
    assert np.array_equal(quotient_table(fourier(n)), circulant(n).sigma)


def test_quotient_table_mq1():
    assert quotient_table(mq(1)).tolist() == KLEIN_SQUARE


def test_quotient_table_tao_not_closed():
    with pytest.raises(NotClosed) as err:
        quotient_table(dephase(tao()).matrix)
    # the conjugate of row 1 is already missing
    assert err.value.pair == (1, 0)


def test_quotient_table_requires_dephased():
    with pytest.raises(ValueError):
        quotient_table(haagerup())


def test_quotient_table_approx_path():
    h = dephase(scramble(tensor(fourier(2), fourier(3)), 5, exact=False)).matrix
    assert h.mode == "approx"
    t = quotient_table(h)
    assert np.array_equal(t, extract_square(projection_grid(h)).sigma)


@pytest.mark.parametrize(
    "h, sizes",
    [
        (fourier(6), (6,)),
        (tensor(fourier(2), fourier(2)), (2, 2)),
        (tensor(fourier(2), fourier(3)), (6,)),
        (mq(1), (2, 2)),
        (mq(I), (4,)),
        (tensor(fourier(2), fourier(4)), (2, 4)),
        (tensor(fourier(4), fourier(2)), (2, 4)),
        (tensor(fourier(4), fourier(6)), (2, 12)),
        (tensor_fourier([2, 2, 2]), (2, 2, 2)),
        (fourier(1), ()),
    ],
)
def test_decompose_examples(h, sizes):
    d = decompose(h)
    assert d.factor_sizes == sizes
    ok, res = verify_decomposition(h, d)
    assert ok and res == 0.0


@pytest.mark.parametrize("sizes", [(2, 3), (4, 6), (2, 2, 3), (3, 3), (2, 5), (6, 2)])
def test_factor_sizes_match_oracle(sizes):
    d = decompose(tensor_fourier(sizes))
    assert list(d.factor_sizes) == invariant_factors_oracle(sizes)


@pytest.mark.parametrize("h", [haagerup(), tao()], ids=["haagerup", "tao"])
def test_decompose_noncommutative(h):
    with pytest.raises(NotCommutative):
        decompose(h)


def test_corrupted_witness_fails():
    h = scramble(tensor(fourier(2), fourier(2)), 11)
    d = decompose(h)
    w = d.witness
    phases = list(w.row_phases)
    k = next(i for i in range(1, h.n) if phases[i] != phases[0])
    phases[0], phases[k] = phases[k], phases[0]
    bad = FourierDecomposition(d.factor_sizes, EquivalenceWitness(w.row_perm, w.col_perm, phases, w.col_phases), d.quotient_table)
    ok, res = verify_decomposition(h, bad)
    assert not ok and res > 0.1


def test_wrong_size_fails():
    d = decompose(fourier(4))
    assert verify_decomposition(fourier(2), d) == (False, math.inf)


@pytest.mark.parametrize("seed", range(100))
def test_scrambled_fourier4(seed):
    h = scramble(fourier(4), seed)
    d = decompose(h)
    assert d.factor_sizes == (4,)
    assert verify_decomposition(h, d) == (True, 0.0)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([(2, 2), (2, 3), (6,), (2, 4), (3,), (8,)]), st.integers(0, 2**32 - 1))
def test_approx_scramble(sizes, seed):
    h = scramble(tensor_fourier(sizes), seed, exact=False)
    d = decompose(h)
    assert list(d.factor_sizes) == invariant_factors_oracle(sizes)
    ok, res = verify_decomposition(h, d)
    assert ok and res <= 1e-9


def test_snap_failure():
    h = mq(Approx(math.cos(0.3), math.sin(0.3)))
    with pytest.raises(SnapFailure):
        decompose(h)


@pytest.mark.parametrize("h", [fourier(5), mq(1), tensor(fourier(2), fourier(3)), tensor(fourier(3), fourier(3))])
def test_table_matches_extracted_square(h):
    m = dephase(h).matrix
    assert np.array_equal(quotient_table(m), extract_square(projection_grid(m)).sigma)
