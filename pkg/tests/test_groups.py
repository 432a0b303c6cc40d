import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hadamaq.exceptions import CapExceeded, NotAbelian
from hadamaq.groups import (
    GroupLabel,
    Monomial,
    Perm,
    ProjectiveMonomial,
    abelian_basis,
    dihedral_generators,
    element_order,
    fingerprint,
    generate,
    invariant_factors,
    match_named,
)
from hadamaq.phase import I, MINUS_ONE, ONE, Exact
from hadamaq.report import analyze
from hadamaq.hadamard import fourier, tensor
from hadamaq.squares import MagicSquare, circulant, rows_as_permutations

from conftest import KLEIN_SQUARE, S5_SQUARE


def cyclic(n):
    return generate([Perm(tuple((j + 1) % n for j in range(n)))])


def test_perm_composition():
    a, b = Perm((1, 0, 2)), Perm((0, 2, 1))
    assert (a * b)(1) == a(b(1)) == 2
    assert a * a.inverse() == Perm.identity(3)
    with pytest.raises(ValueError):
        Perm((0, 0))


def test_monomial_matches_matrix_product():
    rng = np.random.default_rng(1)
    for _ in range(20):
        a = Monomial(tuple(rng.permutation(4)), tuple(Exact(int(k), 8) for k in rng.integers(0, 8, 4)))
        b = Monomial(tuple(rng.permutation(4)), tuple(Exact(int(k), 6) for k in rng.integers(0, 6, 4)))
        assert np.allclose((a * b).to_array(), a.to_array() @ b.to_array())
        assert np.allclose(a.inverse().to_array(), np.linalg.inv(a.to_array()))
        assert Monomial.from_matrix(a.to_array()) == a


def test_projective_monomial_ignores_scalars():
    a = Monomial((1, 0), (ONE, I))
    assert ProjectiveMonomial.of(a.scale(I)) == ProjectiveMonomial.of(a)
    assert ProjectiveMonomial.of(Monomial.identity(2).scale(MINUS_ONE)).is_identity()


def test_generate_identity():
    assert len(generate([Perm.identity(4)])) == 1


def test_generate_klein():
    assert len(generate(rows_as_permutations(MagicSquare(KLEIN_SQUARE)))) == 4


def test_generate_s5():
    assert len(generate(rows_as_permutations(MagicSquare(S5_SQUARE)))) == 120


def test_generate_cap():
    with pytest.raises(CapExceeded):
        generate(rows_as_permutations(MagicSquare(S5_SQUARE)), cap=50)


def test_generate_deterministic():
    gens = rows_as_permutations(MagicSquare(S5_SQUARE))
    assert generate(gens).elements == generate(gens).elements


def test_fingerprint_cyclic5():
    fp = fingerprint(generate(rows_as_permutations(circulant(5))))
    assert fp.order == 5 and fp.abelian
    assert fp.element_orders == {1: 1, 5: 4}
    assert fp.label == GroupLabel("cyclic", (5,))


def test_fingerprint_klein():
    fp = fingerprint(generate(rows_as_permutations(MagicSquare(KLEIN_SQUARE))))
    assert fp.order == 4 and fp.abelian and fp.center_order == 4
    assert fp.element_orders == {1: 1, 2: 3}
    assert str(fp.label) == "Z2×Z2"


def brute_center(G):
    return [z for z in G if all(z * g == g * z for g in G)]


def test_fingerprint_s5():
    G = generate(rows_as_permutations(MagicSquare(S5_SQUARE)))
    fp = fingerprint(G)
    assert fp.order == 120 and not fp.abelian
    assert fp.center_order == len(brute_center(G)) == 1
    assert fp.label == GroupLabel("symmetric", (5,))
    # cycle-type census of S5
    assert fp.element_orders == {1: 1, 2: 25, 3: 20, 4: 30, 5: 24, 6: 20}


@pytest.mark.parametrize(
    "G, factors",
    [
        (generate(rows_as_permutations(MagicSquare(KLEIN_SQUARE))), [2, 2]),
        (cyclic(6), [6]),
        (cyclic(1), []),
    ],
)
def test_invariant_factors(G, factors):
    assert invariant_factors(G) == factors


def test_invariant_factors_f2_f3():
    r = analyze(tensor(fourier(2), fourier(3)))
    assert r.group["order"] == 6
    assert r.group["element_orders"]["6"] == 2  # CRT: an element of order 6 exists
    assert r.factor_sizes == [6]


def direct_product(*ns):
    # disjoint cycles on consecutive blocks
    gens, off = [], 0
    total = sum(ns)
    for n in ns:
        img = list(range(total))
        for j in range(n):
            img[off + j] = off + (j + 1) % n
        gens.append(Perm(tuple(img)))
        off += n
    return generate(gens)


@pytest.mark.parametrize(
    "ns, factors",
    [((2, 4), [2, 4]), ((4, 6), [2, 12]), ((2, 2, 2), [2, 2, 2]), ((3, 5), [15]), ((2, 3, 4), [2, 12]), ((4, 4, 2), [2, 4, 4])],
)
def test_invariant_factors_products(ns, factors):
    G = direct_product(*ns)
    got = invariant_factors(G)
    assert got == factors
    assert math.prod(got) == len(G)
    assert all(b % a == 0 for a, b in zip(got, got[1:]))


def test_invariant_factors_rejects_nonabelian():
    with pytest.raises(NotAbelian):
        invariant_factors(generate(rows_as_permutations(MagicSquare(S5_SQUARE))))


def test_match_named_cyclic4():
    assert match_named(cyclic(4)) == GroupLabel("cyclic", (4,))


def dihedral_perm(m):
    r = Perm(tuple((j + 1) % m for j in range(m)))
    s = Perm(tuple((-j) % m for j in range(m)))
    return generate([r, s])


@pytest.mark.parametrize("m", [3, 4, 5, 6, 12])
def test_match_named_dihedral(m):
    G = dihedral_perm(m)
    assert match_named(G) == GroupLabel("dihedral", (m,))
    r, s = dihedral_generators(G)
    one = G.identity
    assert element_order(r) == m and s * s == one and s * r * s == r.inverse()
    assert len(generate([r, s])) == len(G)


def test_match_named_dicyclic():
    # Z3 x| Z4 with s acting by inversion: dicyclic of order 12, not dihedral
    w = Exact(1, 3)
    r, s = Monomial((0, 1), (w, w.conjugate())), Monomial((1, 0), (MINUS_ONE, ONE))
    G = generate([r, s])
    assert len(G) == 12
    assert sum(1 for o in G.orders.values() if o == 2) == 1
    assert match_named(G) == GroupLabel("semidirect_z4", (3,))


def test_match_named_unrecognized():
    # A4 is none of the known families
    G = generate([Perm((1, 2, 0, 3)), Perm((1, 0, 3, 2))])
    assert len(G) == 12 and match_named(G) is None
    assert fingerprint(G).label is None


def test_label_strings_and_orders():
    assert str(GroupLabel("dihedral", (6,))) == "Z6⋊Z2" and GroupLabel("dihedral", (6,)).order == 12
    assert str(GroupLabel("semidirect_z4", (3,))) == "Z3⋊Z4" and GroupLabel("semidirect_z4", (3,)).order == 12
    assert GroupLabel("infinite_dihedral").order == math.inf
    assert GroupLabel("dihedral", (2,)).canonical() == GroupLabel("abelian", (2, 2))
    assert GroupLabel("semidirect_z4", (1,)).canonical() == GroupLabel("cyclic", (4,))


perm_lists = st.integers(2, 6).flatmap(
    lambda n: st.lists(st.permutations(list(range(n))).map(lambda p: Perm(tuple(p))), min_size=1, max_size=3)
)


@settings(max_examples=40, deadline=None)
@given(perm_lists)
def test_closure_and_lagrange(gens):
    G = generate(gens)
    elems = set(G)
    for g in list(elems)[:30]:
        assert g.inverse() in elems
        for h in list(elems)[:30]:
            assert g * h in elems
    for o in G.orders.values():
        assert len(G) % o == 0
    fp = fingerprint(G, name=False)
    assert sum(fp.element_orders.values()) == fp.order
    if fp.abelian:
        assert fp.center_order == fp.order
        f = invariant_factors(G)
        assert math.prod(f) == len(G)
        assert all(b % a == 0 for a, b in zip(f, f[1:]))


def test_abelian_basis_generates():
    G = direct_product(2, 4, 6)
    basis = abelian_basis(G.elements, lambda a, b: a * b, G.identity)
    assert len(generate([b for b, _ in basis])) == len(G)
    assert math.prod(d for _, d in basis) == len(G)
