import random

import pytest
from gmpy2 import mpq

from clifflike.algebra import Gen, Y, YS, degree, theta_word
from clifflike.bform import GramMatrix, form, gdim, gram
from clifflike.clifford import all_words
from clifflike.partitions import partition_count


def Ym(*idx):
    return tuple(Gen(Y, i) for i in idx)


def test_form_examples():
    assert form((), ()) == 1
    assert form(Ym(-1), Ym(-1)) == 1
    assert form(Ym(-2), Ym(-1, -1)) == 0
    assert form(Ym(-2), Ym(-1)) == 0  # degree mismatch


def test_form_rejects_zero_mu():
    with pytest.raises(ValueError):
        form((), (), 0)


def test_gram_examples():
    assert gram(0).entries == ((1,),)
    assert gram(2).is_identity() and gram(2).labels == ((2,), (1, 1))
    assert gram(3).is_identity() and len(gram(3).labels) == 3


def test_gram_orthonormal_and_nondegenerate():
    for n in range(7):
        G = gram(n, 1)
        assert G.is_identity()
        assert G.det() == 1
        assert len(G.labels) == partition_count(n)


def test_gram_twisted_is_diagonal_scaling():
    # <Y_{-lam} v, Y_{-kap} v> picks up mu^{l(kap) - l(lam)} from the twist
    G = gram(3, 2)
    for i, lam in enumerate(G.labels):
        for j, kap in enumerate(G.labels):
            expect = mpq(2) ** (len(kap) - len(lam)) if i == j else 0
            assert G.entries[i][j] == expect


def test_gram_shape_validation():
    with pytest.raises(ValueError):
        GramMatrix(1, ((1,),), ((1, 0),))


def test_gdim_examples():
    assert gdim(2, 1) == [1, 1, 2]
    assert gdim(5, 1) == [1, 1, 2, 3, 5, 7]
    assert gdim(3, 2) == [1, 1, 2, 3]


def test_gdim_independent_of_mu():
    expect = [partition_count(n) for n in range(8)]
    for mu in (1, 2, mpq(-1, 3), mpq(7, 5)):
        assert gdim(7, mu) == expect


def _degree_matched_pairs(max_len, bound):
    by_deg = {}
    for w in all_words(max_len, bound):
        by_deg.setdefault(degree(w), []).append(w)
    return [(X, Z) for ws in by_deg.values() for X in ws for Z in ws]


def test_symmetry_untwisted():
    pairs = _degree_matched_pairs(2, 4)
    rng = random.Random(7)
    long3 = [w for w in all_words(3, 3) if len(w) == 3]
    for _ in range(300):
        X, Z = rng.choice(long3), rng.choice(long3)
        pairs.append((X, Z))
    for X, Z in pairs:
        assert form(X, Z, 1) == form(Z, X, 1), (X, Z)


def test_symmetry_fails_when_twisted():
    # Y_0 acts by mu and Ys_0 by 1/mu on the vacuum, so <Y_0 v, v> = mu while
    # <v, Y_0 v> = 1/mu: no invariant form with <v, v> = 1 is symmetric unless mu^2 = 1
    assert form(Ym(0), (), 2) == mpq(1, 2)
    assert form((), Ym(0), 2) == 2
    assert form((Gen(Y, -1),), (Gen(YS, -1),), 2) == mpq(-1, 4)
    assert form((Gen(YS, -1),), (Gen(Y, -1),), 2) == -4
    assert form(Ym(0), (), -1) == form((), Ym(0), -1)


def test_generator_invariance():
    gens = [Gen(k, i) for k in (Y, YS) for i in range(-4, 5)]
    pairs = _degree_matched_pairs(2, 2)
    for mu in (1, 2):
        for g in gens:
            for X, Z in pairs:
                assert form((g,) + X, Z, mu) == form(X, theta_word((g,)) + Z, mu)
