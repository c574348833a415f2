import pytest
from hypothesis import given, strategies as st

from clifflike.algebra import Element, Yn, Ysn
from clifflike.clifford import (
    A, B, CliffGen, all_words, charge, cliff_nf, format_smash, is_normal2, nf2, pbw_cross_validation, pi,
    pi_preimage, sigma_shift, smash_mul,
)
from clifflike.heis_fock import RELATIONS, relation_element
from clifflike.rewrite import equal


def a(n):
    return CliffGen(A, n)


def b(n):
    return CliffGen(B, n)


def test_cliff_nf_examples():
    assert cliff_nf([b(-1), a(0)]) == {((0,), (-1,)): -1, ((), ()): 1}
    assert cliff_nf([a(2), a(1)]) == {((1, 2), ()): -1}
    assert cliff_nf([a(0), a(0)]) == {}


def test_sigma_shift_examples():
    assert sigma_shift([a(0)], 1) == (a(1),)
    assert sigma_shift([b(0)], 1) == (b(-1),)
    assert sigma_shift([a(0), b(0)], -2) == (a(-2), b(2))


def test_smash_mul_examples():
    one = ((), ())
    assert smash_mul({(((0,), ()), 1): 1}, {(((), (0,)), -1): 1}) == {(((0,), (-1,)), 0): 1}
    assert smash_mul({(one, 1): 1}, {(one, -1): 1}) == {(one, 0): 1}
    assert smash_mul({(((0,), ()), 1): 1}, {(((0,), ()), 1): 1}) == {(((0, 1), ()), 2): 1}


def test_pi_examples():
    assert pi(Yn(3)) == {(((3,), ()), 1): 1}
    assert pi(Yn(0) * Yn(0)) == {(((0, 1), ()), 2): 1}
    assert pi(Yn(0) * Ysn(0)) == {(((0,), (-1,)), 0): 1}


def test_nf2_examples():
    # Y[m] Y[m-1] = 0 in the algebra, so this normal form is zero
    assert nf2(Yn(1) * Yn(0)) == Element.zero()
    assert equal(Yn(1) * Yn(0), nf2(Yn(1) * Yn(0)))
    assert nf2(Yn(0) * Yn(0)) == Yn(0) * Yn(0)
    e = Ysn(0) * Yn(0)
    assert all(is_normal2(w) for w in nf2(e).terms)
    assert equal(nf2(e), 1 - Yn(-1) * Ysn(1))
    # 1 - Y[-1] Ys[1] is already supported on weakly increasing words
    assert nf2(1 - Yn(-1) * Ysn(1)) == 1 - Yn(-1) * Ysn(1)


def test_nf2_nonzero_case():
    # Y[1]Y[1] + Y[2]Y[0] = 0
    e = Yn(2) * Yn(0)
    assert nf2(e) == -(Yn(1) * Yn(1))
    assert equal(e, nf2(e))


def test_format_smash_rows():
    rows = format_smash(pi(Yn(0) * Ysn(0)))
    assert rows == [{"a": [0], "b": [-1], "sigma": 0, "coeff": "1/1"}]


@pytest.mark.parametrize("which", RELATIONS)
def test_pi_kills_relations(which):
    for m in range(-5, 6):
        for n in range(-5, 6):
            assert pi(relation_element(which, m, n)) == {}


def test_sigma_power_matches_charge():
    for w in all_words(3, 3):
        for (cw, power), _ in pi(Element.from_word(w)).items():
            assert power == charge(cw)


def test_anticommutators():
    for m in range(-6, 7):
        for n in range(-6, 7):
            for g, h in ((a(m), b(n)), (a(m), a(n)), (b(m), b(n))):
                acc = dict(cliff_nf([g, h]))
                for k, c in cliff_nf([h, g]).items():
                    acc[k] = acc.get(k, 0) + c
                acc = {k: c for k, c in acc.items() if c}
                expect = {((), ()): 1} if g.kind != h.kind and m + n + 1 == 0 else {}
                assert acc == expect, (g, h)


def test_basis2_words_are_fixed_by_nf2():
    for w in all_words(3, 3):
        if is_normal2(w):
            e = Element.from_word(w)
            assert nf2(e) == e, w


def test_preimage_inverts_image():
    for w in all_words(3, 3):
        if is_normal2(w):
            ((cw, power), c), = pi(Element.from_word(w)).items()
            assert pi_preimage(cw) == w and c == 1


def test_cross_validation_small():
    r = pbw_cross_validation(2, 4)
    assert r["failures"] == [] and r["checked"] == 1 + 18 + 18**2


raw_words = st.lists(st.builds(CliffGen, st.sampled_from([A, B]), st.integers(-3, 3)), max_size=5)


@given(raw_words)
def test_cliff_nf_idempotent(raw):
    from clifflike.clifford import cliff_word_letters

    for word, c in cliff_nf(raw).items():
        assert cliff_nf(cliff_word_letters(word)) == {word: 1}
