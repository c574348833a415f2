import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from clifflike import tilde_fock as tf
from clifflike.algebra import Y, YS
from clifflike.clifford import A, B, CliffGen
from clifflike.tilde_fock import (
    STILDE, ChargedVector, FermionState, SMatrix, TruncSeries, delta, fermion_apply, make_state,
    mode_vanishing_bound, states_up_to_energy, structure_constant, tilde_mode, tilde_relation_residual,
    vacuum, vacuum_spanning_check, vec_add, ybe_unitarity_check,
)

OMEGA = vacuum()


def st_(a=(), b=()):
    return {make_state(a, b): mpq(1)}


def test_make_state_validates():
    with pytest.raises(ValueError):
        make_state((-1, -2))
    with pytest.raises(ValueError):
        make_state((0,))
    assert make_state((-2, -1)).charge == 2
    assert make_state((-2,), (-1, -3)[::-1]).energy == 6


def test_fermion_apply_examples():
    assert fermion_apply(CliffGen(A, 0), st_(b=(-1,))) == OMEGA
    assert fermion_apply(CliffGen(A, 0), st_(a=(-1,))) == {}
    assert fermion_apply(CliffGen(A, -2), st_(a=(-1,))) == st_(a=(-2, -1))
    assert fermion_apply(CliffGen(A, -1), st_(a=(-2,))) == {make_state((-2, -1)): -1}
    assert fermion_apply(CliffGen(B, -1), st_(a=(-1,))) == {make_state((-1,), (-1,)): -1}


def _state_count_oracle(E):
    # coefficients of prod_k (1 + q^k)^2, summed up to q^E
    coeffs = [1] + [0] * E
    for k in range(1, E + 1):
        for _ in range(2):
            for e in range(E, k - 1, -1):
                coeffs[e] += coeffs[e - k]
    return sum(coeffs)


def test_states_count():
    assert len(states_up_to_energy(0)) == 1
    assert len(states_up_to_energy(2)) == 1 + 2 + 3
    for E in range(8):
        assert len(states_up_to_energy(E)) == _state_count_oracle(E)
    assert all(s.energy <= 5 for s in states_up_to_energy(5))


def _anticommutator(g, h, v):
    return vec_add(fermion_apply(g, fermion_apply(h, v)), fermion_apply(h, fermion_apply(g, v)))


def test_clifford_relations_on_fock_space():
    states = states_up_to_energy(6)
    idx = range(-6, 6)
    for s in states:
        v = {s: mpq(1)}
        for m in idx:
            for n in idx:
                for g, h in ((CliffGen(A, m), CliffGen(B, n)), (CliffGen(A, m), CliffGen(A, n)),
                             (CliffGen(B, m), CliffGen(B, n))):
                    expect = v if g.kind != h.kind and m + n + 1 == 0 else {}
                    assert _anticommutator(g, h, v) == expect, (s, g, h)


def test_delta_examples():
    assert delta(st_(b=(-1,))) == ChargedVector(1, st_(b=(-1,)))
    assert delta(st_(a=(-1,))) == ChargedVector(-1, st_(a=(-1,)))
    assert delta(OMEGA) == ChargedVector(0, OMEGA)
    assert delta(OMEGA, inverse=True) == ChargedVector(0, OMEGA)


def test_delta_mixes_states():
    # a_{-2} b_{-1}: transport of a_{-2} produces a_{-1} b_{-1}/2 and a_0 b_{-1}/8 = Omega/8
    cv = delta(st_(a=(-2,), b=(-1,)))
    assert cv.c == 0
    assert cv.payload == {make_state((-2,), (-1,)): 1, make_state((-1,), (-1,)): mpq(1, 2),
                          FermionState(): mpq(1, 8)}


def test_delta_rejects_mixed_charge():
    with pytest.raises(ValueError):
        delta(vec_add(st_(a=(-1,)), OMEGA))


def test_delta_round_trip_and_charge():
    for s in states_up_to_energy(5):
        v = {s: mpq(1)}
        cv = delta(v)
        assert all(t.charge == s.charge for t in cv.payload)
        assert cv.c == -s.charge
        back = delta(cv.payload, inverse=True)
        assert back.payload == v and back.c == -cv.c


def test_tilde_mode_examples():
    assert tilde_mode(Y, 0, st_(b=(-1,))) == OMEGA
    assert tilde_mode(Y, 0, st_(a=(-1,))) == {}
    assert tilde_mode(Y, -1, OMEGA) == st_(a=(-1,))
    assert tilde_mode(YS, 0, st_(a=(-1,))) == OMEGA


def test_tilde_mode_charge():
    for s in states_up_to_energy(4):
        for n in range(-3, 3):
            assert all(t.charge == s.charge + 1 for t in tilde_mode(Y, n, {s: 1}))
            assert all(t.charge == s.charge - 1 for t in tilde_mode(YS, n, {s: 1}))


def test_vanishing_bound_examples():
    assert mode_vanishing_bound(OMEGA, Y) == -1
    assert mode_vanishing_bound(st_(b=(-1,)), Y) == 0
    assert mode_vanishing_bound(st_(b=(-3,)), Y) == 2
    assert tilde_mode(Y, 2, st_(b=(-3,))) != {}


def test_restrictedness():
    for s in states_up_to_energy(5):
        v = {s: mpq(1)}
        for kind in (Y, YS):
            B_ = mode_vanishing_bound(v, kind)
            for p in range(B_ + 1, B_ + 5):
                assert tilde_mode(kind, p, v) == {}, (s, kind, p)


def test_vacuum_is_vacuum_vector():
    for n in range(6):
        assert tilde_mode(Y, n, OMEGA) == {} and tilde_mode(YS, n, OMEGA) == {}


def test_relation_residual_examples():
    assert tilde_relation_residual("3.12", 0, -1, OMEGA) == {}
    assert tilde_relation_residual("3.10", -1, -1, OMEGA) == {}
    assert tilde_relation_residual("3.11", 0, 0, OMEGA) == {}
    with pytest.raises(ValueError):
        tilde_relation_residual("3.13", 0, 0, OMEGA)


def test_relations_small():
    assert tf.tilde_relations_suite(3, 3) == []


def test_relations_detect_wrong_transport(monkeypatch):
    # dropping the alternating sign from the b-transport breaks the relations
    monkeypatch.setattr(tf, "_transport_coeff",
                        lambda kind, j, inverse: mpq(1, 2**j * tf.factorial(j)))
    tf._delta_state.cache_clear()
    try:
        assert tf.tilde_relations_suite(3, 2) != []
    finally:
        monkeypatch.undo()
        tf._delta_state.cache_clear()


def test_structure_constants():
    assert structure_constant("a", 0, "b") == OMEGA
    assert structure_constant("a", 2, "a") == {}
    for n in range(6):
        assert structure_constant("a", n, "a") == {} and structure_constant("b", n, "b") == {}
    for n in range(1, 6):
        assert structure_constant("a", n, "b") == {}
    # regression constant
    assert structure_constant("a", -1, "b") == {make_state((-1,), (-1,)): 1, FermionState(): mpq(1, 2)}
    with pytest.raises(ValueError):
        structure_constant("c", 0, "a")


def test_vacuum_spanning():
    report = vacuum_spanning_check(3, range(-4, 0), 3)
    assert all(r["ok"] for r in report.values())
    assert sum(r["states"] for r in report.values()) == len(states_up_to_energy(3))
    # one mode cannot reach the two-particle state a_{-1} b_{-1}
    short = vacuum_spanning_check(1, range(-4, 0), 3)
    assert make_state((-1,), (-1,)) in short[0]["missing"]


def test_trunc_series_exp():
    e = TruncSeries.exp_linear(4, (1,))
    assert e.coeffs == {(k,): mpq(1, f) for k, f in zip(range(5), (1, 1, 2, 6, 24))}
    one = TruncSeries.constant(4, 1)
    assert e * TruncSeries.exp_linear(4, (-1,)) == one
    assert (e - e).is_zero()
    with pytest.raises(ValueError):
        e * TruncSeries.constant(3, 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(1, 6))
def test_trunc_series_exp_is_additive(a, b, c, d, T):
    lhs = TruncSeries.exp_linear(T, (a, b)) * TruncSeries.exp_linear(T, (c, d))
    assert lhs == TruncSeries.exp_linear(T, (a + c, b + d))


def test_ybe_and_unitarity():
    r = ybe_unitarity_check(STILDE, 8)
    assert r["qybe_ok"] and len(r["qybe_residual"]) == 8
    assert r["unitary_entries"] == ["aa", "bb"]
    one = TruncSeries.constant(8, 1)
    assert r["unitarity_deviation"]["ab"] == TruncSeries.exp_linear(8, (2,)) - one
    assert r["unitarity_deviation"]["ba"] == TruncSeries.exp_linear(8, (-2,)) - one
    with pytest.raises(ValueError):
        ybe_unitarity_check(STILDE, 0)


def test_smatrix_entries():
    assert STILDE.entry("a", "b") == (-1, 1)
    assert STILDE.entry("b", "a") == (-1, -1)
    with pytest.raises(KeyError):
        SMatrix(()).entry("a", "a")
