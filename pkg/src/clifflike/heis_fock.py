"""Vertex-operator realization of the algebra on M(1) = Q[x_1, x_2, ...].

Heisenberg modes act by a_{-n} = x_n and a_n = n d/dx_n, so the annihilation
exponential ``exp(-sum a_n/n (z^-n + z^n))`` is the shift
``x_j -> x_j - (z^-j + z^j)``.  Y_n P is the z^{-n} coefficient of

    E^+(z) * P(x_j - z^-j - z^j)                 E^+(z) = exp(sum x_k z^k / k)

and Y*_n P the z^{-n} coefficient of ``(1 - z^2) E^-(z) P(x_j + z^-j + z^j)``.

Polynomials are dicts ``monomial -> rational``.  A monomial is packed into a
single int, exponent of x_j in bits [8(j-1), 8j), so monomial products are
integer additions and dict keys hash cheaply.  Use :func:`pack` /
:func:`unpack` to convert from / to exponent tuples ``(e_1, e_2, ...)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, lcm
from typing import Iterable

from gmpy2 import mpq

from .algebra import Element, Gen, Number, Scalar, Word, Y, YS
from .partitions import Partition, conjugate, partitions_of

Monomial = int
Poly = dict  # Monomial -> Scalar

_BITS = 8
_MASK = (1 << _BITS) - 1
MAX_WEIGHT = _MASK  # no exponent can exceed the weight, so no field overflows

ONE: Poly = {0: mpq(1)}


def pack(exps) -> Monomial:
    key = 0
    for j, e in enumerate(exps):
        if not 0 <= e <= _MASK:
            raise ValueError(f"exponent {e} out of range")
        key |= e << (_BITS * j)
    return key


def unpack(key: Monomial) -> tuple:
    out = []
    while key:
        out.append(key & _MASK)
        key >>= _BITS
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_weight(key: Monomial) -> int:
    return sum(j * e for j, e in enumerate(unpack(key), start=1))


# ---------------------------------------------------------------------------
# sparse polynomial arithmetic


def poly_add(p: Poly, q: Poly, scale=1) -> Poly:
    out = dict(p)
    for m, c in q.items():
        v = out.get(m, 0) + scale * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def poly_scale(p: Poly, c) -> Poly:
    if not c:
        return {}
    return {m: v * c for m, v in p.items()}


def poly_mul(p: Poly, q: Poly) -> Poly:
    out: dict = {}
    get = out.get
    for a, x in p.items():
        for b, y in q.items():
            out[a + b] = get(a + b, 0) + x * y
    return {m: c for m, c in out.items() if c}


def variable(k: int) -> Poly:
    return {1 << (_BITS * (k - 1)): mpq(1)}


def monomial_from_partition(lam: Partition) -> Monomial:
    return sum(1 << (_BITS * (p - 1)) for p in lam)


def weighted_degree(p: Poly) -> int:
    return max((monomial_weight(m) for m in p), default=0)


def is_constant(p: Poly) -> bool:
    return all(m == 0 for m in p)


def constant_term(p: Poly) -> Scalar:
    return p.get(0, mpq(0))


def monomials_up_to(d: int) -> list[Monomial]:
    return [monomial_from_partition(lam) for n in range(d + 1) for lam in partitions_of(n)]


# ---------------------------------------------------------------------------
# mode actions


@lru_cache(maxsize=None)
def _exp_coeffs(t: int, sign: int) -> tuple:
    coeffs = [ONE]
    for s in range(1, t + 1):
        acc: Poly = {}
        for k in range(1, s + 1):
            acc = poly_add(acc, poly_mul(variable(k), coeffs[s - k]))
        coeffs.append(poly_scale(acc, mpq(sign, s)))
    return tuple(coeffs)


def exp_coefficients(t: int, sign: int) -> list[Poly]:
    """E_0..E_t with sum E_t z^t = exp(sign * sum_k x_k z^k / k)."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return [dict(p) for p in _exp_coeffs(t, sign)]


@lru_cache(maxsize=None)
def _shift_power(j: int, e: int, s: int) -> tuple:
    """Laurent expansion of (x_j + s(z^-j + z^j))^e as ((zpow, poly), ...)."""
    out: dict[int, Poly] = {}
    for k in range(e + 1):
        xpart = {(e - k) << (_BITS * (j - 1)): mpq(comb(e, k) * s**k)}
        for l in range(k + 1):
            zp = j * (k - 2 * l)
            out[zp] = poly_add(out.get(zp, {}), xpart, comb(k, l))
    return tuple((zp, p) for zp, p in out.items() if p)


@lru_cache(maxsize=None)
def _shifted_monomial(m: Monomial, s: int) -> tuple:
    laurent: dict[int, Poly] = {0: ONE}
    for j, e in enumerate(unpack(m), start=1):
        if not e:
            continue
        nxt: dict[int, Poly] = {}
        for zp, poly in laurent.items():
            for zq, q in _shift_power(j, e, s):
                nxt[zp + zq] = poly_add(nxt.get(zp + zq, {}), poly_mul(poly, q))
        laurent = {k: v for k, v in nxt.items() if v}
    return tuple(sorted(laurent.items()))


def _sufficient_order(m: Monomial, n: int, kind: str) -> int:
    d = monomial_weight(m)
    if d + abs(n) + 2 > MAX_WEIGHT:
        raise ValueError(f"weight {d} too large for packed monomials")
    return max(d - n + (2 if kind == YS else 0), -1)


@lru_cache(maxsize=None)
def _exp_coeffs_int(t: int, sign: int) -> tuple:
    """(D, [D*E_0, ..., D*E_t]) with integer coefficients."""
    E = _exp_coeffs(t, sign)
    D = lcm(*(c.denominator for p in E for c in p.values()))
    return D, tuple(tuple((m, int(c * D)) for m, c in p.items()) for p in E)


@lru_cache(maxsize=None)
def _shifted_monomial_int(m: Monomial, s: int) -> dict:
    # the shift (x_j + s(z^-j + z^j))^e has integer coefficients
    return {zp: tuple((k, int(c)) for k, c in p.items()) for zp, p in _shifted_monomial(m, s)}


@lru_cache(maxsize=None)
def _mode_on_monomial_int(kind: str, n: int, m: Monomial, extra: int = 0) -> tuple:
    """Mode applied to one monomial, as ``(den, ((mono, numerator), ...))``."""
    s = -1 if kind == Y else 1
    order = _sufficient_order(m, n, kind) + extra
    if order < 0:
        return 1, ()
    laurent = _shifted_monomial_int(m, s)
    D, E = _exp_coeffs_int(order, -s)
    out: dict = {}
    get = out.get
    shifts = ((0, 1), (2, -1)) if kind == YS else ((0, 1),)
    for t in range(order + 1):
        for off, sgn in shifts:
            lt = laurent.get(-n - t - off)
            if not lt:
                continue
            for a, x in E[t]:
                x *= sgn
                for b, y in lt:
                    out[a + b] = get(a + b, 0) + x * y
    items = tuple((k, c) for k, c in out.items() if c)
    return D, items


def _mode_on_monomial(kind: str, n: int, m: Monomial, extra: int = 0) -> tuple:
    D, items = _mode_on_monomial_int(kind, n, m, extra)
    return tuple((k, mpq(c, D)) for k, c in items)


def _to_int_poly(P: Poly) -> tuple[int, dict]:
    den = lcm(*(mpq(c).denominator for c in P.values())) if P else 1
    return den, {m: int(mpq(c) * den) for m, c in P.items()}


def _from_int_poly(den: int, P: dict) -> Poly:
    return {m: mpq(c, den) for m, c in P.items() if c}


def _apply_mode_int(kind: str, n: int, den: int, P: dict, extra: int = 0) -> tuple[int, dict]:
    """Integer-numerator kernel: P/den  ->  out/den'."""
    parts = [(c, _mode_on_monomial_int(kind, n, m, extra)) for m, c in P.items()]
    L = lcm(*(d for _, (d, _) in parts)) if parts else 1
    out: dict = {}
    get = out.get
    for c, (d, items) in parts:
        if not items:
            continue
        f = c * (L // d)
        for m2, c2 in items:
            out[m2] = get(m2, 0) + f * c2
    return den * L, out


def apply_mode(kind: str, n: int, P: Poly, mu: Number = 1, extra: int = 0) -> Poly:
    """Coefficient of z^{-n} in Y(z)P (kind "Y") or Y*(z)P (kind "Ys"),
    in the module twisted by tau_mu.  ``extra`` widens the creation-series
    truncation beyond the sufficient order; it never changes the result."""
    mu = mpq(mu)
    if mu == 0:
        raise ValueError("mu must be nonzero")
    if kind not in (Y, YS):
        raise ValueError(f"unknown mode kind {kind!r}")
    den, out = _apply_mode_int(kind, n, *_to_int_poly(P), extra)
    scale = mu if kind == Y else 1 / mu
    return {m: c * scale for m, c in _from_int_poly(den, out).items()}


def _apply_word_int(w: Word, den: int, P: dict) -> tuple[int, dict]:
    for g in reversed(w):
        den, P = _apply_mode_int(g.kind, g.index, den, P)
        P = {m: c for m, c in P.items() if c}
        if not P:
            break
    return den, P


def apply_word(w: Word, P: Poly, mu: Number = 1) -> Poly:
    mu = mpq(mu)
    if mu == 0:
        raise ValueError("mu must be nonzero")
    for g in w:
        if g.kind not in (Y, YS):
            raise ValueError(f"unknown mode kind {g.kind!r}")
    out = _from_int_poly(*_apply_word_int(tuple(w), *_to_int_poly(P)))
    k = twist_factor(w, mu)
    return {m: c * k for m, c in out.items()} if k != 1 else out


def apply_element(e: Element, P: Poly, mu: Number = 1) -> Poly:
    out: Poly = {}
    for w, c in e.terms.items():
        out = poly_add(out, apply_word(w, P, mu), c)
    return out


def neg_partition_word(lam: Partition, kind: str = Y) -> Word:
    return tuple(Gen(kind, -p) for p in lam)


def vacuum_vector(lam: Partition, kind: str = Y, mu: Number = 1) -> Poly:
    """Y_{-lam} . 1 (or Y*_{-lam} . 1)."""
    return apply_word(neg_partition_word(lam, kind), ONE, mu)


# ---------------------------------------------------------------------------
# checks


def duality_check(lam: Partition, mu: Number = 1) -> bool:
    if mpq(mu) != 1:
        raise ValueError("the duality identity is stated for the untwisted module (mu = 1)")
    lhs = vacuum_vector(lam, Y)
    rhs = poly_scale(vacuum_vector(conjugate(lam), YS), (-1) ** sum(lam))
    return lhs == rhs


RELATIONS = ("3.1", "3.2", "3.3")


def relation_element(which: str, m: int, n: int) -> Element:
    """Left side minus right side of a defining relation, as an element."""
    if which == "3.1":
        k = Y
    elif which == "3.2":
        k = YS
    elif which == "3.3":
        e = Element({(Gen(Y, m), Gen(YS, n)): 1, (Gen(YS, n - 1), Gen(Y, m + 1)): 1})
        return e - (1 if m + n == 0 else 0)
    else:
        raise ValueError(f"unknown relation {which!r}")
    return Element({(Gen(k, m), Gen(k, n)): 1, (Gen(k, n + 1), Gen(k, m - 1)): 1})


def relation_residual(which: str, m: int, n: int, P: Poly, mu: Number = 1) -> Poly:
    return apply_element(relation_element(which, m, n), P, mu)


def twist_factor(w: Word, mu: Number) -> Scalar:
    """Scalar by which tau_mu rescales the action of ``w``."""
    mu = mpq(mu)
    return mu ** sum(1 if g.kind == Y else -1 for g in w)


@lru_cache(maxsize=None)
def _word_on_monomial(w: Word, m: Monomial) -> tuple:
    return tuple(_from_int_poly(*_apply_word_int(w, 1, {m: 1})).items())


def _residual_on_monomial(which: str, m: int, n: int, mono: Monomial, mu: Scalar) -> Poly:
    out: Poly = {}
    for w, c in relation_element(which, m, n).terms.items():
        out = poly_add(out, dict(_word_on_monomial(w, mono)), c * twist_factor(w, mu))
    return out


@dataclass(frozen=True)
class ModeWindow:
    index_bound: int
    degree_bound: int

    def __post_init__(self):
        if self.index_bound < 0 or self.degree_bound < 0:
            raise ValueError("window bounds must be nonnegative")


def relations_suite(window: ModeWindow, mus: Iterable[Number] = (1,)) -> list[dict]:
    """All nonzero residuals; an empty list means every relation holds."""
    rng = range(-window.index_bound, window.index_bound + 1)
    failures = []
    monos = monomials_up_to(window.degree_bound)
    for mu in mus:
        for which in RELATIONS:
            for m in rng:
                for n in rng:
                    for mono in monos:
                        r = _residual_on_monomial(which, m, n, mono, mpq(mu))
                        if r:
                            failures.append(
                                {"relation": which, "m": m, "n": n, "monomial": mono,
                                 "mu": mpq(mu), "residual": r}
                            )
    return failures


def basis2_words(k: int, bound: int, max_len: int) -> list[Word]:
    """Weakly increasing Y-block then Ys-block, index sum k, indices in [-bound, bound]."""
    idx = range(-bound, bound + 1)
    out = []

    def blocks(length: int, lo: int):
        if length == 0:
            yield ()
            return
        for i in idx:
            if i >= lo:
                for rest in blocks(length - 1, i):
                    yield (i,) + rest

    for length in range(1, max_len + 1):
        for r in range(length + 1):
            for ms in blocks(r, -bound):
                for ns in blocks(length - r, -bound):
                    if sum(ms) + sum(ns) == k:
                        out.append(tuple(Gen(Y, i) for i in ms) + tuple(Gen(YS, i) for i in ns))
    return out


def lemma_omega_suite(kmax: int, window: ModeWindow, max_len: int = 4) -> dict:
    """Check that negative-degree basis-2 words kill the vacuum."""
    checked = 0
    violations = []
    for k in range(1, kmax + 1):
        for w in basis2_words(k, window.index_bound, max_len):
            checked += 1
            if apply_word(w, ONE):
                violations.append(w)
    return {"checked": checked, "violations": violations}


def format_poly(p: Poly) -> list[dict]:
    rows = []
    for m, c in sorted(p.items(), key=lambda t: unpack(t[0])):
        rows.append({
            "monomial": {str(i + 1): e for i, e in enumerate(unpack(m)) if e},
            "coeff": f"{c.numerator}/{c.denominator}",
        })
    return rows


def poly_str(p: Poly) -> str:
    if not p:
        return "0"
    terms = []
    for m, c in sorted(p.items(), key=lambda t: unpack(t[0])):
        mono = "*".join(f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(unpack(m)) if e)
        terms.append(f"{c}" + (f"*{mono}" if mono else ""))
    return " + ".join(terms)
