"""The Clifford algebra on a[n], b[n] with {a_m, b_n} = delta(m+n+1, 0),
its smash product with the shift sigma, the homomorphism ``pi``, and the
weakly-increasing PBW basis obtained by pulling back along ``pi``.

A normally ordered Clifford word is stored as a pair of tuples
``(a_indices, b_indices)``, each strictly increasing.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

from gmpy2 import mpq

from .algebra import Element, Gen, Scalar, Word, Y, YS

A = "a"
B = "b"


class CliffGen(NamedTuple):
    kind: str  # "a" or "b"
    index: int

    def __repr__(self) -> str:
        return f"{self.kind}[{self.index}]"


CliffWord = tuple  # (tuple[int, ...], tuple[int, ...])
CliffElement = dict  # CliffWord -> Scalar
SmashElement = dict  # (CliffWord, int) -> Scalar


def _key(g: CliffGen) -> tuple[int, int]:
    return (0 if g.kind == A else 1, g.index)


def _contracts(g: CliffGen, h: CliffGen) -> bool:
    return g.kind != h.kind and g.index + h.index + 1 == 0


@lru_cache(maxsize=200_000)
def _cliff_nf(raw: tuple) -> tuple:
    for i in range(len(raw) - 1):
        g, h = raw[i], raw[i + 1]
        kg, kh = _key(g), _key(h)
        if kg == kh:
            return ()
        if kg > kh:
            acc: dict = {}
            swapped = raw[:i] + (h, g) + raw[i + 2:]
            for w, c in _cliff_nf(swapped):
                acc[w] = acc.get(w, 0) - c
            if _contracts(g, h):
                for w, c in _cliff_nf(raw[:i] + raw[i + 2:]):
                    acc[w] = acc.get(w, 0) + c
            return tuple((w, c) for w, c in acc.items() if c)
    a = tuple(g.index for g in raw if g.kind == A)
    b = tuple(g.index for g in raw if g.kind == B)
    return (((a, b), mpq(1)),)


def cliff_nf(raw) -> CliffElement:
    """Normal-order a raw sequence of Clifford generators."""
    return dict(_cliff_nf(tuple(CliffGen(*g) for g in raw)))


def cliff_word_letters(w: CliffWord) -> tuple:
    a, b = w
    return tuple(CliffGen(A, i) for i in a) + tuple(CliffGen(B, i) for i in b)


def sigma_shift(raw, k: int) -> tuple:
    """Apply sigma^k: a[n] -> a[n+k], b[n] -> b[n-k]."""
    return tuple(CliffGen(g.kind, g.index + k if g.kind == A else g.index - k) for g in raw)


def smash_mul(s: SmashElement, t: SmashElement) -> SmashElement:
    out: dict = {}
    for (u, m), x in s.items():
        for (v, n), y in t.items():
            raw = cliff_word_letters(u) + sigma_shift(cliff_word_letters(v), m)
            for w, c in _cliff_nf(raw):
                key = (w, m + n)
                out[key] = out.get(key, 0) + x * y * c
    return {k: v for k, v in out.items() if v}


def _pi_word(w: Word) -> tuple:
    raw = []
    power = 0
    for g in w:
        if g.kind == Y:
            raw.append(CliffGen(A, g.index + power))
            power += 1
        else:
            raw.append(CliffGen(B, g.index - power))
            power -= 1
    return tuple(raw), power


def pi(e: Element) -> SmashElement:
    out: dict = {}
    for w, c in e.terms.items():
        raw, power = _pi_word(w)
        for cw, k in _cliff_nf(raw):
            key = (cw, power)
            out[key] = out.get(key, 0) + c * k
    return {k: v for k, v in out.items() if v}


def charge(w: CliffWord) -> int:
    return len(w[0]) - len(w[1])


def pi_preimage(w: CliffWord) -> Word:
    """Basis-2 word whose image is ``w (x) sigma^charge(w)``."""
    a, b = w
    r = len(a)
    ys = tuple(Gen(Y, p - i) for i, p in enumerate(a))
    yss = tuple(Gen(YS, q - j + r) for j, q in enumerate(b))
    return ys + yss


def nf2(e: Element) -> Element:
    acc: dict[Word, Scalar] = {}
    for (cw, power), c in pi(e).items():
        if power != charge(cw):
            raise AssertionError(f"sigma power {power} does not match charge of {cw}")
        w = pi_preimage(cw)
        acc[w] = acc.get(w, 0) + c
    return Element._raw(acc)


def is_normal2(w: Word) -> bool:
    kinds = [g.kind for g in w]
    if kinds != sorted(kinds):
        return False
    for g, h in zip(w, w[1:]):
        if g.kind == h.kind and g.index > h.index:
            return False
    return True


def format_smash(s: SmashElement) -> list[dict]:
    rows = []
    for ((a, b), power), c in sorted(s.items()):
        rows.append({"a": list(a), "b": list(b), "sigma": power, "coeff": _q(c)})
    return rows


def _q(c: Scalar) -> str:
    return f"{c.numerator}/{c.denominator}"


def all_words(max_len: int, bound: int) -> list[Word]:
    letters = [Gen(k, i) for k in (Y, YS) for i in range(-bound, bound + 1)]
    out: list[Word] = [()]
    layer: list[Word] = [()]
    for _ in range(max_len):
        layer = [w + (g,) for w in layer for g in letters]
        out.extend(layer)
    return out


def pbw_cross_validation(max_len: int, bound: int) -> dict:
    """For every word up to ``max_len`` with indices in [-bound, bound]:
    nf2(w) equals w modulo the relations, and pi(nf1(w)) = pi(w)."""
    from .rewrite import equal, nf1

    checked = 0
    failures = []
    for w in all_words(max_len, bound):
        e = Element.from_word(w)
        checked += 1
        if not equal(e, nf2(e)):
            failures.append({"word": w, "check": "equal(e, nf2(e))"})
        elif pi(nf1(e)) != pi(e):
            failures.append({"word": w, "check": "pi(nf1(e)) = pi(e)"})
    return {"checked": checked, "failures": failures}
