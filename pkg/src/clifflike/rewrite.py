"""Normal forms in the strictly-shifted PBW basis, confluence checks, and
the reduction of degree-zero elements onto the Laurent group algebra.

Rewrite rules (applied to the leftmost reducible adjacent pair)::

    Y[m] Y[n]   -> -Y[n+1] Y[m-1]                    (m <= n)
    Y[n+1] Y[n] -> 0
    Ys[m] Ys[n] -> -Ys[n+1] Ys[m-1]                  (m <= n)
    Ys[n+1] Ys[n] -> 0
    Ys[n] Y[m]  -> -Y[m-1] Ys[n+1] + delta(m+n, 0)

Every rule strictly decreases (number of (Ys, Y) inversions, total reverse
number) lexicographically, so rewriting terminates.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from gmpy2 import mpq

from .algebra import NUMBER_TYPES, Element, Gen, Number, Scalar, Word, Y, YS, degree, word_str

FAMILIES = ("YYY", "YsYY", "YsYsY", "YsYsYs")


def _pair_rule(g: Gen, h: Gen):
    """Rewrite of the adjacent pair ``g h`` as [(coeff, word)], or None if normal."""
    if g.kind == h.kind:
        m, n = g.index, h.index
        if m > n + 1:
            return None
        if m == n + 1:
            return []
        return [(-1, (Gen(g.kind, n + 1), Gen(g.kind, m - 1)))]
    if g.kind == YS and h.kind == Y:
        n, m = g.index, h.index
        out = [(-1, (Gen(Y, m - 1), Gen(YS, n + 1)))]
        if m + n == 0:
            out.append((1, ()))
        return out
    return None


def _reducible_at(w: Word) -> int | None:
    for i in range(len(w) - 1):
        g, h = w[i], w[i + 1]
        if g.kind == h.kind:
            if g.index <= h.index + 1:
                return i
        elif g.kind == YS:
            return i
    return None


def is_normal1(w: Word) -> bool:
    return _reducible_at(tuple(w)) is None


def rewrite_step(w: Word, at: int | None = None) -> list[tuple[int, Word]]:
    """One rule application at position ``at`` (default: leftmost redex)."""
    if at is None:
        at = _reducible_at(w)
        if at is None:
            return [(1, w)]
    repl = _pair_rule(w[at], w[at + 1])
    if repl is None:
        raise ValueError(f"no rule applies at position {at} of {word_str(w)}")
    return [(c, w[:at] + r + w[at + 2:]) for c, r in repl]


@lru_cache(maxsize=200_000)
def _nf_word(w: Word) -> tuple:
    at = _reducible_at(w)
    if at is None:
        return ((w, mpq(1)),)
    acc: dict[Word, Scalar] = {}
    for c, w2 in rewrite_step(w, at):
        for w3, c3 in _nf_word(w2):
            acc[w3] = acc.get(w3, 0) + c * c3
    return tuple((k, v) for k, v in acc.items() if v)


def nf1(e: Element) -> Element:
    acc: dict[Word, Scalar] = {}
    for w, c in e.terms.items():
        for w2, c2 in _nf_word(w):
            acc[w2] = acc.get(w2, 0) + c * c2
    return Element._raw(acc)


def equal(a: Element, b: Element) -> bool:
    return nf1(a - b).terms == {}


# ---------------------------------------------------------------------------
# diamond-lemma overlaps


@dataclass(frozen=True)
class RewriteReport:
    family: str
    indices: tuple[int, int, int]
    word: Word
    left_first: Element
    right_first: Element

    @property
    def agree(self) -> bool:
        return self.left_first.terms == self.right_first.terms

    def describe(self) -> str:
        return f"{self.family}{self.indices}: {word_str(self.word)}"


_FAMILY_KINDS = {
    "YYY": (Y, Y, Y),
    "YsYY": (YS, Y, Y),
    "YsYsY": (YS, YS, Y),
    "YsYsYs": (YS, YS, YS),
}


def overlap_word(family: str, i: int, j: int, k: int) -> Word:
    try:
        kinds = _FAMILY_KINDS[family]
    except KeyError:
        raise ValueError(f"unknown overlap family {family!r}") from None
    return tuple(Gen(kd, n) for kd, n in zip(kinds, (i, j, k)))


def is_overlap(family: str, i: int, j: int, k: int) -> bool:
    """Both adjacent pairs of the overlap word are redexes.

    For YYY / YsYsYs this is ``i <= j+1 <= k+2``; a (Ys, Y) pair is always
    a redex, so the mixed families only constrain their like-kind pair.
    """
    w = overlap_word(family, i, j, k)
    return _pair_rule(w[0], w[1]) is not None and _pair_rule(w[1], w[2]) is not None


def _reduce_then_normalize(w: Word, at: int) -> Element:
    return nf1(Element(_accumulate(rewrite_step(w, at))))


def _accumulate(pairs: Iterable[tuple[int, Word]]) -> dict:
    acc: dict[Word, Scalar] = {}
    for c, w in pairs:
        acc[w] = acc.get(w, 0) + c
    return acc


def check_overlap(family: str, i: int, j: int, k: int) -> RewriteReport:
    if not is_overlap(family, i, j, k):
        raise ValueError(
            f"{family}({i},{j},{k}) is not an overlap ambiguity: "
            "both adjacent pairs must be reducible"
        )
    w = overlap_word(family, i, j, k)
    return RewriteReport(
        family, (i, j, k), w,
        _reduce_then_normalize(w, 0),
        _reduce_then_normalize(w, 1),
    )


def confluence_suite(window: int) -> list[RewriteReport]:
    rng = range(-window, window + 1)
    return [
        check_overlap(f, i, j, k)
        for f in FAMILIES
        for i in rng
        for j in rng
        for k in rng
        if is_overlap(f, i, j, k)
    ]


# ---------------------------------------------------------------------------
# degree-zero quotient  A_0 / I_0  ~  Q[t, t^-1]


class GroupAlgebraElement:
    """Sum of c_k * t^k, where t is the class of Y[0] and t^-1 that of Ys[0]."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, Number] | None = None):
        self.coeffs = {k: mpq(c) for k, c in (coeffs or {}).items() if c}

    @classmethod
    def monomial(cls, k: int, c=1) -> "GroupAlgebraElement":
        return cls({k: c})

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return GroupAlgebraElement(out)

    def __mul__(self, other):
        if isinstance(other, NUMBER_TYPES):
            return GroupAlgebraElement({k: c * other for k, c in self.coeffs.items()})
        out: dict[int, Scalar] = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return GroupAlgebraElement(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, NUMBER_TYPES):
            other = GroupAlgebraElement({0: other})
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*t^{k}" for k, c in sorted(self.coeffs.items()))


def push_through(m: int, ns: Iterable[int]) -> list[tuple[int, Word]]:
    """Move ``Y[m]`` to the right across ``Ys[n_1] ... Ys[n_s]``.

    Returns ``[(coeff, word)]`` with::

        Y[m] Ys[n_1..n_s] = (-1)^s Ys[n_1-1] ... Ys[n_s-1] Y[m+s]
            + sum_{j=0}^{s-1} (-1)^j delta(m+j+n_{j+1}, 0)
                  Ys[n_1-1] ... Ys[n_j-1] Ys[n_{j+2}] ... Ys[n_s]
    """
    ns = tuple(ns)
    s = len(ns)
    shifted = tuple(Gen(YS, n - 1) for n in ns)
    out = [((-1) ** s, shifted + (Gen(Y, m + s),))]
    for j in range(s):
        if m + j + ns[j] == 0:
            tail = tuple(Gen(YS, n) for n in ns[j + 1:])
            out.append(((-1) ** j, shifted[:j] + tail))
    return out


def _basis2_shape(w: Word) -> tuple[list[int], list[int]]:
    ms = [g.index for g in w if g.kind == Y]
    ns = [g.index for g in w if g.kind == YS]
    return ms, ns


def _reduce_basis2_word(w: Word) -> GroupAlgebraElement:
    ms, ns = _basis2_shape(w)
    r, s = len(ms), len(ns)
    if r == 0 and s == 0:
        return GroupAlgebraElement({0: 1})
    if s == 0:
        return GroupAlgebraElement({r: 1}) if ms[-1] == 0 else GroupAlgebraElement()
    if r == 0:
        return GroupAlgebraElement({-s: 1}) if ns[-1] == 0 else GroupAlgebraElement()
    if ns[-1] >= 1:
        return GroupAlgebraElement()
    if ns[-1] == 0:
        return _reduce_degree0(Element.from_word(w[:-1])) * GroupAlgebraElement({-1: 1})
    # all n_j < 0 and m_r >= 1: the leading term ends in Y[m_r + s], hence in I_0
    prefix = w[: r - 1]
    acc = GroupAlgebraElement()
    for c, tail in push_through(ms[-1], ns):
        if tail and tail[-1].index >= 1:
            continue
        acc = acc + _reduce_degree0(Element.from_word(prefix + tail)) * c
    return acc


def _reduce_degree0(e: Element) -> GroupAlgebraElement:
    from .clifford import nf2

    acc = GroupAlgebraElement()
    for w, c in nf2(e).terms.items():
        acc = acc + _reduce_basis2_word(w) * c
    return acc


def reduce_A0(e: Element) -> GroupAlgebraElement:
    """Class of a degree-zero element in A_0 / I_0, as a Laurent polynomial in t."""
    bad = [w for w in e.terms if degree(w) != 0]
    if bad:
        raise ValueError(f"reduce_A0 needs degree-0 input; {word_str(bad[0])} has degree {degree(bad[0])}")
    return _reduce_degree0(e)


def degree0_words(max_len: int, bound: int) -> list[Word]:
    letters = [Gen(k, i) for k in (Y, YS) for i in range(-bound, bound + 1)]
    out: list[Word] = []
    layer: list[Word] = [()]
    for _ in range(max_len):
        layer = [w + (g,) for w in layer for g in letters]
        out.extend(w for w in layer if degree(w) == 0)
    return out


def degree0_suite(max_power: int = 4, pair_len: int = 2, bound: int = 3) -> dict:
    """Checks of the reduction onto the Laurent polynomials in t.

    * Y[0]^k Ys[0]^l  ->  t^(k-l)
    * Y[m] Ys[-m]     ->  1 for 0 <= m <= 4, 0 for -4 <= m < 0
    * multiplicativity on all pairs of degree-0 words of length <= pair_len
    """
    failures = []
    for k in range(max_power + 1):
        for l in range(max_power + 1):
            w = (Gen(Y, 0),) * k + (Gen(YS, 0),) * l
            if reduce_A0(Element.from_word(w)) != GroupAlgebraElement({k - l: 1}):
                failures.append({"check": "power", "word": w})
    for m in range(-4, 5):
        expect = GroupAlgebraElement({0: 1} if m >= 0 else {})
        w = (Gen(Y, m), Gen(YS, -m))
        if reduce_A0(Element.from_word(w)) != expect:
            failures.append({"check": "pair", "word": w})
    words = degree0_words(pair_len, bound)
    classes = {w: reduce_A0(Element.from_word(w)) for w in words}
    pairs = 0
    for u in words:
        for v in words:
            pairs += 1
            if reduce_A0(Element.from_word(u + v)) != classes[u] * classes[v]:
                failures.append({"check": "multiplicative", "word": u + v})
    return {"pairs": pairs, "failures": failures}
