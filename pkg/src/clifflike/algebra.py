"""Free-algebra layer for the generators Y[n], Ys[n].

Elements are finite rational combinations of words.  A word is a tuple of
:class:`Gen`; the empty tuple is the identity.  Equality of :class:`Element`
objects is equality of coefficient maps (i.e. in the *free* algebra); use
:func:`clifflike.rewrite.equal` for equality modulo the defining relations.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple, Union

from gmpy2 import mpq

Y = "Y"
YS = "Ys"

Scalar = type(mpq(0))
Number = Union[int, Fraction, Scalar]
NUMBER_TYPES = (int, Fraction, Scalar)


def scalar(x) -> Scalar:
    """Coerce int / Fraction / "p/q" string to an exact rational."""
    return mpq(x)


class Gen(NamedTuple):
    kind: str  # "Y" or "Ys"
    index: int

    def __repr__(self) -> str:
        return f"{self.kind}[{self.index}]"


Word = tuple  # tuple[Gen, ...]


def word_str(w: Word) -> str:
    return "*".join(repr(g) for g in w) if w else "1"


def degree(w: Word) -> int:
    return -sum(g.index for g in w)


class Element:
    """Rational linear combination of words; immutable by convention."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, Number] | None = None):
        clean: dict[Word, Scalar] = {}
        if terms:
            for w, c in terms.items():
                c = mpq(c)
                if c:
                    clean[tuple(w)] = c
        self.terms = clean

    @classmethod
    def from_word(cls, w: Iterable[Gen], coeff: Number = 1) -> "Element":
        return cls({tuple(w): coeff})

    @classmethod
    def one(cls) -> "Element":
        return cls({(): 1})

    @classmethod
    def zero(cls) -> "Element":
        return cls()

    @classmethod
    def _raw(cls, terms: dict) -> "Element":
        e = cls.__new__(cls)
        e.terms = {w: c for w, c in terms.items() if c}
        return e

    def __iter__(self) -> Iterator[tuple[Word, Scalar]]:
        return iter(sorted(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, NUMBER_TYPES):
            other = Element({(): other})
        if not isinstance(other, Element):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "Element | Number") -> "Element":
        if isinstance(other, NUMBER_TYPES):
            other = Element({(): other})
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return Element._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Element":
        return Element._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "Element | Number") -> "Element":
        if isinstance(other, NUMBER_TYPES):
            other = Element({(): other})
        return self + (-other)

    def __rsub__(self, other: Number) -> "Element":
        return Element({(): other}) - self

    def __mul__(self, other: "Element | Number") -> "Element":
        if isinstance(other, NUMBER_TYPES):
            return Element._raw({w: c * other for w, c in self.terms.items()})
        out: dict[Word, Scalar] = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = u + v
                out[w] = out.get(w, 0) + a * b
        return Element._raw(out)

    def __rmul__(self, other: Number) -> "Element":
        return Element._raw({w: c * other for w, c in self.terms.items()})

    def homogeneous_parts(self) -> dict[int, "Element"]:
        parts: dict[int, dict] = {}
        for w, c in self.terms.items():
            parts.setdefault(degree(w), {})[w] = c
        return {k: Element._raw(v) for k, v in sorted(parts.items())}

    def map_words(self, f) -> "Element":
        """Apply ``f: word -> (word, factor)`` termwise."""
        out: dict[Word, Scalar] = {}
        for w, c in self.terms.items():
            w2, k = f(w)
            out[w2] = out.get(w2, 0) + c * k
        return Element._raw(out)

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"Element({format_element(self)!r})"


def gen(kind: str, n: int) -> Element:
    return Element.from_word((Gen(kind, n),))


def Yn(n: int) -> Element:
    return gen(Y, n)


def Ysn(n: int) -> Element:
    return gen(YS, n)


# ---------------------------------------------------------------------------
# involution, twists, derivation


def theta_word(w: Word) -> Word:
    return tuple(Gen(YS if g.kind == Y else Y, -g.index) for g in reversed(w))


def theta(e: Element) -> Element:
    return e.map_words(lambda w: (theta_word(w), 1))


def tau(e: Element, mu: Number) -> Element:
    mu = mpq(mu)
    if mu == 0:
        raise ValueError("tau: mu must be nonzero")

    def scale(w):
        k = sum(1 if g.kind == Y else -1 for g in w)
        return w, mu**k

    return e.map_words(scale)


def d_derivation(e: Element) -> Element:
    return e.map_words(lambda w: (w, degree(w)))


# ---------------------------------------------------------------------------
# text grammar:  1/2*Y[-1]*Ys[0] - Y[2]


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(
    r"\s*(?:(?P<gen>Ys|Y)\[\s*(?P<idx>[+-]?\d+)\s*\]|(?P<num>\d+(?:/\d+)?)|(?P<op>[*+\-()]))"
)


def _tokenize(text: str):
    pos = 0
    toks = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            while text[pos].isspace():
                pos += 1
            raise ParseError(f"unexpected character {text[pos:pos + 1]!r}", pos)
        start = m.start(m.lastgroup if m.lastgroup != "idx" else "gen")
        if m.group("gen"):
            toks.append(("gen", Gen(m.group("gen"), int(m.group("idx"))), start))
        elif m.group("num"):
            toks.append(("num", mpq(m.group("num")), start))
        else:
            toks.append(("op", m.group("op"), start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expr(self) -> Element:
        sign = 1
        if self.peek()[:2] in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term() * sign
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
            acc = acc + self.term() * sign
        return acc

    def term(self) -> Element:
        acc = self.factor()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Element:
        kind, val, pos = self.take()
        if kind == "gen":
            return Element.from_word((val,))
        if kind == "num":
            return Element({(): val})
        if (kind, val) == ("op", "("):
            inner = self.expr()
            k, v, p = self.take()
            if (k, v) != ("op", ")"):
                raise ParseError("expected ')'", p)
            return inner
        if (kind, val) == ("op", "-"):
            return -self.factor()
        raise ParseError("expected generator, number or '('", pos)


def parse(text: str) -> Element:
    """Parse the element grammar used by the CLI, e.g. ``1/2*Y[-1]*Ys[0] - Y[2]``."""
    p = _Parser(text)
    if p.peek()[0] == "end":
        raise ParseError("empty expression", 0)
    e = p.expr()
    kind, _, pos = p.peek()
    if kind != "end":
        raise ParseError("trailing input", pos)
    return e


def format_element(e: Element) -> str:
    if not e.terms:
        return "0"
    parts = []
    for w, c in e:
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if not w:
            body = str(c)
        elif c == 1:
            body = word_str(w)
        else:
            body = f"{c}*{word_str(w)}"
        parts.append((sign, body))
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for s, b in parts[1:]:
        out += f" {s} {b}"
    return out
