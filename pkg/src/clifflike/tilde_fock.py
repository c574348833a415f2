"""The fermionic Fock space V_C, the pseudo-automorphism Delta(x), and the
modes of Ytilde(x) = Y(a,x) Delta(x), Ytilde*(x) = Y(b,x) Delta(x)^{-1}.

A basis state ``a_{p_1}..a_{p_r} b_{q_1}..b_{q_s} Omega`` is stored as the
pair ``((p_1..p_r), (q_1..q_s))`` with strictly increasing negative indices.
Vectors are dicts ``state -> rational``.

Delta(x) only ever produces the single prefactor ``e^{c x/2}`` with
``c = #b - #a``, so it is returned as ``(c, payload)``.  Every sum below is
finite because it is evaluated against a fixed vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import factorial
from typing import Iterable, NamedTuple

from gmpy2 import mpq

from .algebra import Scalar, Y, YS
from .clifford import A, B, CliffGen
from .linalg import IncrementalRank


class FermionState(NamedTuple):
    a: tuple = ()
    b: tuple = ()

    @property
    def charge(self) -> int:
        return len(self.a) - len(self.b)

    @property
    def energy(self) -> int:
        return -sum(self.a) - sum(self.b)


FermionVector = dict  # FermionState -> Scalar

VACUUM_STATE = FermionState((), ())


def vacuum() -> FermionVector:
    return {VACUUM_STATE: mpq(1)}


def make_state(a: Iterable[int] = (), b: Iterable[int] = ()) -> FermionState:
    a, b = tuple(a), tuple(b)
    for idx in (a, b):
        if any(i >= 0 for i in idx) or any(x >= y for x, y in zip(idx, idx[1:])):
            raise ValueError(f"indices must be negative and strictly increasing: {idx}")
    return FermionState(a, b)


def vec_add(u: FermionVector, v: FermionVector, scale=1) -> FermionVector:
    out = dict(u)
    for s, c in v.items():
        x = out.get(s, 0) + scale * c
        if x:
            out[s] = x
        else:
            out.pop(s, None)
    return out


def vec_scale(v: FermionVector, c) -> FermionVector:
    if not c:
        return {}
    return {s: x * c for s, x in v.items()}


def _strict_partitions(n: int, cap: int | None = None):
    if cap is None:
        cap = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, cap), 0, -1):
        for rest in _strict_partitions(n - first, first - 1):
            yield (first,) + rest


def states_up_to_energy(E: int) -> list[FermionState]:
    out = []
    for ea in range(E + 1):
        for eb in range(E - ea + 1):
            for pa in _strict_partitions(ea):
                for pb in _strict_partitions(eb):
                    out.append(FermionState(tuple(-p for p in pa), tuple(-p for p in pb)))
    return sorted(out, key=lambda s: (s.energy, s))


# ---------------------------------------------------------------------------
# Clifford action on V_C


@lru_cache(maxsize=None)
def _apply_to_state(kind: str, m: int, s: FermionState) -> tuple:
    """``g s`` as a tuple of (sign, state) (at most one term)."""
    a, b = s
    r = len(a)
    if kind == A:
        if m < 0:
            if m in a:
                return ()
            below = sum(1 for p in a if p < m)
            return (((-1) ** below, FermionState(tuple(sorted(a + (m,))), b)),)
        partner = -m - 1
        if partner not in b:
            return ()
        pos = b.index(partner)
        return (((-1) ** (r + pos), FermionState(a, b[:pos] + b[pos + 1:])),)
    if kind == B:
        if m < 0:
            if m in b:
                return ()
            below = sum(1 for q in b if q < m)
            return (((-1) ** (r + below), FermionState(a, tuple(sorted(b + (m,))))),)
        partner = -m - 1
        if partner not in a:
            return ()
        pos = a.index(partner)
        return (((-1) ** pos, FermionState(a[:pos] + a[pos + 1:], b)),)
    raise ValueError(f"unknown Clifford generator kind {kind!r}")


def fermion_apply(g: CliffGen, v: FermionVector) -> FermionVector:
    kind, m = g
    out: FermionVector = {}
    for s, c in v.items():
        for sign, s2 in _apply_to_state(kind, m, s):
            x = out.get(s2, 0) + sign * c
            if x:
                out[s2] = x
            else:
                out.pop(s2, None)
    return out


def vector_charge(v: FermionVector) -> int:
    charges = {s.charge for s in v}
    if len(charges) != 1:
        raise ValueError(f"vector is not charge-homogeneous (charges {sorted(charges)})")
    return charges.pop()


def split_by_charge(v: FermionVector) -> dict[int, FermionVector]:
    out: dict[int, FermionVector] = {}
    for s, c in v.items():
        out.setdefault(s.charge, {})[s] = c
    return out


def _max_partner(v: FermionVector, kind: str) -> int:
    """Largest -index among the letters that a mode of ``kind`` can contract."""
    other = (lambda s: s.b) if kind == A else (lambda s: s.a)
    return max((-i for s in v for i in other(s)), default=0)


# ---------------------------------------------------------------------------
# Delta(x)


@dataclass(frozen=True)
class ChargedVector:
    """``e^{c x / 2} * payload``."""

    c: int
    payload: FermionVector = field(compare=True)


def _transport_coeff(kind: str, j: int, inverse: bool) -> Scalar:
    # Delta(a_p w) = e^{-x/2} sum_j a_{p+j}/(2^j j!) Delta w
    # Delta(b_p w) = e^{ x/2} sum_j (-1)^j b_{p+j}/(2^j j!) Delta w
    # the inverse swaps which letter carries (-1)^j
    alternating = (kind == B) != inverse
    return mpq((-1) ** j if alternating else 1, 2**j * factorial(j))


@lru_cache(maxsize=None)
def _delta_state(s: FermionState, inverse: bool) -> tuple:
    cur: FermionVector = vacuum()
    letters = [(A, p) for p in s.a] + [(B, q) for q in s.b]
    for kind, p in reversed(letters):
        jmax = max(-1, _max_partner(cur, kind) - 1) - p
        nxt: FermionVector = {}
        for j in range(jmax + 1):
            term = fermion_apply(CliffGen(kind, p + j), cur)
            if term:
                nxt = vec_add(nxt, term, _transport_coeff(kind, j, inverse))
        cur = nxt
    return tuple(cur.items())


def delta(v: FermionVector, inverse: bool = False) -> ChargedVector:
    if not v:
        return ChargedVector(0, {})
    q = vector_charge(v)
    out: FermionVector = {}
    for s, c in v.items():
        out = vec_add(out, dict(_delta_state(s, inverse)), c)
    return ChargedVector(q if inverse else -q, out)


# ---------------------------------------------------------------------------
# modes of Ytilde, Ytilde*


def _letter(kind: str) -> str:
    if kind == Y:
        return A
    if kind == YS:
        return B
    raise ValueError(f"unknown mode kind {kind!r}")


def _payload_bound(u: FermionVector, letter: str) -> int:
    return _max_partner(u, letter) - 1


def mode_vanishing_bound(v: FermionVector, kind: str) -> int:
    """B with tilde_mode(kind, p, v) = 0 for every p > B."""
    letter = _letter(kind)
    bound = -1
    for part in split_by_charge(v).values():
        u = delta(part, inverse=(kind == YS)).payload
        bound = max(bound, _payload_bound(u, letter))
    return bound


def tilde_mode(kind: str, n: int, v: FermionVector) -> FermionVector:
    """Coefficient of x^{-n-1} in Y(a,x)Delta(x) v (or Y(b,x)Delta(x)^{-1} v)."""
    letter = _letter(kind)
    out: FermionVector = {}
    for part in split_by_charge(v).values():
        cv = delta(part, inverse=(kind == YS))
        half = mpq(cv.c, 2)
        for q in range(_payload_bound(cv.payload, letter) - n + 1):
            term = fermion_apply(CliffGen(letter, n + q), cv.payload)
            if term:
                out = vec_add(out, term, half**q / factorial(q))
    return out


def tilde_word(word, v: FermionVector) -> FermionVector:
    """Apply ``[(kind, n), ...]`` rightmost first."""
    for kind, n in reversed(list(word)):
        v = tilde_mode(kind, n, v)
        if not v:
            break
    return v


TILDE_RELATIONS = ("3.10", "3.11", "3.12")


def tilde_relation_residual(which: str, m: int, n: int, v: FermionVector) -> FermionVector:
    """Left side minus right side of a component relation, applied to ``v``.

    The coefficient (1/k!) C(k, i) is written as 1/(i! j!) with j = k - i;
    both sums stop at the vanishing bounds of the vectors they act on.
    """
    if which in ("3.10", "3.11"):
        kind = Y if which == "3.10" else YS
        out = tilde_mode(kind, m, tilde_mode(kind, n, v))
        for i in range(mode_vanishing_bound(v, kind) - m + 1):
            u = tilde_mode(kind, m + i, v)
            if not u:
                continue
            for j in range(mode_vanishing_bound(u, kind) - n + 1):
                w = tilde_mode(kind, n + j, u)
                if w:
                    out = vec_add(out, w, mpq((-1) ** i, factorial(i) * factorial(j)))
        return out
    if which == "3.12":
        out = tilde_mode(Y, m, tilde_mode(YS, n, v))
        for j in range(mode_vanishing_bound(v, Y) - m + 1):
            u = tilde_mode(Y, m + j, v)
            if not u:
                continue
            for i in range(mode_vanishing_bound(u, YS) - n + 1):
                w = tilde_mode(YS, n + i, u)
                if w:
                    out = vec_add(out, w, mpq((-1) ** i, factorial(i) * factorial(j)))
        if m + n + 1 == 0:
            out = vec_add(out, v, -1)
        return out
    raise ValueError(f"unknown relation {which!r}")


def tilde_relations_suite(energy: int, window: int) -> list[dict]:
    """Nonzero residuals over all states of energy <= ``energy``."""
    failures = []
    rng = range(-window, window + 1)
    for s in states_up_to_energy(energy):
        v = {s: mpq(1)}
        for which in TILDE_RELATIONS:
            for m in rng:
                for n in rng:
                    r = tilde_relation_residual(which, m, n, v)
                    if r:
                        failures.append({"relation": which, "m": m, "n": n, "state": s, "residual": r})
    return failures


GENERATOR_STATES = {"a": FermionState((-1,), ()), "b": FermionState((), (-1,))}


def structure_constant(u: str, n: int, w: str) -> FermionVector:
    """u~_n w~ in the vacuum realization, for u, w in {"a", "b"}."""
    if u not in GENERATOR_STATES or w not in GENERATOR_STATES:
        raise ValueError("structure constants are defined for u, w in {'a', 'b'}")
    return tilde_mode(Y if u == "a" else YS, n, {GENERATOR_STATES[w]: mpq(1)})


def vacuum_spanning_check(max_modes: int = 3, indices: Iterable[int] = range(-4, 0),
                          energy: int = 3) -> dict[int, dict]:
    """Do words of at most ``max_modes`` creation modes on Omega span every
    charge component of V_C up to ``energy``?  Reported per charge."""
    indices = list(indices)
    generated: dict[int, list[FermionVector]] = {}
    for length in range(max_modes + 1):
        for word in product([(k, i) for k in (Y, YS) for i in indices], repeat=length):
            v = tilde_word(word, vacuum())
            for q, part in split_by_charge(v).items():
                generated.setdefault(q, []).append(part)
    report = {}
    targets: dict[int, list[FermionState]] = {}
    for s in states_up_to_energy(energy):
        targets.setdefault(s.charge, []).append(s)
    for q, states in sorted(targets.items()):
        acc = IncrementalRank()
        for v in generated.get(q, []):
            acc.add(v)
        span_rank = acc.rank
        missing = [s for s in states if acc.reduce({s: 1})]
        report[q] = {"states": len(states), "generated_rank": span_rank, "missing": missing,
                     "ok": not missing}
    return report


# ---------------------------------------------------------------------------
# truncated series and the S-matrix


class TruncSeries:
    """Power series in ``nvars`` variables, truncated above total degree ``order``."""

    __slots__ = ("order", "nvars", "coeffs")

    def __init__(self, order: int, nvars: int, coeffs: dict | None = None):
        if order < 0:
            raise ValueError("order must be nonnegative")
        self.order = order
        self.nvars = nvars
        self.coeffs = {
            e: mpq(c) for e, c in (coeffs or {}).items() if c and sum(e) <= order
        }

    @classmethod
    def constant(cls, order: int, nvars: int, c=1) -> "TruncSeries":
        return cls(order, nvars, {(0,) * nvars: c})

    @classmethod
    def exp_linear(cls, order: int, lin: tuple, sign: int = 1) -> "TruncSeries":
        """sign * exp(sum_i lin[i] * t_i)."""
        nvars = len(lin)
        coeffs = {}

        def rec(i, prefix, budget):
            if i == nvars:
                c = mpq(sign)
                for l, e in zip(lin, prefix):
                    c *= mpq(l) ** e / factorial(e)
                coeffs[prefix] = c
                return
            for e in range(budget + 1):
                rec(i + 1, prefix + (e,), budget - e)

        rec(0, (), order)
        return cls(order, nvars, coeffs)

    def _check(self, other: "TruncSeries"):
        if (self.order, self.nvars) != (other.order, other.nvars):
            raise ValueError("series have different truncation or variable count")

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return TruncSeries(self.order, self.nvars, out)

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.order, self.nvars, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-other)

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        out: dict = {}
        for e1, c1 in self.coeffs.items():
            d1 = sum(e1)
            for e2, c2 in other.coeffs.items():
                if d1 + sum(e2) > self.order:
                    continue
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return TruncSeries(self.order, self.nvars, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.order, self.nvars, self.coeffs) == (other.order, other.nvars, other.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def rows(self, names: tuple[str, ...]) -> list[dict]:
        out = []
        for e, c in sorted(self.coeffs.items()):
            row = dict(zip(names, e))
            row["coeff"] = f"{c.numerator}/{c.denominator}"
            out.append(row)
        return out

    def __repr__(self) -> str:
        return f"TruncSeries(order={self.order}, {dict(sorted(self.coeffs.items()))})"


TENSOR_BASIS = ("a", "b")


@dataclass(frozen=True)
class SMatrix:
    """Diagonal S(x): S(x)(u (x) v) = sign * e^{k x} (u (x) v)."""

    entries: tuple  # ((u, v, sign, k), ...)

    def entry(self, u: str, v: str) -> tuple[int, int]:
        for u2, v2, sign, k in self.entries:
            if (u2, v2) == (u, v):
                return sign, k
        raise KeyError((u, v))

    def series(self, u: str, v: str, arg: tuple, order: int) -> TruncSeries:
        """The (u, v) entry evaluated at the linear form ``arg`` in the series variables."""
        sign, k = self.entry(u, v)
        return TruncSeries.exp_linear(order, tuple(k * c for c in arg), sign)


STILDE = SMatrix((("a", "a", -1, 1), ("a", "b", -1, 1), ("b", "a", -1, -1), ("b", "b", -1, 1)))


def _apply_S(S: SMatrix, i: int, j: int, arg: tuple, vec: dict, order: int) -> dict:
    """S^{ij}(arg) on a dict basis-triple -> series (diagonal action)."""
    return {basis: S.series(basis[i], basis[j], arg, order) * c for basis, c in vec.items()}


def ybe_unitarity_check(S: SMatrix = STILDE, order: int = 8) -> dict:
    """QYBE residual on all 8 triple basis vectors (series in x, z) and the
    unitarity composition S(x) S^{21}(-x) on all 4 pair basis vectors."""
    if order < 1:
        raise ValueError("truncation order must be at least 1")
    X, Z, XZ = (1, 0), (0, 1), (1, 1)
    qybe = {}
    for basis in product(TENSOR_BASIS, repeat=3):
        one = {basis: TruncSeries.constant(order, 2)}
        lhs = _apply_S(S, 0, 1, X, _apply_S(S, 0, 2, XZ, _apply_S(S, 1, 2, Z, one, order), order), order)
        rhs = _apply_S(S, 1, 2, Z, _apply_S(S, 0, 2, XZ, _apply_S(S, 0, 1, X, one, order), order), order)
        qybe["".join(basis)] = lhs[basis] - rhs[basis]
    unitarity = {}
    for u, v in product(TENSOR_BASIS, repeat=2):
        # sigma, S(-x), sigma, then S(x): the coefficient picked up on u (x) v
        comp = S.series(v, u, (-1,), order) * S.series(u, v, (1,), order)
        unitarity[u + v] = comp - TruncSeries.constant(order, 1)
    return {
        "order": order,
        "qybe_residual": qybe,
        "qybe_ok": all(r.is_zero() for r in qybe.values()),
        "unitarity_deviation": unitarity,
        "unitary_entries": sorted(k for k, r in unitarity.items() if r.is_zero()),
    }


def format_vector(v: FermionVector) -> list[dict]:
    return [
        {"a": list(s.a), "b": list(s.b), "coeff": f"{c.numerator}/{c.denominator}"}
        for s, c in sorted(v.items())
    ]


def vector_str(v: FermionVector) -> str:
    if not v:
        return "0"
    parts = []
    for s, c in sorted(v.items()):
        letters = "".join(f"a[{p}]" for p in s.a) + "".join(f"b[{q}]" for q in s.b)
        parts.append(f"{c}*{letters or 'Omega'}")
    return " + ".join(parts)
