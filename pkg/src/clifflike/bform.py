"""Invariant bilinear form on the vacuum module, computed in M(1).

By invariance ``<X v, Z v> = <v, theta(X) Z v>``, and theta(X) Z has degree
zero when deg X = deg Z, so it maps the vacuum to a scalar multiple of it.
That scalar is the form value.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .algebra import Number, Scalar, Word, degree, theta_word
from .heis_fock import ONE, apply_word, constant_term, is_constant, neg_partition_word, poly_str
from .linalg import IncrementalRank, det
from .partitions import Partition, partitions_of


def _check_mu(mu) -> Scalar:
    mu = mpq(mu)
    if mu == 0:
        raise ValueError("mu must be nonzero")
    return mu


def form(X: Word, Z: Word, mu: Number = 1) -> Scalar:
    mu = _check_mu(mu)
    X, Z = tuple(X), tuple(Z)
    if degree(X) != degree(Z):
        return mpq(0)
    P = apply_word(theta_word(X) + Z, ONE, mu)
    if not is_constant(P):
        raise AssertionError(f"degree-zero word gave a non-constant vector: {poly_str(P)}")
    return constant_term(P)


@dataclass(frozen=True)
class GramMatrix:
    degree: int
    labels: tuple[Partition, ...]
    entries: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self):
        n = len(self.labels)
        if len(self.entries) != n or any(len(r) != n for r in self.entries):
            raise ValueError("Gram matrix shape does not match its labels")

    def is_identity(self) -> bool:
        return all(
            c == (1 if i == j else 0)
            for i, row in enumerate(self.entries)
            for j, c in enumerate(row)
        )

    def det(self) -> Scalar:
        return det(self.entries)


def gram(n: int, mu: Number = 1) -> GramMatrix:
    """Gram matrix of {Y_{-lam} v : |lam| = n} in the canonical partition order."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    mu = _check_mu(mu)
    labels = tuple(partitions_of(n))
    words = [neg_partition_word(lam) for lam in labels]
    entries = tuple(tuple(form(u, w, mu) for w in words) for u in words)
    return GramMatrix(n, labels, entries)


def gdim(N: int, mu: Number = 1) -> list[int]:
    """Graded dimensions of span{Y_{-lam} . 1}, degree by degree.

    The rank is grown across all |lam| <= n, so the n-th entry counts vectors
    independent of everything in lower degree too.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    mu = _check_mu(mu)
    acc = IncrementalRank()
    dims = []
    for n in range(N + 1):
        before = acc.rank
        for lam in partitions_of(n):
            acc.add(apply_word(neg_partition_word(lam), ONE, mu))
        dims.append(acc.rank - before)
    return dims
