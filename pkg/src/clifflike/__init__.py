"""Exact computations for the Clifford-like algebra on Y[n], Ys[n]: normal
forms, the Clifford smash-product image, the bosonic and fermionic Fock
realizations, the invariant form, and Yang-Baxter checks."""

__version__ = "0.1.0"
