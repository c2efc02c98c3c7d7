"""Seeded random generators for normal forms and finite functions.

Universes of short terms contain no ψ term with a nonempty finite function,
so the laws about finite functions are exercised on generated instances.
Keys are drawn from small ordinals below the base; values are built by
adding principal normal forms, so every value is in normal form by
construction.
"""
from __future__ import annotations

import random

from .finfun import is_irreducible, is_special, make, s_top
from .order import _cmp
from .terms import NF_ZERO, ONE, ZERO, ThetaNF, Veblen, nat
from .theta import NF_BASE, nf_add, small, theta

OMEGA_T = Veblen(ZERO, ONE)
KEYS = (ZERO, nat(1), nat(2), nat(3), OMEGA_T)
INDICES = (ONE, ONE, ONE, nat(2), OMEGA_T)
COEFS = (ONE, ONE, ONE, nat(2), OMEGA_T)


def rand_nf(rng: random.Random, depth: int = 2, width: int = 3) -> ThetaNF:
    """A random normal form: a sum of up to width principal pieces."""
    out = NF_ZERO
    for _ in range(rng.randint(0, width)):
        if depth == 0 or rng.random() < 0.3:
            piece = small(rng.choice((ONE, nat(2), OMEGA_T)))
        else:
            xi = rand_nf(rng, depth - 1, max(1, width - 1))
            piece = theta(rng.choice(INDICES), xi)
            if len(piece.terms) == 1 and piece.terms[0][2] == ONE:
                b, x, _ = piece.terms[0]
                piece = ThetaNF([(b, x, rng.choice(COEFS))])
        out = nf_add(out, piece)
    return out


def rand_nonzero_nf(rng, depth=2, width=3) -> ThetaNF:
    while True:
        x = rand_nf(rng, depth, width)
        if x:
            return x


def rand_keys(rng, n):
    ks = rng.sample(KEYS, n)
    ks.sort(key=lambda k: KEYS.index(k))
    return ks


def rand_ffun(rng, max_points=3, depth=2):
    """A random irreducible finite function (possibly empty)."""
    for _ in range(1000):
        n = rng.randint(0, max_points)
        f = make([(k, rand_nonzero_nf(rng, depth)) for k in rand_keys(rng, n)])
        if is_irreducible(f):
            return f
    raise RuntimeError("no irreducible function generated")


def rand_special(rng, max_points=3, depth=2):
    """A random special function: irreducible, top value of the form α+Λ."""
    for _ in range(1000):
        n = rng.randint(1, max_points)
        ks = rand_keys(rng, n)
        entries = [(k, rand_nonzero_nf(rng, depth)) for k in ks[:-1]]
        top = nf_add(rand_nf(rng, depth), NF_BASE)
        f = make(entries + [(ks[-1], top)])
        if is_special(f):
            return f
    raise RuntimeError("no special function generated")


def rand_small_arg(rng, allow_base=False):
    """An ordinal a < Λ (or a ≤ Λ) as a normal form."""
    if allow_base and rng.random() < 0.2:
        return NF_BASE
    return rng.choice((NF_ZERO, small(ONE), small(nat(2)), small(OMEGA_T)))


def keys_below(f, c):
    return [k for k in f.support() if _cmp(k, c) < 0]


def key_range(lo, hi):
    """The sample keys x with lo ≤ x < hi."""
    return [k for k in KEYS if _cmp(lo, k) <= 0 and _cmp(k, hi) < 0]


__all__ = [
    "KEYS", "OMEGA_T", "key_range", "keys_below", "rand_ffun", "rand_keys",
    "rand_nf", "rand_nonzero_nf", "rand_small_arg", "rand_special", "s_top",
]
