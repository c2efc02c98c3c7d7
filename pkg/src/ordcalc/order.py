"""The linear order on terms, coefficient sets K_X, H-membership, p0 and M_ρ.

Comparison works on three levels:

* sums and binary Veblen terms use the usual Cantor/Veblen rules over their
  additively principal parts;
* strongly critical terms carrying a collapsed leaf 𝕀_N[ρ] or 𝕊^{†ī}[ρ/𝕊]
  live in a block just above their outermost anchor ρ; two terms of the same
  block are compared through their uncollapsed preimages;
* anchor-free strongly critical terms form a tree of clusters rooted at Ω and
  the ψ_𝕀(a).  Daggers and layer members hang below their base ordered by
  their dagger vector, and two members of one layer are compared by the
  ψ-comparison clauses over K-conditions.
"""
from __future__ import annotations

import functools
import sys
from enum import IntEnum

from . import config
from .terms import (
    BigI, Dagger, INBracket, Omega, Psi, SubDagger, Sum, TermError, Veblen,
    Zero, ZERO, chain, chain_end, is_sc, is_sstm, outer_anchor, parts_of,
    sc_f,
)

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    def __str__(self):
        return {-1: "LT", 0: "EQ", 1: "GT"}[int(self)]


class InvalidTerm(TermError):
    pass


class OrderGap(InvalidTerm):
    """The ψ-comparison clauses accept both directions or neither."""


def _sign(n):
    return (n > 0) - (n < 0)


def compare(alpha, beta) -> Ordering:
    return Ordering(_cmp(alpha, beta))


def less(a, b) -> bool:
    return _cmp(a, b) < 0


def leq(a, b) -> bool:
    return _cmp(a, b) <= 0


def max_term(xs):
    best = None
    for x in xs:
        if best is None or _cmp(x, best) > 0:
            best = x
    return best


def sort_terms(xs):
    return sorted(xs, key=functools.cmp_to_key(_cmp))


def key_sort(entries):
    return sorted(entries, key=functools.cmp_to_key(lambda u, v: _cmp(u[0], v[0])))


@config.memo
def _cmp(x, y) -> int:
    if x == y:
        return 0
    px, py = parts_of(x), parts_of(y)
    for a, b in zip(px, py):
        c = _cmp_principal(a, b)
        if c:
            return c
    return _sign(len(px) - len(py))


def _scish(t):
    return is_sc(t) or isinstance(t, BigI)


def _cmp_principal(a, b) -> int:
    if a == b:
        return 0
    sa, sb = _scish(a), _scish(b)
    if sa and sb:
        return _cmp_sc(a, b)
    if sa:
        if not isinstance(b, Veblen):
            raise InvalidTerm(f"not a principal term: {b!r}")
        return -1 if (_cmp(a, b.alpha) <= 0 or _cmp(a, b.beta) <= 0) else 1
    if sb:
        return -_cmp_principal(b, a)
    if not (isinstance(a, Veblen) and isinstance(b, Veblen)):
        raise InvalidTerm(f"not principal terms: {a!r}, {b!r}")
    c = _cmp(a.alpha, b.alpha)
    if c == 0:
        return _cmp(a.beta, b.beta)
    if c < 0:
        return -1 if _cmp(a.beta, b) < 0 else 1
    return -1 if _cmp(a, b.beta) <= 0 else 1


def _cmp_sc(a, b) -> int:
    if isinstance(a, BigI):
        return 1
    if isinstance(b, BigI):
        return -1
    oa, ob = outer_anchor(a), outer_anchor(b)
    if oa is not None and oa == ob:
        from .collapse import raw_uncollapse

        S = chain_end(oa)
        if not is_sstm(S):
            raise InvalidTerm(f"anchor {oa!r} is not below a successor stable")
        ua, ub = raw_uncollapse(a, oa, S), raw_uncollapse(b, oa, S)
        if ua is None or ub is None:
            raise InvalidTerm(f"cannot uncollapse {a!r} / {b!r} at {oa!r}")
        return _cmp(ua, ub)
    if oa is not None:
        return 1 if _cmp(b, oa) <= 0 else -1
    if ob is not None:
        return -1 if _cmp(a, ob) <= 0 else 1
    return _cmp_free(a, b)


def _is_psi_omega(t):
    return isinstance(t, Psi) and isinstance(t.kappa, Omega)


def _is_root(t):
    return isinstance(t, Omega) or (isinstance(t, Psi) and isinstance(t.kappa, BigI))


def _base_and_key(t):
    """Parent cluster base of an anchor-free term and its sibling key."""
    if isinstance(t, Dagger):
        return t.base, (t.ivec, 1)
    if isinstance(t, Psi):
        end = chain_end(t)
        if isinstance(end, Dagger):
            return end.base, (end.ivec, 0)
    raise InvalidTerm(f"term has no place in the stable tree: {t!r}")


def _path(t):
    """Cluster path from the root down to t, with sibling keys."""
    nodes, keys = [t], []
    while not _is_root(nodes[-1]):
        base, key = _base_and_key(nodes[-1])
        nodes.append(base)
        keys.append(key)
    nodes.reverse()
    keys.reverse()
    return nodes, keys


def lx_cmp(u, v) -> int:
    """Lexicographic order on vectors; a proper prefix is smaller."""
    for x, y in zip(u, v):
        if x != y:
            return -1 if x < y else 1
    return _sign(len(u) - len(v))


def _key_cmp(k1, k2) -> int:
    c = lx_cmp(k1[0], k2[0])
    return c if c else _sign(k1[1] - k2[1])


def _cmp_free(a, b) -> int:
    if _is_psi_omega(a) and _is_psi_omega(b):
        return _cmp(a.a, b.a)
    if _is_psi_omega(a):
        return -1
    if _is_psi_omega(b):
        return 1
    na, ka = _path(a)
    nb, kb = _path(b)
    ra, rb = na[0], nb[0]
    if ra != rb:
        if isinstance(ra, Omega):
            return -1
        if isinstance(rb, Omega):
            return 1
        return _cmp(ra.a, rb.a)
    k = 0
    while k + 1 < len(na) and k + 1 < len(nb) and na[k + 1] == nb[k + 1]:
        k += 1
    if k + 1 == len(na):
        return -1
    if k + 1 == len(nb):
        return 1
    c = _key_cmp(ka[k], kb[k])
    if c:
        return c
    xa, xb = na[k + 1], nb[k + 1]
    if not (isinstance(xa, Psi) and isinstance(xb, Psi)):
        raise InvalidTerm(f"inconsistent cluster keys for {a!r}, {b!r}")
    lt, gt = psi_less(xa, xb), psi_less(xb, xa)
    if lt == gt:
        raise OrderGap(f"layer comparison undecided for {xa!r}, {xb!r}")
    return -1 if lt else 1


def psi_less(beta, alpha) -> bool:
    """β < α for two ψ terms sharing a layer (comparison clauses .0 to .4)."""
    from .finfun import lx_less

    pi, f, b = beta.kappa, beta.f, beta.a
    kappa, g, a = alpha.kappa, alpha.f, alpha.a
    if _cmp(pi, alpha) <= 0:
        return True
    cba = _cmp(b, a)
    if cba < 0:
        return (_cmp(beta, kappa) < 0
                and k_below(sc_f(f) | {pi, b}, alpha, a))
    if cba > 0:
        return not k_below(sc_f(g) | {kappa, a}, beta, b)
    ck = _cmp(kappa, pi)
    if ck < 0:
        return not k_below({kappa}, beta, b)
    if ck == 0:
        if k_below(sc_f(f), alpha, a) and lx_less(f, g, ZERO):
            return True
        return not k_below(sc_f(g), beta, b)
    return False


# -- coefficient sets --------------------------------------------------------

@config.memo
def k_set(alpha, delta) -> frozenset:
    """K_δ(α): K_X(α) for X the terms below δ."""
    return _k(alpha, lambda t: _cmp(t, delta) < 0, lambda t: k_set(t, delta))


def k_set_fin(alpha, X) -> frozenset:
    """K_X(α) for a finite set X given explicitly."""
    X = frozenset(X)
    return _k(alpha, lambda t: t in X, lambda t: k_set_fin(t, X))


def _k(t, in_x, rec) -> frozenset:
    if isinstance(t, (Zero, Omega, BigI)):
        return frozenset()
    if isinstance(t, Sum):
        return frozenset().union(*(rec(p) for p in t.parts))
    if isinstance(t, Veblen):
        return rec(t.alpha) | rec(t.beta)
    if in_x(t):
        return frozenset()
    if isinstance(t, Psi):
        out = {t.a}
        out |= rec(t.kappa)
        out |= rec(t.a)
        for s in sc_f(t.f):
            out |= rec(s)
        return frozenset(out)
    if isinstance(t, Dagger):
        return rec(t.base)
    if isinstance(t, (INBracket, SubDagger)):
        return rec(t.rho)
    raise InvalidTerm(f"not a term: {t!r}")


def k_set_many(terms, delta) -> frozenset:
    return frozenset().union(*(k_set(t, delta) for t in terms)) if terms else frozenset()


def all_below(ks, bound) -> bool:
    """K < bound, with the empty set below everything."""
    return all(_cmp(k, bound) < 0 for k in ks)


def k_below(terms, delta, bound) -> bool:
    """K_δ(terms) < bound."""
    return all(all_below(k_set(t, delta), bound) for t in terms)


def in_H(gamma, delta, alpha) -> bool:
    """α ∈ H_γ(X) for X the terms below δ."""
    return all_below(k_set(alpha, delta), gamma)


def in_H_fin(gamma, X, alpha) -> bool:
    return all_below(k_set_fin(alpha, X), gamma)


# -- p0 and M_ρ -----------------------------------------------------------------

class NotInPsi(TermError):
    pass


class NotCollapsing(TermError):
    pass


def p0(alpha):
    """Argument of the ψ in α's chain collapsing a successor stable, else 0."""
    if not isinstance(alpha, Psi):
        raise NotInPsi(f"p0 needs a ψ term, got {alpha!r}")
    ch = chain(alpha)
    if is_sstm(ch[-1]):
        return ch[-2].a
    return ZERO


def collapsing_top(rho):
    """The successor stable 𝕊 with ρ ≺ 𝕊 at the end of ρ's chain."""
    if not isinstance(rho, Psi):
        raise NotCollapsing(f"{rho!r} is not a ψ term")
    top = chain_end(rho)
    if not is_sstm(top):
        raise NotCollapsing(f"{rho!r} does not lie below a successor stable")
    return top


def in_M(alpha, rho) -> bool:
    """α ∈ M_ρ = H_{p0(ρ)}(ρ)."""
    collapsing_top(rho)
    return in_H(p0(rho), rho, alpha)
