"""Mostowski collapsing α ↦ α[ρ/𝕊] and its inverse."""
from __future__ import annotations

from .order import _cmp, collapsing_top, in_M
from .terms import (
    BigI, Dagger, FiniteFunction, INBracket, Omega, Psi, SubDagger, Sum,
    TermError, ThetaNF, Veblen, Zero, anchors, dagger, is_sc, plus,
)


class NotInDomain(TermError):
    pass


def dagger_extension(S, x):
    """ī with x = S^{†ī} (ī nonempty), else None."""
    if isinstance(S, Dagger) and isinstance(x, Dagger) and x.base == S.base:
        n = len(S.ivec)
        if len(x.ivec) > n and x.ivec[:n] == S.ivec:
            return x.ivec[n:]
    if isinstance(S, SubDagger) and isinstance(x, SubDagger):
        if x.S == S.S and x.rho == S.rho:
            n = len(S.ivec)
            if len(x.ivec) > n and x.ivec[:n] == S.ivec:
                return x.ivec[n:]
    return None


def _check_pair(rho, S):
    if collapsing_top(rho) != S:
        raise NotInDomain(f"{rho!r} is not below {S!r}")


def mostowski(alpha, rho, S, check=True):
    """α[ρ/𝕊] for α in the collapse domain."""
    _check_pair(rho, S)
    if check and not in_M(alpha, rho):
        raise NotInDomain(f"{alpha!r} is not in M_ρ for ρ={rho!r}")
    return _Collapser(rho, S).term(alpha)


def collapsible(alpha, rho, S) -> bool:
    """Whether every clause needed to collapse α exists."""
    try:
        _Collapser(rho, S).term(alpha)
    except NotInDomain:
        return False
    return True


def in_domain(alpha, rho, S) -> bool:
    return in_M(alpha, rho) and collapsible(alpha, rho, S)


class _Collapser:
    def __init__(self, rho, S):
        self.rho = rho
        self.S = S
        self.memo = {}

    def term(self, a):
        r = self.memo.get(a)
        if r is None:
            r = self._term(a)
            self.memo[a] = r
        return r

    def _term(self, a):
        rho, S = self.rho, self.S
        if isinstance(a, Zero):
            return a
        if isinstance(a, Sum):
            return plus(*(self.term(p) for p in a.parts))
        if isinstance(a, Veblen):
            return Veblen(self.term(a.alpha), self.term(a.beta))
        if isinstance(a, BigI):
            return INBracket(rho)
        if _cmp(a, S) < 0:
            return a
        if a == S:
            return rho
        ext = dagger_extension(S, a)
        if ext is not None:
            return SubDagger(S, ext, rho)
        if isinstance(a, Psi):
            return Psi(self.term(a.kappa), self.ffun(a.f), self.term(a.a))
        if isinstance(a, INBracket):
            return INBracket(self.term(a.rho))
        if isinstance(a, Dagger) and isinstance(a.base, Psi) and _cmp(a.base, S) > 0:
            return dagger(self.term(a.base), a.ivec)
        if isinstance(a, SubDagger):
            return SubDagger(self.term(a.S), a.ivec, self.term(a.rho))
        raise NotInDomain(f"no collapsing clause for {a!r} at {S!r}")

    def nf(self, x):
        return ThetaNF([(self.term(b), self.nf(xi), self.term(c)) for b, xi, c in x.terms])

    def ffun(self, f):
        return FiniteFunction([(self.term(k), self.nf(v)) for k, v in f.entries])


def raw_uncollapse(gamma, rho, S):
    """Structural inverse of the collapse; None where no preimage shape exists.

    No membership or round-trip check is made; see :func:`uncollapse`.
    """
    return _Uncollapser(rho, S).term(gamma)


def uncollapse(gamma, rho, S):
    """The β in the collapse domain with β[ρ/𝕊] = γ, or None."""
    _check_pair(rho, S)
    beta = raw_uncollapse(gamma, rho, S)
    if beta is None:
        return None
    try:
        if not in_domain(beta, rho, S):
            return None
        if mostowski(beta, rho, S, check=False) != gamma:
            return None
    except TermError:
        return None
    return beta


class _Fail(Exception):
    pass


class _Uncollapser:
    def __init__(self, rho, S):
        self.rho = rho
        self.S = S

    def term(self, g):
        try:
            return self._term(g)
        except _Fail:
            return None

    def _term(self, g):
        rho, S = self.rho, self.S
        if isinstance(g, Zero):
            return g
        if isinstance(g, Sum):
            return plus(*(self._term(p) for p in g.parts))
        if isinstance(g, Veblen):
            return Veblen(self._term(g.alpha), self._term(g.beta))
        if isinstance(g, BigI):
            raise _Fail
        if g == rho:
            return S
        if is_sc(g) and rho in anchors(g):
            if isinstance(g, INBracket):
                return BigI() if g.rho == rho else INBracket(self._term(g.rho))
            if isinstance(g, SubDagger):
                if g.rho == rho:
                    if g.S != S:
                        raise _Fail
                    return dagger(S, g.ivec)
                return SubDagger(self._term(g.S), g.ivec, self._term(g.rho))
            if isinstance(g, Psi):
                return Psi(self._term(g.kappa), self.ffun(g.f), self._term(g.a))
            if isinstance(g, Dagger):
                return dagger(self._term(g.base), g.ivec)
            raise _Fail
        if isinstance(g, Omega) or _cmp(g, rho) < 0:
            return g
        raise _Fail

    def nf(self, x):
        return ThetaNF([(self._term(b), self.nf(xi), self._term(c)) for b, xi, c in x.terms])

    def ffun(self, f):
        return FiniteFunction([(self._term(k), self.nf(v)) for k, v in f.entries])
