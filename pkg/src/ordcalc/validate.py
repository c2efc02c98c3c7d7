"""Membership in the notation system and bounded enumeration of its terms.

:func:`validate` decides membership clause by clause and reports the first
violated condition.  Collapsed terms (those carrying a leaf 𝕀_N[ρ] or
𝕊^{†ī}[ρ/𝕊]) are checked by uncollapsing them at their outermost anchor ρ and
validating the preimage.
"""
from __future__ import annotations

import functools
from itertools import product

from . import config
from .collapse import collapsible, mostowski, raw_uncollapse
from .finfun import (
    coefficient_rule, is_irreducible, keys_ok, less_c, restrict_below,
)
from .order import _cmp, collapsing_top, in_H_fin, in_M, k_set, p0
from .terms import (
    IN, OMEGA, ONE, ZERO, BigI, Dagger, FiniteFunction, INBracket, Omega, Psi,
    SubDagger, Sum, TermError, ThetaNF, Veblen, Zero, chain_end, dagger_bound,
    is_anchored, is_principal, is_sc, is_sstm, ivec_ok, ivecs,
    k_imm, length, nf_terms_of, outer_anchor, sc, sc_f,
    sst_level,
)
from .theta import (
    base_power, exp_subtract, nf_add, nf_cmp, nf_errors, nf_times_omega, term_add,
    theta,
)


class BudgetExceeded(RuntimeError):
    pass


class Invalid(Exception):
    pass


def validate(t):
    """(True, "") if t is a notation, else (False, reason)."""
    try:
        _check(t)
    except Invalid as e:
        return False, str(e)
    except TermError as e:
        return False, f"undecidable side condition: {e}"
    except RecursionError:
        return False, "recursion depth exceeded"
    return True, ""


def is_valid(t) -> bool:
    return validate(t)[0]


@config.memo
def _reason(t):
    try:
        _check_uncached(t)
    except Invalid as e:
        return str(e)
    except TermError as e:
        return f"undecidable side condition: {e}"
    return ""


def _check(t):
    r = _reason(t)
    if r:
        raise Invalid(r)


def _need(cond, msg):
    if not cond:
        raise Invalid(msg)


def _check_uncached(t):
    if isinstance(t, (Zero, Omega, BigI)):
        return
    if isinstance(t, Sum):
        return _check_sum(t)
    if isinstance(t, Veblen):
        return _check_veblen(t)
    if isinstance(t, INBracket):
        return _check_collapsed_leaf(t.rho, None)
    if isinstance(t, SubDagger):
        return _check_collapsed_leaf(t.rho, t)
    if is_anchored(t):
        return _check_collapsed(t)
    if isinstance(t, Dagger):
        return _check_dagger(t)
    if isinstance(t, Psi):
        return _check_psi(t)
    raise Invalid(f"unknown constructor {type(t).__name__}")


def _check_sum(t):
    _need(len(t.parts) >= 2, "sum: fewer than two parts")
    for p in t.parts:
        _need(is_principal(p), "sum: a part is not additively principal")
        _check(p)
    for x, y in zip(t.parts, t.parts[1:]):
        _need(_cmp(x, y) >= 0, "sum: parts are not nonincreasing")


def _big(t):
    return is_sc(t) or isinstance(t, BigI)


def _check_veblen(t):
    b, g = t.alpha, t.beta
    _check(b)
    _check(g)
    _need(not (isinstance(g, Zero) and _big(b)), "veblen: φβ0 equals the strongly critical β")
    _need(not (_big(g) and _cmp(b, g) < 0), "veblen: γ is a fixed point of φβ")
    _need(not (isinstance(g, Veblen) and _cmp(b, g.alpha) < 0), "veblen: γ is a fixed point of φβ")


def _check_dagger(t):
    base = t.base
    _check(base)
    bound = dagger_bound(base)
    if isinstance(base, Psi):
        _need(bound is not None, "dagger: the base is not a limit of stables")
    else:
        _need(isinstance(base, Omega), "dagger: only Ω and limits of stables carry daggers")
    _need(ivec_ok(t.ivec, bound), "dagger: vector is not nonincreasing within the level")


def _check_psi(t):
    k, f, a = t.kappa, t.f, t.a
    _check(k)
    _check(a)
    if isinstance(k, (Omega, BigI)):
        _need(not f, "psi: Ω and 𝕀_N take no finite function")
        _need(k_below_self(t, [a], a), "psi: coefficient bound K(a) < a fails")
        return
    if isinstance(k, Dagger):
        return _check_psi_successor(t)
    if isinstance(k, Psi):
        return _check_psi_stepdown(t)
    raise Invalid("psi: subscript is not Ω, 𝕀_N, a successor stable or a ψ term")


def k_below_self(alpha, terms, bound):
    """K_α(terms) < bound."""
    return all(_cmp(x, bound) < 0 for s in terms for x in k_set(s, alpha))


def _check_ffun_shape(f):
    _need(keys_ok(f), "finite function: keys not strictly increasing or zero value")
    for key, v in f.entries:
        _check(key)
        _need(_cmp(key, IN) < 0, "finite function: key not below 𝕀_N")
        for s in nf_terms_of(v):
            _check(s)
        err = nf_errors(v)
        _need(err is None, f"finite function: value not in normal form ({err})")
    _need(coefficient_rule(f), "finite function: coefficient rule fails")


def _check_psi_successor(t):
    S, f, a = t.kappa, t.f, t.a
    T = S.base
    lvl = sst_level(S)
    _need(lvl >= 1, "psi: bad successor stable")
    if f:
        _check_ffun_shape(f)
        _need(len(f) == 1, "psi over a successor stable: support must be a single point")
        d, xi = f.entries[0]
        _need(nf_cmp(xi, base_power(2)) < 0, "psi over a successor stable: value not below 𝕀_N^2")
    _need(k_below_self(t, [a, *sc_f(f)], a), "psi: coefficient bound K({a} ∪ SC(f)) < a fails")
    if isinstance(T, Psi):
        _need(k_below_self(t, k_imm(T), a), "psi: bound on the base's subterms fails")
        _need(_cmp(T.a, a) < 0, "psi: the base's argument is not below a")
    for s in sc_f(f):
        _need(in_H_fin(a, sc(a), s), "psi: SC(f) not inside H_a(SC(a))")


def _stepdown_points(f, g):
    """Pairs (d, c) at which the step-down conditions may hold."""
    out = []
    fs = f.support()
    for idx, c in enumerate(fs):
        p = fs[idx - 1] if idx else None
        below_c = [x for x in g.support() if _cmp(x, c) < 0]
        q = below_c[-1] if below_c else None
        ms = [x for x in (p, q) if x is not None]
        m = max(ms, key=_key) if ms else None
        cands = [ZERO] + ms
        if m is not None:
            cands.append(term_add(m, ONE))
        for d in dict.fromkeys(cands):
            if _cmp(d, c) >= 0:
                continue
            if m is not None and _cmp(d, m) < 0:
                continue
            out.append((d, c))
    return out


_key = functools.cmp_to_key(_cmp)


def stepdown_ok(f, g, d, c) -> bool:
    """Side conditions for ψ_π^g below π with m(π)=f at the points d < c."""
    if any(_cmp(d, x) < 0 and _cmp(x, c) < 0 for x in f.support()):
        return False
    if any(_cmp(d, x) < 0 and _cmp(x, c) < 0 for x in g.support()):
        return False
    if restrict_below(g, d) != restrict_below(f, d):
        return False
    cap = nf_add(f.get(d), nf_times_omega(theta(exp_subtract(c, d), f.get(c))))
    if nf_cmp(g.get(d), cap) >= 0:
        return False
    return less_c(g, c, f.get(c))


def _check_psi_stepdown(t):
    pi, g, a = t.kappa, t.f, t.a
    top = chain_end(pi)
    _need(isinstance(top, Dagger) and not is_anchored(top), "psi: subscript chain does not end at a successor stable")
    f = pi.f
    _need(bool(f), "psi: the subscript has an empty finite function")
    if g:
        _check_ffun_shape(g)
        _need(is_irreducible(g), "psi: finite function not irreducible")
        _need(any(stepdown_ok(f, g, d, c) for d, c in _stepdown_points(f, g)),
              "psi: no step-down point for the finite function")
    else:
        _need(any(_cmp(c, ZERO) > 0 for c in f.support()), "psi: no step-down point for the empty function")
    _need(k_below_self(t, k_imm(t), a), "psi: coefficient bound K(k(α)) < a fails")
    b = p0(t)
    for s in list(sc_f(g)) + [b]:
        _need(in_M(s, t), "psi: SC(g) ∪ {p0} not inside M_α")


def _check_collapsed_leaf(rho, sub):
    _check(rho)
    _need(isinstance(rho, Psi), "collapsed leaf: ρ is not a ψ term")
    top = chain_end(rho)
    _need(is_sstm(top), "collapsed leaf: ρ is not below a successor stable")
    if sub is not None:
        _need(sub.S == top, "collapsed leaf: 𝕊 is not the top of ρ's chain")
        _check(sub.S)
        _need(ivec_ok(sub.ivec, sst_level(top)), "collapsed leaf: vector exceeds the level of 𝕊")


def _check_collapsed(t):
    rho = outer_anchor(t)
    _check(rho)
    try:
        S = collapsing_top(rho)
    except TermError:
        raise Invalid("collapsed term: anchor is not below a successor stable")
    beta = raw_uncollapse(t, rho, S)
    _need(beta is not None, "collapsed term: no preimage")
    _check(beta)
    _need(_cmp(S, beta) < 0, "collapsed term: preimage not above 𝕊")
    _need(in_M(beta, rho), "collapsed term: preimage not in M_ρ")
    _need(collapsible(beta, rho, S), "collapsed term: preimage has no collapsing clause")
    _need(mostowski(beta, rho, S, check=False) == t, "collapsed term: collapse does not reproduce the term")


# -- enumeration -------------------------------------------------------------------

def _nf_pool(L, term_pool):
    """ThetaNF candidates of length exactly L (triples from the pool)."""
    out = []
    if L == 1:
        return [ThetaNF(())]
    # single triple: 1 + |b| + |ξ| + |a| = L
    for lb in range(1, L):
        for b in term_pool(lb):
            for lx in range(1, L - lb):
                la = L - 1 - lb - lx
                if la < 1:
                    continue
                for xi in _nf_pool(lx, term_pool):
                    for a in term_pool(la):
                        out.append(ThetaNF([(b, xi, a)]))
    # longer sums: first triple + "+" + rest
    for L1 in range(1, L - 1):
        L2 = L - 1 - L1
        if L2 < 1:
            continue
        s1 = [x for x in _nf_pool(L1, term_pool) if len(x) == 1]
        rest = [x for x in _nf_pool(L2, term_pool) if x]
        for x, y in product(s1, rest):
            out.append(ThetaNF(x.terms + y.terms))
    return out


class Universe:
    """Valid terms grouped by length, built bottom-up from valid parts."""

    def __init__(self, max_len, budget=None):
        self.max_len = max_len
        self.budget = config.get_budget() if budget is None else budget
        self.by_len = {}
        self.count = 0
        self._nf = {}
        for n in range(1, max_len + 1):
            self.by_len[n] = self._build(n)

    def valid(self, n):
        return self.by_len.get(n, []) if n >= 1 else []

    def nf_pool(self, n):
        if n not in self._nf:
            self._nf[n] = [x for x in _nf_pool(n, self.valid) if nf_errors(x) is None]
        return self._nf[n]

    def _candidates(self, n):
        if n == 1:
            yield from (ZERO, OMEGA, IN)
            return
        V = self.valid
        # sums: a principal head, "+", and the rest
        for l1 in range(1, n - 1):
            for p in V(l1):
                if not is_principal(p):
                    continue
                for r in V(n - 1 - l1):
                    if isinstance(r, Zero):
                        continue
                    head = r.parts[0] if isinstance(r, Sum) else r
                    if _cmp(p, head) >= 0:
                        yield Sum((p,) + (r.parts if isinstance(r, Sum) else (r,)))
        for l1 in range(1, n - 1):
            for x in V(l1):
                for y in V(n - 1 - l1):
                    yield Veblen(x, y)
        # ψ terms with and without a finite function
        for lk in range(1, n - 1):
            for k in V(lk):
                if not (isinstance(k, (Omega, BigI, Psi, Dagger, INBracket, SubDagger))):
                    continue
                for lf in range(0, n - 1 - lk):
                    la = n - 1 - lk - lf
                    if la < 1:
                        continue
                    for f in self._ffuns(lf):
                        for a in V(la):
                            yield Psi(k, f, a)
        # daggers
        for k in range(1, n):
            for base in V(n - k):
                if isinstance(base, (Omega, Psi)):
                    for v in ivecs(config.get_N(), k):
                        if len(v) == k:
                            yield Dagger(base, v)
        # collapsed leaves
        for rho in V(n - 1):
            if isinstance(rho, Psi):
                yield INBracket(rho)
        for lr in range(1, n - 2):
            for rho in V(lr):
                if not isinstance(rho, Psi):
                    continue
                S = chain_end(rho)
                if not is_sstm(S):
                    continue
                k = n - 1 - lr - length(S)
                if k < 1:
                    continue
                for v in ivecs(config.get_N(), k):
                    if len(v) == k:
                        yield SubDagger(S, v, rho)

    def _ffuns(self, L):
        """Finite functions of total length L with keys strictly increasing."""
        if L == 0:
            return [FiniteFunction(())]
        out = []
        for lk in range(1, L):
            for key in self.valid(lk):
                for lv in range(1, L - lk + 1):
                    rest_len = L - lk - lv
                    for v in self.nf_pool(lv):
                        if not v:
                            continue
                        for rest in self._ffuns(rest_len):
                            if rest and _cmp(key, rest.entries[0][0]) >= 0:
                                continue
                            out.append(FiniteFunction(((key, v),) + rest.entries))
        return out

    def _build(self, n):
        out = []
        seen = set()
        for c in self._candidates(n):
            if c in seen:
                continue
            seen.add(c)
            if length(c) != n:
                continue
            if is_valid(c):
                out.append(c)
                self.count += 1
                if self.count > self.budget:
                    raise BudgetExceeded(f"more than {self.budget} terms up to length {n}")
        return out

    def terms(self, below=None):
        for n in range(1, self.max_len + 1):
            for t in self.by_len[n]:
                if below is None or _cmp(t, below) < 0:
                    yield t


def enumerate_valid(max_len, below=None, budget=None):
    """Every valid term of length ≤ max_len (and < below), by nondecreasing length."""
    return list(Universe(max_len, budget).terms(below))
