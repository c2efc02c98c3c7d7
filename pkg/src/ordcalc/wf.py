"""Computable well-foundedness instruments.

* the measures a_Λ and o_Λ on finite functions;
* the prop p_𝕊 and the layer measures g = (g₁, g₂) with g₀, g₀*;
* the descent sets R(η), the coefficient sets 𝓔, G_δ, F_X, k_X and the
  closure C^α(X);
* the finite well-founded part of a set and a descent probe that certifies
  every R-step by a drop of g.
"""
from __future__ import annotations

import functools
import random
from dataclasses import dataclass, field

from . import config
from .collapse import uncollapse
from .finfun import NotIrreducible, is_irreducible, restrict_from
from .order import _cmp, lx_cmp, p0
from .terms import (
    IN, NF_ZERO, ONE, ZERO, BigI, Dagger, INBracket, Omega, Psi, SubDagger,
    Sum, TermError, ThetaNF, Veblen, Zero, chain, chain_end, imm_sub,
    is_genuine_sst, is_sstm, nf_sc, outer_anchor, prec,
    prec_r, r_ancestors, sc_f,
)
from .theta import (
    exp_subtract, nf_add, nf_cmp, nf_omega_mult, nf_succ, term_add, theta,
)


class OutsideDomain(TermError):
    pass


class MeasureViolation(AssertionError):
    pass


def _max(xs):
    best = ZERO
    for x in xs:
        if _cmp(x, best) > 0:
            best = x
    return best


# -- a_Λ and o_Λ ------------------------------------------------------------------

def a_measure(xi: ThetaNF) -> ThetaNF:
    """a_Λ(ξ) = Σ θ̃_{b}(ω·a_Λ(ξ'))·a over the summands θ̃_b(ξ')·a of ξ."""
    out = NF_ZERO
    for b, x, a in xi.terms:
        head = theta(b, nf_omega_mult(a_measure(x)))
        (hb, hx, _), = head.terms
        out = nf_add(out, ThetaNF([(hb, hx, a)]))
    return out


def _zetas(f):
    """Points 0 = c_0 < ... < c_n and the values ζ_i = o_Λ(f; c_i)."""
    pts = list(f.support())
    if not pts or pts[0] != ZERO:
        pts = [ZERO] + pts
    zetas = [None] * len(pts)
    for i in range(len(pts) - 1, -1, -1):
        z = nf_omega_mult(a_measure(f.get(pts[i])))
        if i + 1 < len(pts):
            z = nf_add(z, theta(exp_subtract(pts[i + 1], pts[i]), nf_succ(zetas[i + 1])))
        zetas[i] = z
    return pts, zetas


def o_measure(f, base=IN) -> ThetaNF:
    """o_Λ(f) for an irreducible finite function f."""
    if not is_irreducible(f):
        raise NotIrreducible(f"o_Λ needs an irreducible function: {f!r}")
    if not f:
        return NF_ZERO
    return _zetas(f)[1][0]


def o_at(f, d) -> ThetaNF:
    """o_Λ(f; d)."""
    if not is_irreducible(f):
        raise NotIrreducible(f"o_Λ needs an irreducible function: {f!r}")
    pts, zetas = _zetas(f) if f else ([ZERO], [NF_ZERO])
    if d in pts:
        return zetas[pts.index(d)]
    rest = restrict_from(f, d)
    if not rest:
        return NF_ZERO
    c = rest.support()[0]
    return theta(exp_subtract(c, d), nf_succ(zetas[pts.index(c)]))


# -- the prop p_𝕊 -----------------------------------------------------------------

def _dagger_prefix(S):
    """𝕋 with 𝕊 = 𝕋^{†i} for the last entry i of 𝕊's vector."""
    if len(S.ivec) == 1:
        return S.base
    return Dagger(S.base, S.ivec[:-1])


def prop_S(S, a):
    """p_𝕊(a) for a genuine successor stable 𝕊."""
    if not is_genuine_sst(S):
        raise OutsideDomain(f"p_𝕊 needs a successor stable 𝕊, got {S!r}")
    return _prop(S, _dagger_prefix(S), a)


@config.memo
def _prop(S, T, a):
    if isinstance(a, BigI) or _cmp(a, T) <= 0:
        return ZERO
    if isinstance(a, Sum):
        return _max(_prop(S, T, p) for p in a.parts)
    if isinstance(a, Veblen):
        return _max([_prop(S, T, a.alpha), _prop(S, T, a.beta)])
    if isinstance(a, (INBracket, SubDagger)):
        return _prop(S, T, a.rho)
    if isinstance(a, Dagger):
        return _prop(S, T, _dagger_prefix(a))
    if isinstance(a, Psi):
        c = _cmp(a.kappa, S)
        if c > 0:
            return _max([_prop(S, T, a.kappa), _prop(S, T, a.a),
                         *(_prop(S, T, s) for s in sc_f(a.f))])
        if c == 0:
            return _max([a.a, _prop(S, T, a.a)])
        return _prop(S, T, a.kappa)
    raise OutsideDomain(f"p_𝕊 undefined for {a!r}")


# -- ordinals below λ^{...} with λ = ω^{N+1} ---------------------------------------

def _coef_add(x, y):
    """Ordinal sum of two ordinals below ω^{N+1}, as coefficient tuples (high first)."""
    for k, v in enumerate(y):
        if v:
            return x[:k] + (x[k] + v,) + y[k + 1:]
    return x


def coef(n_omega_N=0, tail=None, plus=0):
    """ω^N·n + tail + plus as a coefficient tuple."""
    N = config.get_N()
    out = (0,) * (N + 1)
    if n_omega_N:
        out = _coef_add(out, (n_omega_N,) + (0,) * N)
    if tail is not None:
        out = _coef_add(out, tail)
    if plus:
        out = _coef_add(out, (0,) * N + (plus,))
    return out


def o_vec(ivec):
    """o(ī) = ω^{i₀−1} + ... + ω^{i_m−1}."""
    N = config.get_N()
    out = (0,) * (N + 1)
    for i in ivec:
        unit = [0] * (N + 1)
        unit[N - (i - 1)] = 1
        out = _coef_add(out, tuple(unit))
    return out


@dataclass(frozen=True)
class LamOrd:
    """Σ λ^{e}·c with term exponents e strictly decreasing and c < λ nonzero."""

    terms: tuple = ()

    @staticmethod
    def power(e, c=None):
        if c is None:
            c = coef(plus=1)
        return LamOrd(((e, c),)) if any(c) else LamOrd()

    def __add__(self, other):
        if not other.terms:
            return self
        e0, c0 = other.terms[0]
        out = []
        for e, c in self.terms:
            s = _cmp(e, e0)
            if s > 0:
                out.append((e, c))
            elif s == 0:
                out.append((e, _coef_add(c, c0)))
                return LamOrd(tuple(out) + other.terms[1:])
            else:
                break
        return LamOrd(tuple(out) + other.terms)

    def cmp(self, other) -> int:
        for (e1, c1), (e2, c2) in zip(self.terms, other.terms):
            s = _cmp(e1, e2)
            if s:
                return s
            if c1 != c2:
                return -1 if c1 < c2 else 1
        n, m = len(self.terms), len(other.terms)
        return (n > m) - (n < m)


# -- layers and the g-measures -----------------------------------------------------

def layer_top(alpha):
    """The successor stable 𝕊 ∈ SSt with α ∈ L(𝕊)."""
    tops = [y for y in r_ancestors(alpha) if is_genuine_sst(y)]
    if len(tops) != 1:
        raise OutsideDomain(f"{alpha!r} lies in no single layer")
    return tops[0]


def in_layer(alpha) -> bool:
    try:
        layer_top(alpha)
    except OutsideDomain:
        return False
    return True


def next_parent(x):
    """ρ with x ∈ N(ρ), or None."""
    if isinstance(x, (INBracket, SubDagger)):
        return x.rho
    if isinstance(x, Dagger) and isinstance(x.base, Psi):
        top = chain_end(x.base)
        if is_sstm(top) and not is_genuine_sst(top):
            return x.base
    return None


def _base_anchor(alpha, S):
    """ρ ≺ 𝕊 with α = ρ or α ⪯^R κ ∈ N(ρ)."""
    if isinstance(alpha, Psi) and prec(alpha, S):
        return alpha
    rho = outer_anchor(alpha)
    if rho is None or not prec(rho, S):
        raise OutsideDomain(f"{alpha!r} is not generated from a term below {S!r}")
    return rho


def _is_psi_over_in(alpha, rho):
    return isinstance(alpha, Psi) and alpha.kappa == INBracket(rho)


def m_of(rho):
    """The finite function m(ρ) carried by a ψ term."""
    return rho.f


@config.memo
def g0(alpha):
    if not isinstance(alpha, Psi):
        return ZERO
    S = layer_top(alpha)
    rho = _base_anchor(alpha, S)
    if alpha == rho:
        return prop_S(S, alpha)
    if _is_psi_over_in(alpha, rho):
        return prop_S(S, rho)
    return g0(_preimage(alpha, rho, S))


def g0_star(alpha):
    S = layer_top(alpha)
    return prop_S(S, _base_anchor(alpha, S))


@config.memo
def g2(alpha) -> ThetaNF:
    if not isinstance(alpha, Psi):
        return NF_ZERO
    S = layer_top(alpha)
    rho = _base_anchor(alpha, S)
    if alpha == rho:
        return nf_succ(o_measure(m_of(alpha)))
    if _is_psi_over_in(alpha, rho):
        return NF_ZERO
    return g2(_preimage(alpha, rho, S))


def _preimage(alpha, rho, S):
    beta = uncollapse(alpha, rho, S)
    if beta is None:
        raise OutsideDomain(f"{alpha!r} has no preimage at {rho!r}")
    return beta


def _local(alpha):
    """(ρ, coefficient) with g₁′(α) = g₁′(ρ) + λ^{g₀(ρ)}·coefficient."""
    kappa = chain_end(alpha) if isinstance(alpha, Psi) else alpha
    own = 1 if alpha == kappa else 0
    if isinstance(kappa, SubDagger):
        return kappa.rho, coef(tail=o_vec(kappa.ivec), plus=own)
    if isinstance(kappa, INBracket):
        return kappa.rho, coef(1, plus=own)
    if isinstance(kappa, Dagger) and isinstance(kappa.base, Psi):
        base = kappa.base
        if isinstance(base.kappa, INBracket):
            return base.kappa.rho, coef(1, tail=o_vec(kappa.ivec), plus=own)
        if next_parent(kappa) is not None:
            return base, coef(2, tail=o_vec(kappa.ivec), plus=own)
    raise OutsideDomain(f"g₁ undefined for {alpha!r}")


@config.memo
def g1_pair(alpha):
    """(g₁′(α), g₁(α))."""
    S = layer_top(alpha)
    if isinstance(alpha, Psi) and prec(alpha, S):
        e = g0(alpha)
        return LamOrd.power(e), LamOrd.power(term_add(e, ONE))
    rho, c = _local(alpha)
    e = g0(rho)
    g1p = g1_pair(rho)[0] + LamOrd.power(e, c)
    return g1p, g1p + LamOrd.power(e)


@dataclass(frozen=True)
class GMeasure:
    g0: object
    g0star: object
    g1p: LamOrd
    g1: LamOrd
    g2: ThetaNF

    def cmp(self, other) -> int:
        """Lexicographic comparison of (g₁, g₂)."""
        c = self.g1.cmp(other.g1)
        return c if c else nf_cmp(self.g2, other.g2)


def g_measures(eta) -> GMeasure:
    g1p, g1 = g1_pair(eta)
    return GMeasure(g0(eta), g0_star(eta), g1p, g1, g2(eta))


# -- R(η) ----------------------------------------------------------------------------

def _up(eta):
    """η together with every κ with η ≺ κ."""
    return chain(eta) if isinstance(eta, Psi) else [eta]


def in_r(gamma, eta) -> bool:
    """γ ∈ R(η)."""
    if not isinstance(gamma, Psi):
        return False
    if isinstance(eta, Psi) and isinstance(chain_end(eta), BigI):
        try:
            return _cmp(layer_top(gamma), eta) < 0
        except OutsideDomain:
            return False
    S = layer_top(eta)
    try:
        if layer_top(gamma) != S:
            return False
    except OutsideDomain:
        return False
    if _cmp(gamma, eta) >= 0:
        return False
    return r_clause(gamma, eta, S) is not None


def _in_S(t, S):
    return prec_r(t, S)


def r_clause(gamma, eta, S):
    """Name of the first clause placing γ into R(η), or None."""
    if prec(gamma, eta):
        return "below"
    anc = r_ancestors(gamma)
    up = _up(eta)
    for X in up:
        if isinstance(X, Dagger) and isinstance(X.base, Psi) and _in_S(X.base, S):
            tau, j = X.base, X.ivec
            for Y in anc:
                if isinstance(Y, Dagger) and Y.base == tau:
                    if lx_cmp(Y.ivec, j) < 0 or (X == eta and Y.ivec == j):
                        return "dagger"
                if Y == INBracket(tau):
                    return "dagger-in"
                if isinstance(Y, SubDagger) and Y.rho == tau:
                    return "dagger-sub"
        if isinstance(X, INBracket) and _in_S(X.rho, S):
            tau = X.rho
            for Y in anc:
                if Y == X and X == eta:
                    return "in"
                if isinstance(Y, SubDagger) and Y.rho == tau:
                    return "in-sub"
        if isinstance(X, SubDagger) and _in_S(X.rho, S):
            for Y in anc:
                if isinstance(Y, SubDagger) and Y.rho == X.rho and Y.S == X.S:
                    if lx_cmp(Y.ivec, X.ivec) < 0 or (X == eta and Y.ivec == X.ivec):
                        return "sub"
    for X in up[1:]:
        if isinstance(X, INBracket) and _in_S(X.rho, S):
            for Y in anc:
                if (isinstance(Y, Dagger) and isinstance(Y.base, Psi)
                        and prec(Y.base, X) and _cmp(Y.base, eta) < 0):
                    return "sibling-dagger"
        if is_sstm(X) and (X == S or _in_S(X, S)):
            for Y in anc:
                rho = next_parent(Y)
                if rho is not None and prec(rho, X) and _cmp(rho, eta) < 0:
                    return "sibling-next"
    return None


@config.memo
def _universe(bound):
    from .validate import enumerate_valid

    return tuple(enumerate_valid(bound))


def r_set(eta, bound, universe=None):
    """Members of R(η) of length ≤ bound."""
    from .terms import length

    pool = universe if universe is not None else _universe(bound)
    return [g for g in pool if length(g) <= bound and in_r(g, eta)]


# -- coefficient sets ------------------------------------------------------------------

def e_set(alpha) -> frozenset:
    """𝓔(α): the outermost ψ subterms reached through sums, φ and N(ρ)-leaves."""
    if isinstance(alpha, (Zero, Omega, BigI)):
        return frozenset()
    if isinstance(alpha, Sum):
        return frozenset().union(*(e_set(p) for p in alpha.parts))
    if isinstance(alpha, Veblen):
        return e_set(alpha.alpha) | e_set(alpha.beta)
    if isinstance(alpha, Psi):
        return frozenset([alpha])
    if isinstance(alpha, (INBracket, SubDagger)):
        return e_set(alpha.rho)
    if isinstance(alpha, Dagger):
        return e_set(alpha.base)
    raise OutsideDomain(f"not a term: {alpha!r}")


def _psi_parts(t):
    return [t.kappa, t.a, *sc_f(t.f)]


def g_set(alpha, delta) -> frozenset:
    """G_δ(α)."""
    if next_parent(alpha) is not None:
        if _cmp(alpha, delta) < 0:
            return frozenset([alpha])
        return g_set(next_parent(alpha), delta)
    if isinstance(alpha, Psi):
        if _cmp(delta, alpha.kappa) < 0:
            return frozenset().union(*(g_set(x, delta) for x in _psi_parts(alpha)))
        return frozenset([alpha])
    return frozenset().union(*(g_set(b, delta) for b in e_set(alpha))) if e_set(alpha) else frozenset()


def f_set(alpha, X) -> frozenset:
    """F_X(α): the outermost ψ subterms lying in X."""
    X = frozenset(X)
    return _f(alpha, X)


def _f(alpha, X):
    if isinstance(alpha, Psi):
        if alpha in X:
            return frozenset([alpha])
        return frozenset().union(*(_f(x, X) for x in _psi_parts(alpha)))
    es = e_set(alpha)
    return frozenset().union(*(_f(b, X) for b in es)) if es else frozenset()


def k_set_x(alpha, X) -> frozenset:
    """k_X(α): the ψ subterms passed through before X is met."""
    X = frozenset(X)
    return _kx(alpha, X)


def _kx(alpha, X):
    if isinstance(alpha, Psi):
        if alpha in X:
            return frozenset()
        return frozenset([alpha]).union(*(_kx(x, X) for x in _psi_parts(alpha)))
    es = e_set(alpha)
    return frozenset().union(*(_kx(b, X) for b in es)) if es else frozenset()


def coeff_sets(alpha, delta=None, X=()):
    """{'E': 𝓔(α), 'G': G_δ(α), 'F': F_X(α), 'k': k_X(α)} (G only when δ is given)."""
    out = {"E": e_set(alpha), "F": f_set(alpha, X), "k": k_set_x(alpha, X)}
    if delta is not None:
        out["G"] = g_set(alpha, delta)
    return out


def imm_subterms(eta) -> frozenset:
    """S(η): immediate subterms, with S(α) = {ρ} on N(ρ) and S(η) = {η} on ψ terms."""
    if isinstance(eta, (Zero, Omega, BigI)):
        return frozenset()
    if next_parent(eta) is not None:
        return frozenset([next_parent(eta)])
    if isinstance(eta, Psi):
        return frozenset([eta])
    return imm_sub(eta)


# -- C^α(X) ---------------------------------------------------------------------------

def c_set_member(alpha, X, beta) -> bool:
    """β ∈ C^α(X)."""
    return _Closure(alpha, frozenset(X)).member(beta)


class _Closure:
    def __init__(self, alpha, X):
        self.alpha = alpha
        self.X = X
        self.memo = {}

    def member(self, b) -> bool:
        r = self.memo.get(b)
        if r is None:
            r = self._member(b)
            self.memo[b] = r
        return r

    def _member(self, b) -> bool:
        if isinstance(b, (Zero, Omega, BigI)):
            return True
        if b in self.X and _cmp(b, self.alpha) < 0:
            return True
        if isinstance(b, Sum):
            return all(self.member(p) for p in b.parts)
        if isinstance(b, Veblen):
            return self.member(b.alpha) and self.member(b.beta)
        if isinstance(b, Psi):
            return (_cmp(b.kappa, self.alpha) > 0
                    and all(self.member(x) for x in _psi_parts(b)))
        rho = next_parent(b)
        if rho is not None:
            return _cmp(b, self.alpha) >= 0 and self.member(rho)
        return False


def c_set(alpha, X, universe):
    """C^α(X) restricted to a finite universe."""
    cl = _Closure(alpha, frozenset(X))
    return frozenset(b for b in universe if cl.member(b))


def is_regular(sigma) -> bool:
    """Whether some ψ_σ^f(a) exists: Ω, 𝕀_N, 𝕀_N[ρ], successor stables and
    ψ terms with a nonempty function whose chain ends at a successor stable."""
    if isinstance(sigma, (Omega, BigI, INBracket, SubDagger, Dagger)):
        return True
    if isinstance(sigma, Psi):
        return bool(sigma.f) and is_genuine_sst(chain_end(sigma))
    return False


def _sc_leaves(t):
    if isinstance(t, Zero):
        return []
    if isinstance(t, Sum):
        return [x for p in t.parts for x in _sc_leaves(p)]
    if isinstance(t, Veblen):
        return _sc_leaves(t.alpha) + _sc_leaves(t.beta)
    return [t]


def no_regular_between(alpha, beta) -> bool:
    """A sufficient test for α ≤ β < α^{†0}.

    Every regular term is strongly critical and at least Ω, and a strongly
    critical term below β lies below one of β's strongly critical leaves.
    """
    if _cmp(alpha, beta) > 0:
        return False
    if _cmp(beta, Omega()) < 0:
        return True
    leaves = _sc_leaves(beta)
    if leaves == [beta]:
        return beta == alpha
    return all(_cmp(x, alpha) <= 0 for x in leaves)


# -- well-founded part and descent probe ----------------------------------------------

def wf_part(X, less=None) -> frozenset:
    """Well-founded part of a finite set: peel off elements whose predecessors
    are all peeled already."""
    if less is None:
        def both(u, v):
            c = _cmp(u, v)
            return c < 0, c > 0
    else:
        def both(u, v):
            return less(u, v), less(v, u)
    xs = list(X)
    preds = {x: 0 for x in xs}
    succs = {x: [] for x in xs}
    for i, u in enumerate(xs):
        for v in xs[i + 1:]:
            uv, vu = both(u, v)
            if uv:
                preds[v] += 1
                succs[u].append(v)
            if vu:
                preds[u] += 1
                succs[v].append(u)
    ready = [x for x in xs if preds[x] == 0]
    done = set()
    while ready:
        x = ready.pop()
        done.add(x)
        for y in succs[x]:
            preds[y] -= 1
            if preds[y] == 0:
                ready.append(y)
    return frozenset(done)


@dataclass
class ProbeReport:
    seed: object
    chain: list = field(default_factory=list)
    moves: list = field(default_factory=list)
    r_steps: int = 0
    exhausted: bool = False
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.exhausted and not self.violations


def _moves(t, bound, universe):
    out = [("sub", s) for s in imm_sub(t)]
    if isinstance(t, Psi):
        out += [("G", s) for s in g_set(t, t)]
        out += [("E", s) for x in _psi_parts(t) for s in e_set(x)]
    if in_layer(t):
        out += [("R", s) for s in r_set(t, bound, universe)]
    return [(k, s) for k, s in out if _cmp(s, t) < 0]


def descent_probe(seed, budget=10_000, strategy="first", bound=7, universe=None, rng_seed=0):
    """Follow strictly decreasing moves from seed until none is left.

    strategy is "first" (smallest move in a fixed order), "max" (largest
    target) or "random".  Each R-step is certified by g(γ) <_lx g(η) and
    g₀*(γ) ≤ g₀*(η).
    """
    from .terms import length

    if universe is None:
        universe = _universe(bound)
    rng = random.Random(rng_seed)
    rep = ProbeReport(seed)
    t = seed
    steps = 0
    while True:
        moves = _moves(t, max(bound, length(t)), universe)
        if not moves:
            return rep
        steps += 1
        if steps > budget:
            rep.exhausted = True
            return rep
        moves.sort(key=lambda m: (m[0], functools.cmp_to_key(_cmp)(m[1])))
        if strategy == "random":
            kind, nxt = rng.choice(moves)
        elif strategy == "max":
            kind, nxt = max(moves, key=lambda m: functools.cmp_to_key(_cmp)(m[1]))
        else:
            kind, nxt = moves[0]
        if kind == "R":
            rep.r_steps += 1
            gn, gt = g_measures(nxt), g_measures(t)
            if gn.cmp(gt) >= 0 or _cmp(gn.g0star, gt.g0star) > 0:
                rep.violations.append((t, nxt))
        rep.chain.append(nxt)
        rep.moves.append(kind)
        t = nxt


def g2_sc_bound_ok(alpha) -> bool:
    """SC(g₂(α)) ⊂ ψ_𝕀(p₀(α)) and p₀(α) ≤ g₀*(α)."""
    b = p0(alpha)
    bound = Psi(IN, _empty(), b)
    if any(_cmp(s, bound) >= 0 for s in nf_sc(g2(alpha))):
        return False
    return _cmp(b, g0_star(alpha)) <= 0


def _empty():
    from .terms import EMPTY

    return EMPTY


__all__ = [
    "GMeasure", "LamOrd", "MeasureViolation", "OutsideDomain", "ProbeReport",
    "a_measure", "c_set", "c_set_member", "coeff_sets", "descent_probe",
    "e_set", "f_set", "g0", "g0_star", "g1_pair", "g2", "g_measures", "g_set",
    "imm_subterms", "in_layer", "in_r", "is_regular", "k_set_x", "layer_top",
    "next_parent", "no_regular_between", "o_at", "o_measure", "o_vec",
    "prop_S", "r_clause", "r_set", "wf_part",
]
