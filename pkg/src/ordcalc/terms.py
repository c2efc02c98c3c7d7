"""Ordinal terms: the immutable AST, structural helpers and the relations
that only depend on the shape of a term (subscript chains, stable classes,
the relation ≺ and its layered extension ≺^R).

Everything that needs the order itself lives in :mod:`ordcalc.order`.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from . import config


class TermError(ValueError):
    """A term has the wrong shape for the requested operation."""


class _Node:
    """Immutable node with structural equality and a cached hash."""

    __slots__ = ("_h",)
    _fields: tuple = ()

    def _key(self):
        return tuple(getattr(self, f) for f in self._fields)

    def __eq__(self, other):
        if self is other:
            return True
        if type(self) is not type(other) or hash(self) != hash(other):
            return False
        return self._key() == other._key()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        try:
            return self._h
        except AttributeError:
            h = hash((type(self).__name__,) + self._key())
            object.__setattr__(self, "_h", h)
            return h

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __reduce__(self):
        return (type(self), self._key())

    def __repr__(self):
        from .syntax import show

        return show(self)


class Term(_Node):
    __slots__ = ()


def _init(obj, **kw):
    for k, v in kw.items():
        object.__setattr__(obj, k, v)


class Zero(Term):
    __slots__ = ()


class Omega(Term):
    __slots__ = ()


class BigI(Term):
    """The top constant 𝕀_N."""

    __slots__ = ()


class Sum(Term):
    __slots__ = ("parts",)
    _fields = ("parts",)

    def __init__(self, parts):
        _init(self, parts=tuple(parts))


class Veblen(Term):
    __slots__ = ("alpha", "beta")
    _fields = ("alpha", "beta")

    def __init__(self, alpha, beta):
        _init(self, alpha=alpha, beta=beta)


class Psi(Term):
    __slots__ = ("kappa", "f", "a")
    _fields = ("kappa", "f", "a")

    def __init__(self, kappa, f, a):
        _init(self, kappa=kappa, f=f, a=a)


class Dagger(Term):
    __slots__ = ("base", "ivec")
    _fields = ("base", "ivec")

    def __init__(self, base, ivec):
        _init(self, base=base, ivec=tuple(ivec))


class INBracket(Term):
    __slots__ = ("rho",)
    _fields = ("rho",)

    def __init__(self, rho):
        _init(self, rho=rho)


class SubDagger(Term):
    __slots__ = ("S", "ivec", "rho")
    _fields = ("S", "ivec", "rho")

    def __init__(self, S, ivec, rho):
        _init(self, S=S, ivec=tuple(ivec), rho=rho)


class ThetaNF(_Node):
    """Σ θ̃_{b}(ξ)·a as a tuple of (b, ξ, a) triples, largest first."""

    __slots__ = ("terms",)
    _fields = ("terms",)

    def __init__(self, terms=()):
        _init(self, terms=tuple(tuple(t) for t in terms))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)


class FiniteFunction(_Node):
    """Finite map key -> ThetaNF; entries sorted by key ascending."""

    __slots__ = ("entries",)
    _fields = ("entries",)

    def __init__(self, entries=()):
        _init(self, entries=tuple(tuple(e) for e in entries))

    def __bool__(self):
        return bool(self.entries)

    def __len__(self):
        return len(self.entries)

    def support(self):
        return [k for k, _ in self.entries]

    def get(self, key):
        for k, v in self.entries:
            if k == key:
                return v
        return NF_ZERO

    def as_dict(self):
        return dict(self.entries)


ZERO = Zero()
OMEGA = Omega()
IN = BigI()
ONE = Veblen(ZERO, ZERO)
OMEGA_1 = Veblen(ZERO, ONE)  # ω
NF_ZERO = ThetaNF(())
EMPTY = FiniteFunction(())


# -- smart constructors ------------------------------------------------------

def plus(*xs) -> Term:
    """Flattened sum; zeros dropped, singletons unwrapped.  No reordering."""
    parts = []
    for x in xs:
        if isinstance(x, Sum):
            parts.extend(x.parts)
        elif not isinstance(x, Zero):
            parts.append(x)
    if not parts:
        return ZERO
    if len(parts) == 1:
        return parts[0]
    return Sum(parts)


def phi(a, b) -> Term:
    return Veblen(a, b)


def omega_pow(x) -> Term:
    return Veblen(ZERO, x)


def nat(n: int) -> Term:
    if n < 0:
        raise TermError("negative natural")
    return plus(*([ONE] * n))


def psi(kappa, a, f=None) -> Term:
    return Psi(kappa, EMPTY if f is None else f, a)


def dagger(base, ivec) -> Term:
    """base^{†ivec}, merging nested daggers into a single vector."""
    ivec = tuple(int(i) for i in ivec)
    if not ivec:
        return base
    if isinstance(base, Dagger):
        return Dagger(base.base, base.ivec + ivec)
    if isinstance(base, SubDagger):
        return SubDagger(base.S, base.ivec + ivec, base.rho)
    return Dagger(base, ivec)


def in_bracket(rho) -> Term:
    return INBracket(rho)


def sub_dagger(S, ivec, rho) -> Term:
    return SubDagger(S, tuple(int(i) for i in ivec), rho)


def ffun(pairs) -> FiniteFunction:
    """Build a finite function; zero values are dropped, order is kept."""
    return FiniteFunction([(k, v) for k, v in pairs if v])


# -- structure ---------------------------------------------------------------

STRONGLY_CRITICAL = (Omega, Psi, Dagger, INBracket, SubDagger)


def is_sc(t) -> bool:
    """Strongly critical and below 𝕀_N."""
    return isinstance(t, STRONGLY_CRITICAL)


def is_principal(t) -> bool:
    """Additively principal (nonzero, not a sum)."""
    return not isinstance(t, (Zero, Sum))


def parts_of(t):
    if isinstance(t, Sum):
        return t.parts
    if isinstance(t, Zero):
        return ()
    return (t,)


def nf_length(x: ThetaNF) -> int:
    if not x.terms:
        return 1
    n = len(x.terms) - 1
    for b, xi, a in x.terms:
        n += 1 + length(b) + nf_length(xi) + length(a)
    return n


def ffun_length(f: FiniteFunction) -> int:
    return sum(length(k) + nf_length(v) for k, v in f.entries)


@config.memo
def length(t) -> int:
    """Number of symbol occurrences."""
    if isinstance(t, (Zero, Omega, BigI)):
        return 1
    if isinstance(t, Sum):
        return sum(length(p) for p in t.parts) + len(t.parts) - 1
    if isinstance(t, Veblen):
        return 1 + length(t.alpha) + length(t.beta)
    if isinstance(t, Psi):
        return 1 + length(t.kappa) + ffun_length(t.f) + length(t.a)
    if isinstance(t, Dagger):
        return length(t.base) + len(t.ivec)
    if isinstance(t, INBracket):
        return 1 + length(t.rho)
    if isinstance(t, SubDagger):
        return 1 + length(t.S) + len(t.ivec) + length(t.rho)
    raise TermError(f"not a term: {t!r}")


def nf_sc(x: ThetaNF) -> frozenset:
    out = set()
    for b, xi, a in x.terms:
        out |= sc(b) | nf_sc(xi) | sc(a)
    return frozenset(out)


def sc_f(f: FiniteFunction) -> frozenset:
    """SC(f): the support together with SC of every value."""
    out = set()
    for k, v in f.entries:
        out.add(k)
        out |= nf_sc(v)
    return frozenset(out)


def sc(t) -> frozenset:
    """Strongly critical subterms below 𝕀_N."""
    if isinstance(t, (Zero, BigI)):
        return frozenset()
    if is_sc(t):
        return frozenset((t,))
    if isinstance(t, Sum):
        return frozenset().union(*(sc(p) for p in t.parts))
    if isinstance(t, Veblen):
        return sc(t.alpha) | sc(t.beta)
    raise TermError(f"not a term: {t!r}")


def k_imm(t) -> frozenset:
    """Immediate subterms k(t)."""
    if isinstance(t, Sum):
        return frozenset(t.parts)
    if isinstance(t, Veblen):
        return frozenset((t.alpha, t.beta))
    if isinstance(t, Psi):
        return frozenset((t.kappa, t.a)) | sc_f(t.f)
    if isinstance(t, Dagger):
        return frozenset((t.base,))
    if isinstance(t, INBracket):
        return frozenset((t.rho,))
    if isinstance(t, SubDagger):
        return frozenset((t.S, t.rho))
    return frozenset()


def imm_sub(t) -> frozenset:
    """S(t): ψ terms are their own immediate subterm, N(ρ) members give ρ."""
    if isinstance(t, (Zero, Omega, BigI)):
        return frozenset()
    if isinstance(t, Psi):
        return frozenset((t,))
    if isinstance(t, Sum):
        return frozenset(t.parts)
    if isinstance(t, Veblen):
        return frozenset((t.alpha, t.beta))
    if isinstance(t, Dagger):
        return frozenset((t.base,))
    if isinstance(t, (INBracket, SubDagger)):
        return frozenset((t.rho,))
    raise TermError(f"not a term: {t!r}")


def nf_terms_of(x: ThetaNF):
    for b, xi, a in x.terms:
        yield b
        yield a
        yield from nf_terms_of(xi)


def children(t):
    """All Term children, including those inside finite functions."""
    if isinstance(t, Sum):
        return list(t.parts)
    if isinstance(t, Veblen):
        return [t.alpha, t.beta]
    if isinstance(t, Psi):
        out = [t.kappa, t.a]
        for k, v in t.f.entries:
            out.append(k)
            out.extend(nf_terms_of(v))
        return out
    if isinstance(t, Dagger):
        return [t.base]
    if isinstance(t, INBracket):
        return [t.rho]
    if isinstance(t, SubDagger):
        return [t.S, t.rho]
    return []


def subterms(t) -> set:
    out = {t}
    for c in children(t):
        out |= subterms(c)
    return out


# -- subscript chains and anchors ---------------------------------------------

def chain(t):
    """Subscript chain [t, κ1, κ2, ...] of a ψ term, ending at a non-ψ term."""
    out = [t]
    while isinstance(out[-1], Psi):
        out.append(out[-1].kappa)
    return out


def chain_end(t):
    return chain(t)[-1]


def prec(rho, sigma) -> bool:
    """ρ ≺ σ: σ occurs strictly above ρ in its subscript chain."""
    x = rho
    while isinstance(x, Psi):
        x = x.kappa
        if x == sigma:
            return True
    return False


def preceq(rho, sigma) -> bool:
    return rho == sigma or prec(rho, sigma)


def is_sstm(t) -> bool:
    """Shape of a successor stable term (genuine or collapsed)."""
    return isinstance(t, (Dagger, SubDagger))


def imm_anchor(t):
    """The collapsing term ρ whose block B(ρ) directly contains t, if any."""
    while True:
        if isinstance(t, (INBracket, SubDagger)):
            return t.rho
        if isinstance(t, Psi):
            t = t.kappa
        elif isinstance(t, Dagger):
            t = t.base
        else:
            return None


def anchors(t):
    """Anchors of t from the innermost outwards."""
    out = []
    r = imm_anchor(t)
    while r is not None:
        out.append(r)
        r = imm_anchor(r)
    return out


def outer_anchor(t):
    a = anchors(t)
    return a[-1] if a else None


def is_anchored(t) -> bool:
    return imm_anchor(t) is not None


def is_genuine_sst(t) -> bool:
    return isinstance(t, Dagger) and not is_anchored(t)


def ivec_last(ivec) -> int:
    return ivec[-1]


def ivec_ok(ivec, bound) -> bool:
    """ī ≤ bound: nonempty, nonincreasing, entries in [1, bound]."""
    if not ivec:
        return False
    if any(i < 1 or i > bound for i in ivec):
        return False
    return all(ivec[k] >= ivec[k + 1] for k in range(len(ivec) - 1))


def sst_level(t) -> int:
    """k with t ∈ SSt^M_k."""
    if isinstance(t, (Dagger, SubDagger)):
        return t.ivec[-1]
    raise TermError(f"not a successor stable term: {t!r}")


def lst_level(t):
    """Level i with t ∈ LSt_i (possibly collapsed), else None.

    ψ over 𝕀_N or 𝕀_N[ρ] is at level N; ψ whose chain ends at a successor
    stable of level k is at level k-1 (None when k=1).
    """
    if not isinstance(t, Psi):
        return None
    end = chain_end(t)
    if isinstance(end, (BigI, INBracket)):
        if isinstance(t.kappa, (BigI, INBracket)):
            return config.get_N()
        return None
    if is_sstm(end):
        k = sst_level(end) - 1
        return k if k >= 1 else None
    return None


def dagger_bound(t):
    """Largest i allowed in t^{†i}, or None when t cannot be daggered."""
    if isinstance(t, Omega):
        return config.get_N()
    if isinstance(t, (Dagger, SubDagger)):
        return sst_level(t)
    return lst_level(t)


# -- stable classes ------------------------------------------------------------

@dataclass(frozen=True)
class StableClass:
    tag: str
    k: int = 0
    collapsed: bool = False

    def __str__(self):
        s = self.tag if not self.k else f"{self.tag}({self.k})"
        return s + ("^M" if self.collapsed else "")


PLAIN = "Plain"
PSI_TERM = "PsiTerm"
SST = "SStK"
LST = "LStK"
IN_TERM = "INTerm"
OMEGA_TERM = "OmegaTerm"
REG_OTHER = "RegOther"


class Unclassifiable(TermError):
    pass


def classify(t) -> StableClass:
    """Stable class of a validated term (shape-based)."""
    if isinstance(t, (Zero, Sum, Veblen)):
        return StableClass(PLAIN)
    if isinstance(t, Omega):
        return StableClass(OMEGA_TERM)
    if isinstance(t, BigI):
        return StableClass(IN_TERM)
    if isinstance(t, INBracket):
        return StableClass(REG_OTHER, 0, True)
    if isinstance(t, (Dagger, SubDagger)):
        return StableClass(SST, sst_level(t), is_anchored(t))
    if isinstance(t, Psi):
        lvl = lst_level(t)
        if lvl is not None:
            return StableClass(LST, lvl, is_anchored(t))
        end = chain_end(t)
        if isinstance(end, (Omega, BigI, INBracket)) or is_sstm(end):
            return StableClass(PSI_TERM, 0, is_anchored(t))
    raise Unclassifiable(f"cannot classify {t!r}")


# -- the layered relation ≺^R ----------------------------------------------------

def _is_top(t) -> bool:
    # successor stables, and 𝕀_N / 𝕀_N[σ] acting as the level above N
    return is_sstm(t) or isinstance(t, (BigI, INBracket))


def _chain_above(rho):
    """Elements strictly above ρ in its chain, if the chain ends at a top."""
    ch = chain(rho)
    if len(ch) < 2 or not _is_top(ch[-1]):
        return []
    return ch[1:]


def r_parents(x):
    """κ with x ≺^R κ by a single generating step."""
    if isinstance(x, Psi):
        return _chain_above(x)
    if isinstance(x, SubDagger):
        above = _chain_above(x.rho)
        return above if above and above[-1] == x.S else []
    if isinstance(x, INBracket):
        return _chain_above(x.rho)
    if isinstance(x, Dagger) and is_anchored(x) and isinstance(x.base, Psi):
        return _chain_above(x.base)
    return []


def prec_r(pi, kappa) -> bool:
    """π ≺^R κ (transitive closure of the generating steps)."""
    seen = set()
    todo = [pi]
    while todo:
        x = todo.pop()
        for y in r_parents(x):
            if y == kappa:
                return True
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return False


def preceq_r(pi, kappa) -> bool:
    return pi == kappa or prec_r(pi, kappa)


def r_ancestors(x) -> set:
    seen = set()
    todo = [x]
    while todo:
        y = todo.pop()
        for z in r_parents(y):
            if z not in seen:
                seen.add(z)
                todo.append(z)
    return seen


def layer(S):
    """Characteristic function of L(S)."""
    if not is_sstm(S):
        raise TermError(f"not a successor stable term: {S!r}")
    return lambda alpha: prec_r(alpha, S)


def layers_of(x):
    """All successor stables S with x ∈ L(S)."""
    return {y for y in r_ancestors(x) if is_sstm(y)}


def ivecs(bound, maxlen):
    """All nonincreasing vectors with entries in [1, bound], length 1..maxlen."""
    out = []
    for n in range(1, maxlen + 1):
        for combo in combinations_with_replacement(range(bound, 0, -1), n):
            out.append(tuple(combo))
    return out


def next_set(rho, bound: int):
    """Members of N(ρ) whose added vector has length ≤ bound."""
    if not isinstance(rho, Psi):
        raise TermError(f"not in Psi: {rho!r}")
    top = chain_end(rho)
    if not is_sstm(top):
        raise TermError(f"{rho!r} does not lie below a successor stable")
    out = {INBracket(rho)}
    lvl = sst_level(top)
    for v in ivecs(lvl, bound):
        out.add(SubDagger(top, v, rho))
    if is_anchored(top):
        own = lst_level(rho)
        if own:
            for v in ivecs(own, bound):
                out.add(dagger(rho, v))
    return out
