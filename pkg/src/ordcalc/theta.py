"""Normal forms Σ θ̃_{b}(ξ)·a below φ_Λ(0) and the arithmetic they need.

θ̃_1(ξ) = Λ^ξ and θ̃_{ω^c}(ξ) = φ_c(Λ·ξ); a composite index is applied piece
by piece, smallest piece first.  Triples do not mention the base Λ: two
normal forms over the same base compare the same way whatever Λ is, which is
what makes base change order preserving.
"""
from __future__ import annotations

from .order import Ordering, _cmp
from .terms import (
    IN, NF_ZERO, ONE, ZERO, Sum, TermError, ThetaNF, Veblen, Zero,
    is_principal, is_sc, nf_sc, parts_of, plus,
)


class ZeroArgument(TermError):
    pass


class NonPrincipal(TermError):
    pass


class Unrepresentable(TermError):
    pass


class CoefficientNotBelowBase(TermError):
    pass


NF_ONE = ThetaNF([(ONE, NF_ZERO, ONE)])
NF_BASE = ThetaNF([(ONE, NF_ONE, ONE)])  # Λ = Λ^1


def small(a) -> ThetaNF:
    """An ordinal a < Λ as the normal form Λ^0·a."""
    if isinstance(a, Zero):
        return NF_ZERO
    return ThetaNF([(ONE, NF_ZERO, a)])


def principal(b, xi) -> ThetaNF:
    return ThetaNF([(b, xi, ONE)])


def nf_nat(n: int) -> ThetaNF:
    from .terms import nat

    return small(nat(n))


def base_power(k: int) -> ThetaNF:
    """Λ^k for a natural k."""
    return ThetaNF([(ONE, nf_nat(k), ONE)]) if k else NF_ONE


# -- Term-level helpers -------------------------------------------------------

def log_principal(p):
    """e with p = ω^e for an additively principal p."""
    if isinstance(p, Veblen) and isinstance(p.alpha, Zero):
        return p.beta
    if is_principal(p):
        return p
    raise NonPrincipal(f"not additively principal: {p!r}")


def norm_phi(a, b):
    """φ_a(b) brought to normal form (fixed points collapse to b or a)."""
    if isinstance(b, Zero) and (is_sc(a) or a == IN):
        return a
    if is_sc(b) or b == IN:
        if _cmp(a, b) < 0:
            return b
    if isinstance(b, Veblen) and _cmp(a, b.alpha) < 0:
        return b
    return Veblen(a, b)


def omega_pow(e):
    return norm_phi(ZERO, e)


def term_add(x, y):
    """Ordinal sum x + y of terms in additive normal form."""
    py = parts_of(y)
    if not py:
        return x
    head = py[0]
    keep = [p for p in parts_of(x) if _cmp(p, head) >= 0]
    return plus(*keep, *py)


def exp_subtract(alpha, beta):
    """γ with α = β + γ."""
    pa, pb = parts_of(alpha), parts_of(beta)
    for i, q in enumerate(pb):
        if i >= len(pa):
            raise Unrepresentable(f"{beta!r} exceeds {alpha!r}")
        c = _cmp(pa[i], q)
        if c > 0:
            return plus(*pa[i:])
        if c < 0:
            raise Unrepresentable(f"{beta!r} exceeds {alpha!r}")
    return plus(*pa[len(pb):])


def omega_left(a):
    """ω·a for a term a in additive normal form."""
    out = []
    for p in parts_of(a):
        e = log_principal(p)
        e1 = term_add(ONE, e)
        out.append(p if e1 == e else omega_pow(e1))
    return plus(*out)


# -- comparison -----------------------------------------------------------------

def _cmp_head(b1, x1, b2, x2) -> int:
    """Compare θ̃_{b1}(x1) with θ̃_{b2}(x2)."""
    c = _cmp(log_principal(b1), log_principal(b2))
    if c == 0:
        return nf_cmp(x1, x2)
    if c < 0:
        if not x1:
            return -1
        return -1 if (x2 and nf_cmp(x1, principal(b2, x2)) < 0) else 1
    if not x2:
        return 1
    return 1 if (x1 and nf_cmp(x2, principal(b1, x1)) < 0) else -1


def nf_cmp(x: ThetaNF, y: ThetaNF) -> int:
    for (b1, x1, a1), (b2, x2, a2) in zip(x.terms, y.terms):
        c = _cmp_head(b1, x1, b2, x2)
        if c:
            return c
        c = _cmp(a1, a2)
        if c:
            return c
    n, m = len(x.terms), len(y.terms)
    return (n > m) - (n < m)


def nf_compare(xi: ThetaNF, zeta: ThetaNF, base=IN) -> Ordering:
    """Order of two normal forms over the same base (the base does not matter)."""
    return Ordering(nf_cmp(xi, zeta))


def nf_less(x, y) -> bool:
    return nf_cmp(x, y) < 0


def nf_max(xs):
    best = NF_ZERO
    for x in xs:
        if nf_cmp(x, best) > 0:
            best = x
    return best


# -- θ̃ and its pieces -------------------------------------------------------------

def _is_fixed(c, xi) -> bool:
    """θ̃_{ω^c}(ξ) = ξ."""
    if len(xi.terms) != 1:
        return False
    b1, eta, a1 = xi.terms[0]
    return a1 == ONE and bool(eta) and _cmp(log_principal(b1), c) > 0


def theta_principal(p, xi: ThetaNF) -> ThetaNF:
    c = log_principal(p)
    if not xi:
        if isinstance(c, Zero):
            return NF_ONE
        return small(norm_phi(c, ZERO))
    if _is_fixed(c, xi):
        return xi
    if xi == NF_ONE and not isinstance(c, Zero):
        # φ_c(Λ·1) = Λ since Λ is strongly critical
        return NF_BASE
    return principal(p, xi)


def theta(b, xi: ThetaNF) -> ThetaNF:
    """Normal form of θ̃_b(ξ)."""
    out = xi
    for p in reversed(parts_of(b)):
        out = theta_principal(p, out)
    return out


def hd(xi: ThetaNF) -> ThetaNF:
    if not xi:
        raise ZeroArgument("hd of 0")
    b, x, _ = xi.terms[0]
    return principal(b, x)


def tl(xi: ThetaNF) -> ThetaNF:
    if not xi:
        raise ZeroArgument("tl of 0")
    b, x, _ = xi.terms[-1]
    return principal(b, x)


def parts(xi: ThetaNF):
    """All top segments of ξ, from ξ itself down to 0."""
    n = len(xi.terms)
    return [ThetaNF(xi.terms[:k]) for k in range(n, -1, -1)]


def theta_minus(c, zeta: ThetaNF) -> ThetaNF:
    """θ̃_{−c}(ζ) for a principal ζ = θ̃_b(ξ)."""
    if len(zeta.terms) != 1 or zeta.terms[0][2] != ONE:
        raise NonPrincipal(f"θ̃_{{-c}} needs a principal argument, got {zeta!r}")
    b, xi, _ = zeta.terms[0]
    if _cmp(b, c) >= 0:
        return theta(exp_subtract(b, c), xi)
    if not xi:
        return NF_ZERO
    return theta_minus(exp_subtract(c, b), hd(xi))


# -- arithmetic ---------------------------------------------------------------------

def nf_add(xi: ThetaNF, zeta: ThetaNF) -> ThetaNF:
    if not zeta:
        return xi
    if not xi:
        return zeta
    b0, x0, a0 = zeta.terms[0]
    out = []
    for b, x, a in xi.terms:
        c = _cmp_head(b, x, b0, x0)
        if c > 0:
            out.append((b, x, a))
        elif c == 0:
            out.append((b, x, term_add(a, a0)))
            return ThetaNF(out + list(zeta.terms[1:]))
        else:
            break
    return ThetaNF(out + list(zeta.terms))


def nf_omega_mult(xi: ThetaNF) -> ThetaNF:
    """ω·ξ: only a trailing Λ^0·a summand changes."""
    if not xi:
        return xi
    b, x, a = xi.terms[-1]
    if b == ONE and not x:
        return ThetaNF(list(xi.terms[:-1]) + [(b, x, omega_left(a))])
    return xi


def nf_succ(xi: ThetaNF) -> ThetaNF:
    return nf_add(xi, NF_ONE)


def nf_times_omega(xi: ThetaNF) -> ThetaNF:
    """ξ·ω for a single summand ξ = θ̃_b(η)·a."""
    if not xi:
        return xi
    if len(xi.terms) != 1:
        raise NonPrincipal("ξ·ω is only used for a single summand")
    b, x, a = xi.terms[0]
    # (ω^e·k + ...)·ω = ω^{e+1}
    e = log_principal(parts_of(a)[0])
    return ThetaNF([(b, x, omega_pow(term_add(e, ONE)))])


def base_change(xi: ThetaNF, lam) -> ThetaNF:
    """ξ[Λ:𝕀_N]: the same triples read over the base Λ."""
    for b, x, a in xi.terms:
        for s in nf_sc(ThetaNF([(b, NF_ZERO, a)])):
            if _cmp(s, lam) >= 0:
                raise CoefficientNotBelowBase(f"{s!r} is not below {lam!r}")
        if _cmp(a, lam) >= 0 or _cmp(b, lam) >= 0:
            raise CoefficientNotBelowBase(f"coefficient of {xi!r} not below {lam!r}")
        base_change(x, lam)
    return xi


def nf_errors(xi: ThetaNF, base=IN):
    """First normal-form violation of ξ over the given base, or None."""
    prev = None
    for b, x, a in xi.terms:
        if not is_principal(b) or isinstance(b, Sum):
            return f"index {b!r} is not of the form ω^c"
        if _cmp(b, base) >= 0:
            return f"index {b!r} not below the base"
        if isinstance(a, Zero) or _cmp(a, base) >= 0:
            return f"coefficient {a!r} not in (0, base)"
        err = nf_errors(x, base)
        if err:
            return err
        if b != ONE and not x:
            return f"θ̃_{b!r}(0) is not a normal form"
        if b != ONE and x == NF_ONE:
            return f"θ̃_{b!r}(1) equals Λ and is not a normal form"
        if _is_fixed(log_principal(b), x):
            return f"θ̃_{b!r}(ξ) does not exceed ξ"
        if prev is not None and _cmp_head(prev[0], prev[1], b, x) <= 0:
            return "summands are not strictly decreasing"
        prev = (b, x)
    return None


def nf_valid(xi: ThetaNF, base=IN) -> bool:
    return nf_errors(xi, base) is None
