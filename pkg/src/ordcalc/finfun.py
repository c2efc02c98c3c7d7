"""Finite functions c ↦ ξ with θ̃ normal-form values.

Keys are ordinals below the base Λ and are compared with the term order;
values are :class:`ThetaNF` normal forms.  A function is stored with its
zero values dropped and its keys ascending, so structural equality is
equality of functions.

The second half of the module is the stepping-down calculus on *special*
functions, whose top value has the form α+Λ.
"""
from __future__ import annotations

import functools

from .order import _cmp
from .terms import NF_ZERO, ONE, FiniteFunction, TermError, ThetaNF
from .theta import (
    NF_BASE, NF_ONE, Unrepresentable, exp_subtract, nf_add, nf_cmp, parts,
    term_add, theta, theta_minus, tl,
)


class NotIrreducible(TermError):
    pass


class NotSpecial(TermError):
    pass


class DomainError(TermError):
    pass


def make(pairs) -> FiniteFunction:
    """Canonical function from (key, value) pairs: zeros dropped, keys sorted."""
    pairs = [(k, v) for k, v in pairs if v]
    pairs.sort(key=functools.cmp_to_key(lambda u, v: _cmp(u[0], v[0])))
    for (k1, _), (k2, _) in zip(pairs, pairs[1:]):
        if k1 == k2:
            raise TermError(f"duplicate key {k1!r}")
    return FiniteFunction(pairs)


def keys_sorted(f):
    return [k for k, _ in f.entries]


def keys_ok(f) -> bool:
    """Keys strictly increasing and values nonzero."""
    ks = keys_sorted(f)
    if any(not v for _, v in f.entries):
        return False
    return all(_cmp(a, b) < 0 for a, b in zip(ks, ks[1:]))


def restrict_below(f, c) -> FiniteFunction:
    """f_c: the entries with key < c."""
    return FiniteFunction([(k, v) for k, v in f.entries if _cmp(k, c) < 0])


def restrict_from(f, c) -> FiniteFunction:
    """f^c: the entries with key ≥ c."""
    return FiniteFunction([(k, v) for k, v in f.entries if _cmp(k, c) >= 0])


def concat(g, c, f) -> FiniteFunction:
    """g_c * f^c."""
    return FiniteFunction(restrict_below(g, c).entries + restrict_from(f, c).entries)


def s_top(f):
    """s(f) = max({0} ∪ supp(f))."""
    from .terms import ZERO

    return f.entries[-1][0] if f.entries else ZERO


def next_key(f, c):
    """Least support point strictly above c, or None."""
    for k, _ in f.entries:
        if _cmp(k, c) > 0:
            return k
    return None


# -- f <^c ξ ------------------------------------------------------------------

def less_c(f, c, xi) -> bool:
    """f <^c ξ."""
    if not restrict_from(f, c):
        return True
    fc = f.get(c)
    nxt = next_key(f, c)
    for mu in parts(xi):
        if nf_cmp(fc, mu) >= 0:
            continue
        if nxt is None:
            return True
        d = exp_subtract(nxt, c)
        if less_c(f, nxt, theta_minus(d, tl(mu))):
            return True
    return False


# -- irreducibility and <_lx ------------------------------------------------------

def is_irreducible(f) -> bool:
    while len(f) > 1:
        (c, vc), (cd, vcd) = f.entries[-2], f.entries[-1]
        step = theta(exp_subtract(cd, c), vcd)
        if nf_cmp(tl(vc), step) <= 0:
            return False
        f = FiniteFunction(f.entries[:-2] + ((c, nf_add(vc, step)),))
    return True


def _shortest_part_above(xi, bound):
    """The shortest part of ξ exceeding bound (parts are listed longest first)."""
    best = None
    for mu in parts(xi):
        if nf_cmp(mu, bound) > 0:
            best = mu
    return best


def lx_less(f, g, b) -> bool:
    """f <^b_lx g."""
    fb, gb = restrict_from(f, b), restrict_from(g, b)
    if fb == gb:
        return False
    diff = [k for k in set(fb.support()) | set(gb.support()) if f.get(k) != g.get(k)]
    c = min(diff, key=functools.cmp_to_key(_cmp))
    fc, gc = f.get(c), g.get(c)
    if nf_cmp(fc, gc) < 0:
        mu = _shortest_part_above(gc, fc)
        for k in f.support():
            if _cmp(k, c) <= 0:
                continue
            if nf_cmp(tl(mu), theta(exp_subtract(k, c), f.get(k))) <= 0:
                if not lx_less(f, g, k):
                    return False
        return True
    nu = _shortest_part_above(fc, gc)
    for k in g.support():
        if _cmp(k, c) <= 0:
            continue
        if (nf_cmp(tl(nu), theta(exp_subtract(k, c), g.get(k))) <= 0
                and lx_less(f, g, k)):
            return True
    return False


def coefficient_rule(f) -> bool:
    """Every value has coefficients 1, except a leading Λ^0 summand."""
    for _, v in f.entries:
        for i, (b, _, a) in enumerate(reversed(v.terms)):
            if a == ONE:
                continue
            if i == 0 and b == ONE:
                continue
            return False
    return True


# -- special functions ------------------------------------------------------------

def _drop_base(v):
    """α with v = α + Λ, or None."""
    if not v:
        return None
    b, x, a = v.terms[-1]
    if b != ONE or x != NF_ONE:
        return None
    rest = list(v.terms[:-1])
    if a == ONE:
        return ThetaNF(rest)
    try:
        a0 = exp_subtract(a, ONE)
    except Unrepresentable:
        return None
    # α + Λ absorbs nothing here only when the coefficient ends in +1
    if term_add(a0, ONE) != a:
        return None
    return ThetaNF(rest + [(b, x, a0)])


def is_special(f) -> bool:
    if not f or not is_irreducible(f):
        return False
    return _drop_base(f.entries[-1][1]) is not None


def prime(f) -> FiniteFunction:
    """f′: the top value α+Λ replaced by α (the entry vanishes when α=0)."""
    if not is_special(f):
        raise NotSpecial(f"not a special function: {f!r}")
    s, v = f.entries[-1]
    return FiniteFunction(f.entries[:-1] + (((s, _drop_base(v)),) if _drop_base(v) else ()))


def _unprime(fp, s):
    """The special function h with h′ = fp and s(h) = s."""
    return make([(k, v) for k, v in fp.entries if k != s] + [(s, nf_add(fp.get(s), NF_BASE))])


def _points(g, b):
    """b = b_0 < b_1 < ... < b_n = s(g) with the support of g strictly between."""
    s = s_top(g)
    return [b] + [k for k in g.support() if _cmp(b, k) < 0 and _cmp(k, s) < 0] + [s]


def _alphas(b, g, a):
    """α_0 and α_1 of the backward recursion defining h^b(g;a)."""
    pts = _points(g, b)
    n = len(pts) - 1
    top = _drop_base(g.get(pts[-1]))
    alpha = nf_add(top, a)
    alphas = [None] * (n + 1)
    alphas[n] = alpha
    for i in range(n - 1, -1, -1):
        ci = exp_subtract(pts[i + 1], pts[i])
        alphas[i] = nf_add(g.get(pts[i]), theta(ci, alphas[i + 1]))
    return alphas, pts


def _check_step(b, g, a):
    if not is_special(g):
        raise NotSpecial(f"not a special function: {g!r}")
    if _cmp(b, s_top(g)) >= 0:
        raise DomainError(f"{b!r} is not below s(g)={s_top(g)!r}")
    if nf_cmp(a, NF_BASE) > 0:
        raise DomainError("the step argument must not exceed the base")


def h_step(b, g, a) -> FiniteFunction:
    """h^b(g;a) for b < s(g) and an ordinal a ≤ Λ given as a normal form."""
    _check_step(b, g, a)
    alphas, _ = _alphas(b, g, a)
    return make(list(restrict_below(g, b).entries) + [(b, nf_add(alphas[0], NF_BASE))])


def alpha_b(b, g) -> ThetaNF:
    """α^b(g) = tl((h^b(g;Λ))′(b)) = θ̃_{c_0}(α_1)."""
    _check_step(b, g, NF_BASE)
    alphas, pts = _alphas(b, g, NF_BASE)
    return theta(exp_subtract(pts[1], pts[0]), alphas[1])


def probe_points(f, g, c):
    """Finite set of b < c at which f ◁_c g is evaluated.

    α^b is determined by the support partition, so 0, the support points below
    c and their successors cover every distinct shape of the recursion.
    """
    from .terms import ZERO

    pts = {ZERO} if _cmp(ZERO, c) < 0 else set()
    for k in set(f.support()) | set(g.support()):
        if _cmp(k, c) < 0:
            pts.add(k)
    for p in list(pts):
        q = term_add(p, ONE)
        if _cmp(q, c) < 0:
            pts.add(q)
    return sorted(pts, key=functools.cmp_to_key(_cmp))


def tri_less(f, g, c) -> bool:
    """f ◁_c g: α^b(f) < α^b(g) for every tested b < c."""
    if _cmp(c, s_top(f)) > 0 or _cmp(c, s_top(g)) > 0:
        raise DomainError("◁_c needs c ≤ min(s(f), s(g))")
    return all(nf_cmp(alpha_b(b, f), alpha_b(b, g)) < 0 for b in probe_points(f, g, c))


def merge_b(f, b, g) -> FiniteFunction:
    """f_b * g^b as a special function: primes agree with f′ below b, g′ from b."""
    fp, gp = prime(f), prime(g)
    supp = [k for k in f.support() if _cmp(k, b) < 0] + [k for k in g.support() if _cmp(k, b) >= 0]
    if not supp:
        raise DomainError("empty merge")
    s = max(supp, key=functools.cmp_to_key(_cmp))
    hp = concat(fp, b, gp)
    return _with_support(_unprime(hp, s), supp)


def add_k(f, k) -> FiniteFunction:
    """f + k: the special function with primes f′(c) + k(c)."""
    fp = prime(f)
    supp = list(set(f.support()) | set(k.support()))
    s = max(supp, key=functools.cmp_to_key(_cmp))
    hp = make([(c, nf_add(fp.get(c), k.get(c))) for c in supp])
    return _with_support(_unprime(hp, s), supp)


def _with_support(h, supp):
    # a support point whose primed value is 0 cannot be recorded with value 0
    if set(h.support()) != set(supp):
        raise DomainError("a support point would carry the value 0")
    return h


def nf_left_subtract(alpha, beta):
    """γ with β + γ = α, or None."""
    n = 0
    ta, tb = alpha.terms, beta.terms
    while n < len(ta) and n < len(tb) and ta[n] == tb[n]:
        n += 1
    if n == len(tb):
        gamma = ThetaNF(ta[n:])
    elif n == len(ta):
        return None
    else:
        (b1, x1, a1), (b2, x2, a2) = ta[n], tb[n]
        if (b1, x1) == (b2, x2):
            try:
                a = exp_subtract(a1, a2)
            except Unrepresentable:
                return None
            gamma = ThetaNF([(b1, x1, a)] + list(ta[n + 1:]))
        else:
            gamma = ThetaNF(ta[n:])
    if gamma is None or nf_add(beta, gamma) != alpha:
        return None
    return gamma


def in_H_res(sigma_m, rho_m, d, f) -> bool:
    """m(σ) = f + k for some k with s(k) < d and 0 < k(x) < α^x(m(ρ))."""
    if not is_special(sigma_m) or not is_special(f):
        return False
    sp, fp = prime(sigma_m), prime(f)
    keys = set(sigma_m.support()) | set(f.support())
    k_pairs = []
    for c in keys:
        diff = nf_left_subtract(sp.get(c), fp.get(c))
        if diff is None:
            return False
        k_pairs.append((c, diff))
    k = make(k_pairs)
    if k and _cmp(s_top(k), d) >= 0:
        return False
    for x, v in k.entries:
        if _cmp(x, s_top(rho_m)) >= 0:
            return False
        if not nf_cmp(NF_ZERO, v) < 0 or nf_cmp(v, alpha_b(x, rho_m)) >= 0:
            return False
    try:
        return add_k(f, k) == sigma_m
    except (DomainError, NotSpecial):
        return False
