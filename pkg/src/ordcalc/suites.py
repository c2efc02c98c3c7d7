"""Headless check suites over bounded universes.

Every suite returns a plain dict::

    {"suite": name, "params": {"N": n, "max_len": k, ...},
     "checked": count, "failures": [{"inputs": [...], "expected": ..., "got": ...}]}

Terms in reports are printed in the text syntax, so a report can be fed back
to the command line.  At most ``MAX_REPORTED`` failures are listed; the full
count is kept in ``failed``.
"""
from __future__ import annotations

import bisect
import functools
import random
import time

from . import config
from .collapse import NotInDomain, mostowski, uncollapse
from .finfun import (
    DomainError, add_k, alpha_b, h_step, in_H_res, is_irreducible, is_special,
    less_c, lx_less, make, merge_b, prime, restrict_below, s_top, tri_less,
)
from .order import NotCollapsing, _cmp, collapsing_top, in_H, in_M
from .samples import (
    KEYS, key_range, rand_ffun, rand_nf, rand_nonzero_nf, rand_small_arg,
    rand_special,
)
from .syntax import show, show_ffun, show_nf
from .terms import (
    NF_ZERO, ONE, ZERO, BigI, Dagger, Omega, Psi, SubDagger, dagger,
    is_anchored, is_genuine_sst, is_sstm, layers_of, length, lst_level,
    r_ancestors, sc_f, sst_level,
)
from .theta import NF_BASE, exp_subtract, nf_add, nf_cmp, nf_times_omega, term_add, theta
from .validate import is_valid
from .wf import (
    _universe, c_set, descent_probe, g_measures, in_layer, in_r,
    no_regular_between, o_measure, wf_part,
)

MAX_REPORTED = 50
TRIPLE_SAMPLE_ABOVE = 5000


class _Report:
    def __init__(self, suite, **params):
        self.suite = suite
        self.params = {"N": config.get_N(), **params}
        self.checked = 0
        self.failed = 0
        self.failures = []
        self.counts = {}
        self.failed_by = {}
        self.t0 = time.perf_counter()

    def check(self, ok, inputs=(), expected=None, got=None, kind=None):
        self.checked += 1
        if kind is not None:
            self.counts[kind] = self.counts.get(kind, 0) + 1
        if not ok:
            self.fail(inputs, expected, got, kind)
        return ok

    def fail(self, inputs, expected, got, kind=None):
        self.failed += 1
        if kind is not None:
            self.failed_by[kind] = self.failed_by.get(kind, 0) + 1
        if len(self.failures) < MAX_REPORTED:
            rec = {"inputs": [_txt(x) for x in inputs], "expected": _txt(expected), "got": _txt(got)}
            if kind is not None:
                rec["law"] = kind
            self.failures.append(rec)

    def done(self, **extra):
        out = {
            "suite": self.suite,
            "params": self.params,
            "checked": self.checked,
            "failed": self.failed,
            "failures": self.failures,
            "seconds": round(time.perf_counter() - self.t0, 2),
        }
        if self.counts:
            out["counts"] = dict(sorted(self.counts.items()))
        if self.failed_by:
            out["failed_by"] = dict(sorted(self.failed_by.items()))
        out.update(extra)
        return out


def _txt(x):
    from .terms import FiniteFunction, Term, ThetaNF

    if isinstance(x, Term):
        return show(x)
    if isinstance(x, FiniteFunction):
        return show_ffun(x)
    if isinstance(x, ThetaNF):
        return show_nf(x)
    if isinstance(x, (list, tuple)):
        return [_txt(y) for y in x]
    return x


_KEY = functools.cmp_to_key(_cmp)


def _sign(n):
    return (n > 0) - (n < 0)


def universe(max_len):
    return list(_universe(max_len))


def sorted_universe(max_len):
    return sorted(_universe(max_len), key=_KEY)


# -- linear order ----------------------------------------------------------------------

def suite_order(max_len=7, triples=100_000, seed=1):
    """Totality, antisymmetry and transitivity of the term order.

    Up to TRIPLE_SAMPLE_ABOVE elements every pair is compared with the
    position in a sorted copy, which settles all three laws exactly; above
    that, random triples are sampled.
    """
    U = universe(max_len)
    rep = _Report("order", max_len=max_len, size=len(U))
    if len(U) <= TRIPLE_SAMPLE_ABOVE:
        S = sorted(U, key=_KEY)
        for i, a in enumerate(S):
            for j, b in enumerate(S):
                want = _sign(i - j)
                got = _cmp(a, b)
                rep.check(got == want and ((got == 0) == (a == b)), (a, b), want, got)
        return rep.done(mode="exhaustive")
    rng = random.Random(seed)
    for _ in range(triples):
        a, b, c = rng.choice(U), rng.choice(U), rng.choice(U)
        ab, ba, bc, ac = _cmp(a, b), _cmp(b, a), _cmp(b, c), _cmp(a, c)
        ok = (ab == -ba and (ab == 0) == (a == b)
              and not (ab <= 0 and bc <= 0 and ac > 0)
              and not (ab >= 0 and bc >= 0 and ac < 0))
        rep.check(ok, (a, b, c), "consistent", [ab, bc, ac])
    return rep.done(mode="sampled", triples=triples)


def suite_psi_bound(max_len=7):
    """ψ_κ^f(a) < κ for every ψ term of the universe."""
    rep = _Report("psi-bound", max_len=max_len)
    for t in _universe(max_len):
        if isinstance(t, Psi):
            rep.check(_cmp(t, t.kappa) < 0, (t,), -1, _cmp(t, t.kappa))
    return rep.done()


def suite_psi_in_monotone(max_len=7):
    """ψ_𝕀(a) < ψ_𝕀(b) exactly when a < b, on all pairs of the universe."""
    rep = _Report("psi-in-monotone", max_len=max_len)
    ps = [t for t in _universe(max_len) if isinstance(t, Psi) and isinstance(t.kappa, BigI) and not t.f]
    for x in ps:
        for y in ps:
            want = _cmp(x.a, y.a)
            rep.check(_cmp(x, y) == want, (x, y), want, _cmp(x, y))
    return rep.done(psi_terms=len(ps))


# -- collapse --------------------------------------------------------------------------

def collapse_pairs(max_len=7, limit=60, seed=0):
    """(ρ, 𝕊) pairs with ρ ≺ 𝕊 ∈ SSt drawn from the universe."""
    out = []
    for r in _universe(max_len):
        if not isinstance(r, Psi):
            continue
        try:
            S = collapsing_top(r)
        except NotCollapsing:
            continue
        if is_genuine_sst(S):
            out.append((r, S))
    if limit is not None and len(out) > limit:
        out = random.Random(seed).sample(out, limit)
    return out


def suite_collapse(max_len=7, pairs=60, seed=0):
    """Order isomorphism, ≺^R preservation, round trip and image shape of the collapse.

    Order isomorphism is checked as equality of two sorted sequences: the
    members of M_ρ sorted then collapsed, and their images sorted directly.
    Given linearity of the order on both sides this is the same as checking
    every pair.  ≺^R preservation compares ancestor sets: for a ∈ M_ρ the
    members b with a ≺^R b must map onto the images b' with a' ≺^R b'.
    """
    rep = _Report("collapse", max_len=max_len, pairs=pairs)
    U = _universe(max_len)
    US = sorted_universe(max_len)
    prs = collapse_pairs(max_len, pairs, seed)
    rep.params["pairs"] = len(prs)
    for rho, S in prs:
        M = []
        for a in U:
            if not in_M(a, rho):
                continue
            try:
                M.append((a, mostowski(a, rho, S)))
            except NotInDomain as e:
                rep.check(False, (a, rho, S), "collapse defined", str(e), kind="defined")
        M.sort(key=lambda p: _KEY(p[0]))
        img = {a: b for a, b in M}
        # order isomorphism
        by_image = sorted((b for _, b in M), key=_KEY)
        for (a, b), c in zip(M, by_image):
            rep.check(b == c, (a, rho, S), b, c, kind="order")
        # ≺^R preservation
        back = {b: a for a, b in M}
        for a, b in M:
            want = {img[x] for x in r_ancestors(a) if x in img}
            got = {y for y in r_ancestors(b) if y in back}
            rep.check(want == got, (a, rho, S), sorted(want, key=_KEY), sorted(got, key=_KEY), kind="prec-r")
        # round trip
        for a, b in M:
            rep.check(uncollapse(b, rho, S) == a, (b, rho, S), a, uncollapse(b, rho, S), kind="roundtrip")
        # image characterization at the length bound
        diff = set()
        p = 0
        for k, (a, b) in enumerate(M):
            pos = bisect.bisect_left(US, _KEY(b), key=_KEY)
            while p < pos:
                diff ^= {US[p]}
                p += 1
            ok = not diff
            rep.check(ok, (a, rho, S), "OT below image = images of M below", sorted(diff, key=_KEY)[:3], kind="image")
            if length(b) <= max_len:
                diff ^= {b}
    return rep.done()


# -- H-closure ---------------------------------------------------------------------------

def suite_hclosure(max_len=7):
    """H_a(α) ∩ κ ⊂ α for α = ψ_Ω(a), ψ_𝕀(a) and ψ_κ^f(a) with κ ⪯ 𝕊 ∈ SSt."""
    rep = _Report("hclosure", max_len=max_len)
    U = _universe(max_len)
    for alpha in U:
        if not isinstance(alpha, Psi):
            continue
        kappa, a = alpha.kappa, alpha.a
        if isinstance(kappa, Omega) and not alpha.f:
            shape, hyp = "omega", [a]
        elif isinstance(kappa, BigI) and not alpha.f:
            shape, hyp = "in", [a]
        else:
            tops = [s for s in [kappa] + [x for x in _chain_tail(kappa)] if is_genuine_sst(s)]
            if not tops or _cmp(alpha, kappa) >= 0:
                continue
            shape, hyp = "sst", [kappa, a, *sc_f(alpha.f)]
        if not all(in_H(a, alpha, h) for h in hyp):
            continue
        for beta in U:
            if _cmp(beta, kappa) < 0 and in_H(a, alpha, beta):
                rep.check(_cmp(beta, alpha) < 0, (alpha, beta), -1, _cmp(beta, alpha), kind=shape)
    return rep.done()


def _chain_tail(k):
    out = []
    while isinstance(k, Psi):
        k = k.kappa
        out.append(k)
    return out


# -- finite-function measures --------------------------------------------------------------

def of_instances(n, seed=0, max_tries=200_000):
    """Generated (f, g, c, d) meeting the hypotheses of the o-descent lemma."""
    rng = random.Random(seed)
    out = []
    tries = 0
    while len(out) < n and tries < max_tries:
        tries += 1
        g = rand_ffun(rng, 3)
        if not g:
            continue
        sup = g.support()
        di = rng.randrange(len(sup))
        d = sup[di]
        if d == ZERO:
            continue
        lo = sup[di - 1] if di else ZERO
        cs = [k for k in KEYS if _cmp(lo, k) <= 0 and _cmp(k, d) < 0]
        if not cs:
            continue
        c = rng.choice(cs)
        fc = rand_nf(rng)
        tail = [(k, rand_nonzero_nf(rng)) for k in KEYS if _cmp(k, d) >= 0 and rng.random() < 0.5]
        f = make(list(restrict_below(g, c).entries) + ([(c, fc)] if fc else []) + tail)
        if not is_irreducible(f):
            continue
        cap = nf_add(g.get(c), nf_times_omega(theta(exp_subtract(d, c), g.get(d))))
        if nf_cmp(f.get(c), cap) >= 0 or not less_c(f, d, g.get(d)):
            continue
        out.append((f, g, c, d))
    return out


def suite_of_descent(n=1000, seed=0, max_len=None):
    """o_Λ(f) < o_Λ(g) on generated instances of the o-descent lemma."""
    rep = _Report("of-descent", instances=n, seed=seed)
    for f, g, c, d in of_instances(n, seed):
        of, og = o_measure(f), o_measure(g)
        rep.check(nf_cmp(of, og) < 0, (f, g, c, d), "o(f) < o(g)", [of, og])
    return rep.done()


def lx_instances(n, seed=0, max_tries=100_000):
    """Irreducible pairs with f <^0_lx g."""
    rng = random.Random(seed)
    out = []
    tries = 0
    while len(out) < n and tries < max_tries:
        tries += 1
        f, g = rand_ffun(rng, 3), rand_ffun(rng, 3)
        if rng.random() < 0.5 and g:
            k = rng.choice(g.support())
            f = make([(x, v) for x, v in g.entries if _cmp(x, k) < 0]
                     + [(x, v) for x, v in f.entries if _cmp(x, k) >= 0])
            if not is_irreducible(f):
                continue
        if lx_less(f, g, ZERO):
            out.append((f, g))
    return out


def suite_lx(n=1000, seed=0, max_len=None):
    """f <^0_lx g ⇒ o_Λ(f) < o_Λ(g) on generated irreducible pairs."""
    rep = _Report("lx", instances=n, seed=seed)
    for f, g in lx_instances(n, seed):
        of, og = o_measure(f), o_measure(g)
        rep.check(nf_cmp(of, og) < 0, (f, g), "o(f) < o(g)", [of, og])
    return rep.done()


# -- stepping down ---------------------------------------------------------------------------

STEPDOWN_LAWS = ("2", "3", "4", "5", "6", "7")


def suite_stepdown(per_law=600, seed=0, max_tries=300_000, max_len=None):
    """The stepping-down laws on generated special functions.

    Each trial draws special f, g and d ∈ supp(g) with f_d = g_d and
    f <^d g′(d), then tests every law whose extra preconditions it can meet.
    Law numbering follows the order the statements are listed in.
    """
    rng = random.Random(seed)
    rep = _Report("stepdown", per_law=per_law, seed=seed)
    tries = 0
    while tries < max_tries and min(rep.counts.get(k, 0) for k in STEPDOWN_LAWS) < per_law:
        tries += 1
        x = _stepdown_base(rng)
        if x is not None:
            _stepdown_trial(rng, rep, *x)
    return rep.done(tries=tries)


def _stepdown_base(rng):
    g = rand_special(rng)
    d = rng.choice(g.support())
    tail = [(k, rand_nonzero_nf(rng)) for k in KEYS if _cmp(k, d) >= 0 and rng.random() < 0.6]
    f = make(list(restrict_below(g, d).entries) + tail)
    if not f:
        return None
    s, v = f.entries[-1]
    f = make(list(f.entries[:-1]) + [(s, nf_add(v if rng.random() < 0.5 else NF_ZERO, NF_BASE))])
    if not is_special(f) or restrict_below(f, d) != restrict_below(g, d):
        return None
    if not less_c(f, d, prime(g).get(d)):
        return None
    return f, g, d


def _rand_k(rng, kap, bound):
    pairs = []
    for x in key_range(ZERO, bound):
        if _cmp(x, s_top(kap)) >= 0 or rng.random() < 0.4:
            continue
        ab = alpha_b(x, kap)
        for _ in range(5):
            v = rand_nonzero_nf(rng)
            if nf_cmp(v, ab) < 0:
                pairs.append((x, v))
                break
    return make(pairs)


def _stepdown_trial(rng, rep, f, g, d):
    sg, sf = s_top(g), s_top(f)
    bs = key_range(ZERO, d)
    if bs:
        b = rng.choice(bs)
        a = rand_small_arg(rng)
        h = h_step(b, g, a)
        ok = restrict_below(f, b) == restrict_below(h, b) and less_c(f, b, prime(h).get(b))
        rep.check(ok, (f, g, d, b, a), True, ok, kind="2")
    cs = key_range(d, sf)
    if cs:
        c = rng.choice(cs)
        a = rand_small_arg(rng, True)
        h = h_step(c, f, a)
        ok = less_c(h, d, prime(g).get(d))
        rep.check(ok, (f, g, d, c, a), True, ok, kind="3")
    es = key_range(ZERO, d)
    if es:
        e = rng.choice(es)
        b = rng.choice(key_range(ZERO, term_add(e, ONE)))
        a0, a = rand_small_arg(rng), rand_small_arg(rng)
        if nf_cmp(a0, a) < 0:
            try:
                h = merge_b(h_step(e, g, a0), term_add(e, ONE), f)
            except DomainError:
                h = None
            if h is not None:
                hb = h_step(b, g, a)
                ok = restrict_below(h, b) == restrict_below(hb, b) and less_c(h, b, prime(hb).get(b))
                rep.check(ok, (f, g, d, e, b, a0, a), True, ok, kind="4")
    cs = key_range(ZERO, sf)
    if cs:
        c = rng.choice(cs)
        a = rand_small_arg(rng)
        ok = tri_less(h_step(c, f, a), f, c)
        rep.check(ok, (f, c, a), True, ok, kind="7")
    b = rng.choice(key_range(ZERO, term_add(sg, ONE)))
    if rng.random() < 0.7:
        cc = key_range(b, sg)
        if not cc:
            return
        kap = h_step(rng.choice(cc), g, rand_small_arg(rng))
    else:
        kap = rand_special(rng)
    if _cmp(b, s_top(kap)) > 0 or not tri_less(kap, g, b):
        return
    m = b if _cmp(b, d) < 0 else d
    try:
        sig = add_k(f, _rand_k(rng, kap, m))
    except DomainError:
        return
    if in_H_res(sig, kap, m, f):
        ok = in_H_res(sig, g, d, f)
        rep.check(ok, (sig, kap, g, f, b, d), True, ok, kind="5")
    es = key_range(b, term_add(sg, ONE))
    if not es:
        return
    e = rng.choice(es)
    if _cmp(e, sg) >= 0:
        return
    h = h_step(e, g, rand_small_arg(rng)) if rng.random() < 0.7 else f
    if _cmp(e, s_top(h)) > 0 or restrict_below(h, e) != restrict_below(g, e) or not tri_less(h, g, e):
        return
    try:
        sig = add_k(h, _rand_k(rng, kap, b))
    except DomainError:
        return
    if in_H_res(sig, kap, b, h) and _cmp(e, s_top(sig)) <= 0:
        ok = tri_less(sig, g, e)
        rep.check(ok, (sig, kap, g, h, b, e), True, ok, kind="6")


# -- g-measures -----------------------------------------------------------------------------

def suite_gmeasure(max_len=7):
    """g(γ) <_lx g(η) and g₀*(γ) ≤ g₀*(η) for η in a layer and γ ∈ R(η)."""
    rep = _Report("gmeasure", max_len=max_len)
    U = _universe(max_len)
    etas = [e for e in U if in_layer(e)]
    psis = [g for g in etas if isinstance(g, Psi)]
    for eta in etas:
        ge = g_measures(eta)
        for gam in psis:
            if not in_r(gam, eta):
                continue
            gg = g_measures(gam)
            ok = gg.cmp(ge) < 0 and _cmp(gg.g0star, ge.g0star) <= 0
            rep.check(ok, (gam, eta), "g(γ) < g(η), g0*(γ) ≤ g0*(η)", [str(gg), str(ge)])
    return rep.done(layer_members=len(etas))


# -- stability lattice -------------------------------------------------------------------------

def _stable_level(S):
    """i with S ∈ St_i (successor or limit, not collapsed), else None."""
    if is_anchored(S):
        return None
    if is_sstm(S):
        return sst_level(S)
    return lst_level(S)


def suite_stability(max_len=7):
    """α < 𝕊 ∈ St_{i+1} ⇒ α^{†i} < 𝕊, and L(𝕋) < L(𝕊) for 𝕋 < 𝕊."""
    rep = _Report("stability", max_len=max_len)
    U = _universe(max_len)
    for S in U:
        lvl = _stable_level(S)
        if not lvl or lvl < 2:
            continue
        i = lvl - 1
        for a in U:
            if _cmp(a, S) >= 0 or not isinstance(a, (Omega, Psi, Dagger, SubDagger)):
                continue
            try:
                ad = dagger(a, (i,))
            except Exception:
                continue
            if not is_valid(ad):
                continue
            rep.check(_cmp(ad, S) < 0, (a, S), -1, _cmp(ad, S), kind="dagger-below")
    members = {}
    for x in U:
        for S in layers_of(x):
            members.setdefault(S, []).append(x)
    tops = sorted(members, key=_KEY)
    for i, T in enumerate(tops):
        for S in tops[i + 1:]:
            for b in members[T]:
                for a in members[S]:
                    rep.check(_cmp(b, a) < 0, (b, T, a, S), -1, _cmp(b, a), kind="layers")
    return rep.done(layers=len(tops))


# -- C^α(X) -----------------------------------------------------------------------------------------

def suite_cset(max_len=5, sets=100, seed=1, max_set=12):
    """Antitone and stability laws of C^α(P) on random finite P.

    α ranges over the universe members meeting the hypothesis that every
    γ ∈ P with γ ≥ α lies in C^γ(P).  For α ≤ β, C^β(P) ⊂ C^α(P); when in
    addition no regular term lies in (α, β] the two sets agree.
    """
    rep = _Report("cset", max_len=max_len, sets=sets, seed=seed)
    U = sorted_universe(max_len)
    rng = random.Random(seed)
    good = tried = 0
    while good < sets and tried < 50 * sets:
        tried += 1
        P = frozenset(rng.sample(U, rng.randint(0, max_set)))
        C = {a: c_set(a, P, U) for a in U}
        hyp = {a for a in U if all(g in C[g] for g in P if _cmp(g, a) >= 0)}
        if not hyp:
            continue
        good += 1
        for i, a in enumerate(U):
            if a not in hyp:
                continue
            for b in U[i:]:
                rep.check(C[b] <= C[a], (a, b, sorted(P, key=_KEY)), "subset",
                          sorted(C[b] - C[a], key=_KEY), kind="antitone")
                if no_regular_between(a, b):
                    rep.check(C[b] == C[a], (a, b, sorted(P, key=_KEY)), "equal",
                              sorted(C[b] ^ C[a], key=_KEY), kind="stable")
    return rep.done(sets_used=good)


# -- acyclicity -------------------------------------------------------------------------------------

def suite_acyclic(max_len=7, budget=10_000):
    """wf_part returns the whole universe and every descent probe ends in budget."""
    rep = _Report("acyclic", max_len=max_len, budget=budget)
    U = _universe(max_len)
    W = wf_part(U)
    rep.check(len(W) == len(U), ("universe",), len(U), len(W), kind="wf-part")
    for s in U:
        r = descent_probe(s, budget=budget, bound=max_len, universe=U)
        rep.check(r.ok, (s,), "terminates with certified R-steps",
                  {"exhausted": r.exhausted, "violations": len(r.violations)}, kind="probe")
    return rep.done()


SUITES = {
    "order": suite_order,
    "psi-bound": suite_psi_bound,
    "psi-in-monotone": suite_psi_in_monotone,
    "collapse": suite_collapse,
    "hclosure": suite_hclosure,
    "of-descent": suite_of_descent,
    "lx": suite_lx,
    "stepdown": suite_stepdown,
    "gmeasure": suite_gmeasure,
    "stability": suite_stability,
    "cset": suite_cset,
    "acyclic": suite_acyclic,
}


def run(name, max_len=None, **kw):
    """Run a suite by name; max_len=None keeps the suite's own default."""
    if max_len is not None:
        kw["max_len"] = max_len
    return SUITES[name](**kw)
