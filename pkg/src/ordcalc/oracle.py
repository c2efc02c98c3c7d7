"""Brute-force reference checks that do not reuse the main comparison code.

Nothing here imports :mod:`ordcalc.order` or :mod:`ordcalc.theta`.  The
comparison being certified is always passed in as a plain callable, and the
checks around it (sorting, cycle search, collapse bookkeeping) are written
from scratch.

Two pieces of independent arithmetic live here as well:

* a Veblen/Cantor calculator over a finite chain of strongly critical atoms,
  used to recheck the order on the plain fragment (0, Ω, 𝕀_N, +, φ) and the
  value of θ̃ normal forms;
* a naive enumerator that builds every syntactic candidate of a given length
  and keeps the valid ones, as a second route to the universe.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from . import config
from .syntax import parse, show
from .terms import (
    BigI, Dagger, FiniteFunction, INBracket, Omega, Psi, Sum, SubDagger, ThetaNF,
    Veblen, Zero, length,
)

# -- Veblen arithmetic with atoms ---------------------------------------------------
#
# A value is a tuple of principal values in nonincreasing order (() is 0).
# A principal is ("A", rank) for a strongly critical atom or ("P", a, b)
# for φ_a(b) in normal form.

O_ZERO = ()
OMEGA_RANK = 1
TOP_RANK = 2


class Unsupported(ValueError):
    """A term outside the fragment the calculator understands."""


def atom(rank):
    return (("A", rank),)


def _pcmp(x, y) -> int:
    if x[0] == "A" and y[0] == "A":
        return (x[1] > y[1]) - (x[1] < y[1])
    if x[0] == "A":
        return -_pcmp(y, x)
    if y[0] == "A":
        k = (y,)
        return -1 if vcmp(x[1], k) < 0 and vcmp(x[2], k) < 0 else 1
    _, a1, b1 = x
    _, a2, b2 = y
    c = vcmp(a1, a2)
    if c == 0:
        return vcmp(b1, b2)
    if c < 0:
        return -1 if vcmp(b1, (y,)) < 0 else 1
    return -1 if vcmp((x,), b2) <= 0 else 1


def vcmp(x, y) -> int:
    for p, q in zip(x, y):
        c = _pcmp(p, q)
        if c:
            return c
    return (len(x) > len(y)) - (len(x) < len(y))


def veb(a, b):
    """φ_a(b) as a value, with fixed points resolved."""
    if len(b) == 1:
        q = b[0]
        if q[0] == "A" and vcmp(a, b) < 0:
            return b
        if q[0] == "P" and vcmp(a, q[1]) < 0:
            return b
    if not b and len(a) == 1 and a[0][0] == "A":
        return a
    return (("P", a, b),)


def vadd(x, y):
    if not y:
        return x
    head = y[0]
    return tuple(p for p in x if _pcmp(p, head) >= 0) + y


def vpow(e):
    """ω^e."""
    return veb(O_ZERO, e)


def vlog(p):
    """e with ω^e = p for a principal p."""
    if p[0] == "P" and not p[1]:
        return p[2]
    return (p,)


def vmul(x, a):
    """x·a for a principal x and any a, by left distributivity."""
    if len(x) != 1:
        raise Unsupported("left factor must be principal")
    e = vlog(x[0])
    out = O_ZERO
    for q in a:
        out = vadd(out, vpow(vadd(e, vlog(q))) if vlog(q) else x)
    return out


def omega_times(a):
    """ω·a."""
    return vmul(vpow(vpow(O_ZERO)), a)


def lam_times(lam, v):
    """Λ·v for an atom Λ (so Λ = ω^Λ)."""
    out = O_ZERO
    for q in v:
        out = vadd(out, vpow(vadd(lam, vlog(q))))
    return out


def from_term(t, atoms=None):
    """Value of a term over 0, Ω, 𝕀_N, + and φ; other atoms must be ranked in `atoms`."""
    if atoms and t in atoms:
        return atom(atoms[t])
    if isinstance(t, Zero):
        return O_ZERO
    if isinstance(t, Omega):
        return atom(OMEGA_RANK)
    if isinstance(t, BigI):
        return atom(TOP_RANK)
    if isinstance(t, Sum):
        out = O_ZERO
        for p in t.parts:
            out = vadd(out, from_term(p, atoms))
        return out
    if isinstance(t, Veblen):
        return veb(from_term(t.alpha, atoms), from_term(t.beta, atoms))
    raise Unsupported(f"no value for {show(t)}")


def is_plain(t) -> bool:
    if isinstance(t, (Zero, Omega, BigI)):
        return True
    if isinstance(t, Sum):
        return all(is_plain(p) for p in t.parts)
    if isinstance(t, Veblen):
        return is_plain(t.alpha) and is_plain(t.beta)
    return False


def theta_value(b, v, lam, atoms=None):
    """θ̃_b(v) with θ̃_{ω^c}(ξ) = φ_c(Λ·ξ), smallest piece of b applied first."""
    pieces = b.parts if isinstance(b, Sum) else (b,)
    for p in reversed(pieces):
        c = vlog(from_term(p, atoms)[0])
        v = veb(c, lam_times(lam, v))
    return v


def embed_nf(x: ThetaNF, lam=None, atoms=None):
    """Value of Σ θ̃_b(ξ)·a over the base Λ (𝕀_N unless given)."""
    lam = atom(TOP_RANK) if lam is None else lam
    out = O_ZERO
    for b, xi, a in x.terms:
        head = theta_value(b, embed_nf(xi, lam, atoms), lam, atoms)
        out = vadd(out, vmul(head, from_term(a, atoms)))
    return out


def plain_cmp(s, t) -> int:
    return vcmp(from_term(s), from_term(t))


# -- linear-order certificate ---------------------------------------------------------

@dataclass
class Report:
    ok: bool = True
    checked: int = 0
    counterexample: tuple | None = None
    note: str = ""
    sorted: list = field(default_factory=list)


def merge_sort(xs, cmp):
    xs = list(xs)
    if len(xs) <= 1:
        return xs
    mid = len(xs) // 2
    left, right = merge_sort(xs[:mid], cmp), merge_sort(xs[mid:], cmp)
    out = []
    i = j = 0
    while i < len(left) and j < len(right):
        if cmp(right[j], left[i]) < 0:
            out.append(right[j])
            j += 1
        else:
            out.append(left[i])
            i += 1
    return out + left[i:] + right[j:]


def _sgn(n):
    return (n > 0) - (n < 0)


def _cycle(seq, i, j, cmp):
    """Shrink an out-of-place pair (seq[i] placed before seq[j] yet above it) to a triple."""
    while j - i > 1:
        for m in range(i + 1, j):
            lo, hi = _sgn(cmp(seq[i], seq[m])), _sgn(cmp(seq[m], seq[j]))
            if lo < 0 and hi < 0:
                return (seq[i], seq[m], seq[j])
            if lo >= 0:
                j = m
                break
            if hi >= 0:
                i = m
                break
        else:
            break
    return (seq[i], seq[j])


def oracle_compare_closure(U, cmp, brute_above=200, triples=0, seed=0):
    """Certify that `cmp` is a strict linear order on U and return U sorted.

    Every pair is checked against the position in a merge-sorted sequence;
    agreement on all pairs means the relation is that sequence's order, so
    transitivity holds for every triple.  Below `brute_above` elements all
    triples are also scanned directly; `triples` adds random triples on top.
    """
    U = list(dict.fromkeys(U))
    rep = Report()
    for x in U:
        rep.checked += 1
        if cmp(x, x) != 0:
            rep.ok, rep.counterexample, rep.note = False, (x,), "irreflexivity"
            return rep
    seq = merge_sort(U, cmp)
    n = len(seq)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = _sgn(cmp(seq[i], seq[j])), _sgn(cmp(seq[j], seq[i]))
            rep.checked += 1
            if a != -b:
                rep.ok, rep.counterexample, rep.note = False, (seq[i], seq[j]), "antisymmetry"
                return rep
            if a >= 0:
                rep.ok, rep.note = False, "totality/transitivity"
                rep.counterexample = _cycle(seq, i, j, cmp)
                return rep
    if n <= brute_above:
        for x, y, z in itertools.permutations(seq, 3):
            rep.checked += 1
            if cmp(x, y) < 0 and cmp(y, z) < 0 and not cmp(x, z) < 0:
                rep.ok, rep.counterexample, rep.note = False, (x, y, z), "transitivity"
                return rep
    rng = random.Random(seed)
    for _ in range(triples if n >= 3 else 0):
        x, y, z = rng.sample(seq, 3)
        rep.checked += 1
        if cmp(x, y) < 0 and cmp(y, z) < 0 and not cmp(x, z) < 0:
            rep.ok, rep.counterexample, rep.note = False, (x, y, z), "transitivity"
            return rep
    rep.sorted = seq
    return rep


def oracle_collapse(rho, S, U, cmp, member, collapse, uncollapse):
    """Recheck a collapse on U ∩ M_ρ: strict monotonicity, round trip, fixed region, ρ ∉ M_ρ.

    `cmp` must already be certified linear on the members and their images, so
    comparing neighbours in sorted order decides order preservation.
    """
    rep = Report()
    M = merge_sort([x for x in U if member(x)], cmp)
    images = []
    for x in M:
        y = collapse(x)
        images.append(y)
        rep.checked += 1
        back = uncollapse(y)
        if back != x:
            rep.ok, rep.counterexample, rep.note = False, (x, y, back), "round trip"
            return rep
        if cmp(x, rho) < 0 and y != x:
            rep.ok, rep.counterexample, rep.note = False, (x, y), "moved below rho"
            return rep
    if member(rho):
        rep.ok, rep.counterexample, rep.note = False, (rho,), "rho is a member"
        return rep
    for (x1, y1), (x2, y2) in zip(zip(M, images), zip(M[1:], images[1:])):
        rep.checked += 1
        if cmp(y1, y2) >= 0:
            rep.ok, rep.counterexample, rep.note = False, (x1, x2, y1, y2), "order"
            return rep
    rep.sorted = M
    return rep


# -- naive enumeration ---------------------------------------------------------------------

class _Raw:
    """Every syntactic object of a given length, valid or not."""

    def __init__(self, N):
        self.ints = range(0, N + 2)
        self.t = {}
        self.nf = {}
        self.ff = {}

    def terms(self, n):
        if n < 1:
            return []
        if n not in self.t:
            self.t[n] = list(self._terms(n))
        return self.t[n]

    def _terms(self, n):
        if n == 1:
            yield from (Zero(), Omega(), BigI())
            return
        for k in range(2, n):
            for split in _compositions(n - (k - 1), k):
                pools = [[p for p in self.terms(m) if not isinstance(p, Sum)] for m in split]
                for parts in itertools.product(*pools):
                    yield Sum(parts)
        for l1 in range(1, n - 1):
            for x in self.terms(l1):
                for y in self.terms(n - 1 - l1):
                    yield Veblen(x, y)
        for lk in range(1, n - 1):
            for lf in range(0, n - 1 - lk):
                la = n - 1 - lk - lf
                for k in self.terms(lk):
                    for f in self.ffuns(lf):
                        for a in self.terms(la):
                            yield Psi(k, f, a)
        for k in range(1, n):
            for base in self.terms(n - k):
                for v in itertools.product(self.ints, repeat=k):
                    yield Dagger(base, v)
        for r in self.terms(n - 1):
            yield INBracket(r)
        for ls in range(1, n - 2):
            for k in range(1, n - 1 - ls):
                lr = n - 1 - ls - k
                for s in self.terms(ls):
                    for v in itertools.product(self.ints, repeat=k):
                        for r in self.terms(lr):
                            yield SubDagger(s, v, r)

    def nfs(self, n):
        if n not in self.nf:
            out = [ThetaNF(())] if n == 1 else []
            for trip_lens in _nf_splits(n):
                pools = [self._triples(m) for m in trip_lens]
                for ts in itertools.product(*pools):
                    out.append(ThetaNF(ts))
            self.nf[n] = out
        return self.nf[n]

    def _triples(self, n):
        out = []
        for lb in range(1, n - 1):
            for lx in range(1, n - lb):
                la = n - 1 - lb - lx
                for b in self.terms(lb):
                    for xi in self.nfs(lx):
                        for a in self.terms(la):
                            out.append((b, xi, a))
        return out

    def ffuns(self, n):
        if n not in self.ff:
            out = [FiniteFunction(())] if n == 0 else []
            for lk in range(1, n):
                for lv in range(1, n - lk + 1):
                    for rest in self.ffuns(n - lk - lv):
                        for k in self.terms(lk):
                            if any(k == k2 for k2, _ in rest.entries):
                                continue
                            for v in self.nfs(lv):
                                out.append(FiniteFunction(((k, v),) + rest.entries))
            self.ff[n] = out
        return self.ff[n]


def _compositions(total, k):
    if k == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - k + 2):
        for rest in _compositions(total - first, k - 1):
            yield (first,) + rest


def _nf_splits(n):
    """Lengths of the triples of a nonzero normal form of length n."""
    for k in range(1, n // 4 + 1):
        yield from _compositions(n - (k - 1), k)


def naive_enumerate(max_len, accept):
    """Valid terms of length ≤ max_len found by filtering every raw candidate."""
    raw = _Raw(config.get_N())
    out = {}
    for n in range(1, max_len + 1):
        out[n] = {t for t in raw.terms(n) if length(t) == n and accept(t)}
    return out


# -- curated corpus ------------------------------------------------------------------------

@dataclass(frozen=True)
class Entry:
    text: str
    tag: str
    N: int = 1

    @property
    def term(self):
        return parse(self.text)


_S2 = "up(Om;[2])"
_RHO2 = f"ps({_S2};{{}};{_S2}+p(0,0))"
_TAU = "ps(In;{};0)"

# the stable chain below 𝕀_2, ascending, and its image under the collapse at
# ρ = ψ_{Ω^{†2}}(Ω^{†2}+1) (𝕊 = Ω^{†2}); the image starts at ρ itself
CHAIN = (
    _S2,
    "up(Om;[2,1])",
    "ps(up(Om;[2,2]);{};Om)",
    "up(Om;[2,2])",
    _TAU,
    f"ps(up({_TAU};[1]);{{}};p(0,0))",
    f"up({_TAU};[1])",
    "In",
)
CHAIN_RHO = _RHO2
CHAIN_IMAGE = (
    _RHO2,
    f"sub({_S2};[1];{_RHO2})",
    f"ps(sub({_S2};[2];{_RHO2});{{}};Om)",
    f"sub({_S2};[2];{_RHO2})",
    f"ps(In[{_RHO2}];{{}};0)",
    f"ps(up(ps(In[{_RHO2}];{{}};0);[1]);{{}};p(0,0))",
    f"up(ps(In[{_RHO2}];{{}};0);[1])",
    f"In[{_RHO2}]",
)

# ψ over a clause-5 subscript with a two-point finite function
TWO_POINT = (
    "ps(ps(up(Om;[1]);{p(0,0):th(p(0,0);th(p(0,0);0;p(0,0));p(0,0))};0);"
    "{0:th(p(0,0);th(p(0,0);0;p(0,0)+p(0,0));p(0,0)),p(0,0):th(p(0,0);0;p(0,0))};In)"
)

_CORPUS = [
    Entry("0", "zero"),
    Entry("Om", "omega"),
    Entry("In", "top"),
    Entry("p(0,0)", "veblen"),
    Entry("p(0,0)+p(0,0)", "sum"),
    Entry("p(p(0,0),0)", "veblen"),
    Entry("p(0,Om+p(0,0))", "veblen"),
    Entry("ps(Om;{};0)", "psi-omega"),
    Entry("ps(Om;{};Om)", "psi-omega"),
    Entry("ps(In;{};0)", "psi-top"),
    Entry("ps(In;{};In)", "psi-top"),
    Entry("up(Om;[1])", "dagger-omega"),
    Entry("ps(up(Om;[1]);{};0)", "psi-sst"),
    Entry("up(ps(In;{};0);[1])", "dagger-lst"),
    Entry("ps(up(ps(In;{};0);[1]);{};p(0,0))", "psi-dagger-lst"),
    Entry("ps(up(Om;[1]);{p(0,0):th(p(0,0);0;p(0,0)+p(0,0))};0)", "psi-single-point"),
    Entry(TWO_POINT, "psi-two-point"),
    Entry("In[ps(up(Om;[1]);{};0)]", "collapsed-top"),
    Entry("ps(In[ps(up(Om;[1]);{};Om)];{};0)", "psi-collapsed-top"),
    Entry("up(Om;[2,1])", "dagger-vector", 2),
    Entry("sub(up(Om;[2]);[1];ps(up(Om;[2]);{};0))", "collapsed-dagger", 2),
] + [Entry(t, "chain", 2) for t in CHAIN] + [Entry(t, "chain-image", 2) for t in CHAIN_IMAGE]


def golden_corpus():
    """Curated notations, each tagged with the constructor or clause it exercises."""
    return list(_CORPUS)


# -- golden files ------------------------------------------------------------------------

def write_golden(path, terms):
    """One printed term per line, in the given (ascending) order, UTF-8 with LF."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for t in terms:
            fh.write(show(t) + "\n")


def read_golden(path):
    with open(path, encoding="utf-8", newline="") as fh:
        data = fh.read()
    return [parse(line) for line in data.split("\n") if line]
