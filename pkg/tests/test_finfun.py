import pytest
from hypothesis import assume, given, settings, strategies as st

from ordcalc.finfun import (
    DomainError, NotSpecial, add_k, alpha_b, concat, h_step, in_H_res, is_irreducible,
    is_special, less_c, lx_less, make, prime, probe_points, restrict_below,
    restrict_from, s_top, tri_less, _unprime,
)
from ordcalc.order import _cmp
from ordcalc.samples import KEYS, rand_ffun, rand_nf, rand_small_arg, rand_special
from ordcalc.terms import EMPTY, NF_ZERO, ONE, ZERO, nat
from ordcalc.theta import NF_BASE, NF_ONE, exp_subtract, nf_add, nf_cmp, theta, tl

seeds = st.randoms(use_true_random=False)
ONE_NF = NF_ONE
LAM_1 = theta(ONE, NF_ONE)  # Λ^1 = Λ, printed as θ̃_1(1)
BIG = theta(ONE, NF_BASE)   # Λ^Λ, not absorbed by a following +Λ


def test_restrictions_and_concat():
    f = make([(ZERO, NF_ONE), (nat(2), LAM_1)])
    g = make([(ONE, LAM_1), (nat(3), NF_ONE)])
    assert restrict_below(f, ZERO) == EMPTY
    assert concat(f, nat(2), f) == f
    h = concat(g, nat(2), f)
    assert h.get(ONE) == g.get(ONE) and h.get(ZERO) == NF_ZERO
    assert h.get(nat(2)) == f.get(nat(2)) and h.get(nat(3)) == NF_ZERO


def test_absent_key_is_zero():
    assert make([(ONE, NF_ONE)]).get(ZERO) == NF_ZERO


def test_less_c_empty_tail_is_true():
    f = make([(ZERO, LAM_1)])
    assert less_c(f, ONE, NF_ZERO)


def test_less_c_single_point():
    # f = {c: ν}: true exactly when some part of ξ exceeds ν
    nu = NF_ONE
    f = make([(ONE, nu)])
    assert less_c(f, ONE, LAM_1)
    assert not less_c(f, ONE, NF_ONE)
    assert not less_c(f, ONE, NF_ZERO)


@settings(max_examples=300, deadline=None)
@given(seeds)
def test_less_c_monotone_in_bound(rng):
    f = rand_ffun(rng)
    c = rng.choice(KEYS)
    x, y = rand_nf(rng), rand_nf(rng)
    if nf_cmp(x, y) > 0:
        x, y = y, x
    if less_c(f, c, x):
        assert less_c(f, c, y)


def test_irreducible_examples():
    assert is_irreducible(EMPTY)
    assert is_irreducible(make([(ONE, NF_ONE)]))
    # two points c < c+d: need tl(f(c)) > θ̃_d(f(c+d))
    big = theta(ONE, LAM_1)                   # Λ^Λ
    ok = make([(ZERO, big), (ONE, NF_ONE)])   # θ̃_1(1) = Λ < Λ^Λ
    bad = make([(ZERO, NF_ONE), (ONE, NF_ONE)])
    assert tl(big) == big and nf_cmp(theta(ONE, NF_ONE), big) < 0
    assert is_irreducible(ok)
    assert not is_irreducible(bad)


def test_lx_examples():
    g = make([(ONE, NF_ONE)])
    f = make([(ZERO, NF_ONE)])
    assert not lx_less(g, g, ZERO)
    assert not lx_less(f, g, ONE) or restrict_from(f, ONE) != restrict_from(g, ONE)
    assert lx_less(EMPTY, g, ZERO)
    assert not lx_less(g, EMPTY, ZERO)
    # restrictions equal from b on: false at b
    assert not lx_less(f, make([(ZERO, LAM_1)]), ONE)


@settings(max_examples=300, deadline=None)
@given(seeds)
def test_lx_is_asymmetric_and_irreflexive(rng):
    f, g = rand_ffun(rng), rand_ffun(rng)
    assert not lx_less(f, f, ZERO)
    assert not (lx_less(f, g, ZERO) and lx_less(g, f, ZERO))


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_lx_is_transitive(rng):
    f, g, h = rand_ffun(rng), rand_ffun(rng), rand_ffun(rng)
    if lx_less(f, g, ZERO) and lx_less(g, h, ZERO):
        assert lx_less(f, h, ZERO)


def test_lx_is_total_on_small_functions():
    import random
    rng = random.Random(3)
    fs = {rand_ffun(rng, 2, 1) for _ in range(120)}
    for f in fs:
        for g in fs:
            if f != g:
                assert lx_less(f, g, ZERO) != lx_less(g, f, ZERO)


def test_prime_and_top():
    alpha = BIG
    f = make([(ONE, nf_add(alpha, NF_BASE))])
    assert is_special(f)
    assert prime(f) == make([(ONE, alpha)])
    assert prime(make([(ONE, NF_BASE)])) == EMPTY
    assert s_top(EMPTY) == ZERO and s_top(f) == ONE
    with pytest.raises(NotSpecial):
        prime(make([(ONE, NF_ONE)]))


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_unprime_inverts_prime(rng):
    f = rand_special(rng)
    assert _unprime(prime(f), s_top(f)) == f


@pytest.mark.parametrize("a", [NF_ZERO, NF_ONE, LAM_1, NF_BASE])
def test_h_step_one_point(a):
    # supp(g) = {s}, g(s) = α + Λ, b < s  ⇒  h(b) = θ̃_{s−b}(α + a) + Λ
    s, b, alpha = nat(2), ZERO, BIG
    g = make([(s, nf_add(alpha, NF_BASE))])
    h = h_step(b, g, a)
    want = nf_add(theta(exp_subtract(s, b), nf_add(alpha, a)), NF_BASE)
    assert h == make([(b, want)])


def test_h_step_domain():
    g = make([(ONE, NF_BASE)])
    with pytest.raises(DomainError):
        h_step(ONE, g, NF_ONE)
    with pytest.raises(NotSpecial):
        h_step(ZERO, make([(ONE, NF_ONE)]), NF_ONE)


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_h_step_keeps_lower_part_and_steps_down(rng):
    g = rand_special(rng)
    bs = [k for k in KEYS if _cmp(k, s_top(g)) < 0]
    assume(bs)
    b = rng.choice(bs)
    h = h_step(b, g, rand_small_arg(rng))
    assert restrict_below(h, b) == restrict_below(g, b)
    assert tri_less(h, g, b)


def test_tri_less_strict():
    g = make([(nat(2), NF_BASE)])
    assert not tri_less(g, g, ONE)


def test_probe_points_cover_support_and_successors():
    f = make([(ONE, NF_BASE)])
    g = make([(ZERO, NF_ONE), (nat(3), NF_BASE)])
    assert probe_points(f, g, nat(3)) == [ZERO, ONE, nat(2)]


def test_add_empty_k():
    f = make([(ONE, nf_add(BIG, NF_BASE))])
    assert add_k(f, EMPTY) == f


def test_in_H_res_accepts_f_itself():
    f = make([(ONE, nf_add(BIG, NF_BASE))])
    rho = make([(nat(2), NF_BASE)])
    assert in_H_res(f, rho, ONE, f)


def test_alpha_b_reads_tail_of_full_step():
    g = make([(nat(2), nf_add(BIG, NF_BASE))])
    h = h_step(ZERO, g, NF_BASE)
    assert alpha_b(ZERO, g) == tl(prime(h).get(ZERO))
