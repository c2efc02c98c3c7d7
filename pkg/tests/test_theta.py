import pytest
from hypothesis import assume, given, settings, strategies as st

from ordcalc import oracle
from ordcalc.order import _cmp
from ordcalc.samples import INDICES, rand_nf
from ordcalc.syntax import parse_nf, show_nf
from ordcalc.terms import NF_ZERO, ONE, ZERO, ThetaNF, dagger, nat, phi, psi, OMEGA
from ordcalc.theta import (
    NF_BASE, NF_ONE, CoefficientNotBelowBase, NonPrincipal, Unrepresentable,
    ZeroArgument, base_change, exp_subtract, hd, nf_add, nf_cmp, nf_errors,
    nf_omega_mult, omega_left, parts, theta, theta_minus, tl,
)
from ordcalc.validate import enumerate_valid

W = phi(ZERO, ONE)  # ω
LAM_1 = oracle.atom(oracle.TOP_RANK)
seeds = st.randoms(use_true_random=False)


def _sign(n):
    return (n > 0) - (n < 0)


def test_theta_zero_index_is_identity():
    x = parse_nf("th(p(0,0);th(p(0,0);0;p(0,0));p(0,0))+th(p(0,0);0;p(0,0))")
    assert theta(ZERO, x) == x


def test_theta_one_is_base_power():
    z = NF_ONE
    assert theta(ONE, z) == ThetaNF([(ONE, z, ONE)])


def test_theta_omega_power_reads_as_veblen():
    # θ̃_ω(ξ) = φ_1(Λ·ξ); at ξ = 0 this is ε_0, a coefficient below the base
    assert theta(W, NF_ZERO) == ThetaNF([(ONE, NF_ZERO, phi(ONE, ZERO))])


def test_theta_at_one_is_the_base():
    # Λ is strongly critical, so φ_c(Λ·1) = Λ for every c > 0
    assert theta(W, NF_ONE) == NF_BASE
    assert nf_errors(ThetaNF([(W, NF_ONE, ONE)])) is not None


def test_hd_tl():
    a = theta(ONE, NF_ONE)
    assert hd(a) == tl(a) == a
    two = nf_add(a, NF_ONE)
    assert hd(two) == a and tl(two) == NF_ONE
    with pytest.raises(ZeroArgument):
        hd(NF_ZERO)


def test_parts():
    assert parts(NF_ZERO) == [NF_ZERO]
    a = theta(ONE, NF_BASE)
    assert parts(a) == [a, NF_ZERO]
    b, c = theta(ONE, NF_ONE), NF_ONE
    x = nf_add(nf_add(a, b), c)
    assert parts(x) == [x, nf_add(a, b), a, NF_ZERO]


def test_theta_minus_cases():
    # c ≤ b
    assert theta_minus(ONE, theta(W, NF_BASE)) == theta(exp_subtract(W, ONE), NF_BASE)
    # c > b, ξ = 0
    assert theta_minus(W, theta(ONE, NF_ZERO)) == NF_ZERO
    # c > b, ξ ≠ 0: descend into hd(ξ)
    inner = theta(ONE, NF_ONE)
    assert theta_minus(nat(2), theta(ONE, inner)) == theta_minus(ONE, hd(inner))
    with pytest.raises(NonPrincipal):
        theta_minus(ONE, nf_add(inner, NF_ONE))


def test_nf_compare_examples():
    assert nf_cmp(NF_ZERO, NF_ONE) < 0
    x, y = theta(ONE, NF_ONE), theta(ONE, NF_BASE)
    assert nf_cmp(x, y) == nf_cmp(NF_ONE, NF_BASE) == -1


def test_small_arithmetic():
    x = theta(ONE, NF_ONE)
    assert nf_add(x, NF_ZERO) == x
    assert exp_subtract(W, W) == ZERO
    with pytest.raises(Unrepresentable):
        exp_subtract(ONE, W)
    # ω·Λ^ξ = Λ^ξ when ξ > 0
    assert nf_omega_mult(x) == x
    assert nf_omega_mult(NF_ONE) == ThetaNF([(ONE, NF_ZERO, W)])


def test_omega_left_matches_oracle_on_plain_terms():
    n = 0
    for t in enumerate_valid(7):
        if not oracle.is_plain(t):
            continue
        try:
            w = omega_left(t)
        except Exception:
            continue
        n += 1
        assert oracle.vcmp(oracle.from_term(w), oracle.omega_times(oracle.from_term(t))) == 0
    assert n > 100


@settings(max_examples=400, deadline=None)
@given(seeds)
def test_nf_cmp_agrees_with_value_oracle(rng):
    x, y = rand_nf(rng), rand_nf(rng)
    assume(nf_errors(x) is None and nf_errors(y) is None)
    want = _sign(oracle.vcmp(oracle.embed_nf(x), oracle.embed_nf(y)))
    assert nf_cmp(x, y) == want
    assert nf_cmp(y, x) == -want
    assert (want == 0) == (x == y)


@settings(max_examples=300, deadline=None)
@given(seeds, st.sampled_from(INDICES + (nat(3), phi(ZERO, nat(2)), phi(ONE, ZERO))))
def test_theta_value_agrees_with_oracle(rng, b):
    x = rand_nf(rng)
    th = theta(b, x)
    assert nf_errors(th) is None, show_nf(th)
    got = oracle.embed_nf(th)
    want = oracle.theta_value(b, oracle.embed_nf(x), LAM_1)
    assert oracle.vcmp(got, want) == 0


@settings(max_examples=300, deadline=None)
@given(seeds, st.sampled_from(INDICES + (nat(3),)), st.sampled_from(INDICES))
def test_theta_minus_round_trip(rng, b, c):
    assume(_cmp(c, b) <= 0)
    x = rand_nf(rng)
    th = theta(b, x)
    # only when θ̃_b(ξ) is itself the principal triple (b, ξ, 1)
    assume(th == ThetaNF([(b, x, ONE)]))
    assert theta_minus(c, th) == theta(exp_subtract(b, c), x)


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_parts_form_a_chain(rng):
    x = rand_nf(rng)
    ps = parts(x)
    assert ps[0] == x and ps[-1] == NF_ZERO
    for a, b in zip(ps, ps[1:]):
        assert nf_cmp(b, a) < 0


RHO = psi(dagger(OMEGA, (1,)), ZERO)


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_base_change_preserves_order(rng):
    x, y = rand_nf(rng), rand_nf(rng)
    bx, by = base_change(x, RHO), base_change(y, RHO)
    lam = oracle.atom(oracle.OMEGA_RANK + 0.5)
    vx, vy = oracle.embed_nf(bx, lam), oracle.embed_nf(by, lam)
    assert _sign(oracle.vcmp(vx, vy)) == nf_cmp(x, y)
    assert (bx == by) == (x == y)


def test_base_change_rejects_large_coefficients():
    x = ThetaNF([(ONE, NF_ZERO, OMEGA)])
    with pytest.raises(CoefficientNotBelowBase):
        base_change(x, psi(OMEGA, ZERO))
