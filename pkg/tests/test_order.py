import pytest

from ordcalc import config, oracle
from ordcalc.collapse import mostowski
from ordcalc.order import (
    NotCollapsing, NotInPsi, Ordering, _cmp, compare, in_H, in_M, k_set, less, p0,
)
from ordcalc.syntax import parse
from ordcalc.terms import IN, OMEGA, ZERO, Psi, phi, psi, sc_f
from ordcalc.validate import enumerate_valid, is_valid


def test_psi_below_subscript():
    assert compare(psi(OMEGA, ZERO), OMEGA) == Ordering.LESS


def test_psi_top_monotone_example():
    assert compare(psi(IN, ZERO), psi(IN, phi(ZERO, ZERO))) == Ordering.LESS


def test_ordering_prints_short_tags():
    assert [str(o) for o in (Ordering.LESS, Ordering.EQUAL, Ordering.GREATER)] == ["LT", "EQ", "GT"]


def _sign(n):
    return (n > 0) - (n < 0)


def test_plain_fragment_agrees_with_value_oracle():
    with config.use_N(2):
        plain = [t for t in enumerate_valid(7) if oracle.is_plain(t)]
        assert len(plain) > 300
        for s in plain:
            for t in plain:
                assert _cmp(s, t) == _sign(oracle.plain_cmp(s, t))


def test_chain_is_ascending():
    with config.use_N(2):
        ts = [parse(x) for x in oracle.CHAIN]
        assert all(is_valid(t) for t in ts)
        for a, b in zip(ts, ts[1:]):
            assert less(a, b)


def test_chain_image_ordered_identically():
    with config.use_N(2):
        rho = parse(oracle.CHAIN_RHO)
        S = parse("up(Om;[2])")
        ts = [parse(x) for x in oracle.CHAIN]
        img = [mostowski(t, rho, S) for t in ts]
        assert img == [parse(x) for x in oracle.CHAIN_IMAGE]
        assert all(is_valid(t) for t in img)
        for i, a in enumerate(img):
            for j, b in enumerate(img):
                assert _cmp(a, b) == _sign(i - j)


def test_k_set_examples():
    d = psi(OMEGA, ZERO)
    a = OMEGA
    alpha = psi(OMEGA, a)
    assert k_set(ZERO, d) == frozenset()
    assert k_set(d, alpha) == frozenset()                         # ψ_Ω(0) < δ
    assert k_set(alpha, d) == frozenset({a}) | k_set(a, d)        # ψ_Ω(Ω) ≥ δ


def test_in_H_examples():
    assert in_H(ZERO, OMEGA, ZERO)
    alpha = psi(OMEGA, OMEGA)
    assert not in_H(OMEGA, ZERO, alpha)
    assert in_H(phi(ZERO, OMEGA), ZERO, alpha)


def test_p0_examples():
    S = parse("up(Om;[1])")
    b = phi(ZERO, ZERO)
    assert p0(psi(S, b)) == b
    assert p0(psi(IN, b)) == ZERO
    with pytest.raises(NotInPsi):
        p0(OMEGA)


def test_p0_of_collapsed_leaf_matches_preimage():
    with config.use_N(2):
        rho = parse(oracle.CHAIN_RHO)
        S = parse("up(Om;[2])")
        beta = parse("ps(up(Om;[2,2]);{};Om)")
        assert p0(mostowski(beta, rho, S)) == p0(beta)


def test_in_M_examples():
    rho = parse("ps(up(Om;[1]);{};p(0,0))")
    assert in_M(psi(OMEGA, ZERO), rho)
    assert not in_M(rho, rho)
    with pytest.raises(NotCollapsing):
        in_M(ZERO, psi(IN, ZERO))


def test_sc_of_finite_function_lies_in_M():
    U = enumerate_valid(7)
    two = oracle.TWO_POINT
    rhos = [t for t in U if isinstance(t, Psi) and t.f] + [parse(two).kappa]
    for rho in rhos:
        try:
            ok = all(in_M(s, rho) for s in sc_f(rho.f))
        except NotCollapsing:
            continue
        assert ok


@pytest.fixture(scope="module")
def universe5():
    with config.use_N(2):
        return enumerate_valid(5)


def test_in_H_upward_in_gamma(universe5):
    with config.use_N(2):
        U = universe5
        gammas = [ZERO, OMEGA, psi(IN, ZERO), IN]
        for a in U:
            for d in gammas:
                hits = [in_H(g, d, a) for g in gammas]
                # once true, stays true for larger γ
                assert hits == sorted(hits)


def test_M_monotone_in_p0(universe5):
    """σ ≤ ρ below the same stable with p₀(σ) ≤ p₀(ρ) gives M_σ ∩ ρ ⊂ M_ρ."""
    with config.use_N(2):
        U = universe5
        rhos = [t for t in U if isinstance(t, Psi) and t.kappa == parse("up(Om;[2])")]
        assert len(rhos) >= 3
        for s in rhos:
            for r in rhos:
                if _cmp(s, r) > 0 or _cmp(p0(s), p0(r)) > 0:
                    continue
                for a in U:
                    if _cmp(a, s) < 0 and in_M(a, s):
                        assert in_M(a, r)
