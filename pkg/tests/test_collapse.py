import pytest

from ordcalc import config, oracle
from ordcalc.collapse import NotInDomain, mostowski, uncollapse
from ordcalc.order import _cmp, in_M, k_set
from ordcalc.syntax import parse, show
from ordcalc.terms import IN, OMEGA, ZERO, TermError, in_bracket, prec_r, psi
from ordcalc.validate import enumerate_valid, is_valid

S1 = parse("up(Om;[1])")
RHO = parse("ps(up(Om;[1]);{};p(0,0))")


def test_identity_below_S():
    a = psi(OMEGA, OMEGA)
    assert mostowski(a, RHO, S1) == a


def test_top_and_S():
    assert mostowski(S1, RHO, S1) == RHO
    assert mostowski(IN, RHO, S1) == in_bracket(RHO)


def test_commutes_with_psi():
    rho = parse("ps(up(Om;[1]);{};Om+p(0,0))")
    t = parse("ps(In;{};Om)")
    assert mostowski(t, rho, S1) == psi(in_bracket(rho), OMEGA)


def test_uncollapse_examples():
    assert uncollapse(RHO, RHO, S1) == S1
    assert uncollapse(OMEGA, RHO, S1) == OMEGA
    with config.use_N(2):
        rho = parse("ps(up(Om;[1,1]);{};0)")
        S = parse("up(Om;[1,1])")
        assert uncollapse(S1, rho, S) == S1        # Ω^{†1} < ρ stays put


def test_uncollapse_absent():
    # ψ_Ω(0) is fixed by the collapse; ρ+1 has no preimage below Γ(𝕀[ρ])
    assert uncollapse(parse("ps(up(Om;[1]);{};p(0,0))+p(0,0)"), RHO, S1) is not None
    assert uncollapse(parse("ps(up(Om;[1]);{};0)"), RHO, S1) == parse("ps(up(Om;[1]);{};0)")
    assert uncollapse(S1, RHO, S1) is None


def test_outside_M_is_rejected():
    with pytest.raises(NotInDomain):
        mostowski(RHO, RHO, S1)
    with pytest.raises(TermError):
        mostowski(OMEGA, psi(IN, ZERO), IN)


def test_round_trip_and_order_on_universe():
    U = enumerate_valid(7)
    cmp = _cmp
    for rho in [RHO, parse("ps(up(Om;[1]);{};Om)"), parse("ps(up(Om;[1,1]);{};0)")]:
        S = rho.kappa
        rep = oracle.oracle_collapse(
            rho, S, U, cmp,
            member=lambda x: in_M(x, rho),
            collapse=lambda x: mostowski(x, rho, S),
            uncollapse=lambda y: uncollapse(y, rho, S),
        )
        assert rep.ok, (rep.note, [show(x) for x in rep.counterexample])
        assert len(rep.sorted) > 50
        for x in rep.sorted:
            assert is_valid(mostowski(x, rho, S))


def test_collapse_never_increases():
    U = enumerate_valid(6)
    for a in U:
        if in_M(a, RHO):
            b = mostowski(a, RHO, S1)
            assert _cmp(b, a) <= 0


def test_k_bound_transfer():
    """𝕊 < γ: K_γ(β) < α iff the same holds after collapsing all three."""
    U = [t for t in enumerate_valid(6) if in_M(t, RHO)]
    gammas = [t for t in U if _cmp(S1, t) < 0][:12]
    alphas = [t for t in U if _cmp(S1, t) <= 0][:12]
    c = {t: mostowski(t, RHO, S1) for t in U}
    n = 0
    for g in gammas:
        for b in U[:150]:
            for a in alphas:
                lhs = all(_cmp(k, a) < 0 for k in k_set(b, g))
                rhs = all(_cmp(k, c[a]) < 0 for k in k_set(c[b], c[g]))
                assert lhs == rhs, (show(g), show(b), show(a))
                n += 1
    assert n > 1000


@pytest.mark.xfail(strict=True, reason="≺^R is not preserved when κ is 𝕊 itself; see notes")
def test_prec_r_preserved_for_S():
    S = parse("up(Om;[1,1,1])")
    rho = parse("ps(up(Om;[1,1,1]);{};up(Om;[1]))")
    pi = parse("ps(up(Om;[1,1,1]);{};0)")
    assert prec_r(pi, S)
    assert prec_r(mostowski(pi, rho, S), mostowski(S, rho, S))


@pytest.mark.xfail(strict=True, raises=NotInDomain,
                   reason="no collapsing clause for Ω^{†2} over 𝕊 = Ω^{†1}; see notes")
def test_collapse_defined_on_M_at_depth_two():
    with config.use_N(2):
        rho = parse("ps(up(Om;[1]);{};0)")
        x = parse("up(Om;[2])")
        assert in_M(x, rho)
        mostowski(x, rho, S1)
