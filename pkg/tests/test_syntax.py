import pytest
from hypothesis import given, settings, strategies as st

from ordcalc import config
from ordcalc.oracle import golden_corpus
from ordcalc.samples import rand_ffun, rand_nf
from ordcalc.syntax import ParseError, parse, parse_ffun, parse_nf, show, show_ffun, show_nf
from ordcalc.terms import EMPTY, IN, ZERO, Dagger, Psi, psi


def test_psi_in_zero():
    t = parse("ps(In;{};0)")
    assert isinstance(t, Psi) and t == psi(IN, ZERO) and t.f == EMPTY


def test_dagger_vector_round_trip():
    t = parse("up(Om;[2,1])")
    assert isinstance(t, Dagger) and t.ivec == (2, 1)
    assert show(t) == "up(Om;[2,1])"


def test_whitespace_ignored():
    assert parse(" ps( In ; { } ; p( 0 , 0 ) ) ") == parse("ps(In;{};p(0,0))")


def test_nested_daggers_print_flat():
    assert show(parse("up(up(Om;[2]);[1])")) == "up(Om;[2,1])"


@pytest.mark.parametrize("entry", golden_corpus(), ids=lambda e: e.tag)
def test_print_parse_identity_on_corpus(entry):
    with config.use_N(entry.N):
        t = parse(entry.text)
        assert show(t) == entry.text
        assert parse(show(t)) == t


def test_ffun_printed_in_key_order():
    f = parse_ffun("{p(0,0):th(p(0,0);0;p(0,0)),0:th(p(0,0);0;p(0,0))}")
    assert show_ffun(f).startswith("{0:")


@pytest.mark.parametrize("text,pos", [
    ("ps(In;{};0", 10),
    ("p(0,0", 5),
    ("q(0,0)", 0),
    ("up(Om;[])", 7),
    ("0 0", 2),
])
def test_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as e:
        parse(text)
    assert e.value.pos == pos


@settings(max_examples=200, deadline=None)
@given(st.randoms(use_true_random=False))
def test_nf_and_ffun_round_trip(rng):
    x = rand_nf(rng)
    assert parse_nf(show_nf(x)) == x
    f = rand_ffun(rng)
    assert parse_ffun(show_ffun(f)) == f
