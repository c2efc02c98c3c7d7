"""The ``ordcalc`` command.

Exit status: 0 on success, 1 for a domain error (bad term, term outside an
operation's domain, invalid notation, failing check), 2 for usage errors.
"""
from __future__ import annotations

import json
import sys

import click

from . import config
from .collapse import mostowski, uncollapse
from .order import compare, k_set
from .suites import SUITES, run
from .syntax import ParseError, parse, show
from .terms import TermError, classify
from .validate import BudgetExceeded, enumerate_valid, validate
from .wf import g0, g1_pair, g2, o_measure, prop_S


class DomainFailure(click.ClickException):
    exit_code = 1


def _term(text):
    try:
        return parse(text)
    except ParseError as e:
        raise DomainFailure(f"syntax error: {e}")


def _valid_term(text):
    t = _term(text)
    ok, why = validate(t)
    if not ok:
        raise DomainFailure(f"invalid: {why}")
    return t


def _guard(fn, *args):
    try:
        return fn(*args)
    except TermError as e:
        raise DomainFailure(str(e))


def show_lam(x):
    """Σ λ^{e}·c with c printed as its coefficient vector."""
    if not x.terms:
        return "0"
    return "+".join(f"lam^({show(e)})*({','.join(map(str, c))})" for e, c in x.terms)


@click.group()
@click.option("--N", "n", type=click.IntRange(config.MIN_N, config.MAX_N), envvar="ORDCALC_N",
              default=1, show_default=True, help="Stability depth N (env ORDCALC_N).")
@click.option("--budget", type=click.IntRange(1), envvar="ORDCALC_BUDGET",
              default=config.DEFAULT_BUDGET, show_default=True,
              help="Enumeration size cap (env ORDCALC_BUDGET).")
def main(n, budget):
    """Ordinal notation toolkit for OT(𝕀_N)."""
    config.set_N(n)
    config.set_budget(budget)


@main.command("parse")
@click.argument("term")
def parse_cmd(term):
    """Echo TERM in canonical form."""
    click.echo(show(_term(term)))


@main.command("validate")
@click.argument("term")
def validate_cmd(term):
    """Print "valid" or "invalid: <reason>"."""
    ok, why = validate(_term(term))
    click.echo("valid" if ok else f"invalid: {why}")
    if not ok:
        sys.exit(1)


@main.command("cmp")
@click.argument("left")
@click.argument("right")
def cmp_cmd(left, right):
    """Print LT, EQ or GT."""
    click.echo(str(_guard(compare, _valid_term(left), _valid_term(right))))


@main.command("collapse")
@click.argument("term")
@click.option("--rho", required=True)
@click.option("--S", "S", required=True)
def collapse_cmd(term, rho, S):
    """Print TERM[ρ/𝕊]."""
    click.echo(show(_guard(mostowski, _valid_term(term), _valid_term(rho), _valid_term(S))))


@main.command("uncollapse")
@click.argument("term")
@click.option("--rho", required=True)
@click.option("--S", "S", required=True)
def uncollapse_cmd(term, rho, S):
    """Print the preimage of TERM under the collapse [ρ/𝕊]."""
    back = _guard(uncollapse, _valid_term(term), _valid_term(rho), _valid_term(S))
    if back is None:
        raise DomainFailure("no preimage")
    click.echo(show(back))


@main.command("classify")
@click.argument("term")
def classify_cmd(term):
    """Print the stability class tag."""
    click.echo(str(_guard(classify, _valid_term(term))))


@main.command("enumerate")
@click.option("--max-len", type=click.IntRange(1), required=True)
@click.option("--below", default=None, help="Only terms below this one.")
@click.option("--count-only", is_flag=True)
def enumerate_cmd(max_len, below, count_only):
    """List valid terms of length ≤ MAX_LEN, shortest first."""
    bound = _valid_term(below) if below is not None else None
    try:
        terms = enumerate_valid(max_len, bound)
    except BudgetExceeded as e:
        raise DomainFailure(f"budget exceeded: {e}")
    if count_only:
        click.echo(len(terms))
        return
    for t in terms:
        click.echo(show(t))


@main.command("measure")
@click.argument("term")
@click.option("--kind", required=True, help="o, p, g0, g1, g2 or K:<delta>.")
@click.option("--S", "S", default=None, help="Successor stable for --kind p.")
def measure_cmd(term, kind, S):
    """Print a well-foundedness measure of TERM."""
    t = _valid_term(term)
    if kind == "o":
        if not hasattr(t, "f"):
            raise DomainFailure("o needs a ψ term")
        click.echo(show(_guard(o_measure, t.f)))
    elif kind == "p":
        if S is None:
            raise click.UsageError("--kind p needs --S")
        click.echo(show(_guard(prop_S, _valid_term(S), t)))
    elif kind == "g0":
        click.echo(show(_guard(g0, t)))
    elif kind == "g1":
        g1p, g1 = _guard(g1_pair, t)
        click.echo(f"g1'={show_lam(g1p)} g1={show_lam(g1)}")
    elif kind == "g2":
        click.echo(show(_guard(g2, t)))
    elif kind.startswith("K:"):
        delta = _valid_term(kind[2:])
        ks = _guard(k_set, t, delta)
        click.echo("{" + ",".join(sorted(show(x) for x in ks)) + "}")
    else:
        raise click.UsageError(f"unknown measure kind {kind!r}")


@main.command("check")
@click.option("--suite", type=click.Choice(sorted(SUITES)), required=True)
@click.option("--max-len", type=click.IntRange(1), default=None,
              help="Universe length bound (default: the suite's own).")
@click.option("--json", "as_json", is_flag=True)
def check_cmd(suite, max_len, as_json):
    """Run an invariant suite; exit 1 if anything fails."""
    rep = run(suite, max_len=max_len)
    rep["params"].setdefault("max_len", max_len)  # suites with generated inputs ignore it
    if as_json:
        click.echo(json.dumps(rep, ensure_ascii=False))
    else:
        click.echo(f"{suite}: checked {rep['checked']}, failed {rep['failed']} "
                   f"({rep['seconds']}s)")
        for f in rep["failures"][:5]:
            click.echo(f"  {f}")
    if rep["failed"]:
        sys.exit(1)


if __name__ == "__main__":
    main()
