"""Text form of terms, finite functions and θ̃ normal forms.

Grammar (whitespace between tokens is ignored)::

    term  := "0" | "Om" | "In" | term ("+" term)+
           | "p(" term "," term ")"
           | "ps(" term ";" ffun ";" term ")"
           | "up(" term ";" ivec ")"
           | "In[" term "]"
           | "sub(" term ";" ivec ";" term ")"
    ffun  := "{" (term ":" nf ("," term ":" nf)*)? "}"
    nf    := "0" | thterm ("+" thterm)*
    thterm:= "th(" term ";" nf ";" term ")"
    ivec  := "[" int ("," int)* "]"
"""
from __future__ import annotations

import re

from .terms import (
    BigI, Dagger, FiniteFunction, INBracket, Omega, Psi, Sum, SubDagger,
    ThetaNF, Veblen, Zero, IN, OMEGA, ZERO, dagger, plus,
)


class ParseError(ValueError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]+)|(\S))")


def _tokenize(text):
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            toks.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append(("id", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            toks.append(("sym", m.group(3), m.start(3)))
        pos = m.end()
    toks.append(("end", "", n))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value):
        kind, v, pos = self.next()
        if v != value:
            raise ParseError(f"expected {value!r}, found {v or 'end of input'!r}", pos)

    def at(self, value):
        return self.peek()[1] == value

    def term(self):
        parts = [self.atom()]
        while self.at("+"):
            self.next()
            parts.append(self.atom())
        return plus(*parts) if len(parts) > 1 else parts[0]

    def atom(self):
        kind, v, pos = self.next()
        if kind == "int":
            if v != "0":
                raise ParseError(f"unexpected number {v!r}", pos)
            return ZERO
        if kind != "id":
            raise ParseError(f"unexpected {v or 'end of input'!r}", pos)
        if v == "Om":
            return OMEGA
        if v == "In":
            if self.at("["):
                self.next()
                rho = self.term()
                self.expect("]")
                return INBracket(rho)
            return IN
        if v == "p":
            self.expect("(")
            a = self.term()
            self.expect(",")
            b = self.term()
            self.expect(")")
            return Veblen(a, b)
        if v == "ps":
            self.expect("(")
            k = self.term()
            self.expect(";")
            f = self.ffun()
            self.expect(";")
            a = self.term()
            self.expect(")")
            return Psi(k, f, a)
        if v == "up":
            self.expect("(")
            b = self.term()
            self.expect(";")
            iv = self.ivec()
            self.expect(")")
            return dagger(b, iv)
        if v == "sub":
            self.expect("(")
            s = self.term()
            self.expect(";")
            iv = self.ivec()
            self.expect(";")
            r = self.term()
            self.expect(")")
            return SubDagger(s, iv, r)
        raise ParseError(f"unknown constructor {v!r}", pos)

    def ivec(self):
        self.expect("[")
        out = [self.integer()]
        while self.at(","):
            self.next()
            out.append(self.integer())
        self.expect("]")
        return tuple(out)

    def integer(self):
        kind, v, pos = self.next()
        if kind != "int":
            raise ParseError(f"expected integer, found {v or 'end of input'!r}", pos)
        return int(v)

    def ffun(self):
        self.expect("{")
        entries = []
        if not self.at("}"):
            entries.append(self.entry())
            while self.at(","):
                self.next()
                entries.append(self.entry())
        self.expect("}")
        return FiniteFunction(entries)

    def entry(self):
        k = self.term()
        self.expect(":")
        return (k, self.nf())

    def nf(self):
        kind, v, pos = self.peek()
        if v == "0":
            self.next()
            return ThetaNF(())
        out = [self.thterm()]
        while self.at("+"):
            self.next()
            out.append(self.thterm())
        return ThetaNF(out)

    def thterm(self):
        kind, v, pos = self.next()
        if v != "th":
            raise ParseError(f"expected 'th(', found {v or 'end of input'!r}", pos)
        self.expect("(")
        b = self.term()
        self.expect(";")
        xi = self.nf()
        self.expect(";")
        a = self.term()
        self.expect(")")
        return (b, xi, a)

    def done(self):
        kind, v, pos = self.peek()
        if kind != "end":
            raise ParseError(f"trailing input {v!r}", pos)


def parse(text: str):
    p = _Parser(text)
    t = p.term()
    p.done()
    return t


def parse_nf(text: str) -> ThetaNF:
    p = _Parser(text)
    x = p.nf()
    p.done()
    return x


def parse_ffun(text: str) -> FiniteFunction:
    p = _Parser(text)
    f = p.ffun()
    p.done()
    return f


def _ivec(v):
    return "[" + ",".join(str(i) for i in v) + "]"


def show_nf(x: ThetaNF) -> str:
    if not x.terms:
        return "0"
    return "+".join(f"th({show(b)};{show_nf(xi)};{show(a)})" for b, xi, a in x.terms)


def _sorted_entries(f):
    try:
        from .order import key_sort

        return key_sort(f.entries)
    except Exception:
        return list(f.entries)


def show_ffun(f: FiniteFunction) -> str:
    return "{" + ",".join(f"{show(k)}:{show_nf(v)}" for k, v in _sorted_entries(f)) + "}"


def show(t) -> str:
    if isinstance(t, ThetaNF):
        return show_nf(t)
    if isinstance(t, FiniteFunction):
        return show_ffun(t)
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, Omega):
        return "Om"
    if isinstance(t, BigI):
        return "In"
    if isinstance(t, Sum):
        return "+".join(show(p) for p in t.parts)
    if isinstance(t, Veblen):
        return f"p({show(t.alpha)},{show(t.beta)})"
    if isinstance(t, Psi):
        return f"ps({show(t.kappa)};{show_ffun(t.f)};{show(t.a)})"
    if isinstance(t, Dagger):
        return f"up({show(t.base)};{_ivec(t.ivec)})"
    if isinstance(t, INBracket):
        return f"In[{show(t.rho)}]"
    if isinstance(t, SubDagger):
        return f"sub({show(t.S)};{_ivec(t.ivec)};{show(t.rho)})"
    raise TypeError(f"cannot print {t!r}")
