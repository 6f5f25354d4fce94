"""Parser for polynomial expressions.

Grammar (whitespace is ignored)::

    poly   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (['*'] factor)*
    factor := INT ['/' INT] | VAR ['^' INT]
    VAR    := 'x' DIGIT

``**`` is accepted as a synonym for ``^``.  The ring has ``1 + max index``
variables unless ``n_vars`` is given.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import NotHomogeneous, ParseError
from .poly import HomogeneousPoly

MAX_VARS = 10

_TOKEN = re.compile(r"\s*(?:(\d+)|(x\d+)|(\*\*|\^)|([+\-*/]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos + len(text[pos:]) - len(text[pos:].lstrip()))
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("int", m.group(1), start))
        elif m.group(2):
            out.append(("var", m.group(2), start))
        elif m.group(3):
            out.append(("pow", "^", start))
        else:
            out.append((m.group(4), m.group(4), start))
        pos = m.end()
    return out


def parse_terms(text: str) -> list[tuple[dict[int, int], Fraction, str]]:
    """Parse into (exponents by variable, coefficient, source text) per term."""
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty expression", 0)
    terms = []
    i = 0
    n = len(toks)

    def expect_int(i, what):
        if i >= n or toks[i][0] != "int":
            where = toks[i][2] if i < n else len(text)
            raise ParseError(f"expected {what}", where)
        return int(toks[i][1]), i + 1

    first = True
    while i < n:
        sign = 1
        if toks[i][0] in "+-":
            sign = -1 if toks[i][0] == "-" else 1
            i += 1
        elif not first:
            raise ParseError(f"expected '+' or '-', got {toks[i][1]!r}", toks[i][2])
        first = False
        start = toks[i][2] if i < n else len(text)
        coeff = Fraction(sign)
        exps: dict[int, int] = {}
        nfactors = 0
        while i < n and toks[i][0] not in "+-":
            kind, val, where = toks[i]
            if kind == "*":
                if nfactors == 0:
                    raise ParseError("'*' before any factor", where)
                i += 1
                if i >= n or toks[i][0] not in ("int", "var"):
                    raise ParseError("expected a factor after '*'", toks[i][2] if i < n else len(text))
                continue
            if kind == "int":
                num = int(val)
                i += 1
                if i < n and toks[i][0] == "/":
                    den, i = expect_int(i + 1, "denominator")
                    if den == 0:
                        raise ParseError("zero denominator", toks[i - 1][2])
                    coeff *= Fraction(num, den)
                else:
                    coeff *= num
            elif kind == "var":
                idx = int(val[1:])
                if idx >= MAX_VARS:
                    raise ParseError(f"variable {val} out of range (x0..x{MAX_VARS - 1})", where)
                i += 1
                e = 1
                if i < n and toks[i][0] == "pow":
                    e, i = expect_int(i + 1, "exponent")
                exps[idx] = exps.get(idx, 0) + e
            else:
                raise ParseError(f"unexpected {val!r}", where)
            nfactors += 1
        if nfactors == 0:
            raise ParseError("empty term", start)
        end = toks[i][2] if i < n else len(text)
        terms.append((exps, coeff, text[start:end].strip()))
    return terms


def parse_poly(text: str, n_vars: int | None = None) -> HomogeneousPoly:
    terms = parse_terms(text)
    used = max((max(e) for e, _, _ in terms if e), default=-1) + 1
    nv = max(used, 1) if n_vars is None else n_vars
    if n_vars is not None and n_vars < used:
        raise ParseError(f"expression uses {used} variables but n_vars = {n_vars}")
    if nv > MAX_VARS:
        raise ParseError(f"at most {MAX_VARS} variables are supported")
    degrees = {sum(e.values()) for e, c, _ in terms if c != 0}
    if len(degrees) > 1:
        raise NotHomogeneous([(src, sum(e.values())) for e, c, src in terms if c != 0])
    deg = degrees.pop() if degrees else 0
    acc: dict[tuple[int, ...], Fraction] = {}
    for e, c, _ in terms:
        m = tuple(e.get(j, 0) for j in range(nv))
        acc[m] = acc.get(m, 0) + c
    return HomogeneousPoly(nv, deg, {m: c for m, c in acc.items() if c != 0})
