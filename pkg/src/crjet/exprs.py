"""Expression parsing and deterministic rendering of jets.

Grammar (whitespace insignificant):

    expr     <- term (('+'|'-') term)*
    term     <- factor ('*' factor)*
    factor   <- base ('^' nat)?
    base     <- rational | 'i' | var | '(' expr ')' | 'conj(' expr ')'
    var      <- ('z'|'zb'|'s'|'Zp'|'Zbp') nat
    rational <- int ('/' nat)?

z/zb/s address chart variables of a manifold; Zp/Zbp address the holomorphic
and antiholomorphic coordinates of a target space (used in defining functions
of map targets).  Indices are 1-based.

Rendering is the inverse: graded-lex term order, coefficients printed so the
output re-parses to an equal jet.
"""

from __future__ import annotations

import re

from .errors import ExpressionSyntaxError, IndexOutOfRange, UnknownVariable
from .gaussrat import GaussianRational, Rat
from .jets import Jet, VarSig

_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<word>[A-Za-z]+)(?P<idx>\d*)|(?P<op>[-+*/^()]))")

_VAR_KINDS = ("z", "zb", "s", "Zp", "Zbp")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise ExpressionSyntaxError(f"unexpected character {stripped[0]!r}", at)
        if m.group("num") is not None:
            tokens.append(("num", int(m.group("num")), m.start("num")))
        elif m.group("word") is not None:
            word = m.group("word")
            idx = m.group("idx")
            tokens.append(("word", (word, int(idx) if idx else None), m.start("word")))
        else:
            tokens.append((m.group("op"), None, m.start("op")))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind, what):
        tok = self.take()
        if tok[0] != kind:
            raise ExpressionSyntaxError(f"expected {what}", tok[2])
        return tok

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ExpressionSyntaxError("trailing input", tok[2])
        return node

    def expr(self):
        node = self.term()
        while True:
            kind = self.peek()[0]
            if kind == "+":
                self.take()
                node = ("add", node, self.term())
            elif kind == "-":
                self.take()
                node = ("add", node, ("neg", self.term()))
            else:
                return node

    def term(self):
        node = self.factor()
        while self.peek()[0] == "*":
            self.take()
            node = ("mul", node, self.factor())
        return node

    def factor(self):
        node = self.base()
        if self.peek()[0] == "^":
            self.take()
            tok = self.expect("num", "a nonnegative integer exponent")
            node = ("pow", node, tok[1])
        return node

    def base(self):
        tok = self.take()
        kind, value, pos = tok
        if kind == "-":
            return ("neg", self.rational_tail())
        if kind == "num":
            self.pos -= 1
            return self.rational_tail()
        if kind == "(":
            node = self.expr()
            self.expect(")", "')'")
            return node
        if kind == "word":
            word, idx = value
            if word == "i" and idx is None:
                return ("i",)
            if word == "conj" and idx is None:
                self.expect("(", "'(' after conj")
                node = self.expr()
                self.expect(")", "')'")
                return ("conj", node)
            if word in _VAR_KINDS:
                if idx is None:
                    raise ExpressionSyntaxError(f"variable '{word}' needs an index", pos)
                return ("var", word, idx)
            raise UnknownVariable(f"unknown name '{word}' at position {pos}")
        raise ExpressionSyntaxError("expected a number, variable, 'i' or '('", pos)

    def rational_tail(self):
        num = self.expect("num", "a number")[1]
        if self.peek()[0] == "/":
            self.take()
            den = self.expect("num", "a denominator")[1]
            if den == 0:
                raise ExpressionSyntaxError("zero denominator", self.tokens[self.pos - 1][2])
            return ("rat", Rat(num, den))
        return ("rat", Rat(num))


def parse_text(text):
    """Parse an expression into an AST without binding variables."""
    return _Parser(_tokenize(text)).parse()


def expr_to_jet(node, sig, work_order, vocabulary="source"):
    """Evaluate an AST over a signature.

    vocabulary "source" admits z/zb/s; "target" admits Zp/Zbp, which address
    the z/zb blocks of the (target) signature.
    """
    kind = node[0]
    if kind == "rat":
        return Jet.const(sig, work_order, GaussianRational(node[1]))
    if kind == "i":
        return Jet.const(sig, work_order, GaussianRational(0, 1))
    if kind == "var":
        return Jet.variable(sig, work_order, _var_slot(node[1], node[2], sig, vocabulary))
    if kind == "neg":
        return -expr_to_jet(node[1], sig, work_order, vocabulary)
    if kind == "add":
        return (expr_to_jet(node[1], sig, work_order, vocabulary)
                + expr_to_jet(node[2], sig, work_order, vocabulary))
    if kind == "mul":
        return (expr_to_jet(node[1], sig, work_order, vocabulary)
                * expr_to_jet(node[2], sig, work_order, vocabulary))
    if kind == "pow":
        return expr_to_jet(node[1], sig, work_order, vocabulary).power(node[2])
    if kind == "conj":
        return expr_to_jet(node[1], sig, work_order, vocabulary).conjugate()
    raise ValueError(f"unknown AST node {kind!r}")


def _var_slot(var_kind, index, sig, vocabulary):
    if index < 1:
        raise IndexOutOfRange(f"{var_kind}{index}: indices are 1-based")
    if vocabulary == "source":
        allowed = {"z": sig.z_slot, "zb": sig.zb_slot, "s": sig.s_slot}
    else:
        allowed = {"Zp": sig.z_slot, "Zbp": sig.zb_slot}
    lookup = allowed.get(var_kind)
    if lookup is None:
        raise UnknownVariable(
            f"variable kind '{var_kind}' not admitted here (allowed: {sorted(allowed)})")
    try:
        return lookup(index)
    except UnknownVariable:
        raise IndexOutOfRange(f"{var_kind}{index} outside signature {sig!r}") from None


def parse_expr(text, sig, work_order, vocabulary="source"):
    """Parse text straight into a jet over the given signature."""
    return expr_to_jet(parse_text(text), sig, work_order, vocabulary)


# --------------------------------------------------------------------------
# rendering


def _rational_str(r):
    return str(r)


def _term_body(exps, coeff, sig):
    """Return (negate, body): body re-parses under the expression grammar and
    negate says whether the term carries an overall minus sign."""
    mono = "*".join(
        f"{sig.var_name(i)}^{e}" if e > 1 else sig.var_name(i)
        for i, e in enumerate(exps) if e)
    re_, im = coeff.re, coeff.im
    if im == 0:
        neg = re_ < 0
        mag = -re_ if neg else re_
        if not mono:
            return neg, _rational_str(mag)
        if mag == 1:
            return neg, mono
        return neg, f"{_rational_str(mag)}*{mono}"
    if re_ == 0:
        neg = im < 0
        mag = -im if neg else im
        head = "i" if mag == 1 else f"{_rational_str(mag)}*i"
        return neg, f"{head}*{mono}" if mono else head
    inner_neg, inner_body = _term_body((), GaussianRational(0, im), sig)
    inner = f"{_rational_str(re_)} {'-' if inner_neg else '+'} {inner_body}"
    if mono:
        return False, f"({inner})*{mono}"
    return False, f"({inner})"


def render_jet(f, max_degree=None):
    """Deterministic graded-lex rendering; parse_expr(render_jet(f)) == f."""
    pieces = []
    truncated = False
    for exps, coeff in f.iter_terms():
        if max_degree is not None and sum(exps) > max_degree:
            truncated = True
            continue
        pieces.append(_term_body(exps, coeff, f.sig))
    if not pieces:
        return "0 + ..." if truncated else "0"
    out = []
    neg, body = pieces[0]
    if neg:
        out.append("-" + (body if body[0].isdigit() else "1*" + body))
    else:
        out.append(body)
    for neg, body in pieces[1:]:
        out.append(f" - {body}" if neg else f" + {body}")
    if truncated:
        out.append(" + ...")
    return "".join(out)


def render_coeff(c):
    """Stable textual form of one Gaussian rational (used in reports)."""
    return str(c)
