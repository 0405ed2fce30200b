"""Expression language for truncated free-algebra elements.

Grammar (whitespace insensitive):

    expr     := ['-'] term (('+' | '-') term)*
    term     := rational ['*' factors] | factors
    factors  := factor+
    factor   := 'a'INT | '[' expr ',' expr ']'
              | 'ad(' expr ')^' INT '(' expr ')'
              | 'exp(' expr ')' | '(' expr ')'
    rational := INT ['/' INT]

A single-pass recursive-descent parser produces a small AST; the printer
emits the same grammar canonically, and evaluation lands in TruncSeries.
Letters are range-checked at evaluation time, not at parse time.
"""

from fractions import Fraction

from .algebra import TruncSeries, ad_pow, bracket, exp_trunc
from .errors import ParseError

ONE = Fraction(1)


class Letter:
    __slots__ = ("index",)

    def __init__(self, index):
        assert index >= 0, index
        self.index = index


class BracketNode:
    __slots__ = ("left", "right")

    def __init__(self, left, right):
        self.left = left
        self.right = right


class Product:
    __slots__ = ("factors",)

    def __init__(self, factors):
        factors = tuple(factors)
        assert len(factors) >= 2, "products need at least two factors"
        self.factors = factors


class Sum:
    __slots__ = ("terms",)

    def __init__(self, terms):
        terms = tuple(terms)
        assert len(terms) >= 2, "sums need at least two terms"
        self.terms = terms


class Scale:
    __slots__ = ("coeff", "child")

    def __init__(self, coeff, child):
        self.coeff = Fraction(coeff)
        # a parenthesized sum is a factor, so Sum children are fine; only
        # nested scales have no grammar form
        assert child is None or not isinstance(child, Scale), \
            "scale applies to a factor sequence"
        self.child = child  # None encodes a bare rational constant


class ExpNode:
    __slots__ = ("child",)

    def __init__(self, child):
        self.child = child


class AdPow:
    __slots__ = ("base", "power", "arg")

    def __init__(self, base, power, arg):
        assert power >= 0, power
        self.base = base
        self.power = power
        self.arg = arg


# -- lexer ---------------------------------------------------------------

_PUNCT = "+-*/[](),^"


class _Token:
    __slots__ = ("kind", "value", "offset")

    def __init__(self, kind, value, offset):
        self.kind = kind
        self.value = value
        self.offset = offset


def _lex(src):
    toks = []
    i = 0
    while i < len(src):
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _PUNCT:
            toks.append(_Token(ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(src) and src[j].isdigit():
                j += 1
            toks.append(_Token("INT", int(src[i:j]), i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(src) and src[j].isalpha():
                j += 1
            word = src[i:j]
            if word == "a" and j < len(src) and src[j].isdigit():
                jj = j
                while jj < len(src) and src[jj].isdigit():
                    jj += 1
                toks.append(_Token("LETTER", int(src[j:jj]), i))
                i = jj
                continue
            if word == "ad":
                toks.append(_Token("AD", word, i))
                i = j
                continue
            if word == "exp":
                toks.append(_Token("EXP", word, i))
                i = j
                continue
            raise ParseError("unknown name %r" % word, i)
        raise ParseError("unexpected character %r" % ch, i)
    toks.append(_Token("EOF", None, len(src)))
    return toks


# -- parser --------------------------------------------------------------


class _Parser:
    def __init__(self, src):
        self.src = src
        self.toks = _lex(src)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def take(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, kind, what=None):
        t = self.peek()
        if t.kind != kind:
            raise ParseError("expected %s" % (what or repr(kind)), t.offset)
        return self.take()

    def parse(self):
        node = self.expr()
        t = self.peek()
        if t.kind != "EOF":
            raise ParseError("trailing input", t.offset)
        return node

    def expr(self):
        terms = []
        negate = False
        if self.peek().kind == "-":
            self.take()
            negate = True
        terms.append(self._signed(self.term(), negate))
        while self.peek().kind in ("+", "-"):
            op = self.take()
            terms.append(self._signed(self.term(), op.kind == "-"))
        if len(terms) == 1:
            return terms[0]
        return Sum(terms)

    @staticmethod
    def _signed(node, negate):
        if not negate:
            return node
        if isinstance(node, Scale):
            return Scale(-node.coeff, node.child)
        return Scale(-1, node)

    def term(self):
        t = self.peek()
        if t.kind == "INT":
            coeff = self.rational()
            if self.peek().kind == "*":
                self.take()
                child = self.factors()
                return Scale(coeff, child) if coeff != 1 else child
            if self._at_factor():
                # implicit product like "2 a1" is not in the grammar
                raise ParseError("expected '*' between a rational and a factor",
                                 self.peek().offset)
            return Scale(coeff, None)
        return self.factors()

    def rational(self):
        t = self.expect("INT", "a rational number")
        num = t.value
        if self.peek().kind == "/":
            self.take()
            den = self.expect("INT", "a denominator").value
            if den == 0:
                raise ParseError("zero denominator", t.offset)
            return Fraction(num, den)
        return Fraction(num)

    def _at_factor(self):
        return self.peek().kind in ("LETTER", "[", "(", "AD", "EXP")

    def factors(self):
        out = [self.factor()]
        while True:
            if self.peek().kind == "*":
                # tolerated separator; the printer never emits it
                nxt = self.toks[self.pos + 1]
                if nxt.kind in ("LETTER", "[", "(", "AD", "EXP"):
                    self.take()
                    out.append(self.factor())
                    continue
                raise ParseError("expected a factor after '*'", nxt.offset)
            if self._at_factor():
                out.append(self.factor())
                continue
            break
        if len(out) == 1:
            return out[0]
        return Product(out)

    def factor(self):
        t = self.peek()
        if t.kind == "LETTER":
            self.take()
            return Letter(t.value)
        if t.kind == "[":
            self.take()
            left = self.expr()
            self.expect(",", "','")
            right = self.expr()
            self.expect("]", "']'")
            return BracketNode(left, right)
        if t.kind == "(":
            self.take()
            inner = self.expr()
            self.expect(")", "')'")
            return inner
        if t.kind == "AD":
            self.take()
            self.expect("(", "'(' after ad")
            base = self.expr()
            self.expect(")", "')'")
            self.expect("^", "'^' with the ad power")
            power = self.expect("INT", "an integer power").value
            self.expect("(", "'(' before the ad argument")
            arg = self.expr()
            self.expect(")", "')'")
            return AdPow(base, power, arg)
        if t.kind == "EXP":
            self.take()
            self.expect("(", "'(' after exp")
            child = self.expr()
            self.expect(")", "')'")
            return ExpNode(child)
        raise ParseError("expected a factor", t.offset)


def parse_expr(src):
    """Parse source text into an expression tree."""
    return _Parser(src).parse()


# -- canonical printer ----------------------------------------------------


def _print_factor(node):
    if isinstance(node, Letter):
        return "a%d" % node.index
    if isinstance(node, BracketNode):
        return "[%s,%s]" % (format_expr(node.left), format_expr(node.right))
    if isinstance(node, AdPow):
        return "ad(%s)^%d(%s)" % (
            format_expr(node.base), node.power, format_expr(node.arg))
    if isinstance(node, ExpNode):
        return "exp(%s)" % format_expr(node.child)
    return "(%s)" % format_expr(node)


def _print_term(node):
    if isinstance(node, Scale):
        if node.child is None:
            return str(node.coeff)
        return "%s*%s" % (node.coeff, _print_term(node.child))
    if isinstance(node, Product):
        return " ".join(_print_factor(f) for f in node.factors)
    return _print_factor(node)


def format_expr(node):
    """Canonical text in the input grammar; parses back to the same tree."""
    if isinstance(node, Sum):
        parts = []
        for idx, t in enumerate(node.terms):
            if isinstance(t, Scale) and t.coeff < 0:
                flip = Scale(-t.coeff, t.child)
                piece = _print_term(flip if flip.coeff != 1 or flip.child is None
                                    else flip.child)
                parts.append(("-%s" if idx == 0 else "- %s") % piece)
            else:
                piece = _print_term(t)
                parts.append(piece if idx == 0 else "+ %s" % piece)
        return " ".join(parts)
    if isinstance(node, Scale) and node.coeff < 0:
        flip = Scale(-node.coeff, node.child)
        inner = flip if flip.coeff != 1 or flip.child is None else flip.child
        return "-%s" % _print_term(inner)
    return _print_term(node)


# -- evaluation ------------------------------------------------------------


def eval_expr(node, k, n):
    """Evaluate a tree in the truncated algebra on letters a0..ak."""
    if isinstance(node, Letter):
        # range check deferred to here by design
        return TruncSeries.letter(node.index, k, n)
    if isinstance(node, BracketNode):
        return bracket(eval_expr(node.left, k, n), eval_expr(node.right, k, n))
    if isinstance(node, Product):
        out = TruncSeries.one(k, n)
        for f in node.factors:
            out = out * eval_expr(f, k, n)
        return out
    if isinstance(node, Sum):
        out = TruncSeries.zero(k, n)
        for t in node.terms:
            out = out + eval_expr(t, k, n)
        return out
    if isinstance(node, Scale):
        if node.child is None:
            return TruncSeries.one(k, n).scale(node.coeff)
        return eval_expr(node.child, k, n).scale(node.coeff)
    if isinstance(node, ExpNode):
        return exp_trunc(eval_expr(node.child, k, n))
    if isinstance(node, AdPow):
        return ad_pow(eval_expr(node.base, k, n), node.power,
                      eval_expr(node.arg, k, n))
    raise AssertionError("unknown node %r" % (node,))
