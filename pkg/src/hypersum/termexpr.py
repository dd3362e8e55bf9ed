"""Term expressions: parsing, printing, exact evaluation and compilation to shift quotients."""

from dataclasses import dataclass
from typing import Tuple

from .exact_core import QQ, QQN, N, Poly, RatFunc, as_rational
from .hyperterm import BiHyperTerm, HyperTerm

__all__ = [
    "Num", "Var", "Neg", "BinOp", "Call", "TermExpr", "parse", "to_text",
    "TermSyntaxError", "NotHypergeometric", "compile_quotients", "to_bihyper",
    "to_hyperterm", "evaluate", "swap_variables", "FUNCTIONS",
]


class TermSyntaxError(ValueError):
    code = "SYNTAX_ERROR"

    def __init__(self, message, pos):
        ValueError.__init__(self, "%s at position %d" % (message, pos))
        self.message = message
        self.pos = pos


class NotHypergeometric(ValueError):
    code = "NOT_HYPERGEOMETRIC"


# AST ------------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Call:
    name: str
    args: Tuple


FUNCTIONS = {"factorial": 1, "binomial": 2, "pochhammer": 2, "gamma": 1}
_ALIASES = {"Γ": "gamma"}


class TermExpr:
    """A parsed term together with its source text."""

    def __init__(self, tree, source=None):
        self.tree = tree
        self.source = source if source is not None else to_text(tree)

    def variables(self):
        out = set()
        _collect_vars(self.tree, out)
        return out

    def __eq__(self, other):
        return isinstance(other, TermExpr) and self.tree == other.tree

    def __hash__(self):
        return hash(self.tree)

    def __str__(self):
        return to_text(self.tree)

    def __repr__(self):
        return "TermExpr(%r)" % to_text(self.tree)


def _collect_vars(t, out):
    if isinstance(t, Var):
        out.add(t.name)
    elif isinstance(t, Neg):
        _collect_vars(t.arg, out)
    elif isinstance(t, BinOp):
        _collect_vars(t.left, out)
        _collect_vars(t.right, out)
    elif isinstance(t, Call):
        for a in t.args:
            _collect_vars(a, out)


# lexer / parser ---------------------------------------------------------------

def _tokens(text):
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            yield ("num", text[i:j], i)
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            yield ("name", text[i:j], i)
            i = j
        elif ch in "+-*/^(),":
            yield (ch, ch, i)
            i += 1
        elif ch == "!":
            raise TermSyntaxError("'!' is not supported, write factorial(...)", i)
        else:
            raise TermSyntaxError("unexpected character %r" % ch, i)
    yield ("end", "", n)


class _Parser:
    def __init__(self, text):
        self.toks = list(_tokens(text))
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise TermSyntaxError("expected %r, found %s" % (kind, what), tok[2])
        self.i += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        kind = self.peek()[0]
        if kind == "-":
            self.take()
            return Neg(self.unary())
        if kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            return BinOp("^", base, self.unary())
        return base

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            return Num(int(val))
        if kind == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        if kind == "name":
            self.take()
            name = _ALIASES.get(val, val)
            if name in ("n", "k"):
                return Var(name)
            if name not in FUNCTIONS:
                raise TermSyntaxError("unknown name %r" % val, pos)
            self.take("(")
            args = [self.expr()]
            while self.peek()[0] == ",":
                self.take()
                args.append(self.expr())
            self.take(")")
            if len(args) != FUNCTIONS[name]:
                raise TermSyntaxError("%s takes %d argument(s)" % (name, FUNCTIONS[name]), pos)
            return Call(name, tuple(args))
        what = "end of input" if kind == "end" else repr(val)
        raise TermSyntaxError("unexpected %s" % what, pos)


def parse(text, check=True):
    """Parse text into a TermExpr; with ``check`` the term is also compiled once."""
    p = _Parser(text)
    tree = p.expr()
    kind, val, pos = p.peek()
    if kind != "end":
        raise TermSyntaxError("unexpected %r" % val, pos)
    e = TermExpr(tree, text)
    if check:
        _compile(tree)
    return e


# printer ------------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}


def _prec(t):
    if isinstance(t, BinOp):
        return _PREC[t.op]
    if isinstance(t, Neg):
        return 3
    return 5


def _show(t, need):
    s = _raw(t)
    return s if _prec(t) >= need else "(%s)" % s


def _raw(t):
    if isinstance(t, Num):
        return str(t.value)
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Neg):
        return "-" + _show(t.arg, 3)
    if isinstance(t, Call):
        return "%s(%s)" % (t.name, ", ".join(_raw(a) for a in t.args))
    if t.op in "+-":
        return "%s %s %s" % (_show(t.left, 1), t.op, _show(t.right, 2))
    if t.op in "*/":
        return "%s%s%s" % (_show(t.left, 2), t.op, _show(t.right, 3))
    return "%s^%s" % (_show(t.left, 5), _show(t.right, 3))


def to_text(t):
    if isinstance(t, TermExpr):
        t = t.tree
    return _raw(t)


def swap_variables(t):
    """Exchange n and k throughout the tree."""
    if isinstance(t, TermExpr):
        return TermExpr(swap_variables(t.tree))
    if isinstance(t, Var):
        return Var("k" if t.name == "n" else "n")
    if isinstance(t, Neg):
        return Neg(swap_variables(t.arg))
    if isinstance(t, BinOp):
        return BinOp(t.op, swap_variables(t.left), swap_variables(t.right))
    if isinstance(t, Call):
        return Call(t.name, tuple(swap_variables(a) for a in t.args))
    return t


# exact evaluation at integer points ------------------------------------------

class _Undefined(Exception):
    pass


def _fact(x):
    if x.denominator != 1 or x < 0:
        raise _Undefined
    out = 1
    for i in range(2, int(x) + 1):
        out *= i
    return QQ(out)


def _binom(a, b):
    if a.denominator != 1 or b.denominator != 1:
        raise _Undefined
    a, b = int(a), int(b)
    if b < 0 or (a >= 0 and b > a):
        return QQ(0)
    num = 1
    for i in range(b):
        num *= a - i
    return QQ(num) / _fact(QQ(b))


def _poch(x, m):
    if m.denominator != 1:
        raise _Undefined
    m = int(m)
    out = QQ(1)
    if m >= 0:
        for i in range(m):
            out *= x + i
        return out
    for i in range(1, -m + 1):
        if x - i == 0:
            raise _Undefined
        out /= x - i
    return out


def _ev(t, n0, k0):
    if isinstance(t, Num):
        return QQ(t.value)
    if isinstance(t, Var):
        return QQ(n0 if t.name == "n" else k0)
    if isinstance(t, Neg):
        return -_ev(t.arg, n0, k0)
    if isinstance(t, Call):
        args = [_ev(a, n0, k0) for a in t.args]
        if t.name == "factorial":
            return _fact(args[0])
        if t.name == "gamma":
            return _fact(args[0] - 1)
        if t.name == "binomial":
            return _binom(*args)
        return _poch(*args)
    a, b = _ev(t.left, n0, k0), _ev(t.right, n0, k0)
    if t.op == "+":
        return a + b
    if t.op == "-":
        return a - b
    if t.op == "*":
        return a * b
    if t.op == "/":
        if b == 0:
            raise _Undefined
        return a / b
    if b.denominator != 1 or (a == 0 and b < 0):
        raise _Undefined
    return a ** int(b)


def evaluate(e, n0, k0):
    """Exact value at an integer point, or None where the expression is undefined."""
    tree = e.tree if isinstance(e, TermExpr) else e
    try:
        return _ev(tree, n0, k0)
    except _Undefined:
        return None


# compilation ------------------------------------------------------------------

def _one():
    return RatFunc(Poly.const(1, QQN))


class _Val:
    """coef * prod(atom^e) with atoms ('fact', a, b, c0) = (a*n + b*k + c0)!,
    ('expn', c) = c^n and ('expk', c) = c^k."""

    __slots__ = ("coef", "atoms")

    def __init__(self, coef, atoms=None):
        self.coef = coef
        self.atoms = {key: e for key, e in (atoms or {}).items() if e}

    def is_rational(self):
        return not self.atoms

    def mul(self, other, sign=1):
        atoms = dict(self.atoms)
        for key, e in other.atoms.items():
            atoms[key] = atoms.get(key, 0) + sign * e
        coef = self.coef * other.coef if sign > 0 else self.coef / other.coef
        return _Val(coef, atoms)

    def power(self, m):
        if m < 0 and self.coef.is_zero():
            raise NotHypergeometric("division by zero")
        return _Val(self.coef ** m, {key: e * m for key, e in self.atoms.items()})


def _const_of(val):
    if not val.is_rational():
        return None
    c = val.coef
    if c.is_zero():
        return QQ(0)
    if c.num.degree() > 0 or c.den.degree() > 0:
        return None
    return as_rational(c.num.coeff(0) / c.den.coeff(0))


def _linear(val):
    """(a, b, c) with val = a*n + b*k + c, or None."""
    if not val.is_rational():
        return None
    c = val.coef
    if c.is_zero():
        return QQ(0), QQ(0), QQ(0)
    if c.den.degree() > 0 or c.num.degree() > 1:
        return None
    d = c.den.coeff(0)
    c0 = c.num.coeff(0) / d
    c1 = c.num.coeff(1) / d if c.num.degree() == 1 else QQN.zero
    b = as_rational(c1)
    if b is None or c0.denom != QQN.field.ring.one or c0.numer.degree() > 1:
        return None
    num = c0.numer
    a = QQ(num.coeff(N.numer)) if num.degree() == 1 else QQ(0)
    return a, b, QQ(num.coeff(1))


def _linear_poly(a, b, c):
    return Poly([QQN.convert(c, QQ) + QQN.convert(a, QQ) * N, QQN.convert(b, QQ)], QQN)


def _fact_ratio(L, s):
    """(L + s)!/L! as a rational function, L a linear polynomial."""
    out = _one()
    if s >= 0:
        for i in range(1, s + 1):
            out = out * RatFunc(L + Poly.const(i, QQN))
    else:
        for i in range(0, -s):
            out = out / RatFunc(L - Poly.const(i, QQN))
    return out


def _factorial_of(lin):
    a, b, c = lin
    if a.denominator != 1 or b.denominator != 1:
        raise NotHypergeometric("factorial argument needs integer coefficients of n and k")
    m = c.numerator // c.denominator
    c0 = c - m
    if a == 0 and b == 0:
        if c0 != 0:
            raise NotHypergeometric("factorial of a non-integer constant")
        if m < 0:
            raise NotHypergeometric("factorial of a negative integer")
        return _Val(RatFunc(Poly.const(_fact(QQ(m)), QQN)))
    L0 = _linear_poly(a, b, c0)
    key = ("fact", int(a), int(b), (c0.numerator, c0.denominator))
    return _Val(_fact_ratio(L0, m), {key: 1})


def _need_linear(val, what):
    lin = _linear(val)
    if lin is None:
        raise NotHypergeometric("%s must be linear in n and k" % what)
    return lin


def _exp_of(base, expo):
    c = _const_of(base)
    if c is None:
        raise NotHypergeometric("non-constant base with a non-integer exponent")
    a, b, g = _need_linear(expo, "exponent")
    if a.denominator != 1 or b.denominator != 1:
        raise NotHypergeometric("exponent needs integer coefficients of n and k")
    if c == 0:
        raise NotHypergeometric("zero base with a symbolic exponent")
    if g.denominator != 1:
        raise NotHypergeometric("non-integer constant exponent")
    atoms = {}
    if c != 1:
        key = (c.numerator, c.denominator)
        atoms[("expn", key)] = int(a)
        atoms[("expk", key)] = int(b)
    return _Val(RatFunc(Poly.const(c ** int(g), QQN)), atoms)


def _compile(t):
    if isinstance(t, Num):
        return _Val(RatFunc(Poly.const(t.value, QQN)))
    if isinstance(t, Var):
        return _Val(RatFunc(Poly.const(N, QQN) if t.name == "n" else Poly.gen(QQN)))
    if isinstance(t, Neg):
        v = _compile(t.arg)
        return _Val(-v.coef, v.atoms)
    if isinstance(t, Call):
        args = [_compile(a) for a in t.args]
        if t.name == "factorial":
            return _factorial_of(_need_linear(args[0], "factorial argument"))
        if t.name == "gamma":
            a, b, c = _need_linear(args[0], "gamma argument")
            return _factorial_of((a, b, c - 1))
        if t.name == "binomial":
            x = _need_linear(args[0], "binomial argument")
            y = _need_linear(args[1], "binomial argument")
            d = tuple(p - q for p, q in zip(x, y))
            return _factorial_of(x).mul(_factorial_of(y), -1).mul(_factorial_of(d), -1)
        x = _need_linear(args[0], "pochhammer argument")
        m = _need_linear(args[1], "pochhammer length")
        top = tuple(p + q for p, q in zip(x, m))
        top = (top[0], top[1], top[2] - 1)
        return _factorial_of(top).mul(_factorial_of((x[0], x[1], x[2] - 1)), -1)
    a, b = _compile(t.left), _compile(t.right)
    if t.op in "+-":
        if a.atoms != b.atoms:
            raise NotHypergeometric("sum of terms that are not similar")
        coef = a.coef + b.coef if t.op == "+" else a.coef - b.coef
        return _Val(coef, a.atoms)
    if t.op == "*":
        return a.mul(b)
    if t.op == "/":
        if b.coef.is_zero():
            raise NotHypergeometric("division by zero")
        return a.mul(b, -1)
    m = _const_of(b)
    if m is not None and m.denominator == 1:
        return a.power(int(m))
    return _exp_of(a, b)


def _quotients(val):
    one = _one()
    qn = val.coef.shift_n(1) / val.coef
    qk = val.coef.shift(1) / val.coef
    for key, e in sorted(val.atoms.items(), key=lambda kv: repr(kv[0])):
        if key[0] == "fact":
            _, a, b, (p, q) = key
            L = _linear_poly(QQ(a), QQ(b), QQ(p, q))
            fn, fk = _fact_ratio(L, a), _fact_ratio(L, b)
        else:
            c = RatFunc(Poly.const(QQ(*key[1]), QQN))
            fn, fk = (c, one) if key[0] == "expn" else (one, c)
        qn = qn * fn ** e
        qk = qk * fk ** e
    return qn, qk


def _compiled(e):
    if isinstance(e, str):
        e = parse(e, check=False)
    val = _compile(e.tree)
    if val.coef.is_zero():
        raise NotHypergeometric("the term is identically zero")
    return e, val


def to_bihyper(e):
    """BiHyperTerm with exact quotients in n and k and a direct evaluator."""
    e, val = _compiled(e)
    qn, qk = _quotients(val)
    return BiHyperTerm(qn, qk, expr=e, evaluator=lambda n0, k0: evaluate(e, n0, k0), check=False)


def to_hyperterm(e):
    """Univariate HyperTerm in k (n, if present, is a parameter)."""
    e, val = _compiled(e)
    _qn, qk = _quotients(val)
    if "n" not in e.variables():
        qk = qk.to_dom(QQ)
    return HyperTerm(qk)


def compile_quotients(e):
    """BiHyperTerm, or a univariate HyperTerm when n does not occur."""
    if isinstance(e, str):
        e = parse(e, check=False)
    if "n" in e.variables():
        return to_bihyper(e)
    return to_hyperterm(e)
