"""Hypergeometric terms given by shift quotients, and their rational normal forms."""

from .exact_core import (
    QQ, QQN, Poly, RatFunc, integer_shifts, is_shift_reduced,
    ratfunc_text, cleared_pair,
)

__all__ = [
    "HyperTerm", "BiHyperTerm", "rational_normal_form", "is_rnf",
    "multiplicative_decomposition", "strongly_coprime", "numeric_eval",
    "POLE", "kernel_parts",
]


class _Pole:
    def __repr__(self):
        return "POLE"


POLE = _Pole()


def kernel_parts(K):
    """(u, v) of a kernel K = u/v, with v monic."""
    K = K if isinstance(K, RatFunc) else RatFunc(K)
    return K.num, K.den


def _prod_shifts(g, lo, hi):
    out = Poly.const(1, g.dom)
    for j in range(lo, hi + 1):
        out = out * g.shift(j)
    return out


def rational_normal_form(f):
    """Return (K, S) with f = K*sigma(S)/S and K shift-reduced.

    Shift-overlapping factors of numerator and denominator are peeled off
    in increasing order of the shift.
    """
    f = f if isinstance(f, RatFunc) else RatFunc(f)
    if f.is_zero():
        raise ValueError("zero has no rational normal form")
    c = f.num.lc()
    A, B = f.num.monic(), f.den
    S = RatFunc(Poly.const(1, f.dom))
    while True:
        shifts = [j for j in integer_shifts(A, B) if j != 0]
        if not shifts:
            break
        i = shifts[0]
        g = A.gcd(B.shift(i))
        A = A.exquo(g)
        if i > 0:
            B = B.exquo(g.shift(-i))
            S = S * _prod_shifts(g, -i, -1)
        else:
            B = B.exquo(g.shift(-i))
            S = S / _prod_shifts(g, 0, -i - 1)
    return RatFunc(A.scale(c), B), S


def is_rnf(f, K, S):
    """Check that (K, S) is a rational normal form of f."""
    f, K, S = RatFunc(f), RatFunc(K), RatFunc(S)
    return is_shift_reduced(K) and K * S.shift(1) / S == f


def strongly_coprime(p, K):
    """gcd(p, sigma^-i u) = gcd(p, sigma^i v) = 1 for all i >= 0."""
    u, v = kernel_parts(K)
    p = p if isinstance(p, Poly) else Poly.const(p)
    if p.degree() <= 0:
        return True
    if u.degree() > 0 and any(j <= 0 for j in integer_shifts(p, u)):
        return False
    if v.degree() > 0 and any(j >= 0 for j in integer_shifts(p, v)):
        return False
    return True


class HyperTerm:
    """T = S*H where sigma(H)/H = K; K = u/v is the kernel and S the shell."""

    def __init__(self, shift_quotient, kernel=None, shell=None, anchor="H"):
        q = RatFunc(shift_quotient)
        if kernel is None:
            if shell is not None:
                raise ValueError("a shell needs its kernel")
            kernel, shell = rational_normal_form(q)
        kernel = RatFunc(kernel)
        shell = RatFunc(1 if shell is None else shell)
        if kernel * shell.shift(1) / shell != q:
            raise ValueError("kernel and shell do not match the shift quotient")
        if not is_shift_reduced(kernel):
            raise ValueError("kernel is not shift-reduced")
        self.shift_quotient = q
        self.kernel = kernel
        self.shell = shell
        self.anchor = anchor

    @classmethod
    def from_kernel(cls, kernel, shell=1, anchor="H"):
        kernel, shell = RatFunc(kernel), RatFunc(shell)
        return cls(kernel * shell.shift(1) / shell, kernel, shell, anchor)

    @property
    def u(self):
        return self.kernel.num

    @property
    def v(self):
        return self.kernel.den

    def is_rational(self):
        return self.kernel == RatFunc(1)

    def __repr__(self):
        return "HyperTerm(K=%s, S=%s)" % (ratfunc_text(self.kernel), ratfunc_text(self.shell))


def multiplicative_decomposition(quotient):
    """HyperTerm with kernel and shell filled in from a shift quotient."""
    return HyperTerm(quotient)


class _BiEval:
    """Evaluation of a rational function of QQ(n,k) at integer points; None at poles."""

    __slots__ = ("num", "den")

    def __init__(self, r):
        P, Q = cleared_pair(r)
        self.num = list(P.terms())
        self.den = list(Q.terms())

    @staticmethod
    def _ev(terms, n0, k0):
        s = QQ(0)
        for (a, b), c in terms:
            s += c * QQ(n0) ** a * QQ(k0) ** b
        return s

    def __call__(self, n0, k0):
        d = self._ev(self.den, n0, k0)
        if d == 0:
            return None
        return self._ev(self.num, n0, k0) / d


class BiHyperTerm:
    """Bivariate hypergeometric term given by its shift quotients in n and k."""

    def __init__(self, quotient_n, quotient_k, expr=None, evaluator=None, check=True):
        self.quotient_n = RatFunc(quotient_n).to_dom(QQN)
        self.quotient_k = RatFunc(quotient_k).to_dom(QQN)
        self.expr = expr
        self.evaluator = evaluator
        if check and not self.is_compatible():
            raise ValueError("shift quotients are not compatible")
        self._evals = None

    def is_compatible(self):
        f, g = self.quotient_n, self.quotient_k
        return f.shift(1) / f == g.shift_n(1) / g

    def evaluators(self):
        if self._evals is None:
            self._evals = (_BiEval(self.quotient_n), _BiEval(self.quotient_k))
        return self._evals

    def value(self, n0, k0):
        """Direct value from the source expression, or None if unavailable."""
        if self.evaluator is None:
            return None
        return self.evaluator(n0, k0)

    def __repr__(self):
        return "BiHyperTerm(qn=%s, qk=%s)" % (ratfunc_text(self.quotient_n), ratfunc_text(self.quotient_k))


def _walk(q, axis, start, stop, fixed, value, final=True):
    """Move along one axis multiplying (or dividing) by the quotient; None on zero/pole.

    With ``final`` a zero quotient is accepted on the last forward step, giving 0.
    """
    pos = start
    while pos != stop:
        if stop > pos:
            pt = (pos, fixed) if axis == 0 else (fixed, pos)
            r = q(*pt)
            if r is None or (r == 0 and not (final and pos + 1 == stop)):
                return None
            value = value * r
            pos += 1
        else:
            pt = (pos - 1, fixed) if axis == 0 else (fixed, pos - 1)
            r = q(*pt)
            if r is None or r == 0:
                return None
            value = value / r
            pos -= 1
    return value


def numeric_eval(T, n0, k0, base, value_at_base):
    """Exact T(n0, k0) from T(base) by multiplying shift quotients along a lattice path.

    The path first moves in n, then in k; if that hits a zero or a pole of a
    quotient the k-first path is tried; otherwise POLE is returned.
    """
    qn, qk = T.evaluators()
    nb, kb = base
    val = QQ.convert(value_at_base) if not isinstance(value_at_base, int) else QQ(value_at_base)
    v = _walk(qn, 0, nb, n0, kb, val, final=k0 == kb)
    if v is not None:
        v = _walk(qk, 1, kb, k0, n0, v)
    if v is not None:
        return v
    v = _walk(qk, 1, kb, k0, nb, val, final=n0 == nb)
    if v is not None:
        v = _walk(qn, 0, nb, n0, k0, v)
    return POLE if v is None else v
