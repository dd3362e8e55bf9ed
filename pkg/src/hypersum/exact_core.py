"""Exact polynomials and rational functions in ``k``.

Coefficients live either in the rationals ``QQ`` or in the rational
function field ``QQN = QQ(n)``; the latter is how bivariate objects of
``QQ(n,k)`` are represented.  Heavy lifting (gcd, division, resultants,
factorization) goes through sympy's dense univariate routines.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd as igcd, lcm as _ilcm

from sympy import Symbol
from sympy.polys.domains import QQ
from sympy.polys import densearith as _da
from sympy.polys import densebasic as _db
from sympy.polys import densetools as _dt
from sympy.polys import euclidtools as _et
from sympy.polys import factortools as _ft
from sympy.polys.rings import ring

__all__ = [
    "NEG_INF", "QQ", "QQN", "N", "Poly", "RatFunc", "BiPoly",
    "as_rational", "shift", "shift_n", "integer_shifts", "dispersion",
    "is_shift_free", "is_shift_reduced", "is_shift_coprime",
    "shift_equivalent", "integer_linear_decompose", "UnivariateRep",
    "NotIntegerLinear", "to_bivariate", "from_bivariate", "ratfunc",
    "poly_text", "ratfunc_text", "cleared_pair", "integer_shifts_resultant",
]

NEG_INF = float("-inf")   # degree of the zero polynomial

N_SYM = Symbol("n")
K_SYM = Symbol("k")
QQN = QQ.frac_field(N_SYM)
N = QQN.field.gens[0]        # the element n of QQ(n)
_NRING = QQN.field.ring      # QQ[n]
_NX = _NRING.gens[0]

BIRING, _BN, _BK = ring("n,k", QQ)
_KJ_RING, _KJ_K, _KJ_J = ring("k,j", QQ)


def _unify(d1, d2):
    return QQN if (d1 == QQN or d2 == QQN) else QQ


def _conv(c, dom):
    """Coerce a scalar into ``dom``."""
    if isinstance(c, Fraction):
        c = QQ(c.numerator, c.denominator)
    if dom == QQ:
        if isinstance(c, int):
            return QQ(c)
        if QQN.of_type(c):
            r = as_rational(c)
            if r is None:
                raise ValueError("coefficient depends on n")
            return r
        return QQ.convert(c)
    if QQN.of_type(c):
        return c
    if isinstance(c, int):
        return QQN(c)
    return QQN.convert(QQ.convert(c), QQ)


def as_rational(c):
    """Return ``c`` as an element of QQ if it is a constant, else None."""
    if QQN.of_type(c):
        if c.numer.is_ground and c.denom.is_ground:
            return QQ.convert(c.numer.LC) / QQ.convert(c.denom.LC) if c.numer else QQ(0)
        return None
    return QQ.convert(c)


def _shift_n_coeff(c, i):
    if i == 0 or not QQN.of_type(c):
        return c
    if c.numer.is_ground and c.denom.is_ground:
        return c
    return c.new(c.numer.compose(_NX, _NX + i), c.denom.compose(_NX, _NX + i))


class Poly:
    """Dense polynomial in ``k``; ``coeffs`` is lowest degree first."""

    __slots__ = ("rep", "dom", "_h")

    def __init__(self, coeffs=(), dom=None):
        coeffs = list(coeffs)
        if dom is None:
            dom = QQN if any(QQN.of_type(c) for c in coeffs) else QQ
        self.dom = dom
        self.rep = _db.dup_strip([_conv(c, dom) for c in reversed(coeffs)])
        self._h = None

    @classmethod
    def _raw(cls, rep, dom):
        p = cls.__new__(cls)
        p.rep = _db.dup_strip(rep)
        p.dom = dom
        p._h = None
        return p

    @classmethod
    def gen(cls, dom=QQ):
        return cls._raw([dom.one, dom.zero], dom)

    @classmethod
    def const(cls, c, dom=None):
        if dom is None:
            dom = QQN if QQN.of_type(c) else QQ
        return cls._raw([_conv(c, dom)], dom)

    # basic data
    @property
    def coeffs(self):
        return tuple(reversed(self.rep))

    def degree(self):
        return len(self.rep) - 1 if self.rep else NEG_INF

    def lc(self):
        return self.rep[0] if self.rep else self.dom.zero

    def coeff(self, i):
        d = len(self.rep) - 1
        return self.rep[d - i] if 0 <= i <= d else self.dom.zero

    def is_zero(self):
        return not self.rep

    def is_const(self):
        return len(self.rep) <= 1

    def is_one(self):
        return len(self.rep) == 1 and self.rep[0] == self.dom.one

    def depends_on_n(self):
        return self.dom == QQN and any(as_rational(c) is None for c in self.rep)

    def to_dom(self, dom):
        if dom == self.dom:
            return self
        return Poly._raw([_conv(c, dom) for c in self.rep], dom)

    def _pair(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other, QQN if QQN.of_type(other) else self.dom)
        dom = _unify(self.dom, other.dom)
        return self.to_dom(dom), other.to_dom(dom), dom

    # arithmetic
    def __add__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        a, b, dom = self._pair(other)
        return Poly._raw(_da.dup_add(a.rep, b.rep, dom), dom)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        a, b, dom = self._pair(other)
        return Poly._raw(_da.dup_sub(a.rep, b.rep, dom), dom)

    def __rsub__(self, other):
        a, b, dom = self._pair(other)
        return Poly._raw(_da.dup_sub(b.rep, a.rep, dom), dom)

    def __neg__(self):
        return Poly._raw(_da.dup_neg(self.rep, self.dom), self.dom)

    def __mul__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        a, b, dom = self._pair(other)
        return Poly._raw(_da.dup_mul(a.rep, b.rep, dom), dom)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        return Poly._raw(_da.dup_pow(self.rep, e, self.dom), self.dom)

    def __truediv__(self, other):
        return RatFunc(self) / other

    def __rtruediv__(self, other):
        return RatFunc(other) / RatFunc(self)

    def scale(self, c):
        c = _conv(c, self.dom) if not QQN.of_type(c) else c
        dom = QQN if QQN.of_type(c) else self.dom
        a = self.to_dom(dom)
        return Poly._raw(_da.dup_mul_ground(a.rep, _conv(c, dom), dom), dom)

    def divmod(self, other):
        a, b, dom = self._pair(other)
        if b.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q, r = _da.dup_div(a.rep, b.rep, dom)
        return Poly._raw(q, dom), Poly._raw(r, dom)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exquo(self, other):
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def divides(self, other):
        """True if ``self`` divides ``other``."""
        return (other % self).is_zero()

    def monic(self):
        if not self.rep or self.rep[0] == self.dom.one:
            return self
        return Poly._raw(_da.dup_quo_ground(self.rep, self.rep[0], self.dom), self.dom)

    def gcd(self, other):
        a, b, dom = self._pair(other)
        if a.is_zero():
            return b.monic()
        if b.is_zero():
            return a.monic()
        if a.degree() == 0 or b.degree() == 0:
            return Poly._raw([dom.one], dom)
        if dom == QQN:
            # gcd in QQ[n,k]; factors free of k are units over QQ(n)
            g = to_bivariate(a)[0].gcd(to_bivariate(b)[0])
            return from_bivariate(g).monic()
        return Poly._raw(_et.dup_gcd(a.rep, b.rep, dom), dom).monic()

    def gcdex(self, other):
        """Return (s, t, h) with s*self + t*other = h = gcd, h monic."""
        a, b, dom = self._pair(other)
        s, t, h = _et.dup_gcdex(a.rep, b.rep, dom)
        s, t, h = Poly._raw(s, dom), Poly._raw(t, dom), Poly._raw(h, dom)
        c = h.lc()
        if c != dom.one and c:
            s, t, h = s.scale(1 / c), t.scale(1 / c), h.monic()
        return s, t, h

    def lcm(self, other):
        g = self.gcd(other)
        return (self * other).exquo(g).monic()

    def resultant(self, other):
        a, b, dom = self._pair(other)
        return _et.dup_resultant(a.rep, b.rep, dom)

    def diff(self):
        return Poly._raw(_dt.dup_diff(self.rep, 1, self.dom), self.dom)

    def __call__(self, x):
        dom = _unify(self.dom, QQN if QQN.of_type(x) else QQ)
        return _dt.dup_eval(self.to_dom(dom).rep, _conv(x, dom), dom)

    def eval_n(self, n0):
        """Substitute n = n0 in the coefficients; result over QQ."""
        if self.dom == QQ:
            return self
        out = []
        for c in self.rep:
            d = c.denom.evaluate(_NX, n0) if not c.denom.is_ground else c.denom.LC
            if d == 0:
                raise ZeroDivisionError("pole of a coefficient")
            nu = c.numer.evaluate(_NX, n0) if not c.numer.is_ground else (c.numer.LC if c.numer else 0)
            out.append(QQ.convert(nu) / QQ.convert(d))
        return Poly._raw(out, QQ)

    def shift(self, i=1):
        if i == 0 or len(self.rep) <= 1:
            return self
        return Poly._raw(_dt.dup_shift(self.rep, self.dom.convert(i), self.dom), self.dom)

    def shift_n(self, i=1):
        if i == 0 or self.dom == QQ:
            return self
        return Poly._raw([_shift_n_coeff(c, i) for c in self.rep], self.dom)

    def compose_linear(self, a, b):
        """Return p(a*k + b)."""
        dom = self.dom
        a, b = _conv(a, dom), _conv(b, dom)
        lin = [a, b]
        res = []
        for c in self.rep:
            res = _da.dup_add(_da.dup_mul(res, lin, dom), [c], dom)
        return Poly._raw(res, dom)

    # factorization
    def factor_list(self):
        """(constant, [(monic irreducible, multiplicity), ...]) in a canonical order."""
        return _factor_cached(self)

    def sqf_part(self):
        if self.degree() <= 0:
            return Poly._raw([self.dom.one], self.dom) if self.rep else self
        return self.exquo(self.gcd(self.diff())).monic()

    # comparisons
    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return other == self
        if not isinstance(other, Poly):
            try:
                other = Poly.const(other, self.dom)
            except Exception:
                return NotImplemented
        if self.dom != other.dom:
            dom = _unify(self.dom, other.dom)
            return self.to_dom(dom).rep == other.to_dom(dom).rep
        return self.rep == other.rep

    def __hash__(self):
        if self._h is None:
            if self.dom == QQN and not self.depends_on_n():
                self._h = hash(tuple(as_rational(c) for c in self.rep))
            else:
                self._h = hash(tuple(self.rep))
        return self._h

    def __bool__(self):
        return bool(self.rep)

    def __repr__(self):
        return poly_text(self)

    def to_expr(self):
        x = K_SYM
        dom = self.dom
        return sum((dom.to_sympy(c) * x ** i for i, c in enumerate(self.coeffs)), 0)


@lru_cache(maxsize=4096)
def _factor_cached(p):
    dom = p.dom
    if p.degree() <= 0:
        return (p.lc() if p.rep else dom.zero), ()
    if dom == QQN and not p.depends_on_n():
        c, facs = _factor_cached(p.to_dom(QQ))
        return dom.convert(c, QQ), tuple((f.to_dom(QQN), e) for f, e in facs)
    c, facs = _ft.dup_factor_list(p.rep, dom)
    out = []
    for f, e in facs:
        fp = Poly._raw(f, dom)
        lcf = fp.lc()
        c = c * lcf ** e
        out.append((fp.monic(), e))
    out.sort(key=lambda fe: (fe[0].degree(), str(fe[0]), fe[1]))
    return c, tuple(out)


def _coerce_poly(x, dom=None):
    if isinstance(x, Poly):
        return x
    if dom is None:
        dom = QQN if QQN.of_type(x) else QQ
    return Poly.const(x, dom)


class RatFunc:
    """Reduced fraction ``num/den`` with ``den`` monic."""

    __slots__ = ("num", "den", "_h")

    def __init__(self, num, den=None, _reduced=False):
        if isinstance(num, RatFunc) and den is None:
            self.num, self.den, self._h = num.num, num.den, None
            return
        num = _coerce_poly(num)
        den = _coerce_poly(1 if den is None else den, num.dom)
        num, den, dom = num._pair(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = Poly._raw([dom.one], dom)
            elif den.degree() > 0:
                g = num.gcd(den)
                if g.degree() > 0:
                    num, den = num.exquo(g), den.exquo(g)
            c = den.lc()
            if c != dom.one:
                num, den = num.scale(1 / c), den.monic()
        self.num, self.den, self._h = num, den, None

    @property
    def dom(self):
        return self.num.dom

    def _other(self, other):
        return other if isinstance(other, RatFunc) else RatFunc(other)

    def __add__(self, other):
        o = self._other(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        if self.den.is_one():
            return RatFunc(self.num * o.den + o.num, o.den, _reduced=True)
        if o.den.is_one():
            return RatFunc(self.num + o.num * self.den, self.den, _reduced=True)
        g = self.den.gcd(o.den)
        if g.is_one():
            return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)
        d1, d2 = self.den.exquo(g), o.den.exquo(g)
        return RatFunc(self.num * d2 + o.num * d1, d1 * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        o = self._other(other)
        if self.is_zero() or o.is_zero():
            return RatFunc(Poly._raw([], _unify(self.dom, o.dom)))
        g1 = self.num.gcd(o.den)
        g2 = o.num.gcd(self.den)
        n1, d2 = (self.num.exquo(g1), o.den.exquo(g1)) if g1.degree() > 0 else (self.num, o.den)
        n2, d1 = (o.num.exquo(g2), self.den.exquo(g2)) if g2.degree() > 0 else (o.num, self.den)
        return RatFunc(n1 * n2, d1 * d2, _reduced=False)

    __rmul__ = __mul__

    def inv(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * self._other(other).inv()

    def __rtruediv__(self, other):
        return self._other(other) * self.inv()

    def __pow__(self, e):
        if e >= 0:
            return RatFunc(self.num ** e, self.den ** e, _reduced=True) if e else RatFunc(1)
        return self.inv() ** (-e)

    def is_zero(self):
        return self.num.is_zero()

    def is_poly(self):
        return self.den.degree() == 0

    def is_const(self):
        return self.num.degree() <= 0 and self.den.degree() <= 0

    def shift(self, i=1):
        if i == 0:
            return self
        return RatFunc(self.num.shift(i), self.den.shift(i), _reduced=True)

    def shift_n(self, i=1):
        if i == 0 or self.dom == QQ:
            return self
        return RatFunc(self.num.shift_n(i), self.den.shift_n(i), _reduced=True)

    def to_dom(self, dom):
        return RatFunc(self.num.to_dom(dom), self.den.to_dom(dom), _reduced=True)

    def __call__(self, x):
        d = self.den(x)
        if not d:
            raise ZeroDivisionError("pole")
        return self.num(x) / d

    def eval_n(self, n0):
        nu, de = self.num.eval_n(n0), self.den.eval_n(n0)
        return RatFunc(nu, de)

    def eval_point(self, n0, k0):
        """Value at (n0, k0) as a QQ element; ZeroDivisionError on a pole."""
        r = self.eval_n(n0) if self.dom == QQN else self
        return r(QQ(k0))

    def __eq__(self, other):
        try:
            o = self._other(other)
        except Exception:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._h is None:
            self._h = hash((self.num, self.den))
        return self._h

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return ratfunc_text(self)

    def to_expr(self):
        return self.num.to_expr() / self.den.to_expr()


def _ensure(x):
    return x if isinstance(x, RatFunc) else RatFunc(x)


def ratfunc(expr, dom=None):
    """Build a RatFunc from a sympy expression or string in n, k (convenience)."""
    from sympy import sympify, together, fraction, Poly as SPoly
    e = together(sympify(expr, locals={"n": N_SYM, "k": K_SYM}))
    nu, de = fraction(e)
    if dom is None:
        dom = QQN if e.has(N_SYM) else QQ

    def conv(x):
        sp = SPoly(x, K_SYM, domain=dom)
        cs = sp.all_coeffs()[::-1]
        return Poly([dom.from_sympy(c) if not dom.of_type(c) else c for c in cs], dom)
    return RatFunc(conv(nu), conv(de))


# shifts ------------------------------------------------------------------

def shift(x, i=1, var="k"):
    """sigma_var^i applied to a Poly or RatFunc."""
    if var == "k":
        return x.shift(i)
    if var == "n":
        return x.shift_n(i)
    raise ValueError("unknown variable %r" % var)


def shift_n(x, i=1):
    return x.shift_n(i)


_SPECIAL_POINTS = (101, 211, 307, 401, 503, 1009, 2003, 3001, 4001, 7919)


def _specialize(polys):
    """Substitute n = n0 keeping degrees (leading coefficients nonzero)."""
    for n0 in _SPECIAL_POINTS:
        try:
            out = [p.eval_n(n0) for p in polys]
        except ZeroDivisionError:
            continue
        if all(o.degree() == p.degree() for o, p in zip(out, polys)):
            return out
    raise RuntimeError("no good specialization point found")


def _integer_roots(poly_j):
    """Integer roots of a univariate QQ polynomial given as a ring element in j."""
    if not poly_j:
        return None   # identically zero
    coeffs = {}
    for mon, c in poly_j.terms():
        coeffs[mon[-1]] = coeffs.get(mon[-1], QQ(0)) + c
    deg = max(coeffs)
    rep = [coeffs.get(d, QQ(0)) for d in range(deg, -1, -1)]
    if deg == 0:
        return set()
    _, facs = _ft.dup_factor_list(rep, QQ)
    roots = set()
    for f, _e in facs:
        if len(f) == 2:
            r = -f[1] / f[0]
            if r.denominator == 1:
                roots.add(int(r.numerator))
    return roots


def _shift_candidates_resultant(f0, g0):
    F = sum((c * _KJ_K ** i for i, c in enumerate(f0.coeffs)), _KJ_RING.zero)
    kj = _KJ_K + _KJ_J
    G = sum((c * kj ** i for i, c in enumerate(g0.coeffs)), _KJ_RING.zero)
    cands = _integer_roots(F.resultant(G))
    if cands is None:
        raise RuntimeError("degenerate resultant")
    return cands


def _shift_candidates_factors(f0, g0):
    # a root shared by f0 and sigma^j g0 means an irreducible factor of f0 is sigma^j of one of g0
    cands = set()
    gf = g0.factor_list()[1]
    for p, _e in f0.factor_list()[1]:
        for q, _e2 in gf:
            j = shift_equivalent(q, p)
            if j is not None:
                cands.add(j)
    return cands


def _integer_shifts(f, g, candidates):
    f, g = _coerce_poly(f), _coerce_poly(g)
    f, g, dom = f._pair(g)
    if f.degree() < 1 or g.degree() < 1:
        return []
    f0, g0 = (f, g) if dom == QQ else _specialize([f, g])
    out = []
    for j in sorted(candidates(f0, g0)):
        if dom == QQ or f.gcd(g.shift(j)).degree() > 0:
            out.append(j)
    return out


def integer_shifts(f, g):
    """All integers j with gcd(f, sigma^j g) nontrivial (both signs), sorted.

    Candidates come from shift-equivalent irreducible factors; over QQ(n)
    they are found after specializing n and confirmed by exact gcds.
    """
    return _integer_shifts(f, g, _shift_candidates_factors)


def integer_shifts_resultant(f, g):
    """Same as integer_shifts, via the integer roots of res_k(f(k), g(k + j))."""
    return _integer_shifts(f, g, _shift_candidates_resultant)


def dispersion(f, g):
    """Largest l >= 0 with gcd(f, sigma^l g) nontrivial, or None."""
    s = [j for j in integer_shifts(f, g) if j >= 0]
    return max(s) if s else None


def is_shift_free(p):
    return all(j == 0 for j in integer_shifts(p, p))


def is_shift_reduced(r):
    r = _ensure(r)
    return not integer_shifts(r.num, r.den)


def is_shift_coprime(f, g):
    return all(j == 0 for j in integer_shifts(f, g))


def shift_equivalent(p, q):
    """Integer m with q = sigma^m p, or None."""
    p, q = _coerce_poly(p), _coerce_poly(q)
    p, q, dom = p._pair(q)
    d = p.degree()
    if d != q.degree() or d == NEG_INF:
        return None
    if d == 0:
        return 0 if p == q else None
    if p.lc() != q.lc():
        return None
    # coefficient of k^(d-1) in p(k+m) is p_{d-1} + d*m*p_d
    m = (q.coeff(d - 1) - p.coeff(d - 1)) / (dom.convert(d) * p.lc())
    m = as_rational(m)
    if m is None or m.denominator != 1:
        return None
    m = int(m.numerator)
    return m if p.shift(m) == q else None


# bivariate view ----------------------------------------------------------

def to_bivariate(p):
    """Clear n-denominators: return (P in QQ[n,k], D in QQ(n)) with p = P/D, P primitive over ZZ."""
    p = _coerce_poly(p).to_dom(QQN)
    den = _NRING.one
    for c in p.rep:
        den = den.lcm(c.denom)
    P = BIRING.zero
    for i, c in enumerate(p.coeffs):
        if not c:
            continue
        part = c.numer * den.exquo(c.denom)
        for (a,), v in part.terms():
            P += v * _BN ** a * _BK ** i
    if P:
        cont = P.content()
        P = P.quo_ground(cont)
        # P.content() is the gcd over QQ coefficients; make leading coefficient positive
        if P.LC < 0:
            P, cont = -P, -cont
    else:
        cont = QQ(1)
    return P, QQN.field.new(den, _NRING.one) / QQN.convert(cont, QQ) if P else QQN.one


def from_bivariate(P):
    """Inverse of ``to_bivariate`` (up to the cleared denominator)."""
    by_k = {}
    for (a, i), v in P.terms():
        by_k.setdefault(i, _NRING.zero)
        by_k[i] += v * _NX ** a
    if not by_k:
        return Poly._raw([], QQN)
    deg = max(by_k)
    return Poly([QQN.field.new(by_k.get(i, _NRING.zero), _NRING.one) for i in range(deg + 1)], QQN)


class BiPoly:
    """A polynomial of QQ(n)[k] together with its cleared two-variable form."""

    __slots__ = ("poly", "cleared", "denom")

    def __init__(self, p):
        self.poly = _coerce_poly(p).to_dom(QQN)
        self.cleared, self.denom = to_bivariate(self.poly)

    def __repr__(self):
        return "BiPoly(%s)" % poly_text(self.poly)


class NotIntegerLinear(Exception):
    """Raised when a polynomial has a factor not of the shape P(lambda*n + mu*k)."""


class UnivariateRep:
    """Factor P(lam*n + mu*k) with P monic over QQ; ``xi`` maps delta-exponents to multiplicities."""

    __slots__ = ("P", "lam", "mu", "xi")

    def __init__(self, P, lam, mu, xi=None):
        self.P, self.lam, self.mu = P, lam, mu
        self.xi = dict(xi or {0: 1})

    def __repr__(self):
        return "UnivariateRep(P=%s, lam=%d, mu=%d, xi=%r)" % (poly_text(self.P, "z"), self.lam, self.mu, self.xi)

    def factor(self, shift=0):
        """The polynomial P(lam*n + mu*k + shift) in QQ(n)[k]."""
        lin_n = QQN.convert(self.lam) * N + shift
        return self.P.to_dom(QQN).compose_linear(QQN.convert(self.mu), lin_n)


def _bezout(lam, mu):
    """(alpha, beta) with alpha*lam + beta*mu = 1, for coprime lam and mu >= 0."""
    if mu == 0:
        return 1, 0
    if mu == 1:
        return 0, 1
    alpha = pow(lam % mu, -1, mu)
    return alpha, (1 - alpha * lam) // mu


def _linear_shape(f):
    """For irreducible f in QQ[n,k], return (lam, mu, P) if f = c*P(lam*n+mu*k), else None."""
    dn = f.degree(_BN)
    dk = f.degree(_BK)
    if dk <= 0:
        lam, mu = 1, 0
    elif dn <= 0:
        lam, mu = 0, 1
    else:
        d = f.total_degree() if hasattr(f, "total_degree") else max(a + b for a, b in f.monoms())
        top = {m: c for m, c in f.terms() if m[0] + m[1] == d}
        c_n = top.get((d, 0))
        c_nk = top.get((d - 1, 1), QQ(0))
        if not c_n:
            return None
        ratio = c_nk / (QQ(d) * c_n)           # mu / lam
        mu, lam = int(ratio.numerator), int(ratio.denominator)
        if mu == 0:
            return None
    if mu < 0 or (mu == 0 and lam < 0):
        lam, mu = -lam, -mu
    g = igcd(lam, mu)
    lam, mu = lam // g, mu // g
    if lam * f.diff(_BK) != mu * f.diff(_BN):
        return None
    alpha, beta = _bezout(lam, mu)
    # P(z) = f(alpha*z, beta*z)
    coeffs = {}
    for (a, b), c in f.terms():
        e = a + b
        coeffs[e] = coeffs.get(e, QQ(0)) + c * QQ(alpha) ** a * QQ(beta) ** b
    deg = max(coeffs)
    P = Poly([coeffs.get(e, QQ(0)) for e in range(deg + 1)], QQ)
    return lam, mu, P


def integer_linear_decompose(p):
    """Write p in QQ(n)[k] as c * prod P_i(lam_i n + mu_i k)^e_i.

    Returns (c, [(UnivariateRep, multiplicity), ...]); raises NotIntegerLinear.
    Factors constant in k are included with mu = 0.
    """
    D = QQN.one
    if isinstance(p, BiPoly):
        P, D = p.cleared, p.denom
    elif isinstance(p, Poly):
        P, D = to_bivariate(p)
    else:
        P = p
    if not P:
        raise ValueError("zero polynomial")
    c, facs = P.factor_list()
    out = []
    for f, e in facs:
        if f.is_ground:
            c *= f.LC ** e
            continue
        shape = _linear_shape(f)
        if shape is None:
            raise NotIntegerLinear(str(f.as_expr()))
        lam, mu, Pz = shape
        lcz = Pz.lc()
        c *= lcz ** e
        out.append((UnivariateRep(Pz.monic(), lam, mu), e))
    out.sort(key=lambda t: (t[0].mu, t[0].lam, str(t[0].P), t[1]))
    c = QQN.convert(c, QQ) / D
    cr = as_rational(c)
    return (cr if cr is not None else c), out


# canonical text ------------------------------------------------------------

def _q_text(c):
    c = QQ.convert(c)
    if c.denominator == 1:
        return str(c.numerator)
    return "%s/%s" % (c.numerator, c.denominator)


def _terms_text(terms, names):
    """terms: dict exponent-tuple -> QQ; names in the same order as exponents."""
    items = [(m, c) for m, c in terms.items() if c]
    if not items:
        return "0"
    # decreasing degree in the last variable (k), then the others
    items.sort(key=lambda mc: tuple(-x for x in reversed(mc[0])))
    out = []
    for idx, (m, c) in enumerate(items):
        mon = "*".join(
            (v if e == 1 else "%s^%d" % (v, e)) for v, e in zip(names, m) if e
        )
        neg = c < 0
        a = -c if neg else c
        if mon:
            body = mon if a == 1 else "%s*%s" % (_q_text(a), mon)
        else:
            body = _q_text(a)
        if idx == 0:
            out.append("-" + body if neg else body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def _bi_terms(p):
    """Numerator terms {(i_n, j_k): QQ} plus denominator in n (QQ[n] element)."""
    if p.dom == QQ:
        return {(0, i): c for i, c in enumerate(p.coeffs) if c}, None
    den = _NRING.one
    for c in p.rep:
        den = den.lcm(c.denom)
    terms = {}
    for i, c in enumerate(p.coeffs):
        if not c:
            continue
        part = c.numer * den.exquo(c.denom)
        for (a,), v in part.terms():
            terms[(a, i)] = terms.get((a, i), QQ(0)) + v
    if den == _NRING.one:
        den = None
    return terms, den


def _n_text(pn):
    return _terms_text({(a,): c for (a,), c in pn.terms()}, ("n",))


def _wrap(s):
    return s if _is_atomic(s) else "(%s)" % s


def _is_atomic(s):
    return " " not in s and "/" not in s and not s.startswith("-")


def poly_text(p, var="k"):
    if p.dom == QQ:
        return _terms_text({(i,): c for i, c in enumerate(p.coeffs)}, (var,))
    terms, den = _bi_terms(p)
    if den is None:
        return _terms_text(terms, ("n", var))
    return ratfunc_text(RatFunc(p), var)


def cleared_pair(r):
    """(P, Q) in QQ[n,k] with r = P/Q exactly; Q has positive leading coefficient in k."""
    r = r if isinstance(r, RatFunc) else RatFunc(r)
    num, den = r.num.to_dom(QQN), r.den.to_dom(QQN)
    L = _NRING.one
    for c in num.rep + den.rep:
        L = L.lcm(c.denom)

    def conv(p):
        out = BIRING.zero
        for i, c in enumerate(p.coeffs):
            if c:
                for (a,), val in (c.numer * L.exquo(c.denom)).terms():
                    out += val * _BN ** a * _BK ** i
        return out
    P, Q = conv(num), conv(den)
    cs = [QQ.convert(c) for _m, c in list(P.terms()) + list(Q.terms())]
    den_l, num_g = 1, 0
    for c in cs:
        den_l = _ilcm(den_l, c.denominator)
    for c in cs:
        num_g = igcd(num_g, c.numerator * (den_l // c.denominator))
    cd = QQ(num_g, den_l)
    lead = max(Q.terms(), key=lambda mc: (mc[0][1], mc[0][0]))[1]
    if lead < 0:
        cd = -cd
    return P.quo_ground(cd), Q.quo_ground(cd)


def ratfunc_text(r, var="k"):
    if r.den.is_one() and (r.dom == QQ or _bi_terms(r.num)[1] is None):
        return poly_text(r.num, var)
    Pn, Pd = cleared_pair(r)
    names = ("n", var)
    ns = _terms_text(dict(Pn.terms()), names)
    ds = _terms_text(dict(Pd.terms()), names)
    # a product in the denominator needs parentheses: 1/(2*k), not 1/2*k
    ds = ds if _is_atomic(ds) and "*" not in ds else "(%s)" % ds
    if ns.startswith("-") and _is_atomic(ns[1:]):
        return "%s/%s" % (ns, ds)
    return "%s/%s" % (_wrap(ns), ds)
