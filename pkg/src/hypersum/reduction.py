"""Shell reduction, polynomial reduction and the modified Abramov-Petkovsek reduction.

Every routine returns data satisfying an exact identity of the form

    S = K*sigma(W) - W + (remainder)

where K = u/v is a shift-reduced kernel; the remainder is either a
residual form a/b + q/v or an intermediate a/b + p/v.
"""

import os

from .exact_core import Poly, RatFunc, as_rational, shift_equivalent
from .hyperterm import HyperTerm, kernel_parts, strongly_coprime
from .exact_core import is_shift_free

__all__ = [
    "PolyReducer", "ResidualForm", "ReductionResult", "shell_reduction",
    "polynomial_reduction", "modified_ap_reduction", "is_summable",
    "kernel_reduction", "congruent_mod_VK", "translate_residual_form",
    "residual_violations", "DENOM", "NUMER", "reducer_for", "DegreeLimitExceeded",
]

DENOM = "DENOM"
NUMER = "NUMER"


class DegreeLimitExceeded(RuntimeError):
    pass


def max_degree():
    return int(os.environ.get("HYPERSUM_MAX_DEGREE", "10000"))


def _one(dom):
    return Poly.const(1, dom)


def _zero(dom):
    return Poly((), dom)


class PolyReducer:
    """phi_K(p) = u*sigma(p) - v*p with an echelon basis of its image.

    The echelon is keyed by image degree and grows lazily; the standard
    complement W_K is spanned by the monomials whose degree is not an
    image degree.  Not safe for concurrent use.
    """

    def __init__(self, K):
        u, v = kernel_parts(K)
        self.u, self.v = u, v
        self.dom = u.dom
        self.alpha1 = u.degree()
        self.alpha2 = v.degree()
        d = v - u
        self._ddeg = d.degree()
        self.beta = max(0, self._ddeg)
        self.tau = None if d.is_zero() else as_rational(d.lc() / u.lc())
        self.is_one = d.is_zero()
        self.case = self._case()
        self.echelon = {}
        self._next = 0
        self._k = Poly.gen(u.dom)

    def _case(self):
        if self.is_one:
            return 0
        a1, dd = self.alpha1, self._ddeg
        if dd > a1:
            return 1
        if dd == a1:
            return 2
        if dd < a1 - 1:
            return 3
        t = self.tau
        if t is not None and t.denominator == 1 and t > 0:
            return 5
        return 4

    def phi(self, p):
        return self.u * p.shift(1) - self.v * p

    def _extend(self, i_max):
        if i_max > max_degree():
            raise DegreeLimitExceeded("echelon degree %d exceeds HYPERSUM_MAX_DEGREE" % i_max)
        k = self._k
        while self._next <= i_max:
            pre = k ** self._next
            img = self.phi(pre)
            while not img.is_zero() and img.degree() in self.echelon:
                epre, eimg = self.echelon[img.degree()]
                c = img.lc() / eimg.lc()
                img = img - eimg.scale(c)
                pre = pre - epre.scale(c)
            if not img.is_zero():
                self.echelon[img.degree()] = (pre, img)
            self._next += 1

    def _bound(self, d):
        b = int(d) + 1 if d >= 0 else 0
        if self.case == 5:
            b = max(b, int(self.tau))
        return b

    def complement_degrees(self):
        M = max(self.alpha1, self.alpha2, 0) + 2
        if self.case == 5:
            M += int(self.tau)
        self._extend(M)
        return sorted(d for d in range(M) if d not in self.echelon)

    def basis(self):
        """Monomial basis of W_K."""
        return [self._k ** d for d in self.complement_degrees()]

    def in_complement(self, q):
        ds = set(self.complement_degrees())
        return all(i in ds for i, c in enumerate(q.coeffs) if c)

    def reduce(self, p):
        """Return (f, q) with p = phi(f) + q and q in W_K."""
        dom = self.dom
        p = p.to_dom(dom)
        f = _zero(dom)
        if p.is_zero():
            return f, p
        self._extend(self._bound(p.degree()))
        q_terms = []
        r = p
        while not r.is_zero():
            d = r.degree()
            if d in self.echelon:
                epre, eimg = self.echelon[d]
                c = r.lc() / eimg.lc()
                r = r - eimg.scale(c)
                f = f + epre.scale(c)
            else:
                lead = self._k ** d
                q_terms.append(lead.scale(r.lc()))
                r = r - lead.scale(r.lc())
        q = _zero(dom)
        for t in q_terms:
            q = q + t
        return f, q

    def coordinates(self, q):
        """Coordinates of q in the monomial basis of W_K (basis degree -> coefficient)."""
        return {d: q.coeff(d) for d in self.complement_degrees() if q.coeff(d)}


_REDUCERS = {}


def reducer_for(K):
    K = K if isinstance(K, RatFunc) else RatFunc(K)
    key = (K.num, K.den)
    red = _REDUCERS.get(key)
    if red is None:
        if len(_REDUCERS) > 256:
            _REDUCERS.clear()
        red = _REDUCERS[key] = PolyReducer(K)
    return red


def polynomial_reduction(p, K):
    """(f, q) with p = u*sigma(f) - v*f + q and q in W_K."""
    return reducer_for(K).reduce(p)


class ResidualForm:
    """r = a/b + q/v with respect to the kernel u/v."""

    __slots__ = ("a", "b", "q", "u", "v")

    def __init__(self, a, b, q, u, v):
        self.a, self.b, self.q, self.u, self.v = a, b, q, u, v

    @classmethod
    def zero(cls, K):
        u, v = kernel_parts(K)
        return cls(_zero(u.dom), _one(u.dom), _zero(u.dom), u, v)

    @property
    def kernel(self):
        return RatFunc(self.u, self.v)

    def value(self):
        return RatFunc(self.a, self.b) + RatFunc(self.q, self.v)

    def is_zero(self):
        return self.a.is_zero() and self.q.is_zero()

    def __repr__(self):
        return "ResidualForm(a=%r, b=%r, q=%r, v=%r)" % (self.a, self.b, self.q, self.v)


def residual_violations(r):
    """List of violated residual-form conditions (empty if r is a residual form)."""
    out = []
    K = r.kernel
    if not r.a.is_zero() and not r.a.degree() < r.b.degree():
        out.append("deg a >= deg b")
    if not r.a.is_zero() and r.a.gcd(r.b).degree() > 0:
        out.append("gcd(a, b) != 1")
    if r.b.lc() != r.b.dom.one:
        out.append("b not monic")
    if r.b.degree() > 0:
        if not is_shift_free(r.b):
            out.append("b not shift-free")
        if not strongly_coprime(r.b, K):
            out.append("b not strongly coprime with K")
    if not reducer_for(K).in_complement(r.q):
        out.append("q not in W_K")
    return out


class ReductionResult:
    """T = Delta_k(cofactor*H) + residual*H, i.e. S = K*sigma(f) - f + r."""

    __slots__ = ("kernel", "shell", "cofactor", "residual")

    def __init__(self, kernel, shell, cofactor, residual):
        self.kernel, self.shell, self.cofactor, self.residual = kernel, shell, cofactor, residual

    def check(self):
        K, f = self.kernel, self.cofactor
        return self.shell == K * f.shift(1) - f + self.residual.value()

    def __repr__(self):
        return "ReductionResult(f=%r, r=%r)" % (self.cofactor, self.residual.value())


# moving partial fractions along shift orbits ---------------------------------

def _mult(P, D):
    e = 0
    while D.degree() > 0 and P.divides(D):
        D = D.exquo(P)
        e += 1
    return e, D


def _split(num, A, O):
    """num/(A*O) = q + c/A + d/O with gcd(A, O) = 1 and c, d proper."""
    q, r = num.divmod(A * O)
    if A.degree() <= 0:
        return q, _zero(num.dom), r
    if O.degree() <= 0:
        return q, r, _zero(num.dom)
    s, _t, _h = O.gcdex(A)
    c = (r * s) % A
    d = (r - c * O).exquo(A)
    return q, c, d


class _Mover:
    """Moves pieces c/P^e one shift step at a time modulo V_K.

    Side products with denominator v (forward) or sigma^-1(u) (backward)
    are folded into ``p_acc`` (a numerator over v); the congruence witness
    accumulates in ``W``.
    """

    def __init__(self, u, v):
        self.u, self.v = u, v
        self.um = u.shift(-1)
        dom = u.dom
        self.W = RatFunc(_zero(dom))
        self.p_acc = _zero(dom)

    def _route(self, X, Pn, over):
        e, O = _mult(Pn, X.den)
        A = Pn ** e
        q, c, d = _split(X.num, A, O)
        if over == "v":
            self.p_acc = self.p_acc + q * self.v + d * self.v.exquo(O)
        else:
            p1 = d * self.um.exquo(O)
            self.p_acc = self.p_acc + q * self.v + p1.shift(1)
            self.W = self.W - RatFunc(p1, self.um)
        return c, e

    def forward(self, c, P, e):
        self.W = self.W - RatFunc(c, P ** e)
        Pn = P.shift(1)
        X = RatFunc(c.shift(1) * self.u, Pn ** e * self.v)
        c, e = self._route(X, Pn, "v")
        return c, Pn, e

    def backward(self, c, P, e):
        Pm = P.shift(-1)
        X = RatFunc(c.shift(-1) * self.v.shift(-1), Pm ** e * self.um)
        self.W = self.W + X
        c, e = self._route(X, Pm, "u")
        return c, Pm, e

    def move(self, c, P, e, steps):
        while steps != 0 and e > 0 and not c.is_zero():
            if steps > 0:
                c, P, e = self.forward(c, P, e)
                steps -= 1
            else:
                c, P, e = self.backward(c, P, e)
                steps += 1
        if steps != 0:   # piece vanished on the way
            P = P.shift(steps)
            e = 0
            c = _zero(c.dom)
        return c, P, e


def _partial_fractions(rem, den, parts):
    """rem/den = sum c_i / F_i for pairwise coprime F_i with product den."""
    out = []
    for F in parts:
        O = den.exquo(F)
        s, _t, _h = O.gcdex(F)
        out.append((rem * s) % F)
    return out


def _orbit_classes(factors):
    """Group (P, e) by shift-equivalence: list of (base, [(pos, e)])."""
    classes = []
    for P, e in factors:
        for base, members in classes:
            m = shift_equivalent(base, P)
            if m is not None:
                members.append((m, e))
                break
        else:
            classes.append((P, [(0, e)]))
    return classes


def _positions(base, poly):
    if poly.degree() <= 0:
        return []
    out = []
    for P, _e in poly.factor_list()[1]:
        m = shift_equivalent(base, P)
        if m is not None:
            out.append(m)
    return out


def shell_reduction(K, S):
    """S = K*sigma(S1) - S1 + a/b + p/v with b shift-free and strongly coprime with K.

    Returns (S1, a, b, p).
    """
    K = RatFunc(K)
    S = RatFunc(S)
    u, v = kernel_parts(K)
    if S.dom != u.dom:
        from .exact_core import _unify
        dom = _unify(S.dom, u.dom)
        S, u, v = S.to_dom(dom), u.to_dom(dom), v.to_dom(dom)
        K = RatFunc(u, v)
    dom = u.dom
    if S.is_zero():
        return RatFunc(_zero(dom)), _zero(dom), _one(dom), _zero(dom)
    mover = _Mover(u, v)
    poly, rem = S.num.divmod(S.den)
    mover.p_acc = poly * v
    total = RatFunc(_zero(dom))
    if S.den.degree() > 0 and not rem.is_zero():
        _c, facs = S.den.factor_list()
        parts = [P ** e for P, e in facs]
        pieces = dict(zip([P for P, _ in facs], _partial_fractions(rem, S.den, parts)))
        for base, members in _orbit_classes(facs):
            upos = _positions(base, u)
            vpos = _positions(base, v)
            minpos = min(m for m, _ in members)
            if upos:
                target = max(max(upos) + 1, minpos)
            elif vpos:
                target = min(min(vpos) - 1, minpos)
            else:
                target = minpos
            acc = RatFunc(_zero(dom))
            for m, e in members:
                P = base.shift(m)
                c_, P_, e_ = mover.move(pieces[P], P, e, target - m)
                if e_ > 0 and not c_.is_zero():
                    acc = acc + RatFunc(c_, P_ ** e_)
            total = total + acc
    S1 = mover.W
    p = mover.p_acc
    if u == v:   # rational case: antidifference the polynomial part
        f, _q = polynomial_reduction(p, K)
        S1 = S1 + RatFunc(f)
        p = _zero(dom)
    return S1, total.num, total.den, p


def _as_kernel_shell(T, shell=None):
    if isinstance(T, HyperTerm):
        return T.kernel, T.shell
    if shell is None:
        raise TypeError("expected a HyperTerm or a (kernel, shell) pair")
    return RatFunc(T), RatFunc(shell)


def modified_ap_reduction(T, shell=None):
    """Decompose T = S*H as Delta_k(f*H) + r*H with r a residual form.

    ``T`` is a HyperTerm, or a kernel given together with ``shell``.
    """
    K, S = _as_kernel_shell(T, shell)
    u, v = kernel_parts(K)
    S1, s, b, t = shell_reduction(K, S)
    p, a = s.divmod(b)
    h, q = polynomial_reduction(v * p + t, K)
    res = ResidualForm(a, b.monic() if not a.is_zero() else _one(a.dom), q, u, v)
    return ReductionResult(K, S, S1 + RatFunc(h), res)


def is_summable(T, shell=None):
    """Cofactor f with T = Delta_k(f*H) if T is summable, else None."""
    res = modified_ap_reduction(T, shell)
    return res.cofactor if res.residual.is_zero() else None


def kernel_reduction(p, K, m, side=DENOM):
    """Reduce p/prod_{i=0..m} sigma^i(v) (DENOM) or p/prod_{j=1..m+1} sigma^-j(u) (NUMER).

    Returns (q, w) with the input congruent to q/v: input = K*sigma(w) - w + q/v.
    """
    K = RatFunc(K)
    u, v = kernel_parts(K)
    dom = u.dom
    w = RatFunc(_zero(dom))
    cur = p
    if side == DENOM:
        den = [v.shift(i) for i in range(m + 1)]
        for j in range(m, 0, -1):
            vm = den[j]
            s0, t0, _h = u.gcdex(vm)
            A = (s0 * cur) % vm
            B = (cur - A * u).exquo(vm)
            s = A.shift(-1)
            t = B + s
            prev = _one(dom)
            for d in den[:j]:
                prev = prev * d
            w = w + RatFunc(s, prev)
            cur = t
        f, q = polynomial_reduction(cur, K)
        return q, w + RatFunc(f)
    if side == NUMER:
        zs = [u.shift(-j) for j in range(1, m + 2)]
        acc = _zero(dom)
        for j in range(m, -1, -1):
            zprev = _one(dom)
            for z in zs[:j]:
                zprev = zprev * z
            w = w - RatFunc(cur, zprev * zs[j])
            # sigma(cur/z_j) * K = sigma(cur)/(v*z_{j-1})
            q0, A, B = _split(cur.shift(1), v, zprev)
            acc = acc + q0 * v + A
            cur = B
        f, q = polynomial_reduction(acc, K)
        return q, w + RatFunc(f)
    raise ValueError("side must be DENOM or NUMER")


def congruent_mod_VK(r1, r2, K):
    """(True, w) if r1 - r2 = K*sigma(w) - w, else (False, None)."""
    K = RatFunc(K)
    res = modified_ap_reduction(K, RatFunc(r1) - RatFunc(r2))
    if res.residual.is_zero():
        return True, res.cofactor
    return False, None


def translate_residual_form(K, target_b, s):
    """(w, t) with s = K*sigma(w) - w + t and lcm(target_b, t.b) shift-free.

    Factors of the significant denominator of ``s`` that are shifts of
    factors of ``target_b`` are moved onto them.
    """
    K = RatFunc(K)
    u, v = kernel_parts(K)
    dom = u.dom
    if isinstance(s, RatFunc):
        s = modified_ap_reduction(K, s).residual
    if s.b.degree() <= 0 or s.a.is_zero() or target_b.degree() <= 0:
        return RatFunc(_zero(dom)), s
    tfac = [P for P, _e in target_b.factor_list()[1]]
    _c, gfac = s.b.factor_list()
    parts = [P ** e for P, e in gfac]
    pieces = _partial_fractions(s.a, s.b, parts)
    mover = _Mover(u, v)
    total = RatFunc(_zero(dom))
    for (P, e), c in zip(gfac, pieces):
        steps = 0
        for Q in tfac:
            m = shift_equivalent(Q, P)   # P = sigma^m Q
            if m is not None:
                steps = -m
                break
        if steps:
            c, P, e = mover.move(c, P, e, steps)
        if e > 0 and not c.is_zero():
            total = total + RatFunc(c, P ** e)
    f, q = polynomial_reduction(s.q + mover.p_acc, K)
    w = mover.W + RatFunc(f)
    a, b = total.num, total.den
    t = ResidualForm(a, b if not a.is_zero() else _one(dom), q, u, v)
    return w, t
