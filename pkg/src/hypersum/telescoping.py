"""Creative telescoping for bivariate hypergeometric terms by reduction."""

from .exact_core import (
    QQ, QQN, Poly, RatFunc, as_rational, shift_equivalent,
    integer_linear_decompose, NotIntegerLinear, UnivariateRep, ratfunc_text,
)
from .hyperterm import rational_normal_form, kernel_parts, strongly_coprime, numeric_eval, POLE
from .reduction import modified_ap_reduction, translate_residual_form

__all__ = [
    "NoTelescoper", "Telescoper", "Certificate", "CTResult", "existence_criterion",
    "reduction_ct", "bound_reduction_ct", "shift_homogeneous_decomposition",
    "common_multiple_B", "bound_upper", "bound_lower", "bounds", "verify_rct",
    "NONE", "NORMALIZED", "UNNORMALIZED", "SYMBOLIC", "NUMERIC", "residual_rank",
    "kernel_dim_bound", "nullspace", "shift_related",
]

NONE, NORMALIZED, UNNORMALIZED = "none", "normalized", "unnormalized"
SYMBOLIC, NUMERIC = "symbolic", "numeric"

_NRING = QQN.field.ring


class NoTelescoper(Exception):
    """The significant denominator is not integer-linear."""


class Telescoper:
    """L = sum_i coeffs[i] * S_n^i, monic in its top coefficient."""

    def __init__(self, coeffs):
        coeffs = [c if QQN.of_type(c) else QQN.convert(QQ.convert(c), QQ) for c in coeffs]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        if not coeffs:
            raise ValueError("zero operator")
        lc = coeffs[-1]
        self.coeffs = [c / lc for c in coeffs]

    @property
    def order(self):
        return len(self.coeffs) - 1

    def cleared(self):
        """Integer-polynomial form: list of QQ[n] elements with no common content."""
        L = _NRING.one
        for c in self.coeffs:
            L = L.lcm(c.denom)
        polys = [c.numer * L.exquo(c.denom) for c in self.coeffs]
        g = _NRING.zero
        for p in polys:
            g = p if not g else g.gcd(p)
        polys = [p.exquo(g) for p in polys]
        cont = polys[-1].content()
        lead = polys[-1].LC
        cont = cont if lead > 0 else -cont
        return [p.quo_ground(cont) for p in polys]

    def __eq__(self, other):
        return isinstance(other, Telescoper) and self.coeffs == other.coeffs

    def text(self, cleared=False):
        from .exact_core import _n_text
        parts = []
        cs = self.cleared() if cleared else self.coeffs
        for i in range(len(cs) - 1, -1, -1):
            c = cs[i]
            if not c:
                continue
            s = _n_text(c) if cleared else (ratfunc_text(RatFunc(Poly.const(c, QQN))))
            op = "" if i == 0 else ("Sn" if i == 1 else "Sn^%d" % i)
            if op and s == "1":
                parts.append(op)
            elif op:
                parts.append("(%s)*%s" % (s, op))
            elif len(cs) == 1:
                parts.append(s)
            else:
                parts.append("(%s)" % s)
        return " + ".join(parts)

    def __repr__(self):
        return "Telescoper(%s)" % self.text()


class Certificate:
    """G = g*H; ``pairs`` holds the unnormalized (e_j, g_j) list when kept."""

    def __init__(self, mode, g=None, pairs=None):
        self.mode = mode
        self.pairs = pairs
        self._g = g

    @property
    def g(self):
        if self._g is None and self.pairs is not None:
            total = RatFunc(Poly((), QQN))
            for e, gj in self.pairs:
                total = total + RatFunc(Poly.const(e, QQN)) * gj
            self._g = total
        return self._g

    def normalized(self):
        return Certificate(NORMALIZED, g=self.g)


class CTResult:
    __slots__ = ("telescoper", "certificate", "kernel", "shell", "residuals", "denominators", "bounds",
                 "audit")

    def __init__(self, telescoper, certificate, kernel, shell, residuals, denominators, bounds=None):
        self.audit = None
        self.telescoper = telescoper
        self.certificate = certificate
        self.kernel = kernel
        self.shell = shell
        self.residuals = residuals
        self.denominators = denominators
        self.bounds = bounds


def _setup(T):
    K, S = rational_normal_form(T.quotient_k)
    Nq = T.quotient_n * S / S.shift_n(1)   # sigma_n(H)/H
    return K, S, Nq


def _is_integer_linear(b):
    if b.degree() <= 0:
        return True
    try:
        integer_linear_decompose(b)
    except NotIntegerLinear:
        return False
    return True


def existence_criterion(T):
    """True iff T has a telescoper (significant denominator integer-linear)."""
    K, S, _ = _setup(T)
    r0 = modified_ap_reduction(K, S).residual
    return r0.is_zero() or _is_integer_linear(r0.b)


# linear algebra over QQ(n) ----------------------------------------------------

def _vector(r, B):
    """Coordinates of the residual form r against common significant denominator B."""
    A = r.a * B.exquo(r.b) if not r.a.is_zero() else Poly((), QQN)
    db = max(int(B.degree()), 0)
    vec = [A.coeff(i) for i in range(db)]
    return vec, list(r.q.coeffs)


def _columns(rs, B):
    cols = []
    qlen = 0
    for r in rs:
        a, q = _vector(r, B)
        cols.append((a, q))
        qlen = max(qlen, len(q))
    out = []
    for a, q in cols:
        out.append(a + q + [QQN.zero] * (qlen - len(q)))
    return out


def _clear_column(col):
    L = _NRING.one
    for c in col:
        if c:
            L = L.lcm(c.denom)
    return [c.numer * L.exquo(c.denom) if c else _NRING.zero for c in col], L


def nullspace(columns):
    """A nonzero vector c over QQ(n) with sum c_j * columns[j] = 0, or None.

    Columns are cleared to QQ[n] and reduced by fraction-free (Bareiss)
    elimination.
    """
    ncol = len(columns)
    if ncol == 0:
        return None
    nrow = len(columns[0])
    cleared = [_clear_column(c) for c in columns]
    M = [[cleared[j][0][i] for j in range(ncol)] for i in range(nrow)]
    pivots = []
    prev = _NRING.one
    row = 0
    for col in range(ncol):
        piv = None
        for i in range(row, nrow):
            if M[i][col]:
                piv = i
                break
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        for i in range(row + 1, nrow):
            for j in range(col + 1, ncol):
                M[i][j] = (M[row][col] * M[i][j] - M[i][col] * M[row][j]).exquo(prev)
            M[i][col] = _NRING.zero
        prev = M[row][col]
        pivots.append(col)
        row += 1
        if row == nrow:
            break
    free = [j for j in range(ncol) if j not in pivots]
    if not free:
        return None
    fcol = free[0]
    x = [QQN.zero] * ncol
    x[fcol] = QQN.one
    Mf = [[QQN.field.new(e, _NRING.one) for e in r] for r in M]
    for idx in range(len(pivots) - 1, -1, -1):
        pc = pivots[idx]
        s = QQN.zero
        for j in range(pc + 1, ncol):
            if x[j]:
                s += Mf[idx][j] * x[j]
        x[pc] = -s / Mf[idx][pc]
    # undo column scaling: columns were multiplied by L_j
    return [x[j] * QQN.field.new(cleared[j][1], _NRING.one) for j in range(ncol)]


def residual_rank(rs):
    """Rank over QQ(n) of residual forms sharing one kernel."""
    B = Poly.const(1, QQN)
    for r in rs:
        if r.b.degree() > 0:
            B = B.lcm(r.b)
    cols = _columns(rs, B)
    if not cols or not cols[0]:
        return 0
    rank = 0
    kept = []
    for c in cols:
        if nullspace(kept + [c]) is None:
            kept.append(c)
            rank += 1
    return rank


# reduction-based creative telescoping ---------------------------------------

def _ct_loop(T, want, lower=None, upper=None, audit=False):
    K, S, Nq = _setup(T)
    res0 = modified_ap_reduction(K, S)
    r0, g0 = res0.residual, res0.cofactor
    one = Telescoper([1])
    if r0.is_zero():
        cert = None if want == NONE else (
            Certificate(UNNORMALIZED, pairs=[(QQN.one, g0)]) if want == UNNORMALIZED
            else Certificate(NORMALIZED, g=g0))
        return CTResult(one, cert, K, S, [r0], [r0.b])
    if not _is_integer_linear(r0.b):
        raise NoTelescoper("the significant denominator %s is not integer-linear" % r0.b)
    rs, gs = [r0], [g0]
    B = r0.b
    checks = [] if audit else None
    i = 0
    while True:
        i += 1
        if upper is not None and i > upper:
            raise RuntimeError("no telescoper found within the upper bound")
        shell = rs[-1].value().shift_n(1) * Nq
        red = modified_ap_reduction(K, shell)
        if audit:
            checks.append(shift_related(red.residual.b, r0.b.shift_n(i)))
        w, t = translate_residual_form(K, B, red.residual)
        rs.append(t)
        if want != NONE:
            gs.append(gs[-1].shift_n(1) * Nq + red.cofactor + w)
        if t.b.degree() > 0:
            B = B.lcm(t.b)
        if lower is not None and i < lower:
            continue
        c = nullspace(_columns(rs, B))
        if c is None:
            continue
        L = Telescoper(c)
        lc = c[-1]
        coeffs = [x / lc for x in c]
        cert = None
        if want == UNNORMALIZED:
            cert = Certificate(UNNORMALIZED, pairs=list(zip(coeffs, gs)))
        elif want == NORMALIZED:
            cert = Certificate(UNNORMALIZED, pairs=list(zip(coeffs, gs))).normalized()
        out = CTResult(L, cert, K, S, rs, [r.b for r in rs])
        out.audit = checks
        return out


def shift_related(p, q):
    """Irreducible factors of p and q pair up under k-shifts with equal multiplicities."""
    fp, fq = list(p.factor_list()[1]), list(q.factor_list()[1])
    if len(fp) != len(fq):
        return False
    for P, e in fp:
        hit = next((j for j, (Q, e2) in enumerate(fq) if e2 == e and shift_equivalent(P, Q) is not None), None)
        if hit is None:
            return False
        fq.pop(hit)
    return True


def reduction_ct(T, want_certificate=UNNORMALIZED, audit=False):
    """Minimal telescoper of T (and certificate unless ``want_certificate`` is NONE).

    With ``audit`` the result lists, per loop step i, whether the significant
    denominator of the reduced sigma_n^i(T) is shift-related to sigma_n^i(b_0).
    """
    return _ct_loop(T, want_certificate, audit=audit)


def bound_reduction_ct(T, want_certificate=UNNORMALIZED, audit=False):
    """As reduction_ct, skipping linear solves before the lower bound, capped at the upper bound."""
    lo, up = bounds(T)
    res = _ct_loop(T, want_certificate, lower=lo, upper=up, audit=audit)
    res.bounds = (lo, up)
    return res


# shift-homogeneous structure and bounds --------------------------------------

def shift_homogeneous_decomposition(r):
    """(c, [UnivariateRep]) grouping integer-linear factors by shift-equivalence in z.

    ``r`` is a polynomial or rational function of QQ(n)[k]; factors of the
    denominator carry negative multiplicities in ``xi``.
    """
    r = RatFunc(r).to_dom(QQN)
    comps = []
    consts = []
    for part, sign in ((r.num, 1), (r.den, -1)):
        if part.degree() <= 0 and not part.depends_on_n():
            cc = as_rational(part.lc())
            consts.append(cc if sign > 0 else 1 / cc)
            continue
        cc, reps = integer_linear_decompose(part)
        consts.append(cc if sign > 0 else 1 / cc)
        for rep, e in reps:
            for comp in comps:
                if comp.lam == rep.lam and comp.mu == rep.mu:
                    s = shift_equivalent(comp.P, rep.P)   # rep.P(z) = comp.P(z + s)
                    if s is not None:
                        comp.xi[s] = comp.xi.get(s, 0) + sign * e
                        break
            else:
                comps.append(UnivariateRep(rep.P, rep.lam, rep.mu, {0: sign * e}))
    for comp in comps:
        comp.xi = {s: m for s, m in comp.xi.items() if m}
        lo = min(comp.xi) if comp.xi else 0
        if lo:
            comp.P = comp.P.shift(lo)
            comp.xi = {s - lo: m for s, m in comp.xi.items()}
    comps = [cp for cp in comps if cp.xi]
    c = QQN.one
    for x in consts:
        c = c * (x if QQN.of_type(x) else QQN.convert(QQ.convert(x), QQ))
    cr = as_rational(c)
    return (cr if cr is not None else c), comps


def kernel_dim_bound(K):
    """max(deg u, deg v) - [deg(v-u) <= deg u - 1] with deg(v-u) read as max(0, .)."""
    u, v = kernel_parts(K)
    d = v - u
    beta = max(0, d.degree())
    a1, a2 = u.degree(), v.degree()
    return max(a1, a2) - (1 if beta <= a1 - 1 else 0)


def common_multiple_B(b, K):
    """B with b | B, B shift-free and strongly coprime with K, deg_k B = sum mu_j m_j deg P_j."""
    b = b if isinstance(b, Poly) else Poly.const(b, QQN)
    b = b.to_dom(QQN)
    B = Poly.const(1, QQN)
    if b.degree() <= 0:
        return B
    _c, comps = shift_homogeneous_decomposition(b)
    for comp in comps:
        if comp.mu == 0:
            continue
        m = max(comp.xi.values())
        for j in range(comp.mu):
            present = [s for s in comp.xi if (s - j) % comp.mu == 0]
            if present:
                shift_j = (present[0] - j) // comp.mu
                F = comp.factor(j + comp.mu * shift_j)
            else:
                F = None
                for step in _zigzag():
                    cand = comp.factor(j + comp.mu * step)
                    if strongly_coprime(cand, K):
                        F = cand
                        break
            B = B * F.monic() ** m
    return B


def _zigzag():
    yield 0
    i = 1
    while True:
        yield -i
        yield i
        i += 1


def _residual0(T):
    K, S, _ = _setup(T)
    return K, modified_ap_reduction(K, S).residual


def bound_upper(T):
    K, r0 = _residual0(T)
    if r0.is_zero():
        return 0
    return _upper(K, r0.b)


def _upper(K, b):
    if not _is_integer_linear(b):
        raise NoTelescoper("the significant denominator %s is not integer-linear" % b)
    total = kernel_dim_bound(K)
    if b.degree() > 0:
        _c, comps = shift_homogeneous_decomposition(b)
        for comp in comps:
            if comp.mu:
                total += comp.mu * max(comp.xi.values()) * comp.P.degree()
    return total


def _lower(b, cap):
    """Lower bound for a non-summable term with significant denominator b (at least 1)."""
    if b.degree() <= 0:
        return 1
    facs = b.factor_list()[1]
    best = 1
    for p, alpha in facs:
        rho = 1
        while True:
            hit = False
            for q, beta in facs:
                if beta >= alpha and shift_equivalent(p, q.shift_n(rho)) is not None:
                    hit = True
                    break
            if hit or rho >= cap:
                break
            rho += 1
        best = max(best, rho)
    return best


def bound_lower(T):
    K, r0 = _residual0(T)
    if r0.is_zero():
        return 0
    return _lower(r0.b, _upper(K, r0.b))


def bounds(T):
    """(lower, upper) on the order of the minimal telescoper."""
    K, r0 = _residual0(T)
    if r0.is_zero():
        return 0, 0
    up = _upper(K, r0.b)
    return _lower(r0.b, up), up


# verification -----------------------------------------------------------------

def _cert_over_T(cert, S):
    return cert.g / S


def verify_rct(L, G, T, mode=SYMBOLIC, points=None, base=None, base_value=None, shell=None,
               min_points=1):
    """Check L(T) = Delta_k(G) where G = g*H and T = S*H.

    SYMBOLIC: rational identity sum_i e_i sigma_n^i(T)/T = sigma_k(G)/T - G/T.
    NUMERIC: sum_j e_j(n0) T(n0+j, k0) = G(n0, k0+1) - G(n0, k0) on lattice points.
    Numeric mode succeeds only if at least ``min_points`` pole-free points were checked.
    Returns (ok, message).
    """
    if shell is None:
        _K, shell, _ = _setup(T)
    S = RatFunc(shell).to_dom(QQN)
    f, gk = T.quotient_n, T.quotient_k
    if G is None:
        h = RatFunc(Poly((), QQN))
    else:
        h = _cert_over_T(G, S)   # G/T
    if mode == SYMBOLIC:
        lhs = RatFunc(Poly((), QQN))
        prod = RatFunc(Poly.const(1, QQN))
        for i, e in enumerate(L.coeffs):
            lhs = lhs + RatFunc(Poly.const(e, QQN)) * prod
            prod = prod * f.shift_n(i)
        rhs = h.shift(1) * gk - h
        ok = lhs == rhs
        return ok, "symbolic identity holds" if ok else "symbolic identity fails"
    # numeric
    if base is None:
        base = (0, 0)
    if base_value is None:
        base_value = T.value(*base)
        if base_value is None:
            raise ValueError("numeric verification needs a base value")
    from .hyperterm import _BiEval
    ev_h = _BiEval(h)
    ev_c = [_BiEval(RatFunc(Poly.const(e, QQN))) for e in L.coeffs]
    checked = 0
    for n0, k0 in points:
        vals = []
        for j in range(L.order + 1):
            vals.append(numeric_eval(T, n0 + j, k0, base, base_value))
        t_here = vals[0]
        t_next = numeric_eval(T, n0, k0 + 1, base, base_value)
        if any(v is POLE for v in vals) or t_next is POLE:
            continue
        es = [c(n0, 0) for c in ev_c]
        hk0, hk1 = ev_h(n0, k0), ev_h(n0, k0 + 1)
        if any(e is None for e in es) or hk0 is None or hk1 is None:
            continue
        lhs = sum((e * v for e, v in zip(es, vals)), QQ(0))
        rhs = hk1 * t_next - hk0 * t_here
        if lhs != rhs:
            return False, "numeric identity fails at (%d, %d)" % (n0, k0)
        checked += 1
    return checked >= min_points, "checked %d points" % checked
