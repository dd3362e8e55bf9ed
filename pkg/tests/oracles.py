"""Independent checks and random generators shared by the tests."""

from sympy import Matrix, Rational, Symbol, Poly as SPoly

from hypersum.exact_core import QQ, QQN, Poly, RatFunc
from hypersum.hyperterm import rational_normal_form
from hypersum.reduction import reducer_for

k_ = Symbol("k")


def to_sympy(p):
    cs = [Rational(int(c.numerator), int(c.denominator)) for c in (p.coeff(i) for i in range(p.degree(), -1, -1))]
    return SPoly.from_list(cs or [0], k_, domain="QQ")


def brute_dispersion(f, g, bound=30):
    """Largest l in [0, bound] with a nontrivial gcd(f, sigma^l g), by direct gcds."""
    F = to_sympy(f)
    best = None
    for l in range(bound + 1):
        G = to_sympy(g.shift(l))
        if F.gcd(G).degree() > 0:
            best = l
    return best


def rand_poly(rng, deg, lo=-4, hi=4, dom=QQ):
    cs = [rng.randint(lo, hi) for _ in range(deg + 1)]
    if cs[-1] == 0:
        cs[-1] = rng.choice([1, -1, 2])
    return Poly(cs, dom)


def rand_monic_linear_factors(rng, count, roots=range(-6, 7)):
    p = Poly([1])
    for _ in range(count):
        p = p * Poly([QQ(rng.choice(list(roots)), rng.choice([1, 1, 2])), 1])
    return p


def rand_rat(rng, dn=2, dd=2):
    num = rand_poly(rng, rng.randint(0, dn))
    den = rand_monic_linear_factors(rng, rng.randint(0, dd))
    return RatFunc(num, den)


# complement oracle ------------------------------------------------------------

def _coeff_vec(p, size):
    return [p.coeff(i) for i in range(size)]


def image_complement_check(K, M):
    """Verify with plain linear algebra that im(phi) + span(W_K) = P_M and the sum is direct.

    P_M is the space of polynomials of degree <= M.  Returns (ok, dim_image_part).
    """
    red = reducer_for(K)
    W = [d for d in red.complement_degrees() if d <= M]
    top = M + max(red.alpha1, red.alpha2) + 2
    imgs = [_coeff_vec(red.phi(Poly.gen(red.dom) ** i), top) for i in range(M + 1)]
    A = Matrix(imgs).T                      # columns are images
    high = A[M + 1:, :]
    combos = high.nullspace() if high.rows else [Matrix.eye(A.cols)[:, j] for j in range(A.cols)]
    inside = [A * c for c in combos]
    inside = [v[:M + 1, :] for v in inside]
    mono = [Matrix([1 if i == d else 0 for i in range(M + 1)]) for d in W]
    cols = inside + mono
    if not cols:
        return M + 1 == 0, 0
    S = Matrix.hstack(*cols)
    r_in = Matrix.hstack(*inside).rank() if inside else 0
    ok = S.rank() == M + 1 and r_in + len(W) == M + 1
    return ok, r_in


# kernels hitting each case -------------------------------------------------------

def kernel_for_case(rng, case):
    """Random shift-reduced kernel u/v of the requested case (1..5)."""
    while True:
        a1 = rng.randint(1, 3)
        u = rand_monic_linear_factors(rng, a1) + Poly([rng.randint(-2, 2)])
        if u.degree() != a1 or u.is_zero():
            continue
        if case == 1:
            d = rand_poly(rng, a1 + rng.randint(1, 2))
        elif case == 2:
            d = rand_poly(rng, a1)
            if d.lc() == -u.lc():
                continue
        elif case == 3:
            if a1 < 2:
                continue
            d = rand_poly(rng, rng.randint(0, a1 - 2))
        elif case == 4:
            d = rand_poly(rng, a1 - 1)
            tau = d.lc() / u.lc()
            if tau.denominator == 1 and tau > 0:
                continue
        else:
            tau = rng.randint(1, 6)
            d = rand_poly(rng, a1 - 1)
            d = d + Poly([0] * (a1 - 1) + [tau * u.lc() - d.lc()])
        v = u + d
        if v.is_zero() or v.degree() < 0:
            continue
        K = RatFunc(u, v)
        if K.is_const():
            continue
        K2, _S = rational_normal_form(K)
        if K2 != K:
            continue
        if reducer_for(K).case == case:
            return K


# random hypergeometric terms in k ------------------------------------------------

def _fact_window(a, b):
    """(a*k + b + a)!/(a*k + b)! as a polynomial."""
    out = Poly([1])
    for j in range(1, a + 1):
        out = out * Poly([b + j, a])
    return out


def random_quotient(rng):
    """Shift quotient of c^k * r(k) * prod (a_i k + b_i)!^(+-1)."""
    q = RatFunc(QQ(rng.choice([1, 1, 2, -1, 3]), rng.choice([1, 1, 2, 3])))
    r = rand_rat(rng)
    while r.is_zero():
        r = rand_rat(rng)
    q = q * r.shift(1) / r
    for _ in range(rng.randint(0, 2)):
        w = RatFunc(_fact_window(rng.choice([1, 1, 2]), rng.randint(-1, 3)))
        q = q * (w if rng.random() < 0.5 else 1 / w)
    return q


def delta_quotient(gq):
    """Shift quotient of Delta_k G given that of G."""
    one = RatFunc(1)
    return gq * (gq.shift(1) - one) / (gq - one)


def specialized_rank(rats, n0, ks):
    """Rank over QQ of the matrix (r_i(n0, k)) over the k in ks where every r_i is defined.

    A lower bound for the rank of the r_i over QQ(n)."""
    values = []
    for r in rats:
        try:
            values.append(r.eval_n(n0) if r.dom == QQN else r)
        except ZeroDivisionError:
            return None
    cols = []
    for k0 in ks:
        try:
            cols.append([sp(QQ(k0)) for sp in values])
        except ZeroDivisionError:
            continue
    if not cols:
        return 0
    rows = [[Rational(int(c[i].numerator), int(c[i].denominator)) for c in cols] for i in range(len(values))]
    return Matrix(rows).rank()
