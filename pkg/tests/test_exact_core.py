import random

import pytest
from hypothesis import given, settings, strategies as st

from hypersum.exact_core import (
    QQ, QQN, N, Poly, RatFunc, ratfunc, dispersion, integer_shifts,
    integer_shifts_resultant, is_shift_free, is_shift_reduced, is_shift_coprime,
    shift_equivalent, integer_linear_decompose, NotIntegerLinear, to_bivariate,
    from_bivariate, poly_text, ratfunc_text, cleared_pair,
)

from oracles import brute_dispersion, rand_poly, rand_monic_linear_factors


def P(s):
    r = ratfunc(s)
    assert r.den.is_one()
    return r.num


def test_shift_of_polynomial():
    assert P("k^2+1").shift(1) == P("k^2+2*k+2")
    assert P("k^2+1").shift(-1) == P("k^2-2*k+2")


def test_dispersion_examples():
    assert dispersion(P("k"), P("k-3")) == 3
    assert dispersion(P("k^2+1"), P("k+5")) is None
    assert dispersion(P("k*(k+1)"), P("k*(k+1)")) == 1


def test_shift_predicates_examples():
    assert is_shift_free(P("k^2+1"))
    assert not is_shift_free(P("k*(k+2)"))
    assert is_shift_reduced(ratfunc("(k+1/2)/k"))
    assert not is_shift_reduced(ratfunc("(k+3)/k"))
    assert is_shift_coprime(P("k"), P("k"))
    assert not is_shift_coprime(P("k"), P("k+4"))


def test_shift_equivalent():
    assert shift_equivalent(P("k"), P("k+5")) == 5
    assert shift_equivalent(P("k^2+1"), P("k^2+2*k+2")) == 1
    assert shift_equivalent(P("k^2+1"), P("k^2+3")) is None
    p = Poly([N, 1], QQN) * Poly([N + 2, 1], QQN)
    assert shift_equivalent(p, p.shift(-4)) == -4


def _rand_factored(rng):
    p = rand_monic_linear_factors(rng, rng.randint(1, 3), roots=range(-12, 13))
    if rng.random() < 0.4:
        p = p * Poly([rng.randint(1, 5), rng.randint(-3, 3), 1])
    return p


def test_dispersion_against_brute_force():
    rng = random.Random(11)
    for _ in range(60):
        f, g = _rand_factored(rng), _rand_factored(rng)
        d = dispersion(f, g)
        if d is None or d <= 24:
            assert d == brute_dispersion(f, g, 30)


def test_shift_routes_agree():
    rng = random.Random(5)
    for _ in range(60):
        f, g = _rand_factored(rng), _rand_factored(rng)
        assert integer_shifts(f, g) == integer_shifts_resultant(f, g)
    f = Poly([N, 1], QQN) * Poly([2 * N + 1, 1], QQN)
    g = f.shift(3) * Poly([N ** 2, 0, 1], QQN)
    assert integer_shifts(f, g) == integer_shifts_resultant(f, g) == [-3]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=2, max_size=4), st.lists(st.integers(-6, 6), min_size=2, max_size=4),
       st.integers(-5, 5))
def test_gcd_commutes_with_shift(cf, cg, i):
    f, g = Poly(cf), Poly(cg)
    if f.is_zero() or g.is_zero():
        return
    assert f.gcd(g).shift(i) == f.shift(i).gcd(g.shift(i))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=4), st.integers(-4, 4), st.integers(-4, 4))
def test_shift_composes(c, i, j):
    p = Poly(c)
    assert p.shift(i).shift(j) == p.shift(i + j)


def test_integer_linear_examples():
    p = Poly([N - 5, -5], QQN)         # n - 5k - 5 = -(5k - n + 5)
    c, reps = integer_linear_decompose(p)
    assert c == -1 and len(reps) == 1
    rep, e = reps[0]
    assert (rep.lam, rep.mu, e) == (-1, 5, 1)
    assert rep.factor(0).scale(QQN.convert(c, QQ)) == p
    _c, reps = integer_linear_decompose(Poly([N, 1], QQN) * Poly([2 * N, 1], QQN))
    assert sorted((r.lam, r.mu) for r, _ in reps) == [(1, 1), (2, 1)]
    with pytest.raises(NotIntegerLinear):
        integer_linear_decompose(Poly([N, 0, 1], QQN))


def test_integer_linear_random_roundtrip():
    rng = random.Random(3)
    for _ in range(200):
        lam, mu = rng.randint(-3, 3), rng.randint(0, 3)
        if lam == 0 and mu == 0:
            mu = 1
        z = Poly([lam * N, mu], QQN)    # lam*n + mu*k
        a = rng.randint(-5, 5)
        poly_z = [QQ(rng.randint(-4, 4)) for _ in range(rng.randint(0, 2))] + [QQ(rng.choice([1, 2, -3]))]
        p = Poly([0], QQN)
        for cz in reversed(poly_z):
            p = p * (z + Poly([QQN.convert(a, QQ)], QQN)) + Poly([QQN.convert(cz, QQ)], QQN)
        if p.degree() <= 0:
            continue
        c, reps = integer_linear_decompose(p)
        back = Poly([QQN.convert(c, QQ) if not QQN.of_type(c) else c], QQN)
        for rep, e in reps:
            back = back * rep.factor(0) ** e
        assert back == p


def test_non_integer_linear_detected():
    rng = random.Random(4)
    for _ in range(40):
        p = Poly([N + rng.randint(-3, 3), 0, rng.randint(1, 3)], QQN)
        with pytest.raises(NotIntegerLinear):
            integer_linear_decompose(p)


def test_ratfunc_normalization():
    r = RatFunc(Poly([2, 2]), Poly([4, 2]))    # (2k+2)/(2k+4)
    assert r.den.lc() == 1
    assert r.num.gcd(r.den).degree() == 0
    assert r == RatFunc(Poly([1, 1]), Poly([2, 1]))
    rng = random.Random(2)
    for _ in range(100):
        a, b = rand_poly(rng, rng.randint(0, 3)), rand_poly(rng, rng.randint(0, 3))
        if b.is_zero():
            continue
        r = RatFunc(a, b)
        assert r.den.lc() == 1
        if not r.num.is_zero():
            assert r.num.gcd(r.den).degree() == 0
        assert r * RatFunc(b) == RatFunc(a)


def test_bivariate_roundtrip():
    p = Poly([N ** 2 / 3 + 1, QQN.one / (N + 1)], QQN)
    Pb, D = to_bivariate(p)
    assert from_bivariate(Pb) == p.scale(QQN.convert(D, QQ) if not QQN.of_type(D) else D)


def test_text_forms():
    assert poly_text(P("k^2-2*k+1")) == "k^2 - 2*k + 1"
    assert ratfunc_text(ratfunc("-1/(k+2)")) == "-1/(k + 2)"
    r = ratfunc("(n+1)/(2*n*k+1)")
    Pn, Q = cleared_pair(r)
    assert str(ratfunc_text(r)) == "(n + 1)/(2*n*k + 1)"
    assert all(c.denominator == 1 for _m, c in Pn.terms())


def test_text_reads_back():
    assert ratfunc_text(ratfunc("1/(2*k)")) == "1/(2*k)"
    assert ratfunc_text(ratfunc("-(k+1)/(2*n*k)")) == "(-k - 1)/(2*n*k)"
    rng = random.Random(6)
    for _ in range(150):
        num = Poly([rng.randint(-3, 3) * N + rng.randint(-3, 3) for _ in range(rng.randint(1, 3))], QQN)
        den = Poly([QQN.convert(rng.randint(1, 3)) * N + rng.randint(-2, 2), rng.randint(1, 4)], QQN)
        if num.is_zero():
            continue
        r = RatFunc(num.scale(QQN.convert(QQ(1, rng.randint(1, 4)))), den)
        assert ratfunc(ratfunc_text(r)) == r
