import random

import pytest
from hypothesis import given, settings, strategies as st

from hypersum.exact_core import Poly, RatFunc, ratfunc, shift_equivalent
from hypersum.hyperterm import HyperTerm
from hypersum.reduction import (
    DENOM, NUMER, PolyReducer, reducer_for, polynomial_reduction, shell_reduction,
    modified_ap_reduction, is_summable, kernel_reduction, congruent_mod_VK,
    translate_residual_form, residual_violations, DegreeLimitExceeded,
)
from hypersum.telescoping import kernel_dim_bound

from oracles import (
    rand_poly, rand_rat, kernel_for_case, image_complement_check, random_quotient,
    delta_quotient,
)

R = ratfunc


def p_(s):
    return R(s).num


def shift_related(b1, b2):
    """Irreducible factors match up to shifts, multiplicities included."""
    f1 = sorted(((P, e) for P, e in b1.factor_list()[1]), key=lambda t: (t[0].degree(), t[1]))
    f2 = list(b2.factor_list()[1])
    if len(f1) != len(f2):
        return False
    for P, e in f1:
        hit = next((i for i, (Q, e2) in enumerate(f2) if e2 == e and shift_equivalent(P, Q) is not None), None)
        if hit is None:
            return False
        f2.pop(hit)
    return True


def test_shell_reduction_goldens():
    S1, a, b, p = shell_reduction(R("k+1"), R("k^2/(k+1)"))
    assert (S1, a, b, p) == (R("-1/(k+1)"), p_("-1"), p_("k+2"), p_("k"))
    S1, a, b, p = shell_reduction(R("k+1"), R("k"))
    assert S1.is_zero() and a.is_zero() and b == p_("1") and p == p_("k")


def test_shell_reduction_rational_case():
    S = R("3*k^2+1")
    S1, a, b, p = shell_reduction(RatFunc(1), S)
    assert a.is_zero() and p.is_zero()
    assert S1.shift(1) - S1 == S


def test_shell_reduction_identity_random():
    rng = random.Random(21)
    for _ in range(60):
        K = kernel_for_case(rng, rng.randint(1, 5))
        S = rand_rat(rng, 2, 3)
        if S.is_zero():
            continue
        S1, a, b, p = shell_reduction(K, S)
        v = K.den
        assert S == K * S1.shift(1) - S1 + RatFunc(a, b) + RatFunc(p, v)
        assert a.is_zero() or a.degree() < b.degree()


def test_polynomial_reduction_goldens():
    f, q = polynomial_reduction(p_("k"), R("k+1"))
    assert f == p_("1") and q.is_zero()
    f, q = polynomial_reduction(Poly([]), R("k+1"))
    assert f.is_zero() and q.is_zero()


def test_case5_basis():
    K = R("(k^4+1)/(k+1)^4")
    red = PolyReducer(K)
    assert red.case == 5 and red.tau == 4
    assert red.complement_degrees() == [0, 1, 7]
    target = p_("k^4+k/3+1/2")
    img = red.phi(target)
    assert img == p_("5/3*k^2+2*k+4/3")
    f, q = red.reduce(img)
    assert f == target and q.is_zero()


def test_unit_kernel_has_empty_complement():
    assert PolyReducer(RatFunc(1)).complement_degrees() == []


@pytest.mark.parametrize("case", [1, 2, 3, 4, 5])
def test_complement_against_linear_algebra(case):
    rng = random.Random(100 + case)
    for _ in range(40):
        K = kernel_for_case(rng, case)
        red = reducer_for(K)
        degs = red.complement_degrees()
        assert len(degs) <= kernel_dim_bound(K)
        ok, _ = image_complement_check(K, max(degs + [0]) + 3)
        assert ok, K


def test_projection_and_injectivity():
    rng = random.Random(9)
    for _ in range(80):
        K = kernel_for_case(rng, rng.randint(1, 5))
        red = reducer_for(K)
        p = rand_poly(rng, rng.randint(0, 8))
        f, q = red.reduce(p)
        assert red.phi(f) + q == p
        assert red.in_complement(q)
        assert red.reduce(q) == (Poly([]), q)
        g = rand_poly(rng, rng.randint(0, 5))
        if not g.is_zero():
            assert not red.phi(g).is_zero()


def test_degree_guard(monkeypatch):
    monkeypatch.setenv("HYPERSUM_MAX_DEGREE", "5")
    red = PolyReducer(R("1/(k+1)"))
    with pytest.raises(DegreeLimitExceeded):
        red.reduce(p_("k^9"))


def test_map_goldens():
    T = HyperTerm(R("(k+1)^4/(k^2*(k+2))"))      # k^2 k!/(k+1)
    res = modified_ap_reduction(T)
    assert res.cofactor == R("k/(k+1)")
    assert res.residual.value() == R("-1/(k+2)")
    assert (res.residual.a, res.residual.b, res.residual.q) == (p_("-1"), p_("k+2"), Poly([]))
    T = HyperTerm(R("(k+1)^2/k"))                 # k k!
    res = modified_ap_reduction(T)
    assert res.cofactor == RatFunc(1) and res.residual.is_zero()
    assert res.check()


def test_map_gosper_counterexample():
    # T = 1/((k^4+k^2+1) k!), written with H = k/k!
    K, S = R("1/k"), R("1/(k*(k^4+k^2+1))")
    res = modified_ap_reduction(K, S)
    assert res.check()
    assert res.cofactor * R("k") == R("k^2/(2*(k^2-k+1))")
    assert res.residual.value() * R("k") == R("1/2")
    # the default normal form reduces to a congruent residual
    T = HyperTerm(K * S.shift(1) / S)
    res2 = modified_ap_reduction(T)
    assert res2.check()
    # rewrite the default residual over H = k/k!: H_default = (S/S_default) H
    assert T.kernel == R("1/(k+1)")
    r_default = res2.residual.value() * (S / T.shell)
    ok, _w = congruent_mod_VK(r_default, res.residual.value(), K)
    assert ok


def test_summability_examples():
    assert is_summable(HyperTerm(R("k+1"))) is None                  # k!
    f = is_summable(HyperTerm(R("(k+1)^2/k")))                        # k k!
    assert f is not None and f / R("k") == R("1/k")


def test_summability_random():
    rng = random.Random(31)
    count = 0
    while count < 40:
        gq = random_quotient(rng)
        if gq == RatFunc(1):
            continue
        T = HyperTerm(delta_quotient(gq))
        f = is_summable(T)
        assert f is not None
        assert T.kernel * f.shift(1) - f == T.shell
        d = f / T.shell - 1 / (gq - RatFunc(1))
        assert d.is_zero() or d.shift(1) / d == 1 / T.shift_quotient
        G = HyperTerm(gq)
        res = modified_ap_reduction(G)
        if not res.residual.is_zero():
            assert is_summable(HyperTerm.from_kernel(G.kernel, res.residual.value())) is None
        count += 1


@pytest.mark.parametrize("m", [0, 1, 2])
@pytest.mark.parametrize("side", [DENOM, NUMER])
def test_kernel_reduction(m, side):
    rng = random.Random(m * 7 + (side == NUMER))
    for _ in range(15):
        K = kernel_for_case(rng, rng.randint(1, 5))
        u, v = K.num, K.den
        p = rand_poly(rng, rng.randint(0, 4))
        if side == DENOM:
            den = Poly([1])
            for i in range(m + 1):
                den = den * v.shift(i)
        else:
            den = Poly([1])
            for j in range(1, m + 2):
                den = den * u.shift(-j)
        q, w = kernel_reduction(p, K, m, side)
        assert RatFunc(p, den) == K * w.shift(1) - w + RatFunc(q, v)
        assert reducer_for(K).in_complement(q)


def test_kernel_reduction_trivial_v():
    K = R("k+1")
    q, w = kernel_reduction(p_("k^3"), K, 2, DENOM)
    f, q2 = polynomial_reduction(p_("k^3"), K)
    assert q == q2


def test_congruence():
    K = R("1/k")
    r = R("1/(2*k+1)") + R("1/(2*k+3)")
    ok, w = congruent_mod_VK(r, r, K)
    assert ok and w.is_zero()
    ok, w = congruent_mod_VK(r, R("-1/(2*(2*k+1))") + R("1/(2*k)"), K)
    assert ok
    assert r - (R("-1/(2*(2*k+1))") + R("1/(2*k)")) == K * w.shift(1) - w
    ok, _ = congruent_mod_VK(R("1/(k+2)"), RatFunc(0), R("k+1"))
    assert not ok


def test_translation_golden():
    K = R("1/k")
    s = modified_ap_reduction(K, R("1/(2*k+3)")).residual
    w, t = translate_residual_form(K, p_("k+1/2"), s)
    assert w == R("-3/(2*(2*k+1))")
    assert (t.a, t.b, t.q) == (p_("-3/4"), p_("k+1/2"), p_("1/2"))
    assert s.value() == K * w.shift(1) - w + t.value()


def test_translation_trivial():
    K = R("1/k")
    s = modified_ap_reduction(K, R("1/(2*k+1)")).residual
    w, t = translate_residual_form(K, p_("k^2+2"), s)
    assert w.is_zero() and t.value() == s.value()
    w, t = translate_residual_form(K, s.b, s)
    assert w.is_zero() and t.value() == s.value()


def test_uniqueness_across_targets():
    # alternate residual forms of one shell are shift-related
    K = R("1/k")
    s = modified_ap_reduction(K, R("1/(2*k+3)") + R("1/(k^2+3)")).residual
    forms = [s]
    for target in ["k+1/2", "k+5/2", "k-3/2", "(k+1/2)*(k^2+2*k+4)", "(k-1/2)*(k^2-2*k+4)"]:
        w, t = translate_residual_form(K, p_(target), s)
        assert s.value() == K * w.shift(1) - w + t.value()
        forms.append(t)
    for t in forms:
        assert residual_violations(t) == []
        assert shift_related(t.b, s.b)


def test_cross_kernel_shift_relatedness():
    from test_hyperterm import LISTED_PAIRS
    bs = []
    for k_s, s_s in LISTED_PAIRS:
        # T = s0 * H0 with quotient F_RNF; pick a shell on top to get a nontrivial residual
        K, S = R(k_s), R(s_s) * R("1/(k^2+1)")
        res = modified_ap_reduction(K, S)
        assert res.check()
        bs.append(res.residual.b)
    for b in bs[1:]:
        assert shift_related(b, bs[0])


_coeffs = st.lists(st.integers(-5, 5), min_size=1, max_size=4)


@settings(max_examples=60, deadline=None)
@given(_coeffs, st.lists(st.integers(-6, 6), min_size=0, max_size=3), st.sampled_from(["k+1", "1/k", "(k+1/2)/(k+1)", "2*k+3"]))
def test_map_decomposition_property(num, roots, kernel):
    K = R(kernel)
    den = Poly([1])
    for c in roots:
        den = den * Poly([c, 1])
    if Poly(num).is_zero():
        return
    S = RatFunc(Poly(num), den)
    res = modified_ap_reduction(K, S)
    assert res.check()
    assert residual_violations(res.residual) == []


@settings(max_examples=40, deadline=None)
@given(_coeffs, st.sampled_from(["k+1", "1/k", "(k+1/2)/(k+1)"]))
def test_delta_of_anything_is_summable(num, kernel):
    # S = K*sigma(f) - f for a polynomial f: the term is Delta(f*H)
    K = R(kernel)
    f = RatFunc(Poly(num))
    S = K * f.shift(1) - f
    if S.is_zero():
        return
    res = modified_ap_reduction(K, S)
    assert res.residual.is_zero()
