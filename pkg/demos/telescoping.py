"""Minimal telescopers and certificates for definite sums.

Run: python3 demos/telescoping.py
"""
from hypersum import to_bihyper, reduction_ct, verify_rct, SYMBOLIC, ratfunc_text

for expr in ["binomial(n,k)", "binomial(n,k)^2", "binomial(n,k)^3"]:
    T = to_bihyper(expr)
    res = reduction_ct(T)
    L = res.telescoper
    print(expr)
    print("  L =", L.text(cleared=True))
    print("  G/T =", ratfunc_text(res.certificate.g / res.shell))
    ok, msg = verify_rct(L, res.certificate, T, SYMBOLIC, shell=res.shell)
    print("  L(T) = Delta_k(G):", msg)

# The first one says F(n+1) = 2 F(n) for F(n) = sum_k binomial(n, k), so F(n) = 2^n.
# For binomial(n,k)^3 the recurrence is the Franel recurrence.
