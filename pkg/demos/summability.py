"""Additive decomposition of univariate hypergeometric terms.

Run: python3 demos/summability.py
"""
from hypersum import ratfunc, HyperTerm, modified_ap_reduction, is_summable, ratfunc_text

# T = k^2 k!/(k+1), given by its shift quotient T(k+1)/T(k)
T = HyperTerm(ratfunc("(k+1)^4/(k^2*(k+2))"))
print("kernel K =", ratfunc_text(T.kernel), "  shell S =", ratfunc_text(T.shell))

res = modified_ap_reduction(T)
print("T = Delta(f*H) + r*H with H = k!")
print("  f =", ratfunc_text(res.cofactor))
print("  r =", ratfunc_text(res.residual.value()))
print("  r is nonzero, so T has no hypergeometric antidifference:", is_summable(T) is None)

# k*k! is summable: k*k! = Delta(k!)
U = HyperTerm(ratfunc("(k+1)^2/k"))
f = is_summable(U)
print("k*k! = Delta(g*T) with g =", ratfunc_text(f / U.shell))

# 1/((k^4+k^2+1) k!): not summable, but the remainder is 1/(2 k!),
# which gives sum_{k>=0} T(k) = e/2
K, S = ratfunc("1/k"), ratfunc("1/(k*(k^4+k^2+1))")
res = modified_ap_reduction(K, S)
print("1/((k^4+k^2+1)k!) = Delta(%s * k/k!) + (%s) * k/k!" % (
    ratfunc_text(res.cofactor), ratfunc_text(res.residual.value())))
