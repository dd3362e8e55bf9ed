"""Order bounds, and the bound-assisted telescoping loop.

Run: python3 demos/bounds.py
"""
from hypersum import to_bihyper, bounds, bound_reduction_ct, reduction_ct, NONE

for alpha in (2, 3, 5):
    T = to_bihyper("1/((n-%d*k-%d)*factorial(n-%d*k-2))" % (alpha, alpha, alpha))
    lo, up = bounds(T)
    res = bound_reduction_ct(T, NONE)
    print("alpha = %d: bounds [%d, %d], telescoper %s" % (alpha, lo, up, res.telescoper.text()))

# rational terms where the bound is exact
for alpha, beta in ((1, 2), (2, 1), (1, 3)):
    expr = "(%d*k^2+%d*k-%d*k+%d*n*k+n^2)/((n+%d*k+%d)*(n+%d*k)*(n+%d*k))" % (
        alpha ** 2, alpha ** 2, alpha * beta, 2 * alpha, alpha, alpha, alpha, beta)
    T = to_bihyper(expr)
    print("alpha = %d, beta = %d: bounds %s, order %d" % (alpha, beta, bounds(T), reduction_ct(T, NONE).telescoper.order))
