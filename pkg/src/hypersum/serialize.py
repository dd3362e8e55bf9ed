"""Exact JSON encoding of rationals, polynomials and rational functions."""

import json

from .exact_core import QQ, QQN, BIRING, RatFunc, cleared_pair, from_bivariate, ratfunc_text

__all__ = [
    "encode_rational", "decode_rational", "encode_bipoly", "decode_bipoly",
    "encode_ratfunc", "decode_ratfunc", "dumps",
]


def encode_rational(c):
    c = QQ.convert(c)
    return {"num": str(c.numerator), "den": str(c.denominator)}


def decode_rational(d):
    return QQ(int(d["num"]), int(d["den"]))


def encode_bipoly(P, names=("n", "k")):
    """Coefficient map {"i,j": rational} for a polynomial in QQ[n, k]."""
    coeffs = {"%d,%d" % m: encode_rational(c) for m, c in P.terms() if c}
    return {"vars": list(names), "coeffs": coeffs}


def decode_bipoly(d):
    P = BIRING.zero
    n, k = BIRING.gens
    for key, c in d["coeffs"].items():
        i, j = (int(x) for x in key.split(","))
        P += decode_rational(c) * n ** i * k ** j
    return P


def encode_ratfunc(r, names=("n", "k"), text=None):
    r = r if isinstance(r, RatFunc) else RatFunc(r)
    P, Q = cleared_pair(r)
    out = {"num": encode_bipoly(P, names), "den": encode_bipoly(Q, names)}
    out["text"] = text if text is not None else ratfunc_text(r)
    return out


def decode_ratfunc(d):
    P = from_bivariate(decode_bipoly(d["num"]))
    Q = from_bivariate(decode_bipoly(d["den"]))
    return RatFunc(P.to_dom(QQN), Q.to_dom(QQN))


def dumps(obj):
    """Bit-stable JSON text."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)
