"""Command line front end: hypersum <command> "<expr>" [options]."""

import argparse
import re
import sys
import time

from .exact_core import QQN, Poly, RatFunc, ratfunc_text
from .reduction import modified_ap_reduction, is_summable, DegreeLimitExceeded
from .telescoping import (
    NoTelescoper, reduction_ct, bounds, existence_criterion, verify_rct,
    NONE, NORMALIZED, UNNORMALIZED, SYMBOLIC, NUMERIC,
)
from .termexpr import (
    parse, to_text, swap_variables, to_bihyper, to_hyperterm, evaluate,
    TermSyntaxError, NotHypergeometric,
)
from .serialize import encode_ratfunc, dumps

__all__ = ["RunReport", "run", "main", "COMMANDS"]

COMMANDS = ("reduce", "summable", "telescope", "bounds", "verify", "rnf")
DEFAULT_WINDOW = ((0, 10), (0, 5))


class UsageError(ValueError):
    code = "USAGE_ERROR"


class RunReport:
    """Everything a command produced, in a JSON-ready form."""

    FIELDS = ("command", "input", "expr", "var", "options", "kernel", "shell",
              "outputs", "verdicts", "error", "exit_code", "timing")

    def __init__(self, command, input, var="k", options=None, **kw):
        self.command = command
        self.input = input
        self.var = var
        self.options = options or {}
        self.expr = kw.get("expr")
        self.kernel = kw.get("kernel")
        self.shell = kw.get("shell")
        self.outputs = kw.get("outputs", {})
        self.verdicts = kw.get("verdicts", {})
        self.error = kw.get("error")
        self.exit_code = kw.get("exit_code", 0)
        self.timing = kw.get("timing")

    def to_json(self):
        out = {f: getattr(self, f) for f in self.FIELDS}
        if out["timing"] is None:
            del out["timing"]
        return out

    @classmethod
    def from_json(cls, d):
        d = dict(d)
        return cls(d.pop("command"), d.pop("input"), d.pop("var"), d.pop("options"), **d)

    def __eq__(self, other):
        return isinstance(other, RunReport) and self.to_json() == other.to_json()

    def text(self):
        lines = []
        if self.error:
            lines.append("error: %s: %s" % (self.error["code"], self.error["message"]))
            return "\n".join(lines)
        if self.expr:
            lines.append("term: %s" % self.expr)
        if self.kernel:
            lines.append("kernel: %s" % self.kernel["text"])
            lines.append("shell: %s" % self.shell["text"])
        for key in sorted(self.outputs):
            lines.append("%s: %s" % (key, _show(self.outputs[key])))
        for key in sorted(self.verdicts):
            v = self.verdicts[key]
            lines.append("verify %s: %s (%s)" % (key, "ok" if v["ok"] else "FAILED", v["message"]))
        if self.timing is not None:
            lines.append("time: %.3f s" % self.timing["seconds"])
        return "\n".join(lines)


def _show(v):
    if isinstance(v, dict):
        if "text" in v:
            return v["text"]
        return "{" + ", ".join("%s: %s" % (k, _show(v[k])) for k in sorted(v)) + "}"
    if isinstance(v, list):
        return "[" + ", ".join(_show(x) for x in v) + "]"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


# helpers ---------------------------------------------------------------------

_SWAP = {"n": "k", "k": "n", "Sn": "Sk", "Sk": "Sn"}


class _Names:
    """Output naming; with --var n the engine works on the swapped term."""

    def __init__(self, var):
        self.swapped = var == "n"
        self.pair = ("k", "n") if self.swapped else ("n", "k")

    def text(self, s):
        if not self.swapped:
            return s
        return re.sub(r"\b(Sn|Sk|n|k)\b", lambda m: _SWAP[m.group(1)], s)

    def rat(self, r):
        r = r if isinstance(r, RatFunc) else RatFunc(r)
        return encode_ratfunc(r, self.pair, self.text(ratfunc_text(r)))

    def nrat(self, c):
        return self.rat(RatFunc(Poly.const(c, QQN)))


def _parse_window(text):
    try:
        a, b = text.split(",")
        n0, n1 = (int(x) for x in a.split(":"))
        k0, k1 = (int(x) for x in b.split(":"))
    except ValueError:
        raise UsageError("--verify-numeric expects N0:N1,K0:K1, got %r" % text)
    if n1 < n0 or k1 < k0:
        raise UsageError("empty verification window %r" % text)
    return (n0, n1), (k0, k1)


def _window_points(window):
    (n0, n1), (k0, k1) = window
    return [(a, b) for a in range(n0, n1 + 1) for b in range(k0, k1 + 1)]


def choose_base(e, points):
    """First lattice point where the term is defined and nonzero."""
    for p in points:
        v = evaluate(e, *p)
        if v:
            return p, v
    return None, None


def numeric_verdict(L, cert, T, shell, window):
    pts = _window_points(window)
    base, val = choose_base(T.expr, pts)
    if base is None:
        return {"ok": False, "message": "no point in the window with a defined nonzero value", "points": 0}
    ok, msg = verify_rct(L, cert, T, NUMERIC, points=pts, base=base, base_value=val, shell=shell)
    count = int(msg.split()[1]) if msg.startswith("checked") else 0
    return {"ok": ok, "message": msg, "points": count}


def _telescoper_json(L, names):
    cl = L.cleared()
    return {
        "order": L.order,
        "monic": [names.nrat(c) for c in L.coeffs],
        "cleared": [names.rat(RatFunc(Poly.const(QQN.convert(c), QQN))) for c in cl],
        "text": names.text(L.text(cleared=True)),
        "monic_text": names.text(L.text()),
    }


def _certificate_json(cert, S, names):
    if cert is None:
        return None
    if cert.mode == NORMALIZED:
        return {"mode": NORMALIZED, "ratio": names.rat(cert.g / S)}
    return {"mode": UNNORMALIZED,
            "terms": [{"coeff": names.nrat(e), "ratio": names.rat(g / S)} for e, g in cert.pairs]}


# commands --------------------------------------------------------------------

def _cmd_univariate(command, e, names, rep):
    T = to_hyperterm(e)
    rep.kernel, rep.shell = names.rat(T.kernel), names.rat(T.shell)
    if command == "rnf":
        return
    if command == "summable":
        f = is_summable(T)
        rep.outputs["summable"] = f is not None
        if f is not None:
            rep.outputs["f"] = names.rat(f)
            rep.outputs["antidifference_ratio"] = names.rat(f / T.shell)
        return
    res = modified_ap_reduction(T)
    r = res.residual
    rep.outputs["f"] = names.rat(res.cofactor)
    rep.outputs["r"] = names.rat(r.value())
    rep.outputs["residual"] = {
        "a": names.rat(RatFunc(r.a)), "b": names.rat(RatFunc(r.b)),
        "q": names.rat(RatFunc(r.q)),
    }
    rep.outputs["summable"] = r.is_zero()


def _cmd_bivariate(command, e, names, rep, cert_mode, window):
    T = to_bihyper(e)
    if command == "bounds":
        if not existence_criterion(T):
            raise NoTelescoper("the significant denominator is not integer-linear")
        lo, up = bounds(T)
        rep.outputs["bounds"] = {"lower": lo, "upper": up}
        return
    want = UNNORMALIZED if command == "verify" and cert_mode == NONE else cert_mode
    res = reduction_ct(T, want)
    rep.kernel, rep.shell = names.rat(res.kernel), names.rat(res.shell)
    rep.outputs["telescoper"] = _telescoper_json(res.telescoper, names)
    rep.outputs["certificate"] = _certificate_json(res.certificate, res.shell, names)
    if command == "verify":
        ok, msg = verify_rct(res.telescoper, res.certificate, T, SYMBOLIC, shell=res.shell)
        rep.verdicts["symbolic"] = {"ok": ok, "message": msg}
        window = window or DEFAULT_WINDOW
    if window is not None and res.certificate is not None:
        rep.verdicts["numeric"] = numeric_verdict(res.telescoper, res.certificate, T, res.shell, window)
    if any(not v["ok"] for v in rep.verdicts.values()):
        raise _VerifyFailed("verification failed")


class _VerifyFailed(Exception):
    code = "VERIFICATION_FAILED"


def run(command, expr, var="k", cert=UNNORMALIZED, verify_numeric=None, timing=False):
    """Execute one command; the report carries the exit code (0, 1 or 2)."""
    options = {"cert": cert, "verify_numeric": verify_numeric}
    rep = RunReport(command, expr, var, options)
    t0 = time.perf_counter()
    try:
        if command not in COMMANDS:
            raise UsageError("unknown command %r" % command)
        if var not in ("n", "k"):
            raise UsageError("--var must be n or k")
        if cert not in (NONE, NORMALIZED, UNNORMALIZED):
            raise UsageError("--cert must be none, normalized or unnormalized")
        window = _parse_window(verify_numeric) if verify_numeric else None
        names = _Names(var)
        e = parse(expr, check=False)
        rep.expr = to_text(e)
        if names.swapped:
            e = swap_variables(e)
        if command in ("reduce", "summable", "rnf"):
            _cmd_univariate(command, e, names, rep)
        else:
            _cmd_bivariate(command, e, names, rep, cert, window)
    except (UsageError, TermSyntaxError) as ex:
        rep.error = {"code": ex.code, "message": str(ex)}
        if isinstance(ex, TermSyntaxError):
            rep.error["position"] = ex.pos
        rep.exit_code = 2
    except (NotHypergeometric, _VerifyFailed) as ex:
        rep.error = {"code": ex.code, "message": str(ex)}
        rep.exit_code = 1
    except NoTelescoper as ex:
        rep.error = {"code": "NO_TELESCOPER", "message": str(ex)}
        rep.exit_code = 1
    except DegreeLimitExceeded as ex:
        rep.error = {"code": "DEGREE_LIMIT", "message": str(ex)}
        rep.exit_code = 1
    if timing:
        rep.timing = {"seconds": time.perf_counter() - t0}
    return rep


def build_parser():
    p = argparse.ArgumentParser(prog="hypersum", description="Reduction-based summation of hypergeometric terms.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("expr", help='term, e.g. "binomial(n,k)^3"')
    p.add_argument("--var", default="k", choices=("n", "k"), help="summation variable")
    p.add_argument("--cert", default=UNNORMALIZED, choices=(NONE, NORMALIZED, UNNORMALIZED))
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--verify-numeric", metavar="N0:N1,K0:K1", help="check the identity on a lattice window")
    p.add_argument("--timing", action="store_true", help="report wall-clock time")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    rep = run(args.command, args.expr, args.var, args.cert, args.verify_numeric, args.timing)
    if args.json:
        print(dumps(rep.to_json()))
    else:
        out = rep.text()
        print(out, file=sys.stderr if rep.error else sys.stdout)
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
